//! Reference implementations for testing `padic`.
//!
//! Nothing here shares modular-arithmetic code with the production crate:
//! operations run in exact rational arithmetic, inverses modulo p^N come from
//! Euler's theorem, and roots are found by scanning every residue. Only the
//! final canonical `(u, v)` pair is handed to [`PadicNumber::from_parts`],
//! which validates it without transforming it.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use padic::{IntPolynomial, PadicContext, PadicError, PadicNumber};

pub type Rational = BigRational;

/// An operation evaluated by [`oracle_op`].
#[derive(Debug, Clone)]
pub enum OracleOp {
    Add(Rational, Rational),
    Sub(Rational, Rational),
    Mul(Rational, Rational),
    Div(Rational, Rational),
    Neg(Rational),
    Inv(Rational),
    Pow(Rational, i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Exp,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotFound;

fn big(p: u64) -> BigInt {
    BigInt::from(p)
}

/// Splits a nonzero rational into `(a, b, v)` with `q = (a/b) p^v`, `p ∤ a b`, `b > 0`.
fn split(q: &Rational, p: u64) -> (BigInt, BigInt, i64) {
    let pb = big(p);
    let mut a = q.numer().clone();
    let mut b = q.denom().clone();
    let mut v = 0i64;
    while a.is_multiple_of(&pb) {
        a /= &pb;
        v += 1;
    }
    while b.is_multiple_of(&pb) {
        b /= &pb;
        v -= 1;
    }
    (a, b, v)
}

/// Inverse of `a` modulo p^N via a^(φ(p^N) - 1).
fn euler_inverse(a: &BigInt, p: u64, n: u32) -> BigInt {
    let m = big(p).pow(n);
    let phi = big(p).pow(n - 1) * big(p - 1);
    let base = a.mod_floor(&m);
    base.modpow(&(phi - 1), &m)
}

/// Canonical `(u, v)` of a rational at relative precision `n`; `None` for zero.
fn canonical(q: &Rational, p: u64, n: u32) -> Option<(BigUint, i64)> {
    if q.is_zero() {
        return None;
    }
    let (a, b, v) = split(q, p);
    let m = big(p).pow(n);
    let u = (a * euler_inverse(&b, p, n)).mod_floor(&m);
    Some((u.to_biguint().expect("nonnegative residue"), v))
}

fn pow_p(p: u64, k: i64) -> Rational {
    let base = Rational::from_integer(big(p));
    if k >= 0 {
        base.pow(k as i32)
    } else {
        Rational::one() / base.pow((-k) as i32)
    }
}

/// The exact rational `u p^v` the production code would store for `q`.
pub fn truncated_lift(q: &Rational, p: u64, n: u32) -> Rational {
    match canonical(q, p, n) {
        None => Rational::zero(),
        Some((u, v)) => Rational::from_integer(BigInt::from(u)) * pow_p(p, v),
    }
}

fn valuation(q: &Rational, p: u64) -> Option<i64> {
    (!q.is_zero()).then(|| split(q, p).2)
}

fn build(ctx: &Arc<PadicContext>, q: &Rational) -> PadicNumber {
    match canonical(q, ctx.p(), ctx.precision()) {
        None => PadicNumber::zero(ctx),
        Some((u, v)) => {
            PadicNumber::from_parts(ctx, u, v).expect("oracle produced canonical parts")
        }
    }
}

/// Sum of lifts, keeping only what both operands determine: digits below
/// p^(min(v_a, v_b) + N).
fn sum_at_precision(a: &Rational, b: &Rational, p: u64, n: u32) -> Rational {
    let low = match (valuation(a, p), valuation(b, p)) {
        (None, None) => return Rational::zero(),
        (Some(x), None) | (None, Some(x)) => x,
        (Some(x), Some(y)) => x.min(y),
    };
    let scaled = (a + b) * pow_p(p, -low);
    debug_assert!(scaled.is_integer());
    let m = big(p).pow(n);
    let reduced = scaled.to_integer().mod_floor(&m);
    Rational::from_integer(reduced) * pow_p(p, low)
}

/// Evaluates `op` on the truncated lifts of its operands in exact rational
/// arithmetic, then canonicalizes.
pub fn oracle_op(op: &OracleOp, ctx: &Arc<PadicContext>) -> Result<PadicNumber, PadicError> {
    let (p, n) = (ctx.p(), ctx.precision());
    let lift = |q: &Rational| truncated_lift(q, p, n);
    let exact = match op {
        OracleOp::Add(a, b) => sum_at_precision(&lift(a), &lift(b), p, n),
        OracleOp::Sub(a, b) => sum_at_precision(&lift(a), &-lift(b), p, n),
        OracleOp::Mul(a, b) => lift(a) * lift(b),
        OracleOp::Div(a, b) => {
            let d = lift(b);
            if d.is_zero() {
                return Err(PadicError::DivisionByZero);
            }
            lift(a) / d
        }
        OracleOp::Neg(a) => -lift(a),
        OracleOp::Inv(a) => {
            let d = lift(a);
            if d.is_zero() {
                return Err(PadicError::DivisionByZero);
            }
            d.recip()
        }
        OracleOp::Pow(a, e) => {
            let base = lift(a);
            if *e == 0 {
                Rational::one()
            } else if base.is_zero() {
                if *e < 0 {
                    return Err(PadicError::DivisionByZero);
                }
                Rational::zero()
            } else {
                let e32 = i32::try_from(*e).expect("exponent fits in i32");
                base.pow(e32)
            }
        }
    };
    Ok(build(ctx, &exact))
}

/// Truncated exp/log series summed in exact rationals, with enough terms
/// that every omitted term vanishes at the result's precision.
pub fn oracle_series(
    kind: SeriesKind,
    x: &Rational,
    ctx: &Arc<PadicContext>,
) -> Result<PadicNumber, PadicError> {
    let (p, n) = (ctx.p(), ctx.precision());
    let min_val = if p == 2 { 2 } else { 1 };
    let x = truncated_lift(x, p, n);
    match kind {
        SeriesKind::Exp => {
            let Some(v) = valuation(&x, p) else {
                return Ok(PadicNumber::one(ctx));
            };
            if v < min_val {
                return Err(PadicError::OutsideDomain("exp"));
            }
            let terms = 2 * i64::from(n) + 4;
            let mut term = Rational::one();
            let mut sum = Rational::one();
            for k in 1..=terms {
                term = term * &x / Rational::from_integer(BigInt::from(k));
                sum += &term;
            }
            Ok(build(ctx, &sum))
        }
        SeriesKind::Log => {
            if valuation(&x, p) != Some(0) {
                return Err(PadicError::OutsideDomain("log"));
            }
            let z = &x - Rational::one();
            let Some(vz) = valuation(&z, p) else {
                return Ok(PadicNumber::zero(ctx));
            };
            if vz < min_val {
                return Err(PadicError::OutsideDomain("log"));
            }
            let terms = 2 * (vz + i64::from(n)) + 8;
            let mut power = Rational::one();
            let mut sum = Rational::zero();
            for k in 1..=terms {
                power *= &z;
                let term = &power / Rational::from_integer(BigInt::from(k));
                if k % 2 == 1 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            Ok(build(ctx, &sum))
        }
    }
}

/// Ground truth by exhaustive search over residues modulo p^N.
#[derive(Debug, Clone)]
pub enum SearchKind<'a> {
    /// Smallest r with r² ≡ target.
    Sqrt(u64),
    /// The unit r ≡ target (mod p) with r^p ≡ r.
    Teichmuller(u64),
    /// r ≡ seed (mod p) with f(r) ≡ 0.
    PolyRoot { f: &'a IntPolynomial, seed: i64 },
}

pub const SEARCH_LIMIT: u64 = 1_000_000;

fn modulus(p: u64, n: u32) -> u64 {
    let m = p
        .checked_pow(n)
        .filter(|&m| m <= SEARCH_LIMIT)
        .unwrap_or_else(|| panic!("exhaustive search needs p^N <= {SEARCH_LIMIT}"));
    m
}

fn mulm(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn powm(a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut base = a % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, base, m);
        }
        base = mulm(base, base, m);
        e >>= 1;
    }
    acc
}

fn coeffs_mod(f: &IntPolynomial, m: u64) -> Vec<u64> {
    let mb = BigInt::from(m);
    f.coeffs()
        .iter()
        .map(|c| c.mod_floor(&mb).to_u64().expect("residue below m"))
        .collect()
}

fn eval_mod(coeffs: &[u64], r: u64, m: u64) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0, |acc, &c| (mulm(acc, r, m) + c) % m)
}

pub fn oracle_search(kind: &SearchKind<'_>, p: u64, n: u32) -> Result<u64, NotFound> {
    let m = modulus(p, n);
    match *kind {
        SearchKind::Sqrt(target) => {
            let t = target % m;
            (0..m).find(|&r| mulm(r, r, m) == t).ok_or(NotFound)
        }
        SearchKind::Teichmuller(target) => (0..m)
            .filter(|r| r % p == target % p && r % p != 0)
            .find(|&r| powm(r, p, m) == r)
            .ok_or(NotFound),
        SearchKind::PolyRoot { f, seed } => {
            let cs = coeffs_mod(f, m);
            let s = seed.rem_euclid(p as i64) as u64;
            (0..m)
                .filter(|r| r % p == s)
                .find(|&r| eval_mod(&cs, r, m) == 0)
                .ok_or(NotFound)
        }
    }
}

/// `table[t]` is `oracle_search(Sqrt(t))` for every residue t, from one scan.
pub fn sqrt_table(p: u64, n: u32) -> Vec<Option<u64>> {
    let m = modulus(p, n);
    let mut table = vec![None; m as usize];
    for r in (0..m).rev() {
        table[mulm(r, r, m) as usize] = Some(r);
    }
    table
}

/// `table[a]` is `oracle_search(Teichmuller(a))` for every residue a mod p.
pub fn teichmuller_table(p: u64, n: u32) -> Vec<Option<u64>> {
    let m = modulus(p, n);
    let mut table = vec![None; p as usize];
    for r in 0..m {
        if r % p != 0 && table[(r % p) as usize].is_none() && powm(r, p, m) == r {
            table[(r % p) as usize] = Some(r);
        }
    }
    table
}

/// Whether `r` is a root modulo p^N, checked in plain integer arithmetic.
pub fn is_root_mod(f: &IntPolynomial, r: &BigInt, p: u64, n: u32) -> bool {
    let m = big(p).pow(n);
    f.coeffs()
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * r + c).mod_floor(&m))
        .is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use padic::{make_context, PrintMode};

    fn ctx(p: u64, n: u32) -> Arc<PadicContext> {
        make_context(p, n, PrintMode::Series).unwrap()
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn parts(x: &PadicNumber) -> (u64, i64) {
        (u64::try_from(x.unit()).unwrap(), x.raw_valuation())
    }

    #[test]
    fn op_examples() {
        let c3 = ctx(3, 20);
        let s = oracle_op(&OracleOp::Add(q(1, 9), q(2, 3)), &c3).unwrap();
        assert_eq!(parts(&s), (7, -2));
        let c5 = ctx(5, 20);
        let x = q(-13, 44);
        assert_eq!(
            oracle_op(&OracleOp::Mul(x.clone(), q(1, 1)), &c5).unwrap(),
            padic::from_rational(&x, &c5)
        );
        let c = ctx(5, 2);
        assert_eq!(
            parts(&oracle_op(&OracleOp::Inv(q(2, 1)), &c).unwrap()),
            (13, 0)
        );
        assert_eq!(
            oracle_op(&OracleOp::Inv(q(0, 1)), &c),
            Err(PadicError::DivisionByZero)
        );
    }

    #[test]
    fn cancellation_respects_absolute_precision() {
        let c = ctx(5, 3);
        let s = oracle_op(&OracleOp::Sub(q(1, 3), q(1, 3)), &c).unwrap();
        assert!(s.is_zero());
        // 1/3 + 2/3 = 1 exactly, but the truncated lifts only know it mod 5^3
        let s = oracle_op(&OracleOp::Add(q(1, 3), q(2, 3)), &c).unwrap();
        assert_eq!(parts(&s), (1, 0));
    }

    #[test]
    fn series_examples() {
        let c = ctx(5, 3);
        assert_eq!(
            parts(&oracle_series(SeriesKind::Exp, &q(5, 1), &c).unwrap()),
            (81, 0)
        );
        assert!(oracle_series(SeriesKind::Log, &q(1, 1), &c)
            .unwrap()
            .is_zero());
        let c2 = ctx(5, 2);
        assert_eq!(
            parts(&oracle_series(SeriesKind::Log, &q(6, 1), &c2).unwrap()),
            (11, 1)
        );
        assert!(oracle_series(SeriesKind::Exp, &q(1, 1), &c).is_err());
        assert!(oracle_series(SeriesKind::Log, &q(2, 1), &c).is_err());
    }

    #[test]
    fn search_examples() {
        assert_eq!(oracle_search(&SearchKind::Teichmuller(2), 5, 2), Ok(7));
        assert_eq!(oracle_search(&SearchKind::Sqrt(1), 5, 2), Ok(1));
        assert_eq!(oracle_search(&SearchKind::Sqrt(2), 5, 1), Err(NotFound));
        let f: IntPolynomial = "x^3 - 2".parse().unwrap();
        assert_eq!(
            oracle_search(&SearchKind::PolyRoot { f: &f, seed: 3 }, 5, 2),
            Ok(3)
        );
    }

    #[test]
    fn tables_match_per_target_search() {
        for (p, n) in [(2u64, 5u32), (3, 4), (5, 3), (7, 2)] {
            let sq = sqrt_table(p, n);
            for (t, hit) in sq.iter().enumerate() {
                assert_eq!(*hit, oracle_search(&SearchKind::Sqrt(t as u64), p, n).ok());
            }
            let te = teichmuller_table(p, n);
            for a in 1..p {
                assert_eq!(
                    te[a as usize],
                    oracle_search(&SearchKind::Teichmuller(a), p, n).ok()
                );
            }
        }
    }

    #[test]
    #[should_panic(expected = "exhaustive search")]
    fn search_refuses_huge_moduli() {
        let _ = oracle_search(&SearchKind::Sqrt(1), 11, 7);
    }
}
