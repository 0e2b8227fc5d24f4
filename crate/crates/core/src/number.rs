//! Canonical representation of elements of ℚ_p.
//!
//! A nonzero number is stored as `u * p^v` with `p ∤ u` and `1 <= u < p^N`,
//! N being the context precision. Zero is stored as `(0, 0)`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::context::PadicContext;
use crate::error::{PadicError, Result};

/// p-adic valuation; zero has infinite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("infinity"),
        }
    }
}

/// Base-p digits `a_start, a_{start+1}, ...` of a number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub p: u64,
    pub start: i64,
    pub digits: Vec<u64>,
}

impl Expansion {
    /// The exact rational `Σ digits[n] * p^(start + n)`.
    pub fn value(&self) -> BigRational {
        let p = BigUint::from(self.p);
        let mut acc = BigUint::zero();
        for &d in self.digits.iter().rev() {
            acc = acc * &p + BigUint::from(d);
        }
        shift_rational(BigInt::from(acc), &p, self.start)
    }

    /// Reassembles the digits and canonicalizes under `ctx`.
    pub fn to_number(&self, ctx: &Arc<PadicContext>) -> PadicNumber {
        let p = BigUint::from(self.p);
        let mut acc = BigUint::zero();
        for &d in self.digits.iter().rev() {
            acc = acc * &p + BigUint::from(d);
        }
        canonicalize(&BigInt::from(acc), self.start, ctx)
    }

    /// Iterates `(exponent, digit)` over nonzero digits.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.digits
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(move |(i, &d)| (self.start + i as i64, d))
    }
}

pub(crate) fn shift_rational(n: BigInt, p: &BigUint, exp: i64) -> BigRational {
    let k = u32::try_from(exp.unsigned_abs()).expect("exponent of p exceeds u32");
    let pk = BigInt::from(p.pow(k));
    if exp >= 0 {
        BigRational::from_integer(n * pk)
    } else {
        BigRational::new(n, pk)
    }
}

/// An element of ℚ_p at the precision of its context.
#[derive(Clone)]
pub struct PadicNumber {
    ctx: Arc<PadicContext>,
    unit: BigUint,
    val: i64,
}

impl PadicNumber {
    pub fn zero(ctx: &Arc<PadicContext>) -> Self {
        PadicNumber {
            ctx: Arc::clone(ctx),
            unit: BigUint::zero(),
            val: 0,
        }
    }

    pub fn one(ctx: &Arc<PadicContext>) -> Self {
        PadicNumber {
            ctx: Arc::clone(ctx),
            unit: BigUint::one(),
            val: 0,
        }
    }

    /// Builds a number from parts that must already be canonical.
    pub fn from_parts(ctx: &Arc<PadicContext>, unit: BigUint, val: i64) -> Result<Self> {
        if unit.is_zero() {
            if val != 0 {
                return Err(PadicError::NotCanonical("zero must have valuation 0"));
            }
        } else {
            if &unit >= ctx.modulus() {
                return Err(PadicError::NotCanonical("unit is not reduced modulo p^N"));
            }
            if (&unit % ctx.prime()).is_zero() {
                return Err(PadicError::NotCanonical("unit is divisible by p"));
            }
        }
        Ok(Self::from_parts_unchecked(ctx, unit, val))
    }

    pub(crate) fn from_parts_unchecked(ctx: &Arc<PadicContext>, unit: BigUint, val: i64) -> Self {
        debug_assert!(
            unit.is_zero() || (&unit < ctx.modulus() && !(&unit % ctx.prime()).is_zero())
        );
        PadicNumber {
            ctx: Arc::clone(ctx),
            unit,
            val,
        }
    }

    pub fn context(&self) -> &Arc<PadicContext> {
        &self.ctx
    }

    /// The unit part `u`; zero for the zero element.
    pub fn unit(&self) -> &BigUint {
        &self.unit
    }

    /// The stored exponent `v` (0 for zero; see [`valuation`](Self::valuation)).
    pub fn raw_valuation(&self) -> i64 {
        self.val
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(self.val)
        }
    }

    /// |x|_p = p^(-v) as an exact rational; 0 for zero.
    pub fn abs_p(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        shift_rational(BigInt::one(), self.ctx.prime(), -self.val)
    }

    /// The N base-p digits of the unit, lowest first, starting at exponent v.
    pub fn digits(&self) -> Expansion {
        let n = self.ctx.precision() as usize;
        let p = self.ctx.p();
        let mut digits = Vec::with_capacity(n);
        if let Some(small) = self.unit.to_u64() {
            let mut rest = small;
            for _ in 0..n {
                digits.push(rest % p);
                rest /= p;
            }
        } else {
            let mut rest = self.unit.clone();
            let prime = self.ctx.prime();
            for _ in 0..n {
                let (q, r) = rest.div_rem(prime);
                digits.push(r.to_u64().expect("digit below p"));
                rest = q;
            }
        }
        Expansion {
            p,
            start: self.val,
            digits,
        }
    }

    /// The exact rational `u * p^v`.
    pub fn lift(&self) -> BigRational {
        shift_rational(BigInt::from(self.unit.clone()), self.ctx.prime(), self.val)
    }

    pub(crate) fn check_same_context(&self, other: &PadicNumber) -> Result<()> {
        if self.ctx.same(&other.ctx) {
            Ok(())
        } else {
            Err(PadicError::ContextMismatch)
        }
    }
}

impl PartialEq for PadicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.key() == other.ctx.key() && self.val == other.val && self.unit == other.unit
    }
}

impl Eq for PadicNumber {}

impl Hash for PadicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.key().hash(state);
        self.unit.hash(state);
        self.val.hash(state);
    }
}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PadicNumber")
            .field("p", &self.ctx.p())
            .field("precision", &self.ctx.precision())
            .field("unit", &self.unit)
            .field("val", &self.val)
            .finish()
    }
}

/// Number of times `p` divides `n` (n nonzero), dividing it out in place.
pub(crate) fn strip_p(n: &mut BigUint, p: &BigUint) -> i64 {
    let mut count = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return count;
        }
        *n = q;
        count += 1;
    }
}

/// Reduces `n * p^v` to canonical form: powers of p move into the
/// valuation, the unit is taken modulo p^N, and multiples of p^N vanish.
pub fn canonicalize(n: &BigInt, v: i64, ctx: &Arc<PadicContext>) -> PadicNumber {
    if n.is_zero() {
        return PadicNumber::zero(ctx);
    }
    let (sign, mag) = n.clone().into_parts();
    let mut mag = mag;
    let shift = strip_p(&mut mag, ctx.prime());
    let mut unit = mag % ctx.modulus();
    if sign == Sign::Minus {
        unit = ctx.modulus() - unit;
    }
    PadicNumber::from_parts_unchecked(ctx, unit, v + shift)
}

/// Canonicalizes an already nonnegative integer.
pub(crate) fn canonicalize_uint(mut n: BigUint, v: i64, ctx: &Arc<PadicContext>) -> PadicNumber {
    if n.is_zero() {
        return PadicNumber::zero(ctx);
    }
    let shift = strip_p(&mut n, ctx.prime());
    let unit = n % ctx.modulus();
    PadicNumber::from_parts_unchecked(ctx, unit, v + shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::{make_context, PrintMode};
    use proptest::prelude::*;

    fn ctx(p: u64, n: u32) -> Arc<PadicContext> {
        make_context(p, n, PrintMode::Series).unwrap()
    }

    fn canon(n: i64, v: i64, c: &Arc<PadicContext>) -> PadicNumber {
        canonicalize(&BigInt::from(n), v, c)
    }

    #[test]
    fn canonicalize_moves_powers_of_p() {
        let c = ctx(5, 4);
        let x = canon(50, 0, &c);
        assert_eq!(x.unit(), &BigUint::from(2u32));
        assert_eq!(x.raw_valuation(), 2);
    }

    #[test]
    fn canonical_zero() {
        let c = ctx(5, 4);
        let z = canon(0, 7, &c);
        assert!(z.is_zero());
        assert_eq!(z.raw_valuation(), 0);
        assert_eq!(z.valuation(), Valuation::Infinite);
        assert_eq!(z.abs_p(), BigRational::zero());
        assert_eq!(z.digits().digits, vec![0; 4]);
        assert_eq!(z.digits().start, 0);
    }

    #[test]
    fn minus_one_is_all_top_digits() {
        let c = ctx(5, 4);
        let x = canon(-1, 0, &c);
        assert_eq!(x.unit(), &BigUint::from(624u32));
        assert_eq!(x.raw_valuation(), 0);
        assert_eq!(x.digits().digits, vec![4, 4, 4, 4]);
    }

    #[test]
    fn valuation_examples() {
        let c3 = ctx(3, 20);
        assert_eq!(canon(7, -2, &c3).valuation(), Valuation::Finite(-2));
        let c5 = ctx(5, 20);
        assert_eq!(canon(25, 0, &c5).valuation(), Valuation::Finite(2));
    }

    #[test]
    fn abs_p_examples() {
        let c3 = ctx(3, 20);
        assert_eq!(
            canon(7, -2, &c3).abs_p(),
            BigRational::from_integer(9.into())
        );
        let c5 = ctx(5, 20);
        assert_eq!(
            canon(25, 0, &c5).abs_p(),
            BigRational::new(1.into(), 25.into())
        );
    }

    #[test]
    fn digits_truncate_to_precision() {
        let c = ctx(5, 3);
        let x = canon(53, 0, &c);
        let e = x.digits();
        assert_eq!(e.start, 0);
        assert_eq!(e.digits, vec![3, 0, 2]);
    }

    #[test]
    fn digits_of_large_units() {
        let c = ctx(7, 40);
        let x = canon(-3, 5, &c);
        let e = x.digits();
        assert_eq!(e.digits.len(), 40);
        assert_eq!(e.digits[0], 4);
        assert!(e.digits[1..].iter().all(|&d| d == 6));
        assert_eq!(e.to_number(&c), x);
    }

    #[test]
    fn from_parts_validates() {
        let c = ctx(5, 2);
        assert!(PadicNumber::from_parts(&c, BigUint::from(10u32), 0).is_err());
        assert!(PadicNumber::from_parts(&c, BigUint::from(25u32), 0).is_err());
        assert!(PadicNumber::from_parts(&c, BigUint::zero(), 3).is_err());
        assert!(PadicNumber::from_parts(&c, BigUint::from(24u32), -3).is_ok());
    }

    #[test]
    fn multiples_of_modulus_reduce_within_unit() {
        // 1 + 5^4 keeps unit digits only
        let c = ctx(5, 4);
        assert_eq!(canon(1 + 625, 0, &c), canon(1, 0, &c));
    }

    fn trial_valuation(mut k: i64, p: i64) -> i64 {
        let mut e = 0;
        while k % p == 0 {
            k /= p;
            e += 1;
        }
        e
    }

    proptest! {
        #[test]
        fn canonical_invariants(n in any::<i64>(), v in -50i64..50, pi in 0usize..5, prec in 1u32..30) {
            let p = [2u64, 3, 5, 7, 11][pi];
            let c = ctx(p, prec);
            let x = canon(n, v, &c);
            if !x.is_zero() {
                prop_assert!(x.unit() >= &BigUint::one());
                prop_assert!(x.unit() < c.modulus());
                prop_assert!(!(x.unit() % c.prime()).is_zero());
            }
            let again = canonicalize(&BigInt::from(x.unit().clone()), x.raw_valuation(), &c);
            prop_assert_eq!(&again, &x);
            prop_assert_eq!(x.digits().to_number(&c), x);
        }

        #[test]
        fn valuation_matches_trial_division(k in -999_999i64..1_000_000, pi in 0usize..5) {
            prop_assume!(k != 0);
            let p = [2u64, 3, 5, 7, 11][pi];
            let c = ctx(p, 20);
            // every |k| < 10^6 is nonzero modulo p^20 for these primes
            prop_assert_eq!(canon(k, 0, &c).valuation(), Valuation::Finite(trial_valuation(k, p as i64)));
        }
    }
}
