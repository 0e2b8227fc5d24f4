//! Square roots, the p-adic exponential and logarithm, and Teichmüller lifts.
//!
//! The series are summed in modular arithmetic: each term is tracked as a
//! unit modulo p^N together with its exact valuation, so division by `n`
//! only ever inverts the p-free part of `n`.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::inv_mod;
use crate::context::PadicContext;
use crate::error::{NotASquareReason, PadicError, Result};
use crate::number::{canonicalize_uint, strip_p, PadicNumber};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Square root of a quadratic residue `a` modulo an odd prime `p` (Tonelli–Shanks).
fn sqrt_mod_prime(a: u64, p: u64) -> u64 {
    let a = a % p;
    if p % 4 == 3 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// Newton lifting of a simple root, doubling the working exponent each step.
/// `step(r, modulus)` returns the next approximation modulo `modulus`.
fn lift_doubling(
    ctx: &PadicContext,
    seed: BigUint,
    step: impl Fn(&BigUint, &BigUint) -> BigUint,
) -> BigUint {
    let n = ctx.precision();
    let mut k = 1u32;
    let mut r = seed;
    while k < n {
        k = (2 * k).min(n);
        let m = ctx.pow_p(u64::from(k));
        r = step(&r, &m);
    }
    r % ctx.modulus()
}

fn sub_mod(a: &BigUint, b: &BigUint, m: &BigUint) -> BigUint {
    let a = a % m;
    let b = b % m;
    if a >= b {
        a - b
    } else {
        m - b + a
    }
}

/// Square root; of the roots of the unit part modulo p^N, returns the one with
/// the smallest integer lift.
pub fn sqrt(x: &PadicNumber) -> Result<PadicNumber> {
    let ctx = x.context();
    if x.is_zero() {
        return Ok(x.clone());
    }
    let v = x.raw_valuation();
    if v % 2 != 0 {
        return Err(PadicError::NotASquare(NotASquareReason::OddValuation));
    }
    let u = x.unit();
    let modulus = ctx.modulus();
    let p = ctx.p();
    let root = if p == 2 {
        let low = (u % 8u32).to_u64().expect("residue mod 8");
        if low != 1 {
            return Err(PadicError::NotASquare(NotASquareReason::NonResidueUnit));
        }
        // r^2 ≡ u (mod 2^(k+1)) is kept as k grows; starting from r = 1 at k = 2.
        let mut r = BigUint::one();
        for k in 3..ctx.precision() {
            let next = BigUint::one() << (k + 1);
            if (&r * &r) % &next != u % &next {
                r += BigUint::one() << (k - 1);
            }
        }
        r
    } else {
        let a = (u % ctx.prime()).to_u64().expect("residue mod p");
        if pow_mod(a, (p - 1) / 2, p) != 1 {
            return Err(PadicError::NotASquare(NotASquareReason::NonResidueUnit));
        }
        let r0 = BigUint::from(sqrt_mod_prime(a, p));
        lift_doubling(ctx, r0, |r, m| {
            let f = sub_mod(&(r * r), u, m);
            let df = (r << 1u32) % m;
            sub_mod(r, &(f * inv_mod(&df, m)), m)
        })
    };
    let mut candidates = vec![root.clone(), sub_mod(&BigUint::zero(), &root, modulus)];
    if p == 2 && ctx.precision() >= 2 {
        let half = BigUint::one() << (ctx.precision() - 1);
        for c in candidates.clone() {
            candidates.push((c + &half) % modulus);
        }
    }
    let best = candidates
        .into_iter()
        .filter(|c| !(c % ctx.prime()).is_zero() && (c * c) % modulus == u % modulus)
        .min()
        .expect("lifted root satisfies r^2 = u");
    Ok(PadicNumber::from_parts_unchecked(ctx, best, v / 2))
}

/// Minimum valuation for which the exp series converges.
fn exp_min_valuation(p: u64) -> i64 {
    if p == 2 {
        2
    } else {
        1
    }
}

/// `(e, n / p^e)` where p^e exactly divides `n`.
fn split_p(n: u64, p: u64) -> (i64, u64) {
    let mut e = 0;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    (e, m)
}

/// Σ x^n / n!, defined for v(x) ≥ 1 (v(x) ≥ 2 when p = 2).
pub fn exp(x: &PadicNumber) -> Result<PadicNumber> {
    let ctx = x.context();
    if x.is_zero() {
        return Ok(PadicNumber::one(ctx));
    }
    let p = ctx.p();
    let v = x.raw_valuation();
    if v < exp_min_valuation(p) {
        return Err(PadicError::OutsideDomain(
            "exp needs valuation >= 1 (>= 2 when p = 2)",
        ));
    }
    let target = i64::from(ctx.precision());
    let modulus = ctx.modulus();
    let mut sum = BigUint::one();
    let mut term_unit = BigUint::one();
    let mut term_val = 0i64;
    for n in 1u64.. {
        // v(x^n / n!) >= n*v - (n - 1)/(p - 1), nondecreasing in n
        let bound = (n as i64) * v - ((n - 1) / (p - 1)) as i64;
        if bound >= target {
            break;
        }
        let (e, rest) = split_p(n, p);
        term_unit =
            (term_unit * x.unit() * inv_mod(&(BigUint::from(rest) % modulus), modulus)) % modulus;
        term_val += v - e;
        if term_val < target {
            sum = (sum + &term_unit * ctx.pow_p(term_val as u64)) % modulus;
        }
    }
    Ok(canonicalize_uint(sum, 0, ctx))
}

fn floor_log(n: u64, p: u64) -> i64 {
    let mut k = 0;
    let mut m = n;
    while m >= p {
        m /= p;
        k += 1;
    }
    k
}

/// Σ (-1)^(n-1) (x-1)^n / n, defined for v(x-1) ≥ 1 (v(x-1) ≥ 2 when p = 2).
pub fn log(x: &PadicNumber) -> Result<PadicNumber> {
    let ctx = x.context();
    let p = ctx.p();
    const DOMAIN: &str = "log needs v(x - 1) >= 1 (>= 2 when p = 2)";
    if x.is_zero() || x.raw_valuation() != 0 {
        return Err(PadicError::OutsideDomain(DOMAIN));
    }
    let mut z = x.unit() - BigUint::one();
    if z.is_zero() {
        return Ok(PadicNumber::zero(ctx));
    }
    let vz = strip_p(&mut z, ctx.prime());
    if vz < exp_min_valuation(p) {
        return Err(PadicError::OutsideDomain(DOMAIN));
    }
    let n_digits = i64::from(ctx.precision());
    let target = vz + n_digits;
    let big_mod = ctx.pow_p(target as u64);
    let modulus = ctx.modulus();
    let w = z % modulus;
    let mut sum = BigUint::zero();
    let mut w_pow = BigUint::one();
    for n in 1u64.. {
        // v((x-1)^n / n) >= n*vz - floor(log_p n), nondecreasing in n
        if (n as i64) * vz - floor_log(n, p) >= target {
            break;
        }
        w_pow = (w_pow * &w) % modulus;
        let (e, rest) = split_p(n, p);
        let val = (n as i64) * vz - e;
        if val >= target {
            continue;
        }
        let unit = (&w_pow * inv_mod(&(BigUint::from(rest) % modulus), modulus)) % modulus;
        let term = (unit * ctx.pow_p(val as u64)) % &big_mod;
        sum = if n % 2 == 1 {
            (sum + term) % &big_mod
        } else {
            sub_mod(&sum, &term, &big_mod)
        };
    }
    Ok(canonicalize_uint(sum, 0, ctx))
}

/// The (p-1)-th root of unity congruent to `x` modulo p.
pub fn teichmuller(x: &PadicNumber) -> Result<PadicNumber> {
    let ctx = x.context();
    if x.is_zero() || x.raw_valuation() != 0 {
        return Err(PadicError::OutsideDomain(
            "Teichmüller lift needs a unit (valuation 0)",
        ));
    }
    let p = ctx.p();
    let seed = x.unit() % ctx.prime();
    let e = BigUint::from(p - 1);
    let e_minus = BigUint::from(p.saturating_sub(2));
    let t = lift_doubling(ctx, seed, |t, m| {
        // t - (t^(p-1) - 1) / ((p-1) t^(p-2))
        let f = sub_mod(&t.modpow(&e, m), &BigUint::one(), m);
        let df = (&e * t.modpow(&e_minus, m)) % m;
        sub_mod(t, &(f * inv_mod(&df, m)), m)
    });
    Ok(PadicNumber::from_parts_unchecked(ctx, t, 0))
}

/// True when `a` and `b` agree in all but the top `guard` unit digits.
pub fn agree_within(a: &PadicNumber, b: &PadicNumber, guard: u32) -> Result<bool> {
    let diff = crate::arith::sub(a, b)?;
    let Some(dv) = diff.valuation().finite() else {
        return Ok(true);
    };
    let reference = match (a.valuation().finite(), b.valuation().finite()) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => return Ok(true),
    };
    let ctx: &Arc<PadicContext> = a.context();
    Ok(dv >= reference + i64::from(ctx.precision()) - i64::from(guard))
}
