//! Field operations on [`PadicNumber`].
//!
//! Sums are formed exactly on the integer lifts `u * p^v` of the operands and
//! reduced modulo `p^(min(v_x, v_y) + N)`, the absolute precision both operands
//! are known to, before canonicalizing. Products, quotients and powers work on
//! units modulo p^N and add valuations.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{PadicError, Result};
use crate::number::{canonicalize_uint, PadicNumber};

pub fn neg(x: &PadicNumber) -> PadicNumber {
    if x.is_zero() {
        return x.clone();
    }
    let ctx = x.context();
    PadicNumber::from_parts_unchecked(ctx, ctx.modulus() - x.unit(), x.raw_valuation())
}

impl std::ops::Neg for &PadicNumber {
    type Output = PadicNumber;

    fn neg(self) -> PadicNumber {
        neg(self)
    }
}

impl std::ops::Neg for PadicNumber {
    type Output = PadicNumber;

    fn neg(self) -> PadicNumber {
        neg(&self)
    }
}

pub fn inv(x: &PadicNumber) -> Result<PadicNumber> {
    if x.is_zero() {
        return Err(PadicError::DivisionByZero);
    }
    let ctx = x.context();
    let unit = inv_mod(x.unit(), ctx.modulus());
    Ok(PadicNumber::from_parts_unchecked(
        ctx,
        unit,
        -x.raw_valuation(),
    ))
}

/// Inverse of a unit modulo `m`.
pub(crate) fn inv_mod(a: &BigUint, m: &BigUint) -> BigUint {
    if m.is_one() {
        return BigUint::zero();
    }
    a.modinv(m).expect("p-adic unit is invertible modulo p^N")
}

fn add_signed(x: &PadicNumber, y: &PadicNumber, negate_y: bool) -> Result<PadicNumber> {
    x.check_same_context(y)?;
    if y.is_zero() {
        return Ok(x.clone());
    }
    if x.is_zero() {
        return Ok(if negate_y { neg(y) } else { y.clone() });
    }
    let ctx = x.context();
    let n = i64::from(ctx.precision());
    let (vx, vy) = (x.raw_valuation(), y.raw_valuation());
    let low = vx.min(vy);
    // The higher-valuation operand is invisible at the lower one's precision.
    if vy - vx >= n {
        return Ok(x.clone());
    }
    if vx - vy >= n {
        return Ok(if negate_y { neg(y) } else { y.clone() });
    }
    let sx = BigInt::from(x.unit() * ctx.pow_p((vx - low) as u64));
    let sy = BigInt::from(y.unit() * ctx.pow_p((vy - low) as u64));
    let exact = if negate_y { sx - sy } else { sx + sy };
    let reduced = exact
        .mod_floor(&BigInt::from(ctx.modulus().clone()))
        .to_biguint()
        .expect("reduced residue is nonnegative");
    Ok(canonicalize_uint(reduced, low, ctx))
}

pub fn add(x: &PadicNumber, y: &PadicNumber) -> Result<PadicNumber> {
    add_signed(x, y, false)
}

pub fn sub(x: &PadicNumber, y: &PadicNumber) -> Result<PadicNumber> {
    add_signed(x, y, true)
}

pub fn mul(x: &PadicNumber, y: &PadicNumber) -> Result<PadicNumber> {
    x.check_same_context(y)?;
    if x.is_zero() || y.is_zero() {
        return Ok(PadicNumber::zero(x.context()));
    }
    let ctx = x.context();
    let unit = (x.unit() * y.unit()) % ctx.modulus();
    Ok(PadicNumber::from_parts_unchecked(
        ctx,
        unit,
        x.raw_valuation() + y.raw_valuation(),
    ))
}

pub fn div(x: &PadicNumber, y: &PadicNumber) -> Result<PadicNumber> {
    x.check_same_context(y)?;
    mul(x, &inv(y)?)
}

/// `x^n` for any integer `n`; `x^0 = 1`, including `0^0`.
pub fn pow_int(x: &PadicNumber, n: i64) -> Result<PadicNumber> {
    let ctx = x.context();
    if n == 0 {
        return Ok(PadicNumber::one(ctx));
    }
    if x.is_zero() {
        return if n < 0 {
            Err(PadicError::DivisionByZero)
        } else {
            Ok(x.clone())
        };
    }
    let base = if n < 0 { inv(x)? } else { x.clone() };
    let e = n.unsigned_abs();
    let unit = base.unit().modpow(&BigUint::from(e), ctx.modulus());
    let val = base
        .raw_valuation()
        .checked_mul(e as i64)
        .expect("valuation overflow in pow_int");
    Ok(PadicNumber::from_parts_unchecked(ctx, unit, val))
}

pub fn equal(x: &PadicNumber, y: &PadicNumber) -> Result<bool> {
    x.check_same_context(y)?;
    Ok(x.raw_valuation() == y.raw_valuation() && x.unit() == y.unit())
}

pub fn is_zero(x: &PadicNumber) -> bool {
    x.is_zero()
}
