//! Moving between ℚ_p and ℤ/ℚ, and the text forms of p-adic numbers.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::inv_mod;
use crate::context::{PadicContext, PrintMode};
use crate::error::{PadicError, Result};
use crate::number::{canonicalize, strip_p, PadicNumber};

/// Exact fraction in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// The inclusion ℤ ↪ ℚ_p.
pub fn from_integer(k: &BigInt, ctx: &Arc<PadicContext>) -> PadicNumber {
    canonicalize(k, 0, ctx)
}

/// The inclusion ℚ ↪ ℚ_p.
pub fn from_rational(q: &Rational, ctx: &Arc<PadicContext>) -> PadicNumber {
    if q.is_zero() {
        return PadicNumber::zero(ctx);
    }
    let (sign, num) = q.numer().clone().into_parts();
    let mut num = num;
    let mut den = q.denom().magnitude().clone();
    let v = strip_p(&mut num, ctx.prime()) - strip_p(&mut den, ctx.prime());
    let m = ctx.modulus();
    let mut unit = (num % m) * inv_mod(&(den % m), m) % m;
    if sign == Sign::Minus {
        unit = m - unit;
    }
    PadicNumber::from_parts_unchecked(ctx, unit, v)
}

/// The integer `u * p^v`, defined for v ≥ 0.
pub fn to_integer(x: &PadicNumber) -> Result<BigInt> {
    if x.is_zero() {
        return Ok(BigInt::zero());
    }
    let v = x.raw_valuation();
    if v < 0 {
        return Err(PadicError::NegativeValuation(v));
    }
    Ok(BigInt::from(x.unit() * x.context().pow_p(v as u64)))
}

/// The exact rational `u * p^v`.
pub fn to_rational(x: &PadicNumber) -> Rational {
    x.lift()
}

fn write_power(out: &mut String, p: u64, k: i64) {
    use std::fmt::Write;
    match k {
        0 => {}
        1 => write!(out, "*{p}").unwrap(),
        _ => write!(out, "*{p}^{k}").unwrap(),
    }
}

/// Renders `x` in the given mode.
pub fn format(x: &PadicNumber, mode: PrintMode) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let p = x.context().p();
    match mode {
        PrintMode::Series => {
            let mut out = String::new();
            for (k, d) in x.digits().nonzero_terms() {
                if !out.is_empty() {
                    out.push_str(" + ");
                }
                out.push_str(&d.to_string());
                write_power(&mut out, p, k);
            }
            out
        }
        PrintMode::Terse => {
            let q = to_rational(x);
            if q.is_integer() {
                q.numer().to_string()
            } else {
                format!("{}/{}", q.numer(), q.denom())
            }
        }
        PrintMode::ValUnit => {
            let mut out = x.unit().to_string();
            let v = x.raw_valuation();
            if v != 0 {
                out.push_str(&format!("*{p}^{v}"));
            }
            out
        }
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self, self.context().print_mode()))
    }
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            chars: src
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or(self.src.len())
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn natural(&mut self) -> Result<BigUint> {
        let start = self.offset();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return Err(PadicError::syntax(start, "expected a number"));
        }
        Ok(digits.parse().expect("ascii digits"))
    }

    fn signed_exponent(&mut self) -> Result<i64> {
        let start = self.offset();
        let negative = self.eat('-');
        let n = self.natural()?;
        let n = i64::try_from(BigInt::from(n))
            .map_err(|_| PadicError::syntax(start, "exponent out of range"))?;
        Ok(if negative { -n } else { n })
    }
}

/// Parses an integer, a fraction `a/b`, or a sum of terms `a*p^k` as
/// produced by [`format`] in any mode.
pub fn parse(text: &str, ctx: &Arc<PadicContext>) -> Result<PadicNumber> {
    let mut cur = Cursor::new(text);
    if cur.peek().is_none() {
        return Err(PadicError::syntax(0, "empty input"));
    }
    let p = ctx.p();
    let mut total = Rational::zero();
    let mut negative = cur.eat('-');
    loop {
        let coeff = BigInt::from(cur.natural()?);
        let mut term = Rational::from_integer(coeff);
        if cur.eat('/') {
            let at = cur.offset();
            let den = cur.natural()?;
            if den.is_zero() {
                return Err(PadicError::syntax(at, "zero denominator"));
            }
            term /= Rational::from_integer(den.into());
        } else if cur.eat('*') {
            let at = cur.offset();
            let base = cur.natural()?;
            if base != BigUint::from(p) {
                return Err(PadicError::syntax(
                    at,
                    format!("expected the prime {p} as base, found {base}"),
                ));
            }
            let k = if cur.eat('^') {
                cur.signed_exponent()?
            } else {
                1
            };
            let pk = Rational::from_integer(BigInt::from(p)).pow(k.unsigned_abs() as i32);
            if k >= 0 {
                term *= pk;
            } else {
                term /= pk;
            }
        }
        if negative {
            term = -term;
        }
        total += term;
        match cur.peek() {
            None => break,
            Some('+') => {
                cur.pos += 1;
                negative = false;
            }
            Some('-') => {
                cur.pos += 1;
                negative = true;
            }
            Some(c) => {
                return Err(PadicError::syntax(
                    cur.offset(),
                    format!("unexpected character `{c}`"),
                ))
            }
        }
    }
    Ok(from_rational(&total, ctx))
}

/// `num/den` in lowest terms.
pub fn rational(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    let r = Rational::new(BigInt::from(num), BigInt::from(den));
    debug_assert!(r.denom().is_positive() && r.numer().gcd(r.denom()).is_one());
    r
}
