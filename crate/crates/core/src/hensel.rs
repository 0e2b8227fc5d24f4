//! Integer polynomials and Newton/Hensel root lifting over ℤ_p.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::context::PadicContext;
use crate::convert::from_integer;
use crate::error::{PadicError, Result};
use crate::number::PadicNumber;

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Horner evaluation at an integer.
    pub fn eval_integer(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in ℚ_p at the precision of `x`.
    pub fn eval(&self, x: &PadicNumber) -> PadicNumber {
        let ctx = x.context();
        let mut acc = PadicNumber::zero(ctx);
        for c in self.coeffs.iter().rev() {
            acc = arith::mul(&acc, x).expect("same context");
            acc = arith::add(&acc, &from_integer(c, ctx)).expect("same context");
        }
        acc
    }
}

pub fn poly_eval(f: &IntPolynomial, x: &PadicNumber) -> PadicNumber {
    f.eval(x)
}

pub fn poly_derivative(f: &IntPolynomial) -> IntPolynomial {
    f.derivative()
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str("x")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = PadicError;

    /// Sums of `c`, `c*x`, `c*x^k`, `x`, `x^k` joined by `+`/`-`.
    fn from_str(text: &str) -> Result<Self> {
        let chars: Vec<(usize, char)> = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        let end = text.len();
        let at = |i: usize| chars.get(i).map(|&(o, _)| o).unwrap_or(end);
        if chars.is_empty() {
            return Err(PadicError::syntax(0, "empty polynomial"));
        }
        let mut i = 0;
        let mut coeffs: Vec<BigInt> = Vec::new();
        let number = |i: &mut usize| -> Option<BigInt> {
            let start = *i;
            while chars.get(*i).is_some_and(|(_, c)| c.is_ascii_digit()) {
                *i += 1;
            }
            (start < *i).then(|| {
                chars[start..*i]
                    .iter()
                    .map(|&(_, c)| c)
                    .collect::<String>()
                    .parse()
                    .expect("ascii digits")
            })
        };
        let mut negative = false;
        if chars[0].1 == '-' {
            negative = true;
            i = 1;
        } else if chars[0].1 == '+' {
            i = 1;
        }
        loop {
            let coeff = number(&mut i);
            let mut degree = 0usize;
            let has_x = if coeff.is_some() {
                if chars.get(i).is_some_and(|&(_, c)| c == '*') {
                    i += 1;
                    if chars.get(i).is_some_and(|&(_, c)| c == 'x') {
                        true
                    } else {
                        return Err(PadicError::syntax(at(i), "expected `x` after `*`"));
                    }
                } else {
                    false
                }
            } else if chars.get(i).is_some_and(|&(_, c)| c == 'x') {
                true
            } else {
                return Err(PadicError::syntax(at(i), "expected a coefficient or `x`"));
            };
            if has_x {
                i += 1;
                degree = 1;
                if chars.get(i).is_some_and(|&(_, c)| c == '^') {
                    i += 1;
                    let pos = at(i);
                    let k = number(&mut i)
                        .ok_or_else(|| PadicError::syntax(pos, "expected an exponent"))?;
                    degree = usize::try_from(k)
                        .map_err(|_| PadicError::syntax(pos, "exponent too large"))?;
                    if degree > 1 << 16 {
                        return Err(PadicError::syntax(pos, "exponent too large"));
                    }
                }
            }
            let mut c = coeff.unwrap_or_else(BigInt::one);
            if negative {
                c = -c;
            }
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, BigInt::zero());
            }
            coeffs[degree] += c;
            match chars.get(i) {
                None => break,
                Some(&(_, '+')) => negative = false,
                Some(&(_, '-')) => negative = true,
                Some(&(o, c)) => {
                    return Err(PadicError::syntax(o, format!("unexpected character `{c}`")))
                }
            }
            i += 1;
        }
        Ok(IntPolynomial::new(coeffs))
    }
}

/// Outcome of a Hensel lift: the root and the Newton iterates that led to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HenselResult {
    pub root: PadicNumber,
    pub iterations: usize,
    /// α_1 (the seed), α_2, ...; the last two entries are equal.
    pub trace: Vec<PadicNumber>,
}

/// ⌈log₂ N⌉ + 2
pub fn iteration_cap(precision: u32) -> usize {
    let n = precision.max(1);
    let ceil_log2 = (u32::BITS - (n - 1).leading_zeros()) as usize;
    ceil_log2 + 2
}

/// Lifts a simple root of `f` modulo p to a root in ℤ_p at context precision
/// by iterating `α ← α - f(α)/f'(α)` until the iterate stops changing.
pub fn hensel_lift(
    f: &IntPolynomial,
    seed: &BigInt,
    ctx: &Arc<PadicContext>,
) -> Result<HenselResult> {
    let p = BigInt::from(ctx.p());
    if !f.eval_integer(seed).mod_floor(&p).is_zero() {
        return Err(PadicError::SeedNotRoot);
    }
    let df = f.derivative();
    if df.eval_integer(seed).mod_floor(&p).is_zero() {
        return Err(PadicError::SingularSeed);
    }
    let cap = iteration_cap(ctx.precision());
    let mut alpha = from_integer(seed, ctx);
    let mut trace = vec![alpha.clone()];
    for step in 1..=cap {
        let correction = arith::div(&f.eval(&alpha), &df.eval(&alpha))?;
        let next = arith::sub(&alpha, &correction)?;
        trace.push(next.clone());
        if next == alpha {
            return Ok(HenselResult {
                root: next,
                iterations: step,
                trace,
            });
        }
        alpha = next;
    }
    Err(PadicError::NoConvergence(cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::pow_int;
    use crate::context::{make_context, PrintMode};
    use crate::convert::format;
    use crate::number::Valuation;

    fn ctx(p: u64, n: u32) -> Arc<PadicContext> {
        make_context(p, n, PrintMode::Series).unwrap()
    }

    fn int(k: i64, c: &Arc<PadicContext>) -> PadicNumber {
        from_integer(&BigInt::from(k), c)
    }

    #[test]
    fn parse_and_display() {
        let f: IntPolynomial = "x^3-2".parse().unwrap();
        assert_eq!(f, IntPolynomial::from_i64s(&[-2, 0, 0, 1]));
        assert_eq!(f.to_string(), "x^3 - 2");
        let g: IntPolynomial = " -3*x^2 + x - 7*x + 4 ".parse().unwrap();
        assert_eq!(g, IntPolynomial::from_i64s(&[4, -6, -3]));
        assert_eq!(g.to_string().parse::<IntPolynomial>().unwrap(), g);
        assert_eq!(
            "x - x".parse::<IntPolynomial>().unwrap(),
            IntPolynomial::zero()
        );
        assert!(matches!(
            "x^".parse::<IntPolynomial>(),
            Err(PadicError::Syntax { position: 2, .. })
        ));
        assert!(matches!(
            "2*y".parse::<IntPolynomial>(),
            Err(PadicError::Syntax { position: 2, .. })
        ));
        assert!("".parse::<IntPolynomial>().is_err());
        assert!("x +".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn eval_examples() {
        let c = ctx(5, 20);
        let f = IntPolynomial::from_i64s(&[-2, 0, 0, 1]);
        let y = poly_eval(&f, &int(3, &c));
        assert_eq!(y, int(25, &c));
        assert_eq!(y.valuation(), Valuation::Finite(2));
        assert!(poly_eval(&IntPolynomial::zero(), &int(7, &c)).is_zero());
        let x = int(-41, &c);
        assert_eq!(poly_eval(&IntPolynomial::from_i64s(&[0, 1]), &x), x);
    }

    #[test]
    fn derivative_examples() {
        let f = IntPolynomial::from_i64s(&[-2, 0, 0, 1]);
        assert_eq!(poly_derivative(&f), IntPolynomial::from_i64s(&[0, 0, 3]));
        assert!(poly_derivative(&IntPolynomial::from_i64s(&[9])).is_zero());
        assert_eq!(
            poly_derivative(&IntPolynomial::from_i64s(&[0, 1])),
            IntPolynomial::from_i64s(&[1])
        );
    }

    #[test]
    fn cap_values() {
        assert_eq!(iteration_cap(1), 2);
        assert_eq!(iteration_cap(2), 3);
        assert_eq!(iteration_cap(20), 7);
        assert_eq!(iteration_cap(64), 8);
    }

    #[test]
    fn cube_root_of_two_in_z5() {
        let c = ctx(5, 20);
        let f: IntPolynomial = "x^3 - 2".parse().unwrap();
        let r = hensel_lift(&f, &BigInt::from(3), &c).unwrap();
        assert_eq!(
            format(&r.root, PrintMode::Series),
            "3 + 2*5^2 + 2*5^3 + 3*5^4 + 1*5^5 + 4*5^6 + 2*5^8 + 3*5^9 + 4*5^12 \
             + 4*5^14 + 4*5^15 + 3*5^16 + 1*5^17 + 1*5^18 + 2*5^19"
        );
        assert_eq!(pow_int(&r.root, 3).unwrap(), int(2, &c));
        assert_eq!(r.trace.first(), Some(&int(3, &c)));
        assert_eq!(r.trace.len(), r.iterations + 1);
        let n = r.trace.len();
        assert_eq!(r.trace[n - 1], r.trace[n - 2]);
        // ν(f(α_n)) strictly increases until the fixed point
        let vals: Vec<Valuation> = r.trace.iter().map(|a| f.eval(a).valuation()).collect();
        for w in vals[..n - 1].windows(2) {
            assert!(w[0] < w[1], "{vals:?}");
        }
        assert!(vals[n - 2].is_infinite());
    }

    #[test]
    fn small_precision_root() {
        let c = ctx(5, 2);
        let f: IntPolynomial = "x^2 - 6".parse().unwrap();
        let r = hensel_lift(&f, &BigInt::from(1), &c).unwrap();
        assert_eq!(r.root, int(16, &c));
    }

    #[test]
    fn seed_errors() {
        let c = ctx(2, 20);
        let f: IntPolynomial = "x^2 - 1".parse().unwrap();
        assert_eq!(
            hensel_lift(&f, &BigInt::from(1), &c),
            Err(PadicError::SingularSeed)
        );
        let c5 = ctx(5, 20);
        let g: IntPolynomial = "x^3 - 2".parse().unwrap();
        assert_eq!(
            hensel_lift(&g, &BigInt::from(1), &c5),
            Err(PadicError::SeedNotRoot)
        );
    }

    #[test]
    fn roots_with_positive_valuation() {
        let c = ctx(5, 20);
        let f: IntPolynomial = "x^2 + x + 625".parse().unwrap();
        let r = hensel_lift(&f, &BigInt::from(0), &c).unwrap();
        assert!(f.eval(&r.root).is_zero());
        assert_eq!(r.root.valuation(), Valuation::Finite(4));
        let g: IntPolynomial = "x + 25".parse().unwrap();
        let r = hensel_lift(&g, &BigInt::from(10), &c).unwrap();
        assert_eq!(r.root, int(-25, &c));
    }
}
