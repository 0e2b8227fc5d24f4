//! p-adic numbers at fixed relative precision.
//!
//! A [`PadicContext`] fixes the prime `p`, the number `N` of base-p digits
//! kept in the unit part, and a print mode. Every [`PadicNumber`] is stored
//! canonically as `u * p^v` with `p ∤ u < p^N`.
//!
//! ```
//! use padic::{make_context, hensel_lift, IntPolynomial, PrintMode};
//! use num_bigint::BigInt;
//!
//! let ctx = make_context(5, 20, PrintMode::Series).unwrap();
//! let f: IntPolynomial = "x^3 - 2".parse().unwrap();
//! let root = hensel_lift(&f, &BigInt::from(3), &ctx).unwrap().root;
//! assert!(root.to_string().starts_with("3 + 2*5^2 + 2*5^3"));
//! ```

pub mod analytic;
pub mod arith;
pub mod batch;
pub mod context;
pub mod convert;
pub mod error;
pub mod hensel;
pub mod number;

pub use analytic::{exp, log, sqrt, teichmuller};
pub use arith::{add, div, equal, inv, is_zero, mul, neg, pow_int, sub};
pub use context::{make_context, PadicContext, PrintMode, DEFAULT_PRECISION};
pub use convert::{format, from_integer, from_rational, parse, to_integer, to_rational, Rational};
pub use error::{NotASquareReason, PadicError, Result};
pub use hensel::{hensel_lift, poly_derivative, poly_eval, HenselResult, IntPolynomial};
pub use number::{canonicalize, Expansion, PadicNumber, Valuation};
