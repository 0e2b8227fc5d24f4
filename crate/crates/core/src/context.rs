//! Contexts: the prime, working precision and print mode shared by numbers.
//!
//! Contexts are interned in a process-wide registry so that every request
//! for the same `(p, precision, print_mode)` hands back the same instance.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{PadicError, Result};

pub const DEFAULT_PRECISION: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PrintMode {
    /// `3 + 2*5^2 + ...`, nonzero digits in ascending exponent order.
    #[default]
    Series,
    /// Exact decimal integer or fraction.
    Terse,
    /// `u*p^v`.
    ValUnit,
}

impl PrintMode {
    pub fn as_str(self) -> &'static str {
        match self {
            PrintMode::Series => "series",
            PrintMode::Terse => "terse",
            PrintMode::ValUnit => "val-unit",
        }
    }
}

impl fmt::Display for PrintMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PrintMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "series" => Ok(PrintMode::Series),
            "terse" => Ok(PrintMode::Terse),
            "val-unit" | "val_unit" | "valunit" => Ok(PrintMode::ValUnit),
            other => Err(format!("unknown print mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ContextKey {
    pub p: u64,
    pub precision: u32,
    pub print_mode: PrintMode,
}

/// Arithmetic environment for ℚ_p at a fixed relative precision.
#[derive(Debug)]
pub struct PadicContext {
    key: ContextKey,
    prime: BigUint,
    modulus: BigUint,
}

impl PadicContext {
    pub fn p(&self) -> u64 {
        self.key.p
    }

    /// Number of base-p digits kept in the unit part.
    pub fn precision(&self) -> u32 {
        self.key.precision
    }

    pub fn print_mode(&self) -> PrintMode {
        self.key.print_mode
    }

    pub fn key(&self) -> ContextKey {
        self.key
    }

    pub fn prime(&self) -> &BigUint {
        &self.prime
    }

    /// p^N, the modulus the unit part is reduced by.
    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// p^k for a nonnegative exponent.
    pub fn pow_p(&self, k: u64) -> BigUint {
        if k == u64::from(self.key.precision) {
            return self.modulus.clone();
        }
        let k = u32::try_from(k).expect("exponent of p exceeds u32");
        self.prime.pow(k)
    }

    pub(crate) fn same(&self, other: &PadicContext) -> bool {
        std::ptr::eq(self, other) || self.key == other.key
    }
}

impl fmt::Display for PadicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QQ_{} (of precision {})", self.key.p, self.key.precision)
    }
}

pub fn is_prime(p: u64) -> bool {
    primal_check::miller_rabin(p)
}

fn registry() -> &'static Mutex<HashMap<ContextKey, Arc<PadicContext>>> {
    static REGISTRY: OnceLock<Mutex<HashMap<ContextKey, Arc<PadicContext>>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Returns the unique context for `(p, precision, print_mode)`, creating it on
/// first use.
pub fn make_context(p: u64, precision: u32, print_mode: PrintMode) -> Result<Arc<PadicContext>> {
    if !is_prime(p) {
        return Err(PadicError::Primality(p));
    }
    if precision < 1 {
        return Err(PadicError::Precision(precision));
    }
    let key = ContextKey {
        p,
        precision,
        print_mode,
    };
    let mut contexts = registry().lock().unwrap_or_else(|e| e.into_inner());
    let ctx = contexts.entry(key).or_insert_with(|| {
        let prime = BigUint::from(p);
        let modulus = prime.pow(precision);
        debug_assert!(modulus > BigUint::one());
        Arc::new(PadicContext {
            key,
            prime,
            modulus,
        })
    });
    Ok(Arc::clone(ctx))
}
