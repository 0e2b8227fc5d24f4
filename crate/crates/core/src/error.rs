use thiserror::Error;

/// Why a square root does not exist in ℚ_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotASquareReason {
    OddValuation,
    NonResidueUnit,
}

impl std::fmt::Display for NotASquareReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotASquareReason::OddValuation => f.write_str("odd valuation"),
            NotASquareReason::NonResidueUnit => f.write_str("unit is not a quadratic residue"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("{0} is not prime")]
    Primality(u64),
    #[error("precision must be at least 1, got {0}")]
    Precision(u32),
    #[error("operands belong to different contexts")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a square: {0}")]
    NotASquare(NotASquareReason),
    #[error("outside domain: {0}")]
    OutsideDomain(&'static str),
    #[error("negative valuation {0} has no integer lift")]
    NegativeValuation(i64),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("seed is not a root modulo p")]
    SeedNotRoot,
    #[error("derivative vanishes modulo p at the seed")]
    SingularSeed,
    #[error("Newton iteration did not reach a fixed point within {0} steps")]
    NoConvergence(usize),
    #[error("not canonical: {0}")]
    NotCanonical(&'static str),
}

impl PadicError {
    /// Stable identifier used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            PadicError::Primality(_) => "PrimalityError",
            PadicError::Precision(_) => "PrecisionError",
            PadicError::ContextMismatch => "ContextMismatch",
            PadicError::DivisionByZero => "DivisionByZero",
            PadicError::NotASquare(_) => "NotASquare",
            PadicError::OutsideDomain(_) => "OutsideDomain",
            PadicError::NegativeValuation(_) => "NegativeValuation",
            PadicError::Syntax { .. } => "SyntaxError",
            PadicError::SeedNotRoot => "SeedNotRoot",
            PadicError::SingularSeed => "SingularSeed",
            PadicError::NoConvergence(_) => "NoConvergence",
            PadicError::NotCanonical(_) => "NotCanonical",
        }
    }

    pub(crate) fn syntax(position: usize, message: impl Into<String>) -> Self {
        PadicError::Syntax {
            position,
            message: message.into(),
        }
    }
}

pub type Result<T, E = PadicError> = std::result::Result<T, E>;
