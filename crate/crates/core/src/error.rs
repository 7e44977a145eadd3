use thiserror::Error;

use crate::analysis::DensityRow;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("the signal is identically zero")]
    ZeroSignal,
    #[error("power-law range of {len} terms exceeds the summation cap of {cap}")]
    PowerLawRangeTooLarge { len: String, cap: u64 },
    #[error("dense materialization of width {width} exceeds the cap of {cap}")]
    MaterializationTooLarge { width: String, cap: u64 },
    #[error("invalid signal: {0}")]
    InvalidSignal(String),
    #[error("radius must be positive")]
    NonpositiveRadius,
    #[error("invalid growth function: {0}")]
    GrowthSpecInvalid(String),
    #[error("no admissible parameter found: {0}")]
    InfeasibleConstraint(String),
    #[error("parameter violation: {0}")]
    ParameterViolation(String),
    #[error("ratio r/|n| is undefined at n = 0")]
    ZeroIndex,
    #[error("evaluation budget exceeded after {} complete rows", partial.len())]
    BudgetExceeded { partial: Box<Vec<DensityRow>> },
    #[error("working precision of {0} bits cannot separate the compared quantities")]
    PrecisionExhausted(u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Stable name of the variant, used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroSignal => "ZeroSignal",
            Error::PowerLawRangeTooLarge { .. } => "PowerLawRangeTooLarge",
            Error::MaterializationTooLarge { .. } => "MaterializationTooLarge",
            Error::InvalidSignal(_) => "InvalidSignal",
            Error::NonpositiveRadius => "NonpositiveRadius",
            Error::GrowthSpecInvalid(_) => "GrowthSpecInvalid",
            Error::InfeasibleConstraint(_) => "InfeasibleConstraint",
            Error::ParameterViolation(_) => "ParameterViolation",
            Error::ZeroIndex => "ZeroIndex",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
            Error::Json(_) => "Json",
            Error::Csv(_) => "Csv",
        }
    }

    /// True for errors caused by a resource cap rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::PowerLawRangeTooLarge { .. }
                | Error::MaterializationTooLarge { .. }
                | Error::BudgetExceeded { .. }
                | Error::PrecisionExhausted(_)
        )
    }
}
