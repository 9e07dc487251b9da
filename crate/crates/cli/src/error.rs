use thiserror::Error;

use tropint::degree::DegreeError;
use tropint::intersect::IntersectError;
use tropint::polytope::PolytopeError;
use tropint::tropical::TropicalError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension cap: {0}")]
    DimensionCap(String),
    #[error("arity or dimension mismatch: {0}")]
    Arity(String),
    #[error("non-generic instance: {0}; perturb coefficients and retry")]
    NonGeneric(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::DimensionCap(_) => 3,
            CliError::Arity(_) => 4,
            CliError::NonGeneric(_) => 5,
            CliError::TheoremViolation(_) => 6,
            CliError::Internal(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<PolytopeError> for CliError {
    fn from(e: PolytopeError) -> Self {
        match e {
            PolytopeError::DimensionTooLarge { .. } => CliError::DimensionCap(e.to_string()),
            PolytopeError::DimensionMismatch { .. } => CliError::Arity(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<TropicalError> for CliError {
    fn from(e: TropicalError) -> Self {
        match e {
            TropicalError::DimensionTooLarge { .. } => CliError::DimensionCap(e.to_string()),
            TropicalError::DimensionMismatch { .. } => CliError::Arity(e.to_string()),
            TropicalError::EmptyPolynomial | TropicalError::DuplicateExponent(_) => CliError::Parse(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<IntersectError> for CliError {
    fn from(e: IntersectError) -> Self {
        match e {
            IntersectError::DimensionTooLarge { .. } => CliError::DimensionCap(e.to_string()),
            IntersectError::DimensionMismatch { .. } | IntersectError::InvalidCodimension { .. } => {
                CliError::Arity(e.to_string())
            }
            IntersectError::NonGenericPerturbation | IntersectError::NonGenericInstance(_) => {
                CliError::NonGeneric(e.to_string())
            }
            IntersectError::BernsteinMismatch { .. } => CliError::TheoremViolation(e.to_string()),
            IntersectError::Polytope(p) => p.into(),
            IntersectError::Tropical(t) => t.into(),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<DegreeError> for CliError {
    fn from(e: DegreeError) -> Self {
        match e {
            DegreeError::UnsupportedDimension(n) if n > 3 => CliError::DimensionCap(e.to_string()),
            DegreeError::UnsupportedDimension(_) | DegreeError::DimensionMismatch { .. } => {
                CliError::Arity(e.to_string())
            }
            DegreeError::ZeroSamples => CliError::Arity(e.to_string()),
            DegreeError::SamplingExhausted { .. } => CliError::NonGeneric(e.to_string()),
            DegreeError::Tropical(t) => t.into(),
            DegreeError::Polytope(p) => p.into(),
            DegreeError::InvalidLine(_) => CliError::Internal(e.to_string()),
        }
    }
}
