use thiserror::Error;

/// Failures raised by the exact kernel and the calculus built on it.
///
/// Degenerate inputs are always reported, never silently canonicalized.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("composition with a constant lands on a pole")]
    PoleAtConstant,
    #[error("matrix is singular (determinant vanishes identically)")]
    SingularMatrix,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("series has zero constant term and cannot be inverted")]
    NonUnitSeries,
    #[error("exponential requires a series with zero constant term")]
    NonNilpotentExponent,
    #[error("truncation order must be at least {min}, got {got}")]
    OrderTooSmall { min: usize, got: usize },
    #[error("input is constant")]
    ConstantInput,
    #[error("eccentricity must be nonzero")]
    ZeroEccentricity,
    #[error("gauge matrix is singular")]
    SingularGauge,
    #[error("Maurer-Cartan weight must be nonzero")]
    ZeroWeight,
    #[error("input matrix is singular")]
    SingularInput,
    #[error("off-diagonal coupling vanishes identically; cannot eliminate")]
    DegenerateCoupling,
    #[error("frame change is not a constant invertible matrix")]
    SingularFrameChange,
    #[error("unsupported Eisenstein weight {0}; expected 2, 4 or 6")]
    UnsupportedWeight(u32),
    #[error("spring constants must be positive")]
    NonPositiveStiffness,
    #[error("coefficient has a pole at t = {0} on the integration path")]
    PoleOnPath(f64),
    #[error("clock change is not strictly monotone on the window")]
    NonMonotoneClock,
    #[error("phase function is constant")]
    ConstantPhase,
    #[error("phase function must vanish at the origin")]
    PhaseNotCentered,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
