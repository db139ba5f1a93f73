use thiserror::Error;

/// Failure modes of the geometric kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("degenerate point: |B| = {pairing:e} is below the pairing threshold")]
    DegeneratePoint { pairing: f64 },
    #[error("zero homogeneous vector")]
    ZeroVector,
    #[error("(zeta, xi) is not in the bundle: |xi . conj(zeta)| = {defect:e}")]
    NotInBundle { defect: f64 },
    #[error("chart {chart} is singular at this point")]
    ChartSingular { chart: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix does not lie in p (defect {defect:e})")]
    NotInP { defect: f64 },
    #[error("potential table failed its residual audit: max residual {residual:e}")]
    StepTooLarge { residual: f64 },
    #[error("potential derivative became non-positive at N = {at}")]
    NonPositive { at: f64 },
    #[error("N = {value} is outside the tabulated range [1, {max}]")]
    OutOfTable { value: f64, max: f64 },
    #[error("frame has {found} vectors, expected {expected}")]
    FrameSizeMismatch { expected: usize, found: usize },
    #[error("tau = {re}{im:+}i is outside the admissible strip 0 < |Re tau| < {halfwidth}")]
    OutOfStrip { re: f64, im: f64, halfwidth: f64 },
    #[error("tau is within the pole guard of a tan singularity (|cos tau| = {cos_abs:e})")]
    PoleProximity { cos_abs: f64 },
    #[error("slice angle {theta} lies on the degenerate lattice")]
    DegenerateSlice { theta: f64 },
    #[error("profile start sits on a zero of G (|G| = {g_abs:e})")]
    StagnationAtZeroOfG { g_abs: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;
