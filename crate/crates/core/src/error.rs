use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid needs an even sample count of at least 16, got {0}")]
    InvalidGrid(usize),
    #[error("period must be positive and finite, got {0}")]
    InvalidPeriod(f64),
    #[error("non-finite sample at index {0}")]
    NonFiniteSample(usize),
    #[error("derivative order {0} is outside 1..=3")]
    InvalidOrder(u8),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("grids do not line up: expected {expected} samples, got {got}")]
    GridMismatch { expected: usize, got: usize },
    #[error("sampled curves must be periodic")]
    OpenCurve,

    #[error("tangent is not spacelike at sample {index}")]
    NonSpacelikeTangent { index: usize },
    #[error("curve is degenerate: {0}")]
    DegenerateCurve(&'static str),

    #[error("closure conditions violated: r_cos = {r_cos:e}, r_sin = {r_sin:e}")]
    NotClosed { r_cos: f64, r_sin: f64 },
    #[error("curvature is not positive at sample {index} (kappa = {value:e})")]
    NonPositiveCurvature { index: usize, value: f64 },
    #[error("base curve is not convex: {0}")]
    NonConvex(&'static str),
    #[error("base curve is not simple: segments {first} and {second} cross")]
    NotSimple { first: usize, second: usize },
    #[error("curve is not planar: out-of-plane deviation {deviation:e}")]
    NotPlanar { deviation: f64 },
    #[error("curvature vector is not spacelike at sample {index} (bracket = {bracket:e})")]
    NotSpacelike { index: usize, bracket: f64 },
    #[error("kernel solution is not positive: min f = {min_f:e}")]
    NonPositiveSolution { min_f: f64 },

    #[error("trochoid does not close: (a+b)/b = {ratio} is not an integer")]
    NonClosingParameters { ratio: f64 },
    #[error("sample {index} lies outside the open unit disk")]
    OutsideDisk { index: usize },
    #[error("torsion target must be nonzero")]
    ZeroTorsionTarget,
    #[error("B × B′ vanishes identically")]
    DegenerateSpeed,
}
