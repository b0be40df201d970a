//! Error types shared across the simulator.

use thiserror::Error;

/// Errors produced by construction, linear algebra, and simulation routines.
#[derive(Debug, Clone, Error)]
pub enum SimError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("dimension cap exceeded: {actual} > {cap}")]
    DimensionCapExceeded { actual: usize, cap: usize },
    #[error("matrix is not Hermitian: max |M[i][j] - conj(M[j][i])| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },
    #[error("invalid density operator: {0}")]
    InvalidDensity(String),
    #[error("invalid factor index {index} (register has {count} factors)")]
    InvalidFactorIndex { index: usize, count: usize },
    #[error("eigensolver failed to converge")]
    ConvergenceFailure,
    #[error("operator is not unitary within tolerance (deviation {deviation:.3e})")]
    NonUnitary { deviation: f64 },
    #[error("operator is not a projector within tolerance (deviation {deviation:.3e})")]
    NonProjector { deviation: f64 },
    #[error("projectors do not resolve the identity (deviation {deviation:.3e})")]
    NonResolutionOfIdentity { deviation: f64 },
    #[error("missing parameter `{0}` for generator")]
    MissingParameter(String),
    #[error("parameter `{name}` must be positive, got {value}")]
    NonpositiveParameter { name: String, value: f64 },
    #[error("generator kind {kind:?} is not available on the {side:?} side")]
    UnknownKind { kind: String, side: String },
    #[error("generator side mismatch: expected {expected}, got {actual}")]
    SideMismatch { expected: String, actual: String },
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
    #[error("Hamiltonian is not separable (kinetic + potential); cannot integrate with leapfrog")]
    NonSeparable,
    #[error("unknown metric `{0}`")]
    UnknownMetric(String),
    #[error("Lindblad step too large: dt * (|H| + sum gamma |L|^2) = {0:.3e} > 0.1")]
    StepTooLarge(f64),
    #[error("positivity violation: min eigenvalue {0:.3e} at step {1}")]
    PositivityViolation(f64, usize),
    #[error("trace drift: |tr - 1| = {0:.3e} at step {1}")]
    TraceDrift(f64, usize),
    #[error("state support violation: sigma has a kernel component overlapping rho")]
    SupportViolation,
    #[error("channel realization is not trace preserving (deviation {deviation:.3e})")]
    TraceNonPreserving { deviation: f64 },
    #[error("claimed classical-output channel does not decohere basis-diagonal inputs")]
    ChannelContract,
    #[error("series too short: {len} points (need at least {min})")]
    SeriesTooShort { len: usize, min: usize },
    #[error("nonpositive magnitude sample {value:.3e} at index {index}")]
    NonpositiveSample { value: f64, index: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),
}

pub type Result<T> = std::result::Result<T, SimError>;
