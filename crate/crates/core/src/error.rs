//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by calibration, simulation and solver routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A value that must be finite was NaN or infinite.
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    /// RANSAC cannot fit a line because every candidate point pair coincides.
    #[error("degenerate profile: all candidate point pairs are coincident")]
    DegenerateProfile,

    /// The linear bootstrap system does not determine the laser transform.
    #[error("rank-deficient linear system: rank {rank} < {needed} (insufficient pose variety)")]
    RankDeficient { rank: usize, needed: usize },

    /// A dependent parameter entry was given an explicit free/fixed state.
    #[error("mask conflict: `{name}` is a dependent entry and cannot be marked {requested}")]
    MaskConflict {
        name: String,
        requested: &'static str,
    },

    /// An unknown parameter name was used in a mask.
    #[error("unknown parameter name `{name}`")]
    UnknownParameter { name: String },

    /// Unit-vector completion asked for sqrt of a negative number.
    #[error("out of domain: x^2 + y^2 = {norm_sq} exceeds 1")]
    OutOfDomain { norm_sq: f64 },

    /// A scan record references a plane the parameter vector does not hold.
    #[error("plane index {index} out of range (dataset has {count} planes)")]
    PlaneIndexOutOfRange { index: usize, count: usize },

    /// A residual function returned a non-finite value where one was required.
    #[error("residual function returned a non-finite value")]
    NonFiniteResidual,

    /// The damped normal equations stayed unsolvable up to the damping cap.
    #[error("singular normal equations: damped system unsolvable at maximum damping")]
    SingularNormalEquations,

    /// Inverse kinematics did not meet its tolerances within the iteration cap.
    #[error("inverse kinematics did not converge: position error {position_error}, rotation error {rotation_error} after {iterations} iterations")]
    IkNoConvergence {
        position_error: f64,
        rotation_error: f64,
        iterations: usize,
    },

    /// Pose rejection sampling ran out of attempts.
    #[error("pose sampling exhausted after {attempts} attempts ({context})")]
    PoseSamplingExhausted {
        attempts: usize,
        context: &'static str,
    },

    /// A touch observation does not satisfy the prescribed flange orientation.
    #[error("orientation violation: flange rotation deviates from the prescribed touch orientation by {deviation}")]
    OrientationViolation { deviation: f64 },

    /// A summary was requested over an empty value list.
    #[error("empty input: at least one value is required")]
    EmptyInput,

    /// Generic invalid-argument error with context.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
