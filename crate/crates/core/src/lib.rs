//! Simultaneous calibration of a 6-DOF serial robot's DH parameters and the
//! extrinsic pose of a flange-mounted 2D laser range finder.
//!
//! The toolkit solves a weighted nonlinear least-squares problem built from
//! two kinds of constraints:
//!
//! * **planar constraints** — laser profile points of a flat plate must
//!   satisfy the plate's plane equation `n·p = l`, and
//! * **distance constraints** — a flange-mounted tool-tip touching a pair of
//!   holes a known distance `D` apart must travel exactly that distance.
//!
//! Supporting machinery covers a Levenberg-Marquardt solver with
//! finite-difference Jacobians ([`solver`]), an SVD-based identifiability
//! analysis of the calibration parameters ([`identifiability`]), the tool-tip
//! calibration geometry ([`tooltip`]), a synthetic-data simulator that stands
//! in for the physical rig ([`simulator`]), and validation metrics
//! ([`metrics`]).
//!
//! All numeric code is generic over the scalar type through [`num::Real`]
//! (`f32` or `f64`); the `*64` aliases at the crate root cover the common
//! double-precision instantiation. Internal units are meters and radians
//! throughout.

pub mod calibrate;
pub mod error;
pub mod identifiability;
pub mod kinematics;
pub mod laser;
pub mod metrics;
pub mod num;
pub mod objective;
pub mod simulator;
pub mod solver;
pub mod tooltip;

pub use error::{Error, Result};

/// Double-precision aliases for the main domain types.
pub type DhRow64 = kinematics::DhRow<f64>;
pub type DhTable64 = kinematics::DhTable<f64>;
pub type JointVector64 = kinematics::JointVector<f64>;
pub type RigidTransform64 = kinematics::RigidTransform<f64>;
pub type ToolOffset64 = kinematics::ToolOffset<f64>;
pub type LaserExtrinsics64 = laser::LaserExtrinsics<f64>;
pub type ScanPoint64 = laser::ScanPoint<f64>;
pub type ScanRecord64 = laser::ScanRecord<f64>;
// TEMP pub type PlaneParams64 = objective::PlaneParams<f64>;
// TEMP pub type ParameterVector64 = objective::ParameterVector<f64>;
// TEMP pub type HolePairRecord64 = objective::HolePairRecord<f64>;
// TEMP pub type SolverOptions64 = solver::SolverOptions<f64>;
// TEMP pub type FitResult64 = solver::FitResult<f64>;
// TEMP pub type GroundTruth64 = simulator::GroundTruth<f64>;
// TEMP pub type SyntheticDataset64 = simulator::SyntheticDataset<f64>;
// TEMP pub type ErrorSummary64 = metrics::ErrorSummary<f64>;
