//! Lie-theoretic and volume computations for quaternionic, complex and real hyperbolic
//! orbifolds.

pub mod curvature;
pub mod error;
pub mod lie;
pub mod matrix;
pub mod metric;
pub mod quaternion;
pub mod rng;
pub mod volume;

pub use error::{Error, Result};
pub use lie::{build_basis, LieAlgebraModel};
pub use matrix::{is_in_sp_lie_algebra, mat_bracket, QuaternionMatrix};
pub use metric::MetricModel;
pub use quaternion::{quat_mul, GroundField, Quaternion};
