//! Numerical dynamics: orbits, Lyapunov exponents and a fixed-point oracle
//! checked against the exact periodic-point counts.

pub mod dd;
pub mod fixed_points;
pub mod lyapunov;
pub mod orbit;

use thiserror::Error;

use crate::cohomology::CohomologyError;

pub use fixed_points::{
    count_consistency, find_fixed_points, CountRow, CountStatus, FixedPoint, FixedPointOptions,
    FixedPointSet,
};
pub use lyapunov::{lyapunov, LyapunovEstimate};
pub use orbit::{iterate_orbit, real_seed, OrbitRecord};

#[derive(Debug, Error)]
pub enum ErgodicError {
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("surface is too close to singular (|discriminant| = {0:e}); periodic points may collide")]
    NearDiscriminant(f64),
    #[error("invalid option `{0}`")]
    BadOption(&'static str),
}
