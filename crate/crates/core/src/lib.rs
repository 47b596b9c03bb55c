//! Chaotic dynamics of the Poincaré return maps of Painlevé VI, realised as
//! words in three involutions acting on an affine cubic surface.
//!
//! * [`word`]: loops, Coxeter words, reduction and conjugacy classes.
//! * [`params`]: the parameter spaces and the parameter-level Riemann-Hilbert map.
//! * [`cohomology`]: exact integer linear algebra, dynamical degrees, periodic counts.
//! * [`surface`]: the cubic surface, its involutions and its 27 lines.
//! * [`ergodic`]: orbits, Lyapunov exponents and a numerical fixed-point oracle.
//! * [`cli`]: the `pvi` command-line front end.

pub mod cli;
pub mod cohomology;
pub mod ergodic;
pub mod json;
pub mod params;
pub mod surface;
pub mod word;

pub use cohomology::{periodic_count, SpectralReport};
pub use params::{KappaParams, ParameterSet, ThetaParams};
pub use word::{CoxeterWord, LoopWord, WordClass};
