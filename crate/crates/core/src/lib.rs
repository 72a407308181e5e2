//! Exact and numerical machinery for random partitions.
//!
//! The crate is organised by subject:
//!
//! - [`partition`]: partitions, particle coordinates, profiles, dimensions,
//!   hooks, regularized power sums and central characters.
//! - [`fock`]: the charge-zero infinite wedge truncated by energy, with the
//!   operators `α_n` and `ℰ(z)`, vacuum expectations and weighted traces.
//! - [`measures`]: Plancherel, poissonized Plancherel, Schur, Jack and
//!   periodic-potential measures, plus RSK samplers.
//! - [`kernels`]: determinantal correlation kernels and gap probabilities.
//! - [`shapes`]: limit shapes, the hook functional, the concave action
//!   maximizer and the Seiberg-Witten conformal-map solver.
//! - [`gw`]: Gromov-Witten and Hurwitz partition sums.

pub mod error;
pub mod fock;
pub mod gw;
pub mod kernels;
pub mod measures;
pub mod partition;
pub mod shapes;
pub mod special;

pub use error::{Error, Result};
pub use partition::{CycleType, HalfInt, ParticleSet, Partition, Profile};

/// Exact rational numbers used throughout the exact code paths.
pub type Rational = num::BigRational;
