//! Single-photon Dicke superradiance of ultracold atoms in a 2D optical
//! lattice.
//!
//! An atom ensemble is prepared in a ground-level momentum distribution,
//! excited by a probe pulse carrying momentum `κ_in`, left to tunnel for a
//! delay `Δt`, and read out by a pulse carrying `κ_out`. The crate computes
//! the resulting superradiant peak as a function of `Δt` from the momentum
//! occupations, plus an exact-diagonalization oracle on small lattices for
//! checking it.

pub mod correlators;
pub mod distributions;
pub mod drive;
pub mod error;
pub mod lattice;
pub mod oracle;
pub mod parallel;
pub mod superradiance;

pub use distributions::{MomentumDistribution, Spin, Statistics};
pub use error::{Error, Result};
pub use lattice::{LatticeMode, LatticeSpec};
pub use parallel::Execution;
