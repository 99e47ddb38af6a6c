//! Exact-diagonalization oracle on small lattices.
//!
//! Builds the two-level lattice gas in a Fock basis, applies exciton
//! operators exactly and evolves with the full propagator. The emission
//! amplitude is evaluated operatorially,
//! `A(Δt) = ⟨Ψ| U†(Δt) Σ⁻(κ_out) U(Δt) Σ⁺(κ_in) |Ψ⟩`, so pulse shapes and
//! the single-atom factor never enter.

pub mod basis;
pub mod operators;
pub mod propagator;
pub mod scenarios;
pub mod states;
pub mod suite;

pub use basis::{FockBasis, Level, ModeLayout, DIMENSION_CAP};
pub use operators::{ExcitonDirection, Operator, SparseMatrix, StateVector};
pub use propagator::Propagator;
pub use scenarios::OracleSystem;
