//! Independent numerical ground truth for the closed forms.
//!
//! [`dense`] exponentiates single 3x3 blocks by Hermitian diagonalization;
//! [`full_space`] builds the whole truncated atoms + field problem from
//! ladder and Pauli operators. [`suite`] runs every cross-check and reports
//! residuals against fixed tolerances.

pub mod dense;
pub mod full_space;
pub mod suite;

pub use dense::{expm_evolve, subspace_hamiltonian, Couplings, DenseHamiltonian, Propagator};
pub use full_space::{
    full_space_evolve, AtomPair, AtomsDensity3, FullSpaceConfig, FullSpaceModel, FullSpaceState,
};
