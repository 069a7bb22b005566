//! Extended Jaynes-Cummings model for two atoms under a perfect Rydberg
//! blockade, coupled to one quantized field mode.
//!
//! The excitation number is conserved, so the dynamics splits into 3x3
//! blocks over `{|r,g,n>, |g,r,n>, |g,g,n+1>}`. This crate provides the
//! closed-form eigensystem of those blocks ([`eigen`]), analytic evolution
//! for number-state fields ([`fock`]) and for coherent fields
//! ([`coherent`]), and a brute-force [`oracle`] that checks all of it.
//!
//! Energies are reported in units of hbar.

pub mod coherent;
pub mod eigen;
pub mod error;
pub mod fock;
pub mod grid;
pub mod oracle;
pub mod params;

pub use coherent::{
    poisson_weights, AtomDensityMatrix, CoherentConfig, CoherentEvolution, EntanglementPoint,
    PoissonWeights, Truncation, TruncationMode,
};
pub use eigen::{mixing_angle, rabi_frequency, EigenCoefficients, EigenSystem};
pub use error::{ModelError, Result};
pub use fock::{entangling_time, FockCase, FockProbabilities, FockRecord, FockScenario, Subspace};
pub use grid::uniform_grid;
pub use params::{ModelParams, SubspaceState};
