use thiserror::Error;

pub type Result<T> = std::result::Result<T, ModelError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("mixing angle is undefined for lambda = 0 and delta = 0 (fully degenerate subspace)")]
    DegenerateSubspace,

    #[error("state is not normalized: |mu|^2 + |nu|^2 + |xi|^2 = {0}")]
    NotNormalized(f64),

    #[error("Poisson tail below {tail_tol:e} not reached within {cap} terms for n_bar = {n_bar}")]
    TruncationUnreachable { n_bar: f64, tail_tol: f64, cap: usize },

    #[error("invalid time grid: {0}")]
    InvalidGrid(&'static str),

    #[error("matrix is not Hermitian (max |H - H^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("probability leakage {leakage:e} past photon cap {cap}; increase the cap")]
    Leakage { leakage: f64, cap: usize },

    #[error("entangling time is defined at zero detuning only (delta = {0})")]
    NonZeroDetuning(f64),

    #[error("antisymmetric population {0:e} too large to project onto span{{|sym>, |g,g>}}")]
    AsymmetricPopulation(f64),
}
