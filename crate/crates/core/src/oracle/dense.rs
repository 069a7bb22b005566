//! Dense Hermitian Hamiltonians and propagation by spectral decomposition.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::params::{ModelParams, SubspaceState};

/// Coupling constants of atoms `a` and `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub enum Couplings {
    /// Both atoms couple with `lambda` from [`ModelParams`].
    #[default]
    Equal,
    Unequal { lambda_a: f64, lambda_b: f64 },
}

impl Couplings {
    /// `lambda_a = lambda`, `lambda_b = lambda cos(k R)`.
    pub fn standing_wave(lambda: f64, kr: f64) -> Self {
        Couplings::Unequal {
            lambda_a: lambda,
            lambda_b: lambda * kr.cos(),
        }
    }

    pub fn resolve(&self, p: &ModelParams) -> (f64, f64) {
        match *self {
            Couplings::Equal => (p.lambda(), p.lambda()),
            Couplings::Unequal { lambda_a, lambda_b } => (lambda_a, lambda_b),
        }
    }
}

/// Largest `|H_ij - conj(H_ji)|`.
pub fn hermiticity_error(m: &DMatrix<Complex64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseHamiltonian {
    matrix: DMatrix<Complex64>,
}

impl DenseHamiltonian {
    /// Accepts square matrices Hermitian to 1e-14 relative to their largest entry.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(ModelError::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let scale = matrix.iter().fold(1.0f64, |a, z| a.max(z.norm()));
        let err = hermiticity_error(&matrix);
        if err > 1e-14 * scale {
            return Err(ModelError::NotHermitian(err));
        }
        Ok(DenseHamiltonian { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut e: Vec<f64> = SymmetricEigen::new(self.matrix.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        e.sort_by(f64::total_cmp);
        e
    }
}

/// Block of `H` on `{|r,g,n>, |g,r,n>, |g,g,n+1>}` in units of hbar.
pub fn subspace_hamiltonian(n: u32, p: &ModelParams, couplings: &Couplings) -> DenseHamiltonian {
    let (la, lb) = couplings.resolve(p);
    let root = (f64::from(n) + 1.0).sqrt();
    let diag = p.omega_f() * f64::from(n);
    let ga = Complex64::from(la * root);
    let gb = Complex64::from(lb * root);
    let z = Complex64::new(0.0, 0.0);
    #[rustfmt::skip]
    let m = DMatrix::from_row_slice(3, 3, &[
        diag.into(), z,           ga,
        z,           diag.into(), gb,
        ga,          gb,          (diag + p.delta()).into(),
    ]);
    DenseHamiltonian { matrix: m }
}

/// `exp(-i H t)` applied through `H = V diag(E) V^dagger`.
#[derive(Debug, Clone)]
pub struct Propagator {
    energies: DVector<f64>,
    vectors: DMatrix<Complex64>,
}

impl Propagator {
    pub fn new(h: &DenseHamiltonian) -> Self {
        let eig = SymmetricEigen::new(h.matrix.clone());
        Propagator {
            energies: eig.eigenvalues,
            vectors: eig.eigenvectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &DVector<f64> {
        &self.energies
    }

    pub fn vectors(&self) -> &DMatrix<Complex64> {
        &self.vectors
    }

    pub fn evolve(&self, s0: &DVector<Complex64>, t: f64) -> DVector<Complex64> {
        let mut c = self.vectors.ad_mul(s0);
        for (ci, e) in c.iter_mut().zip(self.energies.iter()) {
            *ci *= Complex64::from_polar(1.0, -e * t);
        }
        &self.vectors * c
    }
}

pub fn expm_evolve(h: &DenseHamiltonian, s0: &DVector<Complex64>, t: f64) -> Result<DVector<Complex64>> {
    if s0.len() != h.dim() {
        return Err(ModelError::DimensionMismatch {
            expected: h.dim(),
            found: s0.len(),
        });
    }
    Ok(Propagator::new(h).evolve(s0, t))
}

pub fn to_vector(s: &SubspaceState) -> DVector<Complex64> {
    DVector::from_row_slice(&s.to_array())
}

pub fn to_subspace_state(v: &DVector<Complex64>) -> SubspaceState {
    SubspaceState::new(v[0], v[1], v[2])
}
