//! Brute-force simulator on the truncated atoms + field space.
//!
//! The Hamiltonian is assembled from Kronecker products of the two-atom
//! operators (`sigma_z`, `sigma_±`, ground-state projectors) and the
//! truncated ladder operators, exactly in the rotating-wave form with
//! independent couplings `lambda_a`, `lambda_b`. The doubly excited
//! `|r,r>` sector is dropped afterwards. Blocks are found from the
//! diagonal of the excitation number operator and exponentiated one by
//! one; nothing about the 3x3 structure is assumed.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector, Matrix3, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use super::dense::{Couplings, DenseHamiltonian, Propagator};
use crate::coherent::{poisson_weights, AtomDensityMatrix, CoherentConfig, Truncation};
use crate::error::{ModelError, Result};
use crate::grid::check_grid;
use crate::params::ModelParams;

/// Largest tolerated probability outside the representable space.
pub const LEAKAGE_TOL: f64 = 1e-10;

/// Extra photon levels above the automatic truncation.
pub const CAP_MARGIN: usize = 10;

/// Threshold on the `|asym>` row below which the 3x3 atomic state is
/// projected onto `{|sym>, |g,g>}`.
pub const ASYM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomPair {
    GG = 0,
    RG = 1,
    GR = 2,
}

impl AtomPair {
    pub const ALL: [AtomPair; 3] = [AtomPair::GG, AtomPair::RG, AtomPair::GR];

    /// Position in the 4-dim product basis `{gg, gr, rg, rr}` (atom a major).
    fn product_index(self) -> usize {
        match self {
            AtomPair::GG => 0,
            AtomPair::RG => 2,
            AtomPair::GR => 1,
        }
    }
}

fn index(atoms: AtomPair, m: usize) -> usize {
    3 * m + atoms as usize
}

/// Amplitudes over `{|g,g,m>, |r,g,m>, |g,r,m>}` for `m = 0..=photon_cap`.
#[derive(Debug, Clone, PartialEq)]
pub struct FullSpaceState {
    photon_cap: usize,
    amplitudes: DVector<Complex64>,
}

impl FullSpaceState {
    pub fn zeros(photon_cap: usize) -> Self {
        FullSpaceState {
            photon_cap,
            amplitudes: DVector::zeros(3 * (photon_cap + 1)),
        }
    }

    pub fn basis(atoms: AtomPair, m: usize, photon_cap: usize) -> Result<Self> {
        if m > photon_cap {
            return Err(ModelError::DimensionMismatch {
                expected: photon_cap,
                found: m,
            });
        }
        let mut s = Self::zeros(photon_cap);
        s.amplitudes[index(atoms, m)] = 1.0.into();
        Ok(s)
    }

    /// `|g,g> (x) |alpha>`, cut at `photon_cap` and not renormalized.
    pub fn coherent(alpha: Complex64, photon_cap: usize) -> Self {
        let mut s = Self::zeros(photon_cap);
        let n_bar = alpha.norm_sqr();
        if n_bar == 0.0 {
            s.amplitudes[index(AtomPair::GG, 0)] = 1.0.into();
            return s;
        }
        let (r, theta) = alpha.to_polar();
        let ln_r = r.ln();
        let mut half_log_fact = 0.0;
        for m in 0..=photon_cap {
            if m > 0 {
                half_log_fact += 0.5 * (m as f64).ln();
            }
            let ln_mod = -0.5 * n_bar + m as f64 * ln_r - half_log_fact;
            s.amplitudes[index(AtomPair::GG, m)] =
                Complex64::from_polar(ln_mod.exp(), m as f64 * theta);
        }
        s
    }

    pub fn photon_cap(&self) -> usize {
        self.photon_cap
    }

    pub fn amplitude(&self, atoms: AtomPair, m: usize) -> Complex64 {
        self.amplitudes[index(atoms, m)]
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    /// Population with the field in its highest retained level.
    pub fn edge_population(&self) -> f64 {
        AtomPair::ALL
            .iter()
            .map(|&a| self.amplitude(a, self.photon_cap).norm_sqr())
            .sum()
    }

    /// `rho_atoms = sum_m <m|psi><psi|m>` over `{|g,g>, |r,g>, |g,r>}`.
    pub fn partial_trace_atoms(&self) -> AtomsDensity3 {
        let mut rho = Matrix3::<Complex64>::zeros();
        for m in 0..=self.photon_cap {
            for (i, &a) in AtomPair::ALL.iter().enumerate() {
                let ca = self.amplitude(a, m);
                for (j, &b) in AtomPair::ALL.iter().enumerate() {
                    rho[(i, j)] += ca * self.amplitude(b, m).conj();
                }
            }
        }
        AtomsDensity3 { matrix: rho }
    }
}

/// Two-atom reduced density matrix over `{|g,g>, |r,g>, |g,r>}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomsDensity3 {
    pub matrix: Matrix3<Complex64>,
}

impl AtomsDensity3 {
    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn purity(&self) -> f64 {
        (self.matrix * self.matrix).trace().re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let e = SymmetricEigen::new(self.matrix).eigenvalues;
        let mut v = [e[0], e[1], e[2]];
        v.sort_by(f64::total_cmp);
        v
    }

    /// Same state in the basis `{|sym>, |asym>, |g,g>}`.
    pub fn in_bell_basis(&self) -> Matrix3<Complex64> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // rows: <sym|, <asym|, <gg| expressed on {gg, rg, gr}
        #[rustfmt::skip]
        let u = Matrix3::<Complex64>::new(
            0.0.into(), h.into(),  h.into(),
            0.0.into(), h.into(), (-h).into(),
            1.0.into(), 0.0.into(), 0.0.into(),
        );
        u * self.matrix * u.adjoint()
    }

    /// Largest modulus in the `|asym>` row.
    pub fn asym_weight(&self) -> f64 {
        let b = self.in_bell_basis();
        (0..3).map(|j| b[(1, j)].norm()).fold(0.0, f64::max)
    }

    pub fn project_sym_gg(&self) -> Result<AtomDensityMatrix> {
        let w = self.asym_weight();
        if w > ASYM_TOL {
            return Err(ModelError::AsymmetricPopulation(w));
        }
        let b = self.in_bell_basis();
        Ok(AtomDensityMatrix {
            p_sym: b[(0, 0)].re,
            p_gg: b[(2, 2)].re,
            gamma: b[(0, 2)],
        })
    }
}

struct Block {
    indices: Vec<usize>,
    propagator: Propagator,
}

/// Truncated full-space Hamiltonian split into its excitation-number blocks.
pub struct FullSpaceModel {
    photon_cap: usize,
    hamiltonian: DMatrix<Complex64>,
    blocks: Vec<Block>,
    off_block_max: f64,
    blockade_coupling: f64,
}

fn c(x: f64) -> Complex64 {
    Complex64::from(x)
}

fn mat2(a: [[f64; 2]; 2]) -> DMatrix<Complex64> {
    DMatrix::from_fn(2, 2, |i, j| c(a[i][j]))
}

impl FullSpaceModel {
    pub fn new(params: &ModelParams, couplings: &Couplings, photon_cap: usize) -> Result<Self> {
        let params = params.validate()?;
        let (la, lb) = couplings.resolve(&params);
        let dim_f = photon_cap + 1;

        // single atom, basis {g, r}
        let sz = mat2([[1.0, 0.0], [0.0, -1.0]]);
        let sp = mat2([[0.0, 0.0], [1.0, 0.0]]);
        let sm = sp.transpose();
        let pg = mat2([[1.0, 0.0], [0.0, 0.0]]);
        let id2 = DMatrix::<Complex64>::identity(2, 2);

        let a = DMatrix::from_fn(dim_f, dim_f, |i, j| {
            if j == i + 1 {
                c((j as f64).sqrt())
            } else {
                c(0.0)
            }
        });
        let ad = a.adjoint();
        let num = &ad * &a;
        let id_f = DMatrix::<Complex64>::identity(dim_f, dim_f);
        let id4 = DMatrix::<Complex64>::identity(4, 4);

        let sz_sum = sz.kronecker(&id2) + id2.kronecker(&sz);
        let field = id4.kronecker(&num) * c(params.omega_f());
        let atoms = sz_sum.kronecker(&id_f) * c(-0.5 * params.omega_0());
        let couple_a =
            (sp.kronecker(&pg).kronecker(&a) + sm.kronecker(&pg).kronecker(&ad)) * c(la);
        let couple_b =
            (pg.kronecker(&sp).kronecker(&a) + pg.kronecker(&sm).kronecker(&ad)) * c(lb);
        let h4 = field + atoms + couple_a + couple_b;
        let n4 = id4.kronecker(&num) - sz_sum.kronecker(&id_f) * c(0.5);

        let dim = 3 * dim_f;
        let product = |k: usize| {
            let (m, pair) = (k / 3, AtomPair::ALL[k % 3]);
            pair.product_index() * dim_f + m
        };
        let hamiltonian = DMatrix::from_fn(dim, dim, |i, j| h4[(product(i), product(j))]);

        let rr = 3 * dim_f;
        let mut blockade_coupling: f64 = 0.0;
        for k in 0..dim {
            for m in 0..dim_f {
                blockade_coupling = blockade_coupling.max(h4[(rr + m, product(k))].norm());
            }
        }

        let number: Vec<i64> = (0..dim)
            .map(|k| n4[(product(k), product(k))].re.round() as i64)
            .collect();
        let mut off_block_max: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                if number[i] != number[j] {
                    off_block_max = off_block_max.max(hamiltonian[(i, j)].norm());
                }
            }
        }

        let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (k, &nk) in number.iter().enumerate() {
            groups.entry(nk).or_default().push(k);
        }
        let blocks = groups
            .into_values()
            .map(|indices| {
                let sub = DMatrix::from_fn(indices.len(), indices.len(), |i, j| {
                    hamiltonian[(indices[i], indices[j])]
                });
                Ok(Block {
                    propagator: Propagator::new(&DenseHamiltonian::new(sub)?),
                    indices,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        Ok(FullSpaceModel {
            photon_cap,
            hamiltonian,
            blocks,
            off_block_max,
            blockade_coupling,
        })
    }

    pub fn photon_cap(&self) -> usize {
        self.photon_cap
    }

    /// Full truncated Hamiltonian, index `3 m + pair`.
    pub fn hamiltonian(&self) -> &DMatrix<Complex64> {
        &self.hamiltonian
    }

    /// Largest Hamiltonian entry linking different excitation numbers.
    pub fn off_block_max(&self) -> f64 {
        self.off_block_max
    }

    /// Largest entry linking the retained space to `|r,r>`.
    pub fn blockade_coupling(&self) -> f64 {
        self.blockade_coupling
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn evolve(&self, s0: &FullSpaceState, t: f64) -> Result<FullSpaceState> {
        if s0.photon_cap != self.photon_cap {
            return Err(ModelError::DimensionMismatch {
                expected: self.photon_cap,
                found: s0.photon_cap,
            });
        }
        let mut out = FullSpaceState::zeros(self.photon_cap);
        for b in &self.blocks {
            let v = DVector::from_iterator(
                b.indices.len(),
                b.indices.iter().map(|&k| s0.amplitudes[k]),
            );
            let w = b.propagator.evolve(&v, t);
            for (&k, x) in b.indices.iter().zip(w.iter()) {
                out.amplitudes[k] = *x;
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullSpaceConfig {
    pub coherent: CoherentConfig,
    /// Defaults to the automatic truncation index plus [`CAP_MARGIN`].
    pub photon_cap: Option<usize>,
    pub couplings: Couplings,
}

impl FullSpaceConfig {
    pub fn new(coherent: CoherentConfig) -> Self {
        FullSpaceConfig {
            coherent,
            photon_cap: None,
            couplings: Couplings::Equal,
        }
    }

    pub fn resolved_cap(&self) -> Result<usize> {
        match self.photon_cap {
            Some(cap) => Ok(cap),
            None => {
                let trunc = Truncation {
                    mode: crate::coherent::TruncationMode::Auto,
                    ..self.coherent.truncation
                };
                Ok(poisson_weights(self.coherent.n_bar(), &trunc)?.m_max() + CAP_MARGIN)
            }
        }
    }
}

/// Evolves `|g,g> (x) |alpha>` over `grid` in the truncated full space.
///
/// Fails with [`ModelError::Leakage`] when the part of the initial state
/// beyond the cap, or the population reaching the top photon level, exceeds
/// [`LEAKAGE_TOL`].
pub fn full_space_evolve(cfg: &FullSpaceConfig, grid: &[f64]) -> Result<Vec<FullSpaceState>> {
    check_grid(grid)?;
    let cap = cfg.resolved_cap()?;
    let model = FullSpaceModel::new(&cfg.coherent.params, &cfg.couplings, cap)?;
    let s0 = FullSpaceState::coherent(cfg.coherent.alpha, cap);
    let missing = (1.0 - s0.norm_squared()).max(0.0);
    let states = grid
        .par_iter()
        .map(|&t| model.evolve(&s0, t))
        .collect::<Result<Vec<_>>>()?;
    let edge = states
        .iter()
        .map(FullSpaceState::edge_population)
        .fold(0.0, f64::max);
    let leakage = missing + edge;
    if leakage > LEAKAGE_TOL {
        return Err(ModelError::Leakage { leakage, cap });
    }
    Ok(states)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_follow_excitation_number() {
        let p = ModelParams::new(1.3, 1.0, 0.7).unwrap();
        let m = FullSpaceModel::new(&p, &Couplings::Equal, 6).unwrap();
        assert_eq!(m.off_block_max(), 0.0);
        assert_eq!(m.blockade_coupling(), 0.0);
        // N = -1 .. 6; the top block misses |g,g,7>
        assert_eq!(m.block_count(), 8);
    }

    #[test]
    fn vacuum_is_stationary() {
        let p = ModelParams::resonant(1.0).unwrap();
        let cfg = FullSpaceConfig::new(CoherentConfig::from_mean_photons(0.0, p).unwrap());
        let states = full_space_evolve(&cfg, &[0.0, 1.0, 5.0]).unwrap();
        for (s, t) in states.iter().zip([0.0, 1.0, 5.0]) {
            let a = s.amplitude(AtomPair::GG, 0);
            assert!((a - Complex64::from_polar(1.0, t)).norm() < 1e-14);
            assert!((s.norm_squared() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn product_state_trace_is_pure() {
        let s = FullSpaceState::coherent(Complex64::new(1.5, 0.5), 40);
        let rho = s.partial_trace_atoms();
        assert!((rho.trace() - 1.0).abs() < 1e-12);
        let r = rho.project_sym_gg().unwrap();
        assert!((r.p_gg - 1.0).abs() < 1e-12);
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn leakage_reported_for_small_cap() {
        let p = ModelParams::resonant(1.0).unwrap();
        let mut cfg = FullSpaceConfig::new(CoherentConfig::from_mean_photons(10.0, p).unwrap());
        cfg.photon_cap = Some(12);
        assert!(matches!(
            full_space_evolve(&cfg, &[0.0, 1.0]),
            Err(ModelError::Leakage { cap: 12, .. })
        ));
    }

    #[test]
    fn asym_projection_refused_when_populated() {
        let s = FullSpaceState::basis(AtomPair::RG, 2, 4).unwrap();
        let rho = s.partial_trace_atoms();
        assert!(rho.asym_weight() > 0.4);
        assert!(rho.project_sym_gg().is_err());
    }
}
