//! Two atoms in `|g,g>` driven by a coherent field `|alpha>`.
//!
//! Photon number `m >= 1` of the initial field feeds subspace `H_{m-1}` in
//! case B, and `|g,g,0>` only picks up the phase `exp(i omega_0 t)`. All
//! atomic observables are Poisson-weighted sums over those case-B
//! solutions, truncated once the discarded tail drops below a fraction of
//! `tail_tol` (see [`AUTO_MARGIN`]).
//!
//! The reduced atomic state lives in `span{|sym>, |g,g>}`:
//!
//! ```text
//!   rho = | p_sym   gamma |
//!         | gamma*  p_gg  |
//! ```

use nalgebra::Matrix2;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::fock::Subspace;
use crate::grid::check_grid;
use crate::params::ModelParams;

/// Largest truncation index the automatic mode will try.
pub const M_CAP: usize = 10_000;

pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

/// Automatic truncation keeps the discarded mass below `tail_tol * AUTO_MARGIN`.
/// Quadratic observables such as `epsilon` move by up to twice that mass, so
/// the margin keeps every reported quantity within `tail_tol`.
pub const AUTO_MARGIN: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TruncationMode {
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    pub mode: TruncationMode,
    pub tail_tol: f64,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            mode: TruncationMode::Auto,
            tail_tol: DEFAULT_TAIL_TOL,
        }
    }
}

impl Truncation {
    pub fn auto(tail_tol: f64) -> Result<Self> {
        Truncation {
            mode: TruncationMode::Auto,
            tail_tol,
        }
        .validate()
    }

    pub fn fixed(m: usize, tail_tol: f64) -> Result<Self> {
        Truncation {
            mode: TruncationMode::Fixed(m),
            tail_tol,
        }
        .validate()
    }

    pub fn validate(self) -> Result<Self> {
        if !(self.tail_tol > 0.0 && self.tail_tol <= 1e-6) {
            return Err(ModelError::InvalidParameter {
                name: "tail_tol",
                value: self.tail_tol,
                reason: "must lie in (0, 1e-6]",
            });
        }
        Ok(self)
    }
}

/// `weights[m] = exp(-n_bar) n_bar^m / m!` for `m = 0..=M`, plus the mass
/// of everything past `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonWeights {
    pub weights: Vec<f64>,
    pub tail: f64,
}

impl PoissonWeights {
    /// Truncation index `M`.
    pub fn m_max(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn sum(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Log-space Poisson weights truncated per `trunc`.
pub fn poisson_weights(n_bar: f64, trunc: &Truncation) -> Result<PoissonWeights> {
    if !(n_bar.is_finite() && n_bar >= 0.0) {
        return Err(ModelError::InvalidParameter {
            name: "n_bar",
            value: n_bar,
            reason: "must be finite and non-negative",
        });
    }
    let trunc = trunc.validate()?;
    if n_bar == 0.0 {
        let m = match trunc.mode {
            TruncationMode::Auto => 0,
            TruncationMode::Fixed(m) => m,
        };
        let mut weights = vec![0.0; m + 1];
        weights[0] = 1.0;
        return Ok(PoissonWeights { weights, tail: 0.0 });
    }

    // Generate terms well past the mode until they are negligible next to
    // the tolerance, then form suffix sums from the far end.
    let ln_nbar = n_bar.ln();
    let fixed = match trunc.mode {
        TruncationMode::Fixed(m) => Some(m),
        TruncationMode::Auto => None,
    };
    let hard_stop = fixed.unwrap_or(0).max(M_CAP) + 1;
    let negligible = (trunc.tail_tol * 1e-6).ln();
    let mut log_fact = 0.0;
    let mut all = Vec::new();
    let mut m = 0usize;
    loop {
        if m > 0 {
            log_fact += (m as f64).ln();
        }
        let lw = -n_bar + m as f64 * ln_nbar - log_fact;
        all.push(lw.exp());
        let past_mode = m as f64 > n_bar + 1.0;
        if (past_mode && lw < negligible && fixed.is_none_or(|f| m >= f)) || m >= hard_stop {
            break;
        }
        m += 1;
    }
    // Geometric bound on what lies beyond the generated terms.
    let last = all.len() - 1;
    let ratio = n_bar / (last as f64 + 2.0);
    let beyond = if ratio < 1.0 {
        all[last] * ratio / (1.0 - ratio)
    } else {
        f64::INFINITY
    };

    let mut tails = vec![0.0; all.len()];
    let mut acc = beyond;
    for k in (0..all.len()).rev() {
        tails[k] = acc;
        acc += all[k];
    }

    let m_max = match fixed {
        Some(m) => m,
        None => match tails.iter().position(|&tail| tail < trunc.tail_tol * AUTO_MARGIN) {
            Some(m) if m <= M_CAP => m,
            _ => {
                return Err(ModelError::TruncationUnreachable {
                    n_bar,
                    tail_tol: trunc.tail_tol,
                    cap: M_CAP,
                })
            }
        },
    };
    all.truncate(m_max + 1);
    Ok(PoissonWeights {
        weights: all,
        tail: tails[m_max],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherentConfig {
    pub alpha: Complex64,
    pub params: ModelParams,
    pub truncation: Truncation,
}

impl CoherentConfig {
    pub fn new(alpha: Complex64, params: ModelParams, truncation: Truncation) -> Result<Self> {
        if !(alpha.re.is_finite() && alpha.im.is_finite()) {
            return Err(ModelError::InvalidParameter {
                name: "alpha",
                value: alpha.norm(),
                reason: "must be finite",
            });
        }
        Ok(CoherentConfig {
            alpha,
            params: params.validate()?,
            truncation: truncation.validate()?,
        })
    }

    /// Real `alpha = sqrt(n_bar)` with default truncation.
    pub fn from_mean_photons(n_bar: f64, params: ModelParams) -> Result<Self> {
        if !(n_bar.is_finite() && n_bar >= 0.0) {
            return Err(ModelError::InvalidParameter {
                name: "n_bar",
                value: n_bar,
                reason: "must be finite and non-negative",
            });
        }
        Self::new(n_bar.sqrt().into(), params, Truncation::default())
    }

    pub fn n_bar(&self) -> f64 {
        self.alpha.norm_sqr()
    }
}

/// Reduced two-atom state in the basis `{|sym>, |g,g>}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomDensityMatrix {
    pub p_sym: f64,
    pub p_gg: f64,
    /// `<sym| rho |g,g>`
    pub gamma: Complex64,
}

impl AtomDensityMatrix {
    pub fn trace(&self) -> f64 {
        self.p_sym + self.p_gg
    }

    /// `tr(rho^2) = p_sym^2 + p_gg^2 + 2 |gamma|^2`
    pub fn purity(&self) -> f64 {
        self.p_sym * self.p_sym + self.p_gg * self.p_gg + 2.0 * self.gamma.norm_sqr()
    }

    /// Linear entropy `1 - tr(rho^2)`, between 0 and 1/2.
    pub fn entanglement(&self) -> f64 {
        1.0 - self.purity()
    }

    pub fn determinant(&self) -> f64 {
        self.p_sym * self.p_gg - self.gamma.norm_sqr()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let mean = 0.5 * self.trace();
        let r = (0.5 * (self.p_sym - self.p_gg)).hypot(self.gamma.norm());
        [mean - r, mean + r]
    }

    pub fn to_matrix(&self) -> Matrix2<Complex64> {
        Matrix2::new(
            self.p_sym.into(),
            self.gamma,
            self.gamma.conj(),
            self.p_gg.into(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntanglementPoint {
    pub t: f64,
    pub p_sym: f64,
    pub p_gg: f64,
    pub gamma: Complex64,
    pub epsilon: f64,
}

/// Precomputed Poisson weights and case-B subspaces for one configuration.
#[derive(Debug, Clone)]
pub struct CoherentEvolution {
    config: CoherentConfig,
    weights: PoissonWeights,
    /// `subspaces[k]` is `H_k`, fed by photon number `k + 1`.
    subspaces: Vec<Subspace>,
}

impl CoherentEvolution {
    pub fn new(config: CoherentConfig) -> Result<Self> {
        let weights = poisson_weights(config.n_bar(), &config.truncation)?;
        let subspaces = (0..weights.m_max())
            .map(|k| Subspace::new(k as u32, &config.params))
            .collect::<Result<Vec<_>>>()?;
        Ok(CoherentEvolution {
            config,
            weights,
            subspaces,
        })
    }

    pub fn config(&self) -> &CoherentConfig {
        &self.config
    }

    pub fn weights(&self) -> &PoissonWeights {
        &self.weights
    }

    pub fn m_max(&self) -> usize {
        self.weights.m_max()
    }

    /// `sum_{m>=1} w_m |sigma_B^(m-1)(t)|^2`
    pub fn prob_sym(&self, t: f64) -> f64 {
        self.subspaces
            .iter()
            .zip(&self.weights.weights[1..])
            .map(|(sub, w)| w * sub.case_b_sym_probability(t))
            .sum()
    }

    /// `w_0 + sum_{m>=1} w_m |xi_B^(m-1)(t)|^2`
    pub fn prob_gg(&self, t: f64) -> f64 {
        self.weights.weights[0]
            + self
                .subspaces
                .iter()
                .zip(&self.weights.weights[1..])
                .map(|(sub, w)| w * sub.xi_b(t).norm_sqr())
                .sum::<f64>()
    }

    /// `alpha sum_k w_k / sqrt(k+1) sigma_B^(k)(t) conj(g_k(t))` with
    /// `g_0 = exp(i omega_0 t)` and `g_k = xi_B^(k-1)(t)`.
    pub fn gamma(&self, t: f64) -> Complex64 {
        let mut prev = Complex64::from_polar(1.0, self.config.params.omega_0() * t);
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, sub) in self.subspaces.iter().enumerate() {
            let w = self.weights.weights[k] / ((k + 1) as f64).sqrt();
            acc += w * sub.sigma_b(t) * prev.conj();
            prev = sub.xi_b(t);
        }
        self.config.alpha * acc
    }

    pub fn reduced_density(&self, t: f64) -> AtomDensityMatrix {
        let w = &self.weights.weights;
        let mut p_sym = 0.0;
        let mut p_gg = w[0];
        let mut gamma = Complex64::new(0.0, 0.0);
        let mut prev = Complex64::from_polar(1.0, self.config.params.omega_0() * t);
        for (k, sub) in self.subspaces.iter().enumerate() {
            let sigma = sub.sigma_b(t);
            let xi = sub.xi_b(t);
            p_sym += w[k + 1] * sigma.norm_sqr();
            p_gg += w[k + 1] * xi.norm_sqr();
            gamma += w[k] / ((k + 1) as f64).sqrt() * sigma * prev.conj();
            prev = xi;
        }
        AtomDensityMatrix {
            p_sym,
            p_gg,
            gamma: self.config.alpha * gamma,
        }
    }

    pub fn entanglement(&self, t: f64) -> f64 {
        self.reduced_density(t).entanglement()
    }

    pub fn point(&self, t: f64) -> EntanglementPoint {
        let rho = self.reduced_density(t);
        EntanglementPoint {
            t,
            p_sym: rho.p_sym,
            p_gg: rho.p_gg,
            gamma: rho.gamma,
            epsilon: rho.entanglement(),
        }
    }

    pub fn time_series(&self, grid: &[f64]) -> Result<Vec<EntanglementPoint>> {
        check_grid(grid)?;
        Ok(grid.par_iter().map(|&t| self.point(t)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resonant(n_bar: f64) -> CoherentEvolution {
        let p = ModelParams::resonant(1.0).unwrap();
        CoherentEvolution::new(CoherentConfig::from_mean_photons(n_bar, p).unwrap()).unwrap()
    }

    #[test]
    fn vacuum_weights() {
        let w = poisson_weights(0.0, &Truncation::default()).unwrap();
        assert_eq!(w.weights, vec![1.0]);
        assert_eq!(w.m_max(), 0);
    }

    #[test]
    fn weights_meet_tolerance() {
        let w = poisson_weights(10.0, &Truncation::auto(1e-12).unwrap()).unwrap();
        let s = w.sum();
        assert!((1.0 - 1e-12..=1.0 + 1e-15).contains(&s), "{s}");
        assert!(w.tail < 1e-12);
    }

    #[test]
    fn bad_truncation() {
        assert!(Truncation::auto(0.0).is_err());
        assert!(Truncation::auto(1e-3).is_err());
        assert!(poisson_weights(-1.0, &Truncation::default()).is_err());
        assert!(matches!(
            poisson_weights(20_000.0, &Truncation::default()),
            Err(ModelError::TruncationUnreachable { .. })
        ));
    }

    #[test]
    fn large_mean_does_not_overflow() {
        let w = poisson_weights(50.0, &Truncation::default()).unwrap();
        assert!(w.weights.iter().all(|x| x.is_finite()));
        assert!((w.sum() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fixed_truncation_reports_tail() {
        let w = poisson_weights(5.0, &Truncation::fixed(5, 1e-12).unwrap()).unwrap();
        assert_eq!(w.m_max(), 5);
        assert!((w.sum() + w.tail - 1.0).abs() < 1e-14);
        assert!(w.tail > 0.3);
    }

    #[test]
    fn initial_state_is_pure_ground() {
        let e = resonant(10.0);
        let rho = e.reduced_density(0.0);
        assert_eq!(rho.p_sym, 0.0);
        assert!((rho.p_gg - 1.0).abs() < 1e-12);
        assert_eq!(rho.gamma, Complex64::new(0.0, 0.0));
        assert!(rho.entanglement().abs() < 1e-11);
    }

    #[test]
    fn single_point_series() {
        let e = resonant(0.0);
        let s = e.time_series(&[0.0]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!((s[0].t, s[0].p_sym, s[0].p_gg, s[0].epsilon), (0.0, 0.0, 1.0, 0.0));
        assert!(e.time_series(&[]).is_err());
        assert!(e.time_series(&[1.0, 0.5]).is_err());
    }

    #[test]
    fn closed_form_resonant_sums() {
        let n_bar: f64 = 10.0;
        let e = resonant(n_bar);
        let t: f64 = 3.0;
        let w = &e.weights().weights;
        let sym: f64 = (1..w.len())
            .map(|m| w[m] * ((2.0 * m as f64).sqrt() * t).sin().powi(2))
            .sum();
        let gg: f64 = (0..w.len())
            .map(|m| w[m] * ((2.0 * m as f64).sqrt() * t).cos().powi(2))
            .sum();
        assert!((e.prob_sym(t) - sym).abs() < 1e-13);
        assert!((e.prob_gg(t) - gg).abs() < 1e-13);

        // |gamma|^2 = e^{-2 n} n [sum_k n^k/k! / sqrt(k+1) sin(sqrt(2(k+1)) t) cos(sqrt(2k) t)]^2,
        // written with the normalized weights w_k = e^{-n} n^k / k!.
        let inner: f64 = (0..w.len() - 1)
            .map(|k| {
                let k = k as f64;
                w[k as usize] / (k + 1.0).sqrt()
                    * ((2.0 * (k + 1.0)).sqrt() * t).sin()
                    * ((2.0 * k).sqrt() * t).cos()
            })
            .sum();
        let g2 = n_bar * inner * inner;
        assert!((e.gamma(t).norm_sqr() - g2).abs() < 1e-13);
    }

    #[test]
    fn alpha_phase_only_rotates_gamma() {
        let p = ModelParams::new(1.2, 1.0, 1.0).unwrap();
        let real = CoherentEvolution::new(
            CoherentConfig::new(2.0.into(), p, Truncation::default()).unwrap(),
        )
        .unwrap();
        let theta = 0.9;
        let rotated = CoherentEvolution::new(
            CoherentConfig::new(Complex64::from_polar(2.0, theta), p, Truncation::default())
                .unwrap(),
        )
        .unwrap();
        for t in [0.4, 1.7, 6.0] {
            let a = real.reduced_density(t);
            let b = rotated.reduced_density(t);
            assert!((a.p_sym - b.p_sym).abs() < 1e-15);
            assert!((a.entanglement() - b.entanglement()).abs() < 1e-14);
            assert!((a.gamma * Complex64::from_polar(1.0, theta) - b.gamma).norm() < 1e-14);
        }
    }

    #[test]
    fn density_helpers() {
        let rho = AtomDensityMatrix {
            p_sym: 0.5,
            p_gg: 0.5,
            gamma: 0.0.into(),
        };
        assert_eq!(rho.eigenvalues(), [0.5, 0.5]);
        assert_eq!(rho.entanglement(), 0.5);
        let pure = AtomDensityMatrix {
            p_sym: 0.5,
            p_gg: 0.5,
            gamma: Complex64::new(0.0, 0.5),
        };
        assert!(pure.entanglement().abs() < 1e-15);
        assert!(pure.eigenvalues()[0].abs() < 1e-15);
        assert!((pure.to_matrix().determinant().re - pure.determinant()).abs() < 1e-15);
    }
}
