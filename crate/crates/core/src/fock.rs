//! Time evolution inside one subspace `H_n` for a number-state field.
//!
//! [`Subspace::evolve`] is the general route: rotate into the eigenbasis,
//! attach `exp(-i E t)` to each component, rotate back. The named initial
//! conditions also have direct closed forms:
//!
//! * A: `|asym,n>`, an eigenstate; only a global phase accrues.
//! * B: `|g,g,n+1>`, oscillates into `|sym,n>` with amplitude `sin^2(2 phi_n)`.
//! * C: `|r,g,n>`, the excitation hops between the atoms via the field.
//! * Beta: `|sym,n>`, the complement of B.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::eigen::{sym_coupling, EigenCoefficients, EigenSystem};
use crate::error::{ModelError, Result};
use crate::params::{ModelParams, SubspaceState};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// The 3x3 block for a fixed photon index `n`, with its eigensystem.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    params: ModelParams,
    eigen: EigenSystem,
}

impl Subspace {
    pub fn new(n: u32, params: &ModelParams) -> Result<Self> {
        Ok(Subspace {
            params: *params,
            eigen: EigenSystem::new(n, params)?,
        })
    }

    pub fn n(&self) -> u32 {
        self.eigen.n
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn eigen(&self) -> &EigenSystem {
        &self.eigen
    }

    pub fn evolve(&self, s0: &SubspaceState, t: f64) -> SubspaceState {
        let c = self.eigen.to_eigen_basis(s0);
        let e = &self.eigen;
        let ct = EigenCoefficients {
            asym: c.asym * cis(-e.e_asym * t),
            plus: c.plus * cis(-e.e_plus * t),
            minus: c.minus * cis(-e.e_minus * t),
        };
        e.from_eigen_basis(&ct)
    }

    /// `exp(-i omega_f n t)`
    fn bare_phase(&self, t: f64) -> Complex64 {
        cis(-self.eigen.e_asym * t)
    }

    /// `exp(-i (omega_f n + delta/2) t)`
    fn centre_phase(&self, t: f64) -> Complex64 {
        cis(-(self.eigen.e_asym + 0.5 * self.params.delta()) * t)
    }

    fn sin2_cos2(&self) -> (f64, f64) {
        let (s, c) = self.eigen.phi_n.sin_cos();
        (s * s, c * c)
    }

    pub fn case_a(&self, t: f64) -> SubspaceState {
        let mu = self.bare_phase(t) * FRAC_1_SQRT_2;
        SubspaceState::new(mu, -mu, Complex64::new(0.0, 0.0))
    }

    /// `sigma_B = sqrt(2) mu_B`, the `|sym,n>` amplitude for initial `|g,g,n+1>`.
    pub fn sigma_b(&self, t: f64) -> Complex64 {
        let e = &self.eigen;
        -I * (2.0 * e.phi_n).sin() * self.centre_phase(t) * (e.omega_n * t).sin()
    }

    /// `xi_B`, the `|g,g,n+1>` amplitude for initial `|g,g,n+1>`.
    pub fn xi_b(&self, t: f64) -> Complex64 {
        let (s2, c2) = self.sin2_cos2();
        let w = self.eigen.omega_n * t;
        self.centre_phase(t) * (c2 * cis(w) + s2 * cis(-w))
    }

    /// `|sigma_B|^2 = sin^2(2 phi_n) sin^2(Omega_n t)`.
    pub fn case_b_sym_probability(&self, t: f64) -> f64 {
        self.eigen.transfer_amplitude() * (self.eigen.omega_n * t).sin().powi(2)
    }

    pub fn case_b(&self, t: f64) -> SubspaceState {
        let mu = self.sigma_b(t) * FRAC_1_SQRT_2;
        SubspaceState::new(mu, mu, self.xi_b(t))
    }

    pub fn case_beta(&self, t: f64) -> SubspaceState {
        let e = &self.eigen;
        let (s2, c2) = self.sin2_cos2();
        let w = e.omega_n * t;
        let mu = FRAC_1_SQRT_2 * self.centre_phase(t) * (c2 * cis(-w) + s2 * cis(w));
        let xi = -I * (2.0 * e.phi_n).sin() * self.centre_phase(t) * w.sin();
        SubspaceState::new(mu, mu, xi)
    }

    pub fn case_c(&self, t: f64) -> SubspaceState {
        let (s2, c2) = self.sin2_cos2();
        let w = self.eigen.omega_n * t;
        let bare = self.bare_phase(t);
        let swing = self.centre_phase(t) * (s2 * cis(w) + c2 * cis(-w));
        SubspaceState::new(
            0.5 * (bare + swing),
            0.5 * (-bare + swing),
            self.sigma_b(t) * FRAC_1_SQRT_2,
        )
    }
}

/// Initial condition of a single-subspace run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FockCase {
    A,
    B,
    C,
    Beta,
    Custom(SubspaceState),
}

impl FockCase {
    pub fn initial_state(&self) -> SubspaceState {
        match self {
            FockCase::A => SubspaceState::asym(),
            FockCase::B => SubspaceState::gg(),
            FockCase::C => SubspaceState::rg(),
            FockCase::Beta => SubspaceState::sym(),
            FockCase::Custom(s) => *s,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            FockCase::A => "A",
            FockCase::B => "B",
            FockCase::C => "C",
            FockCase::Beta => "beta",
            FockCase::Custom(_) => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockProbabilities {
    pub t: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p_sym: f64,
    pub p_asym: f64,
}

impl FockProbabilities {
    pub fn from_state(t: f64, s: &SubspaceState) -> Self {
        FockProbabilities {
            t,
            p1: s.mu.norm_sqr(),
            p2: s.nu.norm_sqr(),
            p3: s.xi.norm_sqr(),
            p_sym: s.sym_amplitude().norm_sqr(),
            p_asym: s.asym_amplitude().norm_sqr(),
        }
    }
}

/// Probabilities together with the amplitudes they came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockRecord {
    pub probabilities: FockProbabilities,
    pub state: SubspaceState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockScenario {
    case: FockCase,
    subspace: Subspace,
}

impl FockScenario {
    pub fn new(case: FockCase, n: u32, params: &ModelParams) -> Result<Self> {
        if let FockCase::Custom(s) = case {
            SubspaceState::normalized(s.mu, s.nu, s.xi)?;
        }
        Ok(FockScenario {
            case,
            subspace: Subspace::new(n, params)?,
        })
    }

    pub fn case(&self) -> &FockCase {
        &self.case
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// Amplitudes from the direct closed form of the case.
    pub fn amplitudes(&self, t: f64) -> SubspaceState {
        let sub = &self.subspace;
        match &self.case {
            FockCase::A => sub.case_a(t),
            FockCase::B => sub.case_b(t),
            FockCase::C => sub.case_c(t),
            FockCase::Beta => sub.case_beta(t),
            FockCase::Custom(s) => sub.evolve(s, t),
        }
    }

    /// Amplitudes from the general eigenbasis evolver.
    pub fn amplitudes_via_evolve(&self, t: f64) -> SubspaceState {
        self.subspace.evolve(&self.case.initial_state(), t)
    }

    pub fn probabilities(&self, t: f64) -> FockProbabilities {
        FockProbabilities::from_state(t, &self.amplitudes(t))
    }

    pub fn record(&self, t: f64) -> FockRecord {
        let state = self.amplitudes(t);
        FockRecord {
            probabilities: FockProbabilities::from_state(t, &state),
            state,
        }
    }

    pub fn series(&self, grid: &[f64]) -> Vec<FockRecord> {
        grid.iter().map(|&t| self.record(t)).collect()
    }
}

/// Time `pi / (4 lambda sqrt(2(n+1)))` at which initial `|g,g,n+1>` becomes
/// `(-i|sym,n> + |g,g,n+1>)/sqrt(2)` up to a global phase.
pub fn entangling_time(n: u32, params: &ModelParams) -> Result<f64> {
    let delta = params.delta();
    if delta != 0.0 {
        return Err(ModelError::NonZeroDetuning(delta));
    }
    let g = sym_coupling(n, params);
    if g == 0.0 {
        return Err(ModelError::DegenerateSubspace);
    }
    Ok(PI / (4.0 * g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn sub(n: u32, delta: f64, lambda: f64) -> Subspace {
        Subspace::new(n, &ModelParams::with_detuning(1.0, lambda, delta).unwrap()).unwrap()
    }

    #[test]
    fn case_a_only_accrues_phase() {
        let s = sub(3, 0.4, 1.1);
        for t in [0.0, 0.3, 2.0, 17.5] {
            let a = s.case_a(t);
            let phase = cis(-3.0 * 1.4 * t);
            let expect = SubspaceState::new(
                phase * FRAC_1_SQRT_2,
                -phase * FRAC_1_SQRT_2,
                0.0.into(),
            );
            assert!(a.max_abs_diff(&expect) < 1e-14);
            assert!(s.evolve(&SubspaceState::asym(), t).max_abs_diff(&expect) < 1e-14);
        }
    }

    #[test]
    fn initial_values() {
        let s = sub(2, 0.3, 0.8);
        assert!(s.case_b(0.0).max_abs_diff(&SubspaceState::gg()) < 1e-15);
        assert!(s.case_c(0.0).max_abs_diff(&SubspaceState::rg()) < 1e-15);
        assert!(s.case_beta(0.0).max_abs_diff(&SubspaceState::sym()) < 1e-15);
        assert!(s
            .evolve(&SubspaceState::gg(), 0.0)
            .max_abs_diff(&SubspaceState::gg())
            < 1e-15);
    }

    #[test]
    fn case_b_full_transfer_at_resonance() {
        let s = sub(0, 0.0, 1.0);
        let t = PI / (2.0 * SQRT_2);
        let b = s.case_b(t);
        assert!(b.xi.norm_sqr() < 1e-30);
        assert!((b.sym_amplitude().norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn case_b_detuned_amplitude() {
        let s = sub(0, 0.5, 1.0);
        let t = 1.0;
        let p = FockProbabilities::from_state(t, &s.case_b(t));
        let omega = 2.0625f64.sqrt();
        let expect = (2.0 / 2.0625) * (omega * t).sin().powi(2);
        assert!((p.p_sym - expect).abs() < 1e-14);
        assert!((s.case_b_sym_probability(t) - expect).abs() < 1e-14);
    }

    #[test]
    fn case_c_transfer_at_resonance() {
        let s = sub(0, 0.0, 1.0);
        let t = PI / SQRT_2;
        let p = FockProbabilities::from_state(t, &s.case_c(t));
        assert!(p.p1 < 1e-15);
        assert!((p.p2 - 1.0).abs() < 1e-15);
        assert!(p.p3 < 1e-15);
    }

    #[test]
    fn beta_complements_b() {
        let s = sub(1, 0.3, 1.0);
        for k in 0..200 {
            let t = 0.05 * f64::from(k);
            let pb = s.case_b(t).sym_amplitude().norm_sqr();
            let pbeta = s.case_beta(t).sym_amplitude().norm_sqr();
            assert!((pb + pbeta - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn entangling_time_examples() {
        let p = ModelParams::resonant(1.0).unwrap();
        assert!((entangling_time(0, &p).unwrap() - PI / (4.0 * SQRT_2)).abs() < 1e-16);
        let p = ModelParams::resonant(0.5).unwrap();
        assert!((entangling_time(7, &p).unwrap() - PI / 8.0).abs() < 1e-16);
        let p = ModelParams::new(1.1, 1.0, 1.0).unwrap();
        assert!(matches!(
            entangling_time(0, &p),
            Err(ModelError::NonZeroDetuning(_))
        ));
    }

    #[test]
    fn entangled_state_at_entangling_time() {
        let p = ModelParams::resonant(1.0).unwrap();
        for n in [0, 1, 5] {
            let t = entangling_time(n, &p).unwrap();
            let pr = FockProbabilities::from_state(t, &Subspace::new(n, &p).unwrap().case_b(t));
            assert!((pr.p_sym - 0.5).abs() < 1e-12);
            assert!((pr.p3 - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn custom_case_requires_normalization() {
        let p = ModelParams::resonant(1.0).unwrap();
        let bad = SubspaceState::from_real(1.0, 1.0, 0.0);
        assert!(FockScenario::new(FockCase::Custom(bad), 0, &p).is_err());
    }

    #[test]
    fn zero_coupling_with_detuning_is_bare_phases() {
        let p = ModelParams::with_detuning(1.0, 0.0, -0.4).unwrap();
        let s = Subspace::new(2, &p).unwrap();
        let t = 3.3;
        let out = s.evolve(&SubspaceState::gg(), t);
        let expect = cis(-(2.0 * 0.6 - 0.4) * t);
        assert!((out.xi - expect).norm() < 1e-14);
        assert!(out.mu.norm() < 1e-15 && out.nu.norm() < 1e-15);
    }
}
