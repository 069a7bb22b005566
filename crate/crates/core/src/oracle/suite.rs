//! Cross-checks of every closed form against the oracles.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::dense::{subspace_hamiltonian, to_subspace_state, to_vector, Couplings, Propagator};
use super::full_space::{full_space_evolve, AtomPair, FullSpaceConfig, FullSpaceModel, FullSpaceState};
use crate::coherent::{CoherentConfig, CoherentEvolution};
use crate::eigen::EigenSystem;
use crate::error::Result;
use crate::fock::{entangling_time, FockCase, FockScenario, Subspace};
use crate::grid::uniform_grid;
use crate::params::{ModelParams, SubspaceState};

pub const EIGEN_TOL: f64 = 1e-12;
pub const FOCK_ORACLE_TOL: f64 = 1e-10;
pub const NORM_TOL: f64 = 1e-12;
pub const PATH_TOL: f64 = 1e-12;
pub const COHERENT_ORACLE_TOL: f64 = 1e-8;
pub const ASYM_POP_TOL: f64 = 1e-12;
pub const ENTANGLED_EIG_TOL: f64 = 1e-10;

pub const EIGEN_N_MAX: u32 = 50;
pub const EIGEN_DELTAS: [f64; 6] = [-2.0, -0.5, 0.0, 0.2, 0.5, 2.0];
pub const EIGEN_LAMBDAS: [f64; 3] = [0.1, 1.0, 3.0];
pub const FOCK_NS: [u32; 4] = [0, 1, 3, 10];
pub const FOCK_DELTAS: [f64; 3] = [0.0, 0.2, 0.7];
pub const FOCK_POINTS: usize = 2000;
/// Fock grids span `[0, FOCK_SPAN / Omega_n]`.
pub const FOCK_SPAN: f64 = 50.0;
pub const RANDOM_STATES: usize = 20;
pub const COHERENT_N_BARS: [f64; 4] = [1.0, 5.0, 10.0, 20.0];
pub const COHERENT_DELTAS: [f64; 2] = [0.0, 0.2];
pub const COHERENT_POINTS: usize = 500;
/// Coherent grids span `t lambda in [0, COHERENT_SPAN]`.
pub const COHERENT_SPAN: f64 = 50.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &str, max_residual: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.to_string(),
            max_residual,
            tolerance,
            passed: max_residual < tolerance,
        }
    }

    fn failed(name: &str, tolerance: f64) -> Self {
        CheckResult {
            name: name.to_string(),
            max_residual: f64::NAN,
            tolerance,
            passed: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    /// Multiplies every tolerance. Values below 1 tighten the suite.
    pub tolerance_scale: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            tolerance_scale: 1.0,
        }
    }
}

/// `n` normalized random states from a fixed seed.
pub fn random_states(n: usize, seed: u64) -> Vec<SubspaceState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mut z = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let s = SubspaceState::new(z(), z(), z());
            let norm = s.norm_squared().sqrt();
            SubspaceState::new(s.mu / norm, s.nu / norm, s.xi / norm)
        })
        .collect()
}

/// Eigen-residual, orthogonality and orientation residuals over the
/// standard parameter grid; returns `(residual, orthogonality, det, eigenvalue gap)`.
pub fn eigensystem_residuals() -> Result<[f64; 4]> {
    let mut out = [0.0f64; 4];
    for &delta in &EIGEN_DELTAS {
        for &lambda in &EIGEN_LAMBDAS {
            let p = ModelParams::with_detuning(1.0, lambda, delta)?;
            for n in 0..=EIGEN_N_MAX {
                let e = EigenSystem::new(n, &p)?;
                let h = subspace_hamiltonian(n, &p, &Couplings::Equal);
                let h = h.matrix().map(|z| z.re);
                let energies = e.energies();
                for (j, &ej) in energies.iter().enumerate() {
                    let v = e.rotation.column(j);
                    let r = &h * v - v * ej;
                    out[0] = out[0].max(r.amax());
                }
                let r = e.rotation;
                out[1] = out[1].max((r.transpose() * r - nalgebra::Matrix3::identity()).amax());
                out[2] = out[2].max((r.determinant() - 1.0).abs());
                let mut closed = energies;
                closed.sort_by(f64::total_cmp);
                let dense = subspace_hamiltonian(n, &p, &Couplings::Equal).eigenvalues();
                for (a, b) in closed.iter().zip(&dense) {
                    out[3] = out[3].max((a - b).abs());
                }
            }
        }
    }
    Ok(out)
}

/// Worst (oracle amplitude error, norm drift, closed-form vs evolve) over
/// all named cases plus random states on the standard Fock grids.
pub fn fock_residuals() -> Result<[f64; 3]> {
    let mut cases = vec![FockCase::A, FockCase::B, FockCase::C, FockCase::Beta];
    cases.extend(random_states(RANDOM_STATES, 7).into_iter().map(FockCase::Custom));
    let mut out = [0.0f64; 3];
    for &delta in &FOCK_DELTAS {
        let p = ModelParams::with_detuning(1.0, 1.0, delta)?;
        for &n in &FOCK_NS {
            let sub = Subspace::new(n, &p)?;
            let grid = uniform_grid(0.0, FOCK_SPAN / sub.eigen().omega_n, FOCK_POINTS)?;
            let prop = Propagator::new(&subspace_hamiltonian(n, &p, &Couplings::Equal));
            for case in &cases {
                let sc = FockScenario::new(*case, n, &p)?;
                let v0 = to_vector(&case.initial_state());
                for &t in &grid {
                    let a = sc.amplitudes(t);
                    let o = to_subspace_state(&prop.evolve(&v0, t));
                    out[0] = out[0].max(a.max_abs_diff(&o));
                    out[1] = out[1].max((a.norm_squared() - 1.0).abs());
                    out[2] = out[2].max(a.max_abs_diff(&sc.amplitudes_via_evolve(t)));
                }
            }
        }
    }
    Ok(out)
}

/// Worst (series vs full-space difference, |asym> population) for a coherent run.
pub fn coherent_residuals(n_bar: f64, delta: f64) -> Result<[f64; 2]> {
    let p = ModelParams::with_detuning(1.0, 1.0, delta)?;
    let cfg = CoherentConfig::from_mean_photons(n_bar, p)?;
    let series = CoherentEvolution::new(cfg)?;
    let grid = uniform_grid(0.0, COHERENT_SPAN / p.lambda(), COHERENT_POINTS)?;
    let states = full_space_evolve(&FullSpaceConfig::new(cfg), &grid)?;
    let mut out = [0.0f64; 2];
    for (&t, s) in grid.iter().zip(&states) {
        let rho3 = s.partial_trace_atoms();
        let asym = rho3.in_bell_basis()[(1, 1)].re.abs();
        out[1] = out[1].max(asym);
        let oracle = rho3.project_sym_gg()?;
        let rho = series.reduced_density(t);
        out[0] = out[0]
            .max((rho.p_sym - oracle.p_sym).abs())
            .max((rho.p_gg - oracle.p_gg).abs())
            .max((rho.gamma - oracle.gamma).norm());
    }
    Ok(out)
}

/// Deviation of the atoms' reduced-state spectrum from `(0, 1/2, 1/2)` at the
/// entangling time, starting from `|g,g,n+1>` in the full space.
pub fn entangling_residual(n: u32, lambda: f64) -> Result<f64> {
    let p = ModelParams::resonant(lambda)?;
    let t = entangling_time(n, &p)?;
    let cap = n as usize + 4;
    let model = FullSpaceModel::new(&p, &Couplings::Equal, cap)?;
    let s0 = FullSpaceState::basis(AtomPair::GG, n as usize + 1, cap)?;
    let ev = model.evolve(&s0, t)?.partial_trace_atoms().eigenvalues();
    Ok((ev[0].abs())
        .max((ev[1] - 0.5).abs())
        .max((ev[2] - 0.5).abs()))
}

fn check(name: &str, tol: f64, value: Result<f64>) -> CheckResult {
    match value {
        Ok(r) => CheckResult::new(name, r, tol),
        Err(_) => CheckResult::failed(name, tol),
    }
}

/// Runs every check. The suite passes when every entry has `passed`.
pub fn run_suite(opts: &SuiteOptions) -> Vec<CheckResult> {
    let s = opts.tolerance_scale;
    let mut out = Vec::new();

    match eigensystem_residuals() {
        Ok([res, orth, det, gap]) => {
            out.push(CheckResult::new("eigen residual |Hv - Ev|", res, EIGEN_TOL * s));
            out.push(CheckResult::new("rotation R^T R = I", orth, EIGEN_TOL * s));
            out.push(CheckResult::new("rotation det R = 1", det, EIGEN_TOL * s));
            out.push(CheckResult::new("eigenvalues vs dense solve", gap, EIGEN_TOL * s));
        }
        Err(_) => out.push(CheckResult::failed("eigensystem", EIGEN_TOL * s)),
    }

    match fock_residuals() {
        Ok([oracle, norm, path]) => {
            out.push(CheckResult::new("fock amplitudes vs expm", oracle, FOCK_ORACLE_TOL * s));
            out.push(CheckResult::new("fock norm conservation", norm, NORM_TOL * s));
            out.push(CheckResult::new("fock closed form vs evolve", path, PATH_TOL * s));
        }
        Err(_) => out.push(CheckResult::failed("fock dynamics", FOCK_ORACLE_TOL * s)),
    }

    for &delta in &COHERENT_DELTAS {
        for &n_bar in &COHERENT_N_BARS {
            let name = format!("coherent n_bar={n_bar} delta={delta} vs full space");
            match coherent_residuals(n_bar, delta) {
                Ok([diff, asym]) => {
                    out.push(CheckResult::new(&name, diff, COHERENT_ORACLE_TOL * s));
                    out.push(CheckResult::new(
                        &format!("coherent n_bar={n_bar} delta={delta} |asym> population"),
                        asym,
                        ASYM_POP_TOL * s,
                    ));
                }
                Err(_) => out.push(CheckResult::failed(&name, COHERENT_ORACLE_TOL * s)),
            }
        }
    }

    let ent = (0..=5u32)
        .map(|n| entangling_residual(n, 1.0))
        .try_fold(0.0f64, |acc, r| r.map(|r| acc.max(r)));
    out.push(check("entangling-time spectrum (1/2, 1/2)", ENTANGLED_EIG_TOL * s, ent));
    out
}
