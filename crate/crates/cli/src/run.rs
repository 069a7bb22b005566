//! Executes a [`RunConfig`] and writes its output.

use rydberg_jc::oracle::suite::{run_suite, CheckResult, SuiteOptions};
use rydberg_jc::oracle::{full_space_evolve, Couplings, FullSpaceConfig};
use rydberg_jc::{
    uniform_grid, CoherentConfig, CoherentEvolution, EigenSystem, FockCase, FockRecord, FockScenario,
    ModelParams,
};
use serde_json::{json, Value};

use crate::config::{Format, RunConfig, Scenario};
use crate::error::CliError;
use crate::figures::{FigureId, PresetKind};
use crate::output::{emit, json_number, render_json, Table};

pub const FOCK_COLUMNS: [&str; 12] = [
    "t", "p1", "p2", "p3", "p_sym", "p_asym", "re_mu", "im_mu", "re_nu", "im_nu", "re_xi", "im_xi",
];
pub const COHERENT_COLUMNS: [&str; 6] = ["t", "p_sym", "p_gg", "re_gamma", "im_gamma", "epsilon"];
pub const EIG_COLUMNS: [&str; 15] = [
    "n", "E_asym", "E_plus", "E_minus", "omega_n", "phi_n", "R_00", "R_01", "R_02", "R_10", "R_11",
    "R_12", "R_20", "R_21", "R_22",
];
pub const FIG4_COLUMNS: [&str; 4] = [
    "delta_over_omega0",
    "sin2_2phi_n0",
    "sin2_2phi_n2",
    "sin2_2phi_n10",
];

/// Runs the scenario and writes its output. Verification failures are
/// reported after the table has been written.
pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    match &cfg.scenario {
        Scenario::Eig { n_max } => emit(&cfg.output, &eig_output(*n_max, &cfg.params, cfg.output.format)?),
        Scenario::Fock { case, n } => {
            let grid = uniform_grid(cfg.time.start, cfg.time.end, cfg.time.points)?;
            let table = fock_table(*case, *n, &cfg.params, &grid)?;
            emit(&cfg.output, &table.render(cfg.output.format))
        }
        Scenario::Coherent {
            field,
            oracle,
            lambda_b,
        } => {
            let grid = uniform_grid(cfg.time.start, cfg.time.end, cfg.time.points)?;
            let coherent = CoherentConfig::new(field.alpha(), cfg.params, cfg.truncation()?)?;
            let table = if *oracle {
                let couplings = match lambda_b {
                    Some(lb) => Couplings::Unequal {
                        lambda_a: cfg.params.lambda(),
                        lambda_b: *lb,
                    },
                    None => Couplings::Equal,
                };
                oracle_table(coherent, cfg.photon_cap, couplings, &grid)?
            } else {
                coherent_table(coherent, &grid)?
            };
            emit(&cfg.output, &table.render(cfg.output.format))
        }
        Scenario::Verify { tolerance_scale } => {
            let results = run_suite(&SuiteOptions {
                tolerance_scale: *tolerance_scale,
            });
            emit(&cfg.output, &verify_report(&results, cfg.output.format))?;
            match results.iter().filter(|r| !r.passed).count() {
                0 => Ok(()),
                k => Err(CliError::Verification(k)),
            }
        }
        Scenario::Figure(id) => emit(&cfg.output, &figure_table(*id)?.render(cfg.output.format)),
    }
}

pub fn eig_output(n_max: u32, p: &ModelParams, format: Format) -> Result<String, CliError> {
    let systems = (0..=n_max)
        .map(|n| EigenSystem::new(n, p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(match format {
        Format::Csv => {
            let mut t = Table::new(EIG_COLUMNS);
            for e in &systems {
                let mut row = vec![f64::from(e.n), e.e_asym, e.e_plus, e.e_minus, e.omega_n, e.phi_n];
                for i in 0..3 {
                    for j in 0..3 {
                        row.push(e.rotation[(i, j)]);
                    }
                }
                t.push(row);
            }
            t.to_csv()
        }
        Format::Json => {
            let records: Vec<Value> = systems
                .iter()
                .map(|e| {
                    let r: Vec<Vec<Value>> = (0..3)
                        .map(|i| (0..3).map(|j| json_number(e.rotation[(i, j)])).collect())
                        .collect();
                    json!({
                        "n": e.n,
                        "E_asym": json_number(e.e_asym),
                        "E_plus": json_number(e.e_plus),
                        "E_minus": json_number(e.e_minus),
                        "omega_n": json_number(e.omega_n),
                        "phi_n": json_number(e.phi_n),
                        "R": r,
                    })
                })
                .collect();
            render_json(&Value::Array(records))
        }
    })
}

fn fock_row(r: &FockRecord) -> Vec<f64> {
    let p = &r.probabilities;
    let s = &r.state;
    vec![
        p.t, p.p1, p.p2, p.p3, p.p_sym, p.p_asym, s.mu.re, s.mu.im, s.nu.re, s.nu.im, s.xi.re, s.xi.im,
    ]
}

pub fn fock_table(case: FockCase, n: u32, p: &ModelParams, grid: &[f64]) -> Result<Table, CliError> {
    let sc = FockScenario::new(case, n, p)?;
    let mut t = Table::new(FOCK_COLUMNS);
    for r in sc.series(grid) {
        t.push(fock_row(&r));
    }
    Ok(t)
}

pub fn coherent_table(cfg: CoherentConfig, grid: &[f64]) -> Result<Table, CliError> {
    let evo = CoherentEvolution::new(cfg)?;
    let mut t = Table::new(COHERENT_COLUMNS);
    for pt in evo.time_series(grid)? {
        t.push(vec![pt.t, pt.p_sym, pt.p_gg, pt.gamma.re, pt.gamma.im, pt.epsilon]);
    }
    Ok(t)
}

/// Full-space results with an extra `p_asym` column; `epsilon` is the
/// linear entropy of the full 3x3 atomic state.
pub fn oracle_table(
    coherent: CoherentConfig,
    photon_cap: Option<usize>,
    couplings: Couplings,
    grid: &[f64],
) -> Result<Table, CliError> {
    let cfg = FullSpaceConfig {
        coherent,
        photon_cap,
        couplings,
    };
    let states = full_space_evolve(&cfg, grid)?;
    let mut cols = COHERENT_COLUMNS.to_vec();
    cols.push("p_asym");
    let mut t = Table::new(cols);
    for (&time, s) in grid.iter().zip(&states) {
        let rho = s.partial_trace_atoms();
        let b = rho.in_bell_basis();
        let gamma = b[(0, 2)];
        t.push(vec![
            time,
            b[(0, 0)].re,
            b[(2, 2)].re,
            gamma.re,
            gamma.im,
            1.0 - rho.purity(),
            b[(1, 1)].re,
        ]);
    }
    Ok(t)
}

pub fn verify_report(results: &[CheckResult], format: Format) -> String {
    match format {
        Format::Json => {
            render_json(&serde_json::to_value(results).expect("check results always serialize"))
        }
        Format::Csv => {
            let width = results.iter().map(|r| r.name.len()).max().unwrap_or(5).max(5);
            let mut s = format!("{:<width$}  {:>12}  {:>10}  result\n", "check", "max_residual", "tolerance");
            for r in results {
                s.push_str(&format!(
                    "{:<width$}  {:>12.3e}  {:>10.1e}  {}\n",
                    r.name,
                    r.max_residual,
                    r.tolerance,
                    if r.passed { "PASS" } else { "FAIL" }
                ));
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            s.push_str(&format!("{} checks, {} failed\n", results.len(), failed));
            s
        }
    }
}

/// Dataset of a figure preset, leading with its scaled axis column.
pub fn figure_table(id: FigureId) -> Result<Table, CliError> {
    let preset = id.preset();
    let axis = uniform_grid(preset.axis_start, preset.axis_end, preset.points)?;
    match preset.kind {
        PresetKind::Amplitude { lambda, ns } => {
            let mut t = Table::new(FIG4_COLUMNS);
            for &d in &axis {
                let p = ModelParams::with_detuning(1.0, lambda, d)?;
                let mut row = vec![d];
                for n in ns {
                    row.push(EigenSystem::new(n, &p)?.transfer_amplitude());
                }
                t.push(row);
            }
            Ok(t)
        }
        PresetKind::CaseC { n, omega_f, lambda } => {
            let p = ModelParams::new(omega_f, 1.0, lambda)?;
            // fig5 is plotted against t Omega_n, fig6 against t omega_0 = t.
            let scale = match id {
                FigureId::Fig5 => EigenSystem::new(n, &p)?.omega_n,
                _ => p.omega_0(),
            };
            let grid: Vec<f64> = axis.iter().map(|x| x / scale).collect();
            let body = fock_table(FockCase::C, n, &p, &grid)?;
            Ok(prepend(preset.axis, &axis, body))
        }
        PresetKind::Coherent { n_bar } => {
            let p = ModelParams::resonant(1.0)?;
            let grid: Vec<f64> = axis.iter().map(|x| x / p.lambda()).collect();
            let body = coherent_table(CoherentConfig::from_mean_photons(n_bar, p)?, &grid)?;
            Ok(prepend(preset.axis, &axis, body))
        }
    }
}

fn prepend(name: &str, axis: &[f64], body: Table) -> Table {
    let mut cols = vec![name.to_string()];
    cols.extend(body.columns);
    let mut t = Table::new(cols);
    for (x, row) in axis.iter().zip(body.rows) {
        let mut r = vec![*x];
        r.extend(row);
        t.push(r);
    }
    t
}

/// Mean of `y` over samples with `x` in `[lo, hi]`.
pub fn interval_mean(x: &[f64], y: &[f64], (lo, hi): (f64, f64)) -> Option<f64> {
    let inside: Vec<f64> = x
        .iter()
        .zip(y)
        .filter(|(x, _)| (lo..=hi).contains(*x))
        .map(|(_, y)| *y)
        .collect();
    (!inside.is_empty()).then(|| inside.iter().sum::<f64>() / inside.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eig_rows_and_json() {
        let p = ModelParams::resonant(1.0).unwrap();
        let csv = eig_output(2, &p, Format::Csv).unwrap();
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.starts_with("n,E_asym,E_plus,E_minus,omega_n,phi_n,R_00"));
        let json: Value = serde_json::from_str(&eig_output(0, &p, Format::Json).unwrap()).unwrap();
        assert_eq!(json[0]["n"], 0);
        assert_eq!(json[0]["phi_n"], std::f64::consts::FRAC_PI_4);
        assert_eq!(json[0]["R"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn fig4_axis_and_detuning_amplitude() {
        let t = figure_table(FigureId::Fig4).unwrap();
        assert_eq!(t.columns, FIG4_COLUMNS);
        assert_eq!(t.rows.len(), 2000);
        assert_eq!(t.rows[0][0], -4.0);
        assert_eq!(t.rows[1999][0], 4.0);
        for row in &t.rows {
            assert!(row[1] <= row[2] && row[2] <= row[3]);
        }
    }

    #[test]
    fn fig5_spans_two_periods() {
        let t = figure_table(FigureId::Fig5).unwrap();
        assert_eq!(t.columns[0], "t_omega_n");
        assert_eq!(t.columns[1..], FOCK_COLUMNS);
        let last = t.rows.last().unwrap();
        assert!((last[1] * 2f64.sqrt() - 4.0 * std::f64::consts::PI).abs() < 1e-12);
        // p1 = 1 again after two full periods
        assert!((last[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn interval_mean_selects_closed_interval() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y = [10.0, 1.0, 3.0, 10.0];
        assert_eq!(interval_mean(&x, &y, (1.0, 2.0)), Some(2.0));
        assert_eq!(interval_mean(&x, &y, (5.0, 6.0)), None);
    }

    #[test]
    fn verify_report_marks_failures() {
        let r = vec![CheckResult {
            name: "x".into(),
            max_residual: 1.0,
            tolerance: 0.5,
            passed: false,
        }];
        let s = verify_report(&r, Format::Csv);
        assert!(s.contains("FAIL"));
        assert!(s.ends_with("1 checks, 1 failed\n"));
    }
}
