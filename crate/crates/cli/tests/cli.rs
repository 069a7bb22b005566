use std::process::{Command, Output};

use rydberg_jc_cli::figures::{FigureId, PresetKind, FIG7C_INTERVAL_II};
use rydberg_jc_cli::run::interval_mean;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rydberg-jc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let j = header.iter().position(|c| *c == name).unwrap();
    lines
        .map(|l| l.split(',').nth(j).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn presets_are_frozen() {
    use PresetKind::*;
    let golden = [
        (FigureId::Fig4, Amplitude { lambda: 1.0, ns: [0, 2, 10] }, "delta_over_omega0", -4.0, 4.0),
        (FigureId::Fig5, CaseC { n: 0, omega_f: 1.0, lambda: 1.0 }, "t_omega_n", 0.0, 4.0 * std::f64::consts::PI),
        (FigureId::Fig6a, CaseC { n: 0, omega_f: 1.2, lambda: 1.0 }, "t_omega_0", 0.0, 60.0),
        (FigureId::Fig6b, CaseC { n: 10, omega_f: 1.2, lambda: 1.0 }, "t_omega_0", 0.0, 60.0),
        (FigureId::Fig7a, Coherent { n_bar: 10.0 }, "t_lambda", 0.0, 50.0),
        (FigureId::Fig7b, Coherent { n_bar: 20.0 }, "t_lambda", 0.0, 50.0),
        (FigureId::Fig7c, Coherent { n_bar: 50.0 }, "t_lambda", 0.0, 50.0),
    ];
    for (id, kind, axis, lo, hi) in golden {
        let p = id.preset();
        assert_eq!(p.kind, kind, "{id}");
        assert_eq!(p.axis, axis, "{id}");
        assert_eq!((p.axis_start, p.axis_end, p.points), (lo, hi, 2000), "{id}");
    }
    assert_eq!(FIG7C_INTERVAL_II, (3.0, 22.0));
}

#[test]
fn fig7c_plateau_from_csv() {
    let out = cli(&["figure", "fig7c"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    let t = column(&csv, "t_lambda");
    let mean = interval_mean(&t, &column(&csv, "p_sym"), FIG7C_INTERVAL_II).unwrap();
    assert!((mean - 0.5).abs() <= 0.02, "{mean}");
}

#[test]
fn figure_headers() {
    let expect = [
        ("fig4", "delta_over_omega0,sin2_2phi_n0,sin2_2phi_n2,sin2_2phi_n10"),
        ("fig5", "t_omega_n,t,p1,p2,p3,p_sym,p_asym,re_mu,im_mu,re_nu,im_nu,re_xi,im_xi"),
        ("fig6a", "t_omega_0,t,p1,p2,p3,p_sym,p_asym,re_mu,im_mu,re_nu,im_nu,re_xi,im_xi"),
        ("fig7a", "t_lambda,t,p_sym,p_gg,re_gamma,im_gamma,epsilon"),
    ];
    for (id, header) in expect {
        let out = cli(&["figure", id]);
        assert!(out.status.success());
        let text = stdout(&out);
        assert_eq!(text.lines().next().unwrap(), header);
        assert_eq!(text.lines().count(), 2001);
    }
}

#[test]
fn fock_and_coherent_schemas() {
    let out = cli(&["fock", "--case", "C", "--n", "0", "--delta", "0.2", "--lambda", "1", "--t-end", "60", "--t-points", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next().unwrap(), "t,p1,p2,p3,p_sym,p_asym,re_mu,im_mu,re_nu,im_nu,re_xi,im_xi");
    assert_eq!(column(&text, "t"), vec![0.0, 15.0, 30.0, 45.0, 60.0]);

    let out = cli(&["coherent", "--n-bar", "5", "--t-points", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next().unwrap(), "t,p_sym,p_gg,re_gamma,im_gamma,epsilon");

    let out = cli(&["coherent", "--n-bar", "5", "--t-points", "3", "--oracle"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next().unwrap(), "t,p_sym,p_gg,re_gamma,im_gamma,epsilon,p_asym");
    assert!(column(&text, "p_asym").iter().all(|x| x.abs() < 1e-12));

    let out = cli(&["coherent", "--n-bar", "4", "--t-points", "20", "--oracle", "--lambda-b", "0.3"]);
    assert!(out.status.success());
    assert!(column(&stdout(&out), "p_asym").iter().any(|x| *x > 1e-3));
}

#[test]
fn eig_json_records() {
    let out = cli(&["eig", "--n", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let recs = v.as_array().unwrap();
    assert_eq!(recs.len(), 4);
    for key in ["n", "E_asym", "E_plus", "E_minus", "omega_n", "phi_n", "R"] {
        assert!(recs[0].get(key).is_some(), "{key}");
    }
    assert_eq!(recs[3]["R"][2].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["coherent", "--n-bar", "-1"]).status.code(), Some(1));
    assert_eq!(cli(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(cli(&["fock", "--case", "A", "--omega-f", "1", "--delta", "0.1"]).status.code(), Some(1));
    assert_eq!(cli(&["figure", "fig7b", "--n-bar", "3"]).status.code(), Some(1));
    assert_eq!(cli(&["fock", "--case", "A", "--t-start", "2", "--t-end", "1"]).status.code(), Some(1));
    assert_eq!(cli(&["--help"]).status.code(), Some(0));
    let out = cli(&["fock", "--case", "B", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent-dir/x.csv"));
    assert_eq!(cli(&["--config", "/nonexistent-dir/c.toml", "eig"]).status.code(), Some(3));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "[params]\ndelta = 0.2\nlambda = 1.0\n\n[field]\ncase = \"C\"\nn = 10\n\n[time]\nend = 60.0\npoints = 7\n",
    )
    .unwrap();
    let path = cfg.to_str().unwrap();
    let from_file = stdout(&cli(&["--config", path, "fock"]));
    let direct = stdout(&cli(&["fock", "--case", "C", "--n", "10", "--delta", "0.2", "--t-end", "60", "--t-points", "7"]));
    assert_eq!(from_file, direct);

    let overridden = cli(&["fock", "--config", path, "--n", "0"]);
    assert!(overridden.status.success());
    assert_ne!(stdout(&overridden), direct);

    std::fs::write(&cfg, "[params]\nomegaf = 1.0\n").unwrap();
    assert_eq!(cli(&["--config", path, "eig"]).status.code(), Some(1));
}
