//! Frozen parameter sets for the figure datasets.
//!
//! Every preset uses `omega_0 = 1`, so the caption units `omega_0^-1`,
//! `lambda^-1` (with `lambda = 1`) and `Delta / omega_0` coincide with the
//! raw simulation values except for fig5, whose axis is `t Omega_n(0)`.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

pub const FIGURE_POINTS: usize = 2000;

/// Collapse interval (I) of the n_bar = 50 panel, in units of 1/lambda.
pub const FIG7C_INTERVAL_I: (f64, f64) = (0.0, 3.0);
/// Plateau interval (II) of the n_bar = 50 panel, in units of 1/lambda.
pub const FIG7C_INTERVAL_II: (f64, f64) = (3.0, 22.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FigureId {
    Fig4,
    Fig5,
    Fig6a,
    Fig6b,
    Fig7a,
    Fig7b,
    Fig7c,
}

impl FigureId {
    pub const ALL: [FigureId; 7] = [
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6a,
        FigureId::Fig6b,
        FigureId::Fig7a,
        FigureId::Fig7b,
        FigureId::Fig7c,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6a => "fig6a",
            FigureId::Fig6b => "fig6b",
            FigureId::Fig7a => "fig7a",
            FigureId::Fig7b => "fig7b",
            FigureId::Fig7c => "fig7c",
        }
    }

    pub fn preset(&self) -> FigurePreset {
        use PresetKind::*;
        let (kind, axis, range) = match self {
            FigureId::Fig4 => (
                Amplitude {
                    lambda: 1.0,
                    ns: [0, 2, 10],
                },
                "delta_over_omega0",
                (-4.0, 4.0),
            ),
            FigureId::Fig5 => (
                CaseC {
                    n: 0,
                    omega_f: 1.0,
                    lambda: 1.0,
                },
                "t_omega_n",
                (0.0, 4.0 * std::f64::consts::PI),
            ),
            FigureId::Fig6a => (
                CaseC {
                    n: 0,
                    omega_f: 1.2,
                    lambda: 1.0,
                },
                "t_omega_0",
                (0.0, 60.0),
            ),
            FigureId::Fig6b => (
                CaseC {
                    n: 10,
                    omega_f: 1.2,
                    lambda: 1.0,
                },
                "t_omega_0",
                (0.0, 60.0),
            ),
            FigureId::Fig7a => (Coherent { n_bar: 10.0 }, "t_lambda", (0.0, 50.0)),
            FigureId::Fig7b => (Coherent { n_bar: 20.0 }, "t_lambda", (0.0, 50.0)),
            FigureId::Fig7c => (Coherent { n_bar: 50.0 }, "t_lambda", (0.0, 50.0)),
        };
        FigurePreset {
            id: *self,
            kind,
            axis,
            axis_start: range.0,
            axis_end: range.1,
            points: FIGURE_POINTS,
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| format!("unknown figure '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PresetKind {
    /// `sin^2(2 phi_n)` against detuning, `omega_0 = 1`.
    Amplitude { lambda: f64, ns: [u32; 3] },
    /// Initial `|r,g,n>`, `omega_0 = 1`.
    CaseC { n: u32, omega_f: f64, lambda: f64 },
    /// Coherent field, `omega_f = omega_0 = lambda = 1`.
    Coherent { n_bar: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigurePreset {
    pub id: FigureId,
    pub kind: PresetKind,
    /// Name of the leading CSV column.
    pub axis: &'static str,
    pub axis_start: f64,
    pub axis_end: f64,
    pub points: usize,
}
