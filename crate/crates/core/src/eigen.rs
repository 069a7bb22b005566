//! Closed-form eigensystem of the 3x3 block acting on subspace `H_n`.
//!
//! The eigenvectors are the columns of a proper rotation `R` about the
//! fixed antisymmetric axis `(1, -1, 0)/sqrt(2)`:
//!
//! ```text
//!       | 1/sqrt2   cos(phi)/sqrt2  -sin(phi)/sqrt2 |
//!   R = |-1/sqrt2   cos(phi)/sqrt2  -sin(phi)/sqrt2 |
//!       |    0         sin(phi)         cos(phi)    |
//! ```
//!
//! with `tan(phi_n) = (Omega_n + delta/2) / (lambda sqrt(2(n+1)))`. The
//! `|->` column carries the sign opposite to the raw `(±g, ±g, Omega ∓ delta/2)`
//! form, so `det R = +1`.

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{ModelError, Result};
use crate::params::{ModelParams, SubspaceState};

/// `lambda * sqrt(2(n+1))`: the coupling between `|g,g,n+1>` and `|sym,n>`.
pub fn sym_coupling(n: u32, p: &ModelParams) -> f64 {
    p.lambda() * (2.0 * (f64::from(n) + 1.0)).sqrt()
}

/// Two-atom Rabi frequency `Omega_n = sqrt((delta/2)^2 + 2 lambda^2 (n+1))`.
pub fn rabi_frequency(n: u32, p: &ModelParams) -> f64 {
    (0.5 * p.delta()).hypot(sym_coupling(n, p))
}

/// Mixing angle `phi_n` in `[0, pi/2]`; strictly inside for `lambda > 0`.
///
/// For negative detuning `Omega_n + delta/2` is evaluated as
/// `g^2 / (Omega_n - delta/2)`, which avoids the cancellation.
pub fn mixing_angle(n: u32, p: &ModelParams) -> Result<f64> {
    let g = sym_coupling(n, p);
    let delta = p.delta();
    if g == 0.0 && delta == 0.0 {
        return Err(ModelError::DegenerateSubspace);
    }
    let omega = rabi_frequency(n, p);
    let num = if delta >= 0.0 {
        omega + 0.5 * delta
    } else {
        g * g / (omega - 0.5 * delta)
    };
    Ok(num.atan2(g))
}

/// Coefficients of a subspace state in the `{|asym>, |+>, |->}` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenCoefficients {
    pub asym: Complex64,
    pub plus: Complex64,
    pub minus: Complex64,
}

impl EigenCoefficients {
    pub fn norm_squared(&self) -> f64 {
        self.asym.norm_sqr() + self.plus.norm_sqr() + self.minus.norm_sqr()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSystem {
    pub n: u32,
    /// Energies in units of hbar.
    pub e_asym: f64,
    pub e_plus: f64,
    pub e_minus: f64,
    pub omega_n: f64,
    pub phi_n: f64,
    /// Columns are `v_asym`, `v_plus`, `v_minus`.
    pub rotation: Matrix3<f64>,
}

impl EigenSystem {
    pub fn new(n: u32, p: &ModelParams) -> Result<Self> {
        let phi = mixing_angle(n, p)?;
        let omega = rabi_frequency(n, p);
        let base = p.omega_f() * f64::from(n);
        let centre = base + 0.5 * p.delta();
        let (s, c) = phi.sin_cos();
        let h = FRAC_1_SQRT_2;
        #[rustfmt::skip]
        let rotation = Matrix3::new(
             h, c * h, -s * h,
            -h, c * h, -s * h,
            0.0,    s,      c,
        );
        Ok(EigenSystem {
            n,
            e_asym: base,
            e_plus: centre + omega,
            e_minus: centre - omega,
            omega_n: omega,
            phi_n: phi,
            rotation,
        })
    }

    pub fn v_asym(&self) -> [f64; 3] {
        self.column(0)
    }

    pub fn v_plus(&self) -> [f64; 3] {
        self.column(1)
    }

    pub fn v_minus(&self) -> [f64; 3] {
        self.column(2)
    }

    fn column(&self, j: usize) -> [f64; 3] {
        [
            self.rotation[(0, j)],
            self.rotation[(1, j)],
            self.rotation[(2, j)],
        ]
    }

    /// `(E_asym, E_plus, E_minus)`, matching the column order of `R`.
    pub fn energies(&self) -> [f64; 3] {
        [self.e_asym, self.e_plus, self.e_minus]
    }

    /// Amplitude of the `|sym,n>` <-> `|g,g,n+1>` oscillation, `sin^2(2 phi_n)`.
    pub fn transfer_amplitude(&self) -> f64 {
        (2.0 * self.phi_n).sin().powi(2)
    }

    /// `c = R^T (mu, nu, xi)`.
    pub fn to_eigen_basis(&self, s: &SubspaceState) -> EigenCoefficients {
        let r = &self.rotation;
        let v = s.to_array();
        let dot = |j: usize| v[0] * r[(0, j)] + v[1] * r[(1, j)] + v[2] * r[(2, j)];
        EigenCoefficients {
            asym: dot(0),
            plus: dot(1),
            minus: dot(2),
        }
    }

    /// `(mu, nu, xi) = R c`.
    pub fn from_eigen_basis(&self, c: &EigenCoefficients) -> SubspaceState {
        let r = &self.rotation;
        let row = |i: usize| c.asym * r[(i, 0)] + c.plus * r[(i, 1)] + c.minus * r[(i, 2)];
        SubspaceState::new(row(0), row(1), row(2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    fn params(delta: f64, lambda: f64) -> ModelParams {
        ModelParams::with_detuning(1.0, lambda, delta).unwrap()
    }

    #[test]
    fn rabi_frequency_examples() {
        assert_eq!(rabi_frequency(0, &params(0.0, 1.0)), SQRT_2);
        assert_eq!(rabi_frequency(1, &params(0.0, 1.0)), 2.0);
        assert!((rabi_frequency(0, &params(0.5, 1.0)) - 2.0625f64.sqrt()).abs() < 1e-15);
        assert!((rabi_frequency(0, &params(0.5, 1.0)) - 1.436_140_661_634_507).abs() < 1e-15);
    }

    #[test]
    fn resonant_angle_is_exactly_quarter_pi() {
        for n in 0..=60 {
            for lambda in [0.1, 0.3, 1.0, 2.5, 3.0, 17.0] {
                assert_eq!(mixing_angle(n, &params(0.0, lambda)).unwrap(), FRAC_PI_4);
            }
        }
    }

    #[test]
    fn detuned_amplitude_near_097() {
        let e = EigenSystem::new(0, &params(0.5, 1.0)).unwrap();
        // sin^2(2 phi) = 2 lambda^2 (n+1) / Omega^2 = 2 / 2.0625
        assert!((e.transfer_amplitude() - 2.0 / 2.0625).abs() < 1e-14);
        assert!((e.transfer_amplitude() - 0.97).abs() < 0.005);
    }

    #[test]
    fn angle_approaches_one_with_n() {
        let p = params(0.2, 1.0);
        let phi10 = mixing_angle(10, &p).unwrap();
        assert!(phi10 > FRAC_PI_4 && phi10 < FRAC_PI_2);
        let a0 = (2.0 * mixing_angle(0, &p).unwrap()).sin().powi(2);
        let a10 = (2.0 * phi10).sin().powi(2);
        assert!(a10 > a0 && a10 < 1.0);
    }

    #[test]
    fn degenerate_subspace_rejected() {
        let p = params(0.0, 0.0);
        assert_eq!(mixing_angle(0, &p), Err(ModelError::DegenerateSubspace));
        assert!(EigenSystem::new(3, &p).is_err());
        // lambda = 0 with detuning has well-defined limits
        assert_eq!(mixing_angle(0, &params(0.3, 0.0)).unwrap(), FRAC_PI_2);
        assert_eq!(mixing_angle(0, &params(-0.3, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn resonant_energies() {
        let e = EigenSystem::new(0, &params(0.0, 1.0)).unwrap();
        assert_eq!(e.e_asym, 0.0);
        assert!((e.e_plus - SQRT_2).abs() < 1e-15);
        assert!((e.e_minus + SQRT_2).abs() < 1e-15);
        let e = EigenSystem::new(2, &params(0.0, 1.0)).unwrap();
        assert!((e.e_plus - (2.0 + 6f64.sqrt())).abs() < 1e-14);
        assert!((e.e_minus - (2.0 - 6f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn resonant_vectors() {
        let e = EigenSystem::new(4, &params(0.0, 0.7)).unwrap();
        let h = FRAC_1_SQRT_2;
        let exp_p = [0.5, 0.5, h];
        let exp_m = [-0.5, -0.5, h];
        for i in 0..3 {
            assert!((e.v_plus()[i] - exp_p[i]).abs() < 1e-15);
            assert!((e.v_minus()[i] - exp_m[i]).abs() < 1e-15);
        }
        assert_eq!(e.v_asym(), [h, -h, 0.0]);
    }

    #[test]
    fn basis_transforms() {
        let e = EigenSystem::new(2, &params(0.0, 1.0)).unwrap();
        let c = e.to_eigen_basis(&SubspaceState::asym());
        assert!((c.asym - 1.0).norm() < 1e-15);
        assert!(c.plus.norm() < 1e-15 && c.minus.norm() < 1e-15);

        let c = e.to_eigen_basis(&SubspaceState::gg());
        assert!(c.asym.norm() < 1e-15);
        assert!((c.plus - FRAC_1_SQRT_2).norm() < 1e-15);
        assert!((c.minus - FRAC_1_SQRT_2).norm() < 1e-15);

        let back = e.from_eigen_basis(&c);
        assert!(back.max_abs_diff(&SubspaceState::gg()) < 1e-15);
    }

    #[test]
    fn rotation_is_proper() {
        for delta in [-2.0, -0.5, 0.0, 0.2, 0.5, 2.0] {
            let e = EigenSystem::new(7, &params(delta, 0.4)).unwrap();
            let r = e.rotation;
            let err = (r.transpose() * r - Matrix3::identity()).abs().max();
            assert!(err < 1e-15, "{err}");
            assert!((r.determinant() - 1.0).abs() < 1e-15);
        }
    }
}
