//! Model parameters and the three-state amplitude vector of a subspace.
//!
//! All frequencies are angular frequencies and energies are reported in
//! units of hbar, so `E / hbar` carries the same unit as `omega_0`. The
//! library works in whatever unit the caller picks; the CLI defaults to
//! `omega_0 = 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};

/// Tolerance on `|mu|^2 + |nu|^2 + |xi|^2 - 1` for states handed to the
/// evolvers.
pub const NORM_TOL: f64 = 1e-12;

/// Field frequency, atomic transition frequency and atom-field coupling.
///
/// Both atoms couple with the same real constant `lambda`. The detuning is
/// never stored; [`ModelParams::delta`] recomputes `omega_f - omega_0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    omega_f: f64,
    omega_0: f64,
    lambda: f64,
}

impl ModelParams {
    pub fn new(omega_f: f64, omega_0: f64, lambda: f64) -> Result<Self> {
        ModelParams {
            omega_f,
            omega_0,
            lambda,
        }
        .validate()
    }

    /// Parameters given by the detuning instead of the field frequency.
    pub fn with_detuning(omega_0: f64, lambda: f64, delta: f64) -> Result<Self> {
        if !delta.is_finite() {
            return Err(ModelError::InvalidParameter {
                name: "delta",
                value: delta,
                reason: "must be finite",
            });
        }
        Self::new(omega_0 + delta, omega_0, lambda)
    }

    /// `omega_f = omega_0 = 1` with the given coupling.
    pub fn resonant(lambda: f64) -> Result<Self> {
        Self::new(1.0, 1.0, lambda)
    }

    /// Checks the invariants and hands the value back unchanged.
    pub fn validate(self) -> Result<Self> {
        let finite = |name, value: f64| {
            if value.is_finite() {
                Ok(())
            } else {
                Err(ModelError::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite",
                })
            }
        };
        finite("omega_f", self.omega_f)?;
        finite("omega_0", self.omega_0)?;
        finite("lambda", self.lambda)?;
        if self.omega_0 <= 0.0 {
            return Err(ModelError::InvalidParameter {
                name: "omega_0",
                value: self.omega_0,
                reason: "must be positive",
            });
        }
        if self.lambda < 0.0 {
            return Err(ModelError::InvalidParameter {
                name: "lambda",
                value: self.lambda,
                reason: "must be non-negative",
            });
        }
        Ok(self)
    }

    pub fn omega_f(&self) -> f64 {
        self.omega_f
    }

    pub fn omega_0(&self) -> f64 {
        self.omega_0
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn delta(&self) -> f64 {
        self.omega_f - self.omega_0
    }
}

/// Amplitudes `(mu, nu, xi)` over `{|r,g,n>, |g,r,n>, |g,g,n+1>}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubspaceState {
    pub mu: Complex64,
    pub nu: Complex64,
    pub xi: Complex64,
}

impl SubspaceState {
    pub const fn new(mu: Complex64, nu: Complex64, xi: Complex64) -> Self {
        SubspaceState { mu, nu, xi }
    }

    /// Like [`SubspaceState::new`] but rejects states off the unit sphere.
    pub fn normalized(mu: Complex64, nu: Complex64, xi: Complex64) -> Result<Self> {
        let s = Self::new(mu, nu, xi);
        let norm = s.norm_squared();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(ModelError::NotNormalized(norm));
        }
        Ok(s)
    }

    pub fn from_real(mu: f64, nu: f64, xi: f64) -> Self {
        Self::new(mu.into(), nu.into(), xi.into())
    }

    /// `|r,g,n>`
    pub fn rg() -> Self {
        Self::from_real(1.0, 0.0, 0.0)
    }

    /// `|g,r,n>`
    pub fn gr() -> Self {
        Self::from_real(0.0, 1.0, 0.0)
    }

    /// `|g,g,n+1>`
    pub fn gg() -> Self {
        Self::from_real(0.0, 0.0, 1.0)
    }

    /// `(|r,g,n> + |g,r,n>) / sqrt(2)`
    pub fn sym() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_real(h, h, 0.0)
    }

    /// `(|r,g,n> - |g,r,n>) / sqrt(2)`
    pub fn asym() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_real(h, -h, 0.0)
    }

    pub fn norm_squared(&self) -> f64 {
        self.mu.norm_sqr() + self.nu.norm_sqr() + self.xi.norm_sqr()
    }

    /// Amplitude on `|sym,n>`.
    pub fn sym_amplitude(&self) -> Complex64 {
        (self.mu + self.nu) * std::f64::consts::FRAC_1_SQRT_2
    }

    /// Amplitude on `|asym,n>`.
    pub fn asym_amplitude(&self) -> Complex64 {
        (self.mu - self.nu) * std::f64::consts::FRAC_1_SQRT_2
    }

    pub fn to_array(&self) -> [Complex64; 3] {
        [self.mu, self.nu, self.xi]
    }

    pub fn from_array(a: [Complex64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    /// Largest componentwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &SubspaceState) -> f64 {
        (self.mu - other.mu)
            .norm()
            .max((self.nu - other.nu).norm())
            .max((self.xi - other.xi).norm())
    }
}
