//! Kernels of E_A = |α(p − eA) + βm| and their Bessel-function envelopes.
//!
//! Everything here is gauge-phase-stripped and spin-resolved: a kernel is a
//! function of the displacement z' = x' − x in one σ₃ channel.

mod envelopes;
mod kernel;
mod sk;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::mehler::{FieldConfig, Point3};

pub use envelopes::{
    ae_bound_closed_form, ae_bound_integral, ea_bound_b9, exp_tea_bound, u0_offdiag_bound,
    y_replaced_integral,
};
pub use kernel::{ea2_tau_derivative, ea_kernel, exp_tea_kernel};
pub use sk::{sk_closed_form, sk_quadrature, Axis};

/// Displacement z' = x' − x with its cached norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Displacement {
    z: Point3,
    r: f64,
}

impl Displacement {
    pub fn new(z: Point3) -> Result<Self> {
        if !z.iter().all(|c| c.is_finite()) {
            return Err(domain("displacement must be finite"));
        }
        let r = (z[0] * z[0] + z[1] * z[1] + z[2] * z[2]).sqrt();
        Ok(Self { z, r })
    }

    pub fn between(x: &Point3, xp: &Point3) -> Result<Self> {
        Self::new([xp[0] - x[0], xp[1] - x[1], xp[2] - x[2]])
    }

    /// Displacement of length r along e₁.
    pub fn along_x(r: f64) -> Result<Self> {
        Self::new([r, 0.0, 0.0])
    }

    /// Displacement of length r at polar angle θ to the field and azimuth φ.
    pub fn polar(r: f64, theta: f64, phi: f64) -> Result<Self> {
        let s = theta.sin();
        Self::new([r * s * phi.cos(), r * s * phi.sin(), r * theta.cos()])
    }

    pub fn z(&self) -> Point3 {
        self.z
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn z3_sq(&self) -> f64 {
        self.z[2] * self.z[2]
    }

    /// Squared distance transverse to the field.
    pub fn rho_sq(&self) -> f64 {
        self.z[0] * self.z[0] + self.z[1] * self.z[1]
    }

    pub fn negated(&self) -> Self {
        Self {
            z: [-self.z[0], -self.z[1], -self.z[2]],
            r: self.r,
        }
    }
}

/// ω = (eB₀/2)(x₂, −x₁, 0) at a position x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OmegaVector {
    omega: [f64; 3],
    omega_norm: f64,
}

impl OmegaVector {
    /// Transverse components (ω₁, ω₂); the third vanishes.
    pub fn new(omega1: f64, omega2: f64) -> Result<Self> {
        if !(omega1.is_finite() && omega2.is_finite()) {
            return Err(domain("omega components must be finite"));
        }
        Ok(Self {
            omega: [omega1, omega2, 0.0],
            omega_norm: omega1.hypot(omega2),
        })
    }

    pub fn from_position(cfg: &FieldConfig, x: &Point3) -> Result<Self> {
        let h = 0.5 * cfg.eb0();
        Self::new(h * x[1], -h * x[0])
    }

    pub fn omega(&self) -> [f64; 3] {
        self.omega
    }

    pub fn omega_norm(&self) -> f64 {
        self.omega_norm
    }
}
