//! Heat kernels of the Pauli operator H_s = (p − eA)² in a constant field
//! B₀ along e₃ with symmetric gauge A = ½ B₀ × x.
//!
//! Kernels are returned as a gauge-phase-stripped translation part times
//! the unimodular phase e^{−i(eB₀/2)(x₁x₂' − x₂x₁')}. All evaluation goes
//! through logarithms, so large eB₀t neither overflows nor cancels.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// A point of R³.
pub type Point3 = [f64; 3];

/// e² ≈ 1/137.04 in natural units.
pub const DEFAULT_E2: f64 = 1.0 / 137.04;

/// Physical parameters of a constant magnetic field problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldConfig {
    b0: f64,
    m: f64,
    e: f64,
    eb0: f64,
}

impl FieldConfig {
    pub fn new(b0: f64, m: f64, e: f64) -> Result<Self> {
        check(b0, m, e)?;
        Ok(Self { b0, m, e, eb0: e * b0 })
    }

    /// Field strength B₀ and mass m with the default coupling.
    pub fn with_default_coupling(b0: f64, m: f64) -> Result<Self> {
        Self::new(b0, m, DEFAULT_E2.sqrt())
    }

    /// Parametrize by the product eB₀ directly, which is kept exact.
    pub fn from_eb0(eb0: f64, m: f64) -> Result<Self> {
        Self::from_eb0_with_coupling(eb0, m, DEFAULT_E2.sqrt())
    }

    pub fn from_eb0_with_coupling(eb0: f64, m: f64, e: f64) -> Result<Self> {
        check(eb0, m, e)?;
        Ok(Self { b0: eb0 / e, m, e, eb0 })
    }

    pub fn b0(&self) -> f64 {
        self.b0
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn e(&self) -> f64 {
        self.e
    }

    pub fn e2(&self) -> f64 {
        self.e * self.e
    }

    pub fn eb0(&self) -> f64 {
        self.eb0
    }
}

fn check(b: f64, m: f64, e: f64) -> Result<()> {
    if !(b >= 0.0 && b.is_finite()) {
        return Err(domain(format!("field strength must be finite and ≥ 0, got {b}")));
    }
    if !(m >= 0.0 && m.is_finite()) {
        return Err(domain(format!("mass must be finite and ≥ 0, got {m}")));
    }
    if !(e > 0.0 && e.is_finite()) {
        return Err(domain(format!("coupling must be positive, got {e}")));
    }
    Ok(())
}

/// Eigenvalue of σ₃ along the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpinChannel {
    Up,
    Down,
}

impl SpinChannel {
    pub const BOTH: [SpinChannel; 2] = [SpinChannel::Up, SpinChannel::Down];

    pub fn sign(self) -> f64 {
        match self {
            SpinChannel::Up => 1.0,
            SpinChannel::Down => -1.0,
        }
    }

    pub fn from_sign(s: i32) -> Result<Self> {
        match s {
            1 => Ok(SpinChannel::Up),
            -1 => Ok(SpinChannel::Down),
            _ => Err(domain(format!("spin must be +1 or -1, got {s}"))),
        }
    }
}

/// Two-point kernel value split into translation part and gauge phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelValue {
    pub translation_part: Complex64,
    pub gauge_phase: Complex64,
}

impl KernelValue {
    pub fn value(&self) -> Complex64 {
        self.translation_part * self.gauge_phase
    }

    pub fn modulus(&self) -> f64 {
        self.translation_part.norm()
    }
}

/// ln(sinh u / u), accurate for all u ≥ 0.
pub(crate) fn ln_sinhc(u: f64) -> f64 {
    if u < 1e-4 {
        let u2 = u * u;
        u2 / 6.0 - u2 * u2 / 180.0
    } else if u < 20.0 {
        (u.sinh() / u).ln()
    } else {
        u - std::f64::consts::LN_2 - u.ln() + (-(-2.0 * u).exp()).ln_1p()
    }
}

/// u·coth u, with the Taylor form near 0.
pub(crate) fn u_coth(u: f64) -> f64 {
    if u < 1e-4 {
        let u2 = u * u;
        1.0 + u2 / 3.0 - u2 * u2 / 45.0
    } else {
        u / u.tanh()
    }
}

/// z₃² and ρ² of the displacement x' − x.
pub(crate) fn split_sq(x: &Point3, xp: &Point3) -> (f64, f64) {
    let d1 = xp[0] - x[0];
    let d2 = xp[1] - x[1];
    let d3 = xp[2] - x[2];
    (d3 * d3, d1 * d1 + d2 * d2)
}

/// Logarithm of the Mehler translation part at separation (z₃², ρ²).
pub(crate) fn ln_mehler(eb0: f64, t: f64, z3sq: f64, rho2: f64) -> f64 {
    let u = eb0 * t;
    -1.5 * (4.0 * PI * t).ln() - ln_sinhc(u) - z3sq / (4.0 * t) - rho2 * u_coth(u) / (4.0 * t)
}

/// Logarithm of the spin-resolved e^{−tE_A²} translation part.
pub(crate) fn ln_ea2(cfg: &FieldConfig, spin: SpinChannel, t: f64, z3sq: f64, rho2: f64) -> f64 {
    let eb0 = cfg.eb0();
    ln_mehler(eb0, t, z3sq, rho2) - t * cfg.m() * cfg.m() + spin.sign() * t * eb0
}

fn gauge_phase(eb0: f64, x: &Point3, xp: &Point3) -> Complex64 {
    if eb0 == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let theta = -0.5 * eb0 * (x[0] * xp[1] - x[1] * xp[0]);
    Complex64::from_polar(1.0, theta)
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain(format!("time must be positive and finite, got {t}")));
    }
    Ok(())
}

fn check_points(x: &Point3, xp: &Point3) -> Result<()> {
    if x.iter().chain(xp.iter()).all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(domain("points must have finite coordinates"))
    }
}

/// e^{−tH_s}(x, x').
pub fn mehler_hs_kernel(cfg: &FieldConfig, t: f64, x: &Point3, xp: &Point3) -> Result<KernelValue> {
    check_time(t)?;
    check_points(x, xp)?;
    let (z3sq, rho2) = split_sq(x, xp);
    let tp = ln_mehler(cfg.eb0(), t, z3sq, rho2).exp();
    Ok(KernelValue {
        translation_part: Complex64::new(tp, 0.0),
        gauge_phase: gauge_phase(cfg.eb0(), x, xp),
    })
}

/// e^{−tE_A²}(x, x') = e^{−tm²} e^{s·t·eB₀} e^{−tH_s}(x, x') in one spin channel.
pub fn ea2_heat_kernel(
    cfg: &FieldConfig,
    spin: SpinChannel,
    t: f64,
    x: &Point3,
    xp: &Point3,
) -> Result<KernelValue> {
    check_time(t)?;
    check_points(x, xp)?;
    let (z3sq, rho2) = split_sq(x, xp);
    let tp = ln_ea2(cfg, spin, t, z3sq, rho2).exp();
    Ok(KernelValue {
        translation_part: Complex64::new(tp, 0.0),
        gauge_phase: gauge_phase(cfg.eb0(), x, xp),
    })
}

/// (4πt)^{−3/2} e^{−|x−x'|²/4t}.
pub fn free_heat_kernel(t: f64, x: &Point3, xp: &Point3) -> Result<f64> {
    check_time(t)?;
    check_points(x, xp)?;
    let (z3sq, rho2) = split_sq(x, xp);
    Ok((-1.5 * (4.0 * PI * t).ln() - (z3sq + rho2) / (4.0 * t)).exp())
}

/// e^{−tm²}(4πt)^{−3/2}(1 + 2eB₀t)e^{−|x−x'|²/4t}.
pub fn prefactor_bound_a6a(cfg: &FieldConfig, t: f64, x: &Point3, xp: &Point3) -> Result<f64> {
    check_time(t)?;
    check_points(x, xp)?;
    let (z3sq, rho2) = split_sq(x, xp);
    let m2 = cfg.m() * cfg.m();
    let ln = -1.5 * (4.0 * PI * t).ln() - (z3sq + rho2) / (4.0 * t) - t * m2
        + (2.0 * cfg.eb0() * t).ln_1p();
    Ok(ln.exp())
}
