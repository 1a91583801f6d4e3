use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::OmegaVector;
use crate::error::{domain, Result};
use crate::mehler::FieldConfig;
use crate::quad::{try_integrate_semiaxis_with, Decay, IntegrandSpec, QuadOptions, QuadratureResult};
use crate::specfun::{bessel_j3_2, gauss_2f1};

/// Transverse axis index k of S_k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    One,
    Two,
}

impl Axis {
    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            1 => Ok(Axis::One),
            2 => Ok(Axis::Two),
            _ => Err(domain(format!("axis must be 1 or 2, got {k}"))),
        }
    }

    fn component(self, ov: &OmegaVector) -> f64 {
        match self {
            Axis::One => ov.omega()[0],
            Axis::Two => ov.omega()[1],
        }
    }
}

fn nonzero(ov: &OmegaVector) -> Result<f64> {
    let w = ov.omega_norm();
    if !(w > 0.0) {
        return Err(domain("S_k needs ω ≠ 0"));
    }
    Ok(w)
}

/// S_k = (4πi/3) ω_k/√(m² + ω²) ₂F₁(1/2, 3/2; 5/2; ω²/(m² + ω²)).
pub fn sk_closed_form(cfg: &FieldConfig, axis: Axis, ov: &OmegaVector) -> Result<Complex64> {
    let w = nonzero(ov)?;
    let m = cfg.m();
    let norm2 = m * m + w * w;
    let x = if m == 0.0 { 1.0 } else { (w * w / norm2).min(1.0) };
    let f = gauss_2f1(0.5, 1.5, 2.5, x)?;
    let im = 4.0 * PI / 3.0 * axis.component(ov) / norm2.sqrt() * f;
    Ok(Complex64::new(0.0, im))
}

/// First positive zero of J_{3/2}, the root of tan ξ = ξ.
const J32_FIRST_ZERO: f64 = 4.493_409_457_909_064;

/// S_k = (2π)^{3/2} i (ω_k/ω) ∫₀^∞ ξ^{−3/2} e^{−(m/ω)ξ} J_{3/2}(ξ) dξ.
pub fn sk_quadrature(
    cfg: &FieldConfig,
    axis: Axis,
    ov: &OmegaVector,
    tol: f64,
) -> Result<QuadratureResult<Complex64>> {
    let w = nonzero(ov)?;
    let rate = cfg.m() / w;
    let spec = IntegrandSpec::new(
        0.0,
        Decay::Oscillatory {
            first_zero: J32_FIRST_ZERO,
            half_period: PI,
        },
    )?;
    let res = try_integrate_semiaxis_with(
        |xi: f64| {
            if xi == 0.0 {
                return Ok(0.0);
            }
            Ok(bessel_j3_2(xi) * (-rate * xi).exp() / (xi * xi.sqrt()))
        },
        &spec,
        &QuadOptions::new(tol),
    )?;
    let factor = (2.0 * PI).powf(1.5) * axis.component(ov) / w;
    Ok(res.scaled(factor).map(|v| Complex64::new(0.0, v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn massless_closed_form() {
        let cfg = FieldConfig::from_eb0(1.0, 0.0).unwrap();
        let ov = OmegaVector::new(0.6, 0.8).unwrap();
        for (axis, wk) in [(Axis::One, 0.6), (Axis::Two, 0.8)] {
            let s = sk_closed_form(&cfg, axis, &ov).unwrap();
            assert_eq!(s.re, 0.0);
            assert!((s.im - PI * PI * wk).abs() < 1e-12, "{}", s.im);
        }
    }

    #[test]
    fn heavy_mass_limit() {
        let cfg = FieldConfig::from_eb0(1.0, 1e4).unwrap();
        let ov = OmegaVector::new(1.0, 0.0).unwrap();
        let s = sk_closed_form(&cfg, Axis::One, &ov).unwrap();
        assert!((s.im / (4.0 * PI / 3.0 / 1e4) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn zero_omega_rejected() {
        let cfg = FieldConfig::from_eb0(1.0, 1.0).unwrap();
        let ov = OmegaVector::new(0.0, 0.0).unwrap();
        assert!(sk_closed_form(&cfg, Axis::One, &ov).is_err());
        assert!(sk_quadrature(&cfg, Axis::One, &ov, 1e-8).is_err());
        assert!(Axis::from_index(3).is_err());
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let cfg = FieldConfig::from_eb0(1.0, 1.0).unwrap();
        let ov = OmegaVector::new(0.0, 2.0).unwrap();
        let q = sk_quadrature(&cfg, Axis::Two, &ov, 1e-9).unwrap().value;
        let c = sk_closed_form(&cfg, Axis::Two, &ov).unwrap();
        assert!((q - c).norm() < 1e-7 * c.norm(), "{q} {c}");
    }
}
