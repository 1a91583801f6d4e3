use std::f64::consts::{PI, SQRT_2};

use crate::error::{domain, Result};
use crate::mehler::FieldConfig;
use crate::quad::{try_integrate_rect2d, IntegrandSpec, QuadOptions, QuadratureResult};
use crate::specfun::{bessel_k_sequence, gamma_fn, k, BesselOrder};

fn positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(domain(format!("{name} must be positive and finite, got {v}")));
    }
    Ok(())
}

fn massive(cfg: &FieldConfig) -> Result<()> {
    positive("mass", cfg.m())
}

/// K₀ … K₃ at z.
fn k0123(z: f64) -> Result<[f64; 4]> {
    let v = bessel_k_sequence(BesselOrder::new(0.0)?, 4, z)?;
    Ok([v[0], v[1], v[2], v[3]])
}

/// Upper envelope of |E_A(z')| at |z'| = r.
pub fn ea_bound_b9(cfg: &FieldConfig, r: f64) -> Result<f64> {
    positive("r", r)?;
    massive(cfg)?;
    let (m, b) = (cfg.m(), cfg.eb0());
    let z = m * r;
    let k0 = k(0.0, z)?;
    let k1 = k(1.0, z)?;
    let r2 = r * r;
    let k1_part = k1 * (14.0 * m / (r2 * r) + (2.0 * m * m * m + 7.0 * m * b) / r);
    let k0_part = k0 * (7.0 * m * m / r2 + 2.0 * b * (m * m + b));
    Ok((k1_part + k0_part) / (2.0 * PI * PI))
}

/// Upper envelope of |e^{−tE_A}(x, x')| at |x − x'| = r.
pub fn exp_tea_bound(cfg: &FieldConfig, t: f64, r: f64) -> Result<f64> {
    positive("t", t)?;
    massive(cfg)?;
    if !(r >= 0.0) || !r.is_finite() {
        return Err(domain(format!("r must be finite and ≥ 0, got {r}")));
    }
    let (m, b) = (cfg.m(), cfg.eb0());
    let xi = t.hypot(r);
    let z = m * xi;
    let k1 = k(1.0, z)?;
    let k2 = k(2.0, z)?;
    Ok(m / (2.0 * PI * PI) * (m * t / (xi * xi) * k2 + b * t / xi * k1))
}

/// Upper envelope of the off-diagonal Foldy–Wouthuysen kernel at |x − x'| = r.
pub fn u0_offdiag_bound(cfg: &FieldConfig, r: f64) -> Result<f64> {
    positive("r", r)?;
    massive(cfg)?;
    let (m, b) = (cfg.m(), cfg.eb0());
    let [k0, k1, k2, _] = k0123(m * r)?;
    Ok(SQRT_2 / (PI * PI) * (m * m * k2 / r + 1.5 * b * m * k1 + 0.5 * b * b * r * k0))
}

/// Coefficients of ξ^{−ν}K_ν(mξ), ν = 0…3, in the braces of the A_E bound,
/// and of (τ + t')ξ^{−ν}K_ν(mξ), ν = 1, 2.
struct Braces {
    plain: [f64; 4],
    linear: [f64; 3],
}

impl Braces {
    fn new(cfg: &FieldConfig, r: f64) -> Self {
        let (m, b) = (cfg.m(), cfg.eb0());
        let m2 = m * m;
        let r2 = r * r;
        Self {
            plain: [
                0.5 * b * m2 + b * b,
                (5.0 * b + m2) * 0.5 * m,
                (3.0 + b * r2) * 0.5 * m2,
                0.5 * m2 * m * r2,
            ],
            linear: [0.0, 0.5 * m2 * b, 0.5 * m2 * m],
        }
    }

    /// Braces at radius ξ with τ + t' = s.
    fn eval(&self, m: f64, xi: f64, s: f64) -> Result<f64> {
        let ks = k0123(m * xi)?;
        let mut total = 0.0;
        let mut pow = 1.0;
        for (nu, (k, c)) in ks.iter().zip(self.plain).enumerate() {
            let base = k * pow;
            total += c * base;
            if let Some(l) = self.linear.get(nu) {
                total += l * s * base;
            }
            pow /= xi;
        }
        Ok(total)
    }
}

fn semiaxis_pair(cfg: &FieldConfig, r: f64, rate: f64) -> Result<(IntegrandSpec, IntegrandSpec)> {
    let scale = r / (1.0 + cfg.m() * r).sqrt();
    let outer = IntegrandSpec::inverse_sqrt(rate)?.with_scale(scale)?;
    let inner = IntegrandSpec::inverse_sqrt(cfg.m())?.with_scale(scale)?;
    Ok((outer, inner))
}

/// Double-integral upper envelope of |√((E_A + m)/E_A)(x, x')| at |x − x'| = r.
pub fn ae_bound_integral(cfg: &FieldConfig, r: f64, tol: f64) -> Result<QuadratureResult> {
    positive("r", r)?;
    massive(cfg)?;
    let m = cfg.m();
    let braces = Braces::new(cfg, r);
    let r2 = r * r;
    let (outer, inner) = semiaxis_pair(cfg, r, 2.0 * m)?;
    let res = try_integrate_rect2d(
        |tau, tp| {
            let s = tau + tp;
            let xi = (s * s + r2).sqrt();
            let w = (-tau * m).exp() / (tau * tp).sqrt();
            Ok(w * braces.eval(m, xi, s)?)
        },
        &outer,
        &inner,
        &QuadOptions::new(tol),
    )?;
    Ok(res.scaled(PI.powi(-3)))
}

/// The A_E envelope with e^{−τm} dropped and ξ replaced by √(τ² + t'² + r²).
///
/// This is the integrand whose closed form is [`ae_bound_closed_form`].
pub fn y_replaced_integral(cfg: &FieldConfig, r: f64, tol: f64) -> Result<QuadratureResult> {
    positive("r", r)?;
    massive(cfg)?;
    let m = cfg.m();
    let braces = Braces::new(cfg, r);
    let r2 = r * r;
    let (outer, inner) = semiaxis_pair(cfg, r, m)?;
    let res = try_integrate_rect2d(
        |tau, tp| {
            let y = (tau * tau + tp * tp + r2).sqrt();
            Ok(braces.eval(m, y, tau + tp)? / (tau * tp).sqrt())
        },
        &outer,
        &inner,
        &QuadOptions::new(tol),
    )?;
    Ok(res.scaled(PI.powi(-3)))
}

/// ∫₀^∞∫₀^∞ τ^p t'^q y^{−ν} K_ν(my) dτ dt' with y² = τ² + t'² + r².
pub(crate) fn y_moment(p: f64, q: f64, nu: f64, m: f64, r: f64) -> Result<f64> {
    let mu = 0.5 * (p - 1.0);
    let mu2 = 0.5 * (q - 1.0);
    let order = nu - mu - mu2 - 2.0;
    let coeff = 2f64.powf(mu + mu2) * gamma_fn(mu + 1.0)? * gamma_fn(mu2 + 1.0)?;
    Ok(coeff * m.powf(-mu - mu2 - 2.0) * r.powf(-order) * k(order, m * r)?)
}

/// Closed form of [`y_replaced_integral`], a Bessel sum in K_{1/2}, K_{3/2},
/// K_{5/2}, K₀ and K₁ of mr.
pub fn ae_bound_closed_form(cfg: &FieldConfig, r: f64) -> Result<f64> {
    positive("r", r)?;
    massive(cfg)?;
    let m = cfg.m();
    let braces = Braces::new(cfg, r);
    let mut total = 0.0;
    for nu in 0..4 {
        let c = braces.plain[nu];
        if c != 0.0 {
            total += c * y_moment(-0.5, -0.5, nu as f64, m, r)?;
        }
    }
    // τ + t' splits into two equal moments by symmetry.
    for nu in 1..3 {
        let c = braces.linear[nu];
        if c != 0.0 {
            total += 2.0 * c * y_moment(0.5, -0.5, nu as f64, m, r)?;
        }
    }
    Ok(total / PI.powi(3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(eb0: f64, m: f64) -> FieldConfig {
        FieldConfig::from_eb0(eb0, m).unwrap()
    }

    #[test]
    fn b9_field_free_arithmetic() {
        let v = ea_bound_b9(&cfg(0.0, 1.0), 1.0).unwrap();
        let expect = (16.0 * k(1.0, 1.0).unwrap() + 7.0 * k(0.0, 1.0).unwrap()) / (2.0 * PI * PI);
        assert!((v / expect - 1.0).abs() < 1e-15);
    }

    #[test]
    fn b9_small_r_law() {
        let r = 1e-5;
        let v = ea_bound_b9(&cfg(1.0, 1.0), r).unwrap() * r.powi(4);
        assert!((v / (7.0 / (PI * PI)) - 1.0).abs() < 1e-4, "{v}");
    }

    #[test]
    fn c4_coincident_value() {
        let v = exp_tea_bound(&cfg(0.0, 1.0), 1.0, 0.0).unwrap();
        assert!((v - k(2.0, 1.0).unwrap() / (2.0 * PI * PI)).abs() < 1e-16);
    }

    #[test]
    fn u0_field_free_and_small_r() {
        let v = u0_offdiag_bound(&cfg(0.0, 1.0), 1.0).unwrap();
        assert!((v / (SQRT_2 / (PI * PI) * k(2.0, 1.0).unwrap()) - 1.0).abs() < 1e-15);
        let r = 1e-5;
        let s = u0_offdiag_bound(&cfg(1.0, 1.0), r).unwrap() * r.powi(3);
        assert!((s / (2.0 * SQRT_2 / (PI * PI)) - 1.0).abs() < 1e-4);
    }

    #[test]
    fn domain_checks() {
        assert!(ea_bound_b9(&cfg(1.0, 0.0), 1.0).is_err());
        assert!(ea_bound_b9(&cfg(1.0, 1.0), 0.0).is_err());
        assert!(exp_tea_bound(&cfg(1.0, 1.0), 0.0, 1.0).is_err());
        assert!(u0_offdiag_bound(&cfg(1.0, 1.0), -1.0).is_err());
        assert!(ae_bound_closed_form(&cfg(1.0, 0.0), 1.0).is_err());
    }

    #[test]
    fn y_moment_single_variable_reduction() {
        // ν = 1, p = q = 1: ∫∫ τ t' y^{-1}K₁(my) = r^{-(1-0-0-2)}... μ = μ' = 0
        let v = y_moment(1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        // 2^0 Γ(1)² m^{-2} r^{1} K_{-1}(1) = K₁(1)
        assert!((v - k(1.0, 1.0).unwrap()).abs() < 1e-15);
    }
}
