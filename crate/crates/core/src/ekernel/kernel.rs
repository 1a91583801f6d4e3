use std::f64::consts::PI;

use super::Displacement;
use crate::error::{domain, Error, Result};
use crate::mehler::{ln_ea2, ln_sinhc, u_coth, FieldConfig, SpinChannel};
use crate::quad::{try_integrate_semiaxis_with, IntegrandSpec, QuadOptions, QuadratureResult};

fn check_tau(tau: f64) -> Result<()> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(domain(format!("τ must be positive and finite, got {tau}")));
    }
    Ok(())
}

/// −eB₀coth(eB₀τ) + s·eB₀, written to avoid cancellation at large eB₀τ.
fn landau_term(eb0: f64, s: f64, tau: f64) -> f64 {
    let u = eb0 * tau;
    if u < 1.0 {
        return -u_coth(u) / tau + s * eb0;
    }
    let tail = 2.0 / (2.0 * u).exp_m1();
    if s > 0.0 {
        -eb0 * tail
    } else {
        -eb0 * (2.0 + tail)
    }
}

/// The bracket multiplying e^{−τE_A²} in its τ-derivative.
pub(crate) fn derivative_factor(cfg: &FieldConfig, spin: SpinChannel, tau: f64, d: &Displacement) -> f64 {
    let u = cfg.eb0() * tau;
    let inv4t2 = 0.25 / (tau * tau);
    landau_term(cfg.eb0(), spin.sign(), tau) - 0.5 / tau - cfg.m() * cfg.m()
        + d.z3_sq() * inv4t2
        + d.rho_sq() * inv4t2 * (-2.0 * ln_sinhc(u)).exp()
}

/// (d/dτ) e^{−τE_A²}(z') in one spin channel, gauge phase removed.
pub fn ea2_tau_derivative(
    cfg: &FieldConfig,
    spin: SpinChannel,
    tau: f64,
    d: &Displacement,
) -> Result<f64> {
    check_tau(tau)?;
    let t = ln_ea2(cfg, spin, tau, d.z3_sq(), d.rho_sq()).exp();
    if t == 0.0 {
        return Ok(0.0);
    }
    Ok(derivative_factor(cfg, spin, tau, d) * t)
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(domain(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    Ok(())
}

/// E_A(z') = −(1/√π) ∫₀^∞ dτ/√τ (d/dτ) e^{−τE_A²}(z').
pub fn ea_kernel(
    cfg: &FieldConfig,
    spin: SpinChannel,
    d: &Displacement,
    tol: f64,
) -> Result<QuadratureResult> {
    check_tol(tol)?;
    if !(cfg.m() > 0.0) {
        return Err(Error::UnsupportedMass);
    }
    let r = d.r();
    if r == 0.0 {
        return Err(Error::SingularPoint);
    }
    let m2 = cfg.m() * cfg.m();
    let scale = 0.25 * r * r / (1.0 + 0.5 * cfg.m() * r);
    let spec = IntegrandSpec::inverse_sqrt(m2)?.with_scale(scale)?;
    let res = try_integrate_semiaxis_with(
        |tau| Ok(ea2_tau_derivative(cfg, spin, tau, d)? / tau.sqrt()),
        &spec,
        &QuadOptions::new(tol),
    )?;
    Ok(res.scaled(-1.0 / PI.sqrt()))
}

/// e^{−tE_A}(z') = (1/√π) ∫₀^∞ dτ'/√τ' e^{−τ'} e^{−(t²/4τ')E_A²}(z').
pub fn exp_tea_kernel(
    cfg: &FieldConfig,
    spin: SpinChannel,
    t: f64,
    d: &Displacement,
    tol: f64,
) -> Result<QuadratureResult> {
    check_tol(tol)?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain(format!("t must be positive and finite, got {t}")));
    }
    let (z3sq, rho2) = (d.z3_sq(), d.rho_sq());
    let t2 = t * t;
    let xi2 = t2 + d.r() * d.r();
    let xi = xi2.sqrt();
    let scale = (0.5 * cfg.m() * t2 / xi).max(t2 / xi2).clamp(1e-12, 1e12);
    let spec = IntegrandSpec::inverse_sqrt(xi2 / t2)?.with_scale(scale)?;
    let res = try_integrate_semiaxis_with(
        |s| {
            let ln = -s + ln_ea2(cfg, spin, t2 / (4.0 * s), z3sq, rho2);
            Ok(ln.exp() / s.sqrt())
        },
        &spec,
        &QuadOptions::new(tol),
    )?;
    Ok(res.scaled(1.0 / PI.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_massless_derivative() {
        let cfg = FieldConfig::from_eb0(0.0, 0.0).unwrap();
        let d = Displacement::along_x(2.0).unwrap();
        let v = ea2_tau_derivative(&cfg, SpinChannel::Up, 1.0, &d).unwrap();
        let expect = (4.0 * PI).powf(-1.5) * (-1f64).exp() * -0.5;
        assert!((v - expect).abs() < 1e-16, "{v} {expect}");
    }

    #[test]
    fn landau_term_branches_meet() {
        for s in [1.0, -1.0] {
            let below = landau_term(2.0, s, 0.5 - 1e-12);
            let above = landau_term(2.0, s, 0.5 + 1e-12);
            assert!((below - above).abs() < 1e-9, "{below} {above}");
        }
    }

    #[test]
    fn argument_checks() {
        let cfg = FieldConfig::from_eb0(1.0, 0.0).unwrap();
        let d = Displacement::along_x(1.0).unwrap();
        assert_eq!(ea_kernel(&cfg, SpinChannel::Up, &d, 1e-8), Err(Error::UnsupportedMass));
        let cfg = FieldConfig::from_eb0(1.0, 1.0).unwrap();
        let z = Displacement::new([0.0; 3]).unwrap();
        assert_eq!(ea_kernel(&cfg, SpinChannel::Up, &z, 1e-8), Err(Error::SingularPoint));
        assert!(ea2_tau_derivative(&cfg, SpinChannel::Up, 0.0, &d).is_err());
    }

    #[test]
    fn field_free_kernel_is_bessel() {
        // −m² K₂(mr) / (2π² r²)
        let cfg = FieldConfig::from_eb0(0.0, 1.0).unwrap();
        let d = Displacement::along_x(1.0).unwrap();
        let v = ea_kernel(&cfg, SpinChannel::Up, &d, 1e-10).unwrap();
        let expect = -crate::specfun::k(2.0, 1.0).unwrap() / (2.0 * PI * PI);
        assert!((v.value / expect - 1.0).abs() < 1e-8, "{} {expect}", v.value);
    }

    #[test]
    fn field_free_semigroup_kernel_is_bessel() {
        // m² t K₂(mξ) / (2π² ξ²)
        let cfg = FieldConfig::from_eb0(0.0, 1.0).unwrap();
        let d = Displacement::along_x(0.5).unwrap();
        let v = exp_tea_kernel(&cfg, SpinChannel::Down, 1.0, &d, 1e-10).unwrap();
        let xi2: f64 = 1.25;
        let expect = crate::specfun::k(2.0, xi2.sqrt()).unwrap() / (2.0 * PI * PI * xi2);
        assert!((v.value / expect - 1.0).abs() < 1e-8, "{} {expect}", v.value);
    }
}
