use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use super::certificate::{BoundCertificate, Tracker};
use super::grid::{GridAxis, GridSpec};
use crate::error::{domain, Result};
use crate::quad::{
    try_integrate_interval, try_integrate_semiaxis_with, Decay, IntegrandSpec, QuadOptions,
};
use crate::specfun::{bessel_j1, bessel_j3_2, gamma_fn, k};

/// Quadrature is run this much tighter than the identity tolerance.
const TIGHTEN: f64 = 1e-3;

fn opts(tol: f64) -> QuadOptions {
    QuadOptions::new((tol * TIGHTEN).max(1e-14))
}

fn grid_of(axes: Vec<GridAxis>) -> GridSpec {
    GridSpec::new(axes).expect("valid grid")
}

/// ∫₀^∞ t^ν e^{−γt−β/t} dt = 2(β/γ)^{(ν+1)/2} K_{ν+1}(2√(βγ)).
fn laplace_bessel(tol: f64) -> Result<BoundCertificate> {
    let nus = [-0.5, 0.0, 1.0, 2.0];
    let params = [0.5, 1.0, 2.0];
    let grid = grid_of(vec![
        GridAxis::values("nu", &nus)?,
        GridAxis::values("beta", &params)?,
        GridAxis::values("gamma", &params)?,
    ]);
    let mut tr = Tracker::new("laplace_bessel", 0.0);
    for &nu in &nus {
        for &beta in &params {
            for &gamma in &params {
                let p = [("nu", nu), ("beta", beta), ("gamma", gamma)];
                let exact = 2.0 * (beta / gamma).powf(0.5 * (nu + 1.0)) * k(nu + 1.0, 2.0 * (beta * gamma).sqrt())?;
                let spec = IntegrandSpec::new(nu.min(0.0), Decay::Exponential { rate: gamma })?
                    .with_scale((beta / gamma).sqrt().max(nu.max(0.0) / gamma))?;
                let q = try_integrate_semiaxis_with(
                    |t| Ok(t.powf(nu) * (-gamma * t - beta / t).exp()),
                    &spec,
                    &opts(tol),
                );
                match q {
                    Ok(q) => {
                        tr.add_evaluations(q.evaluations);
                        tr.record("identity", &p, (q.value - exact).abs(), tol * exact.abs());
                    }
                    Err(e) => tr.fail("identity", &p, crate::Error::from(e).to_string()),
                }
            }
        }
    }
    Ok(tr.finish(grid))
}

/// ∫₀^∞ t^{2μ+1}(t²+a²)^{−ν/2} K_ν(α√(t²+a²)) dt
///   = 2^μ Γ(μ+1) α^{−μ−1} a^{−(ν−μ−1)} K_{ν−μ−1}(αa).
fn bessel_moment(tol: f64) -> Result<BoundCertificate> {
    let pairs = [(0.0, 1.0), (0.5, 1.5), (0.5, 2.75)];
    let params = [0.5, 1.0, 2.0];
    let grid = grid_of(vec![
        GridAxis::values("mu", &pairs.map(|p| p.0))?,
        GridAxis::values("nu", &pairs.map(|p| p.1))?,
        GridAxis::values("alpha", &params)?,
        GridAxis::values("a", &params)?,
    ]);
    let mut tr = Tracker::new("bessel_moment", 0.0);
    for &(mu, nu) in &pairs {
        for &alpha in &params {
            for &a in &params {
                let p = [("mu", mu), ("nu", nu), ("alpha", alpha), ("a", a)];
                let order = nu - mu - 1.0;
                let exact = 2f64.powf(mu) * gamma_fn(mu + 1.0)? / (alpha.powf(mu + 1.0) * a.powf(order))
                    * k(order, alpha * a)?;
                let spec = IntegrandSpec::smooth_exponential(alpha)?
                    .with_scale((1.0 / alpha).max((a / alpha).sqrt()))?;
                let q = try_integrate_semiaxis_with(
                    |t| {
                        let s = (t * t + a * a).sqrt();
                        Ok(t.powf(2.0 * mu + 1.0) * s.powf(-nu) * k(nu, alpha * s)?)
                    },
                    &spec,
                    &opts(tol),
                );
                match q {
                    Ok(q) => {
                        tr.add_evaluations(q.evaluations);
                        tr.record("identity", &p, (q.value - exact).abs(), tol * exact.abs());
                    }
                    Err(e) => tr.fail("identity", &p, crate::Error::from(e).to_string()),
                }
            }
        }
    }
    Ok(tr.finish(grid))
}

/// Arguments ξ sin θ and phases α for the angular J₁ identity.
const ANGULAR_SAMPLES: [(f64, f64); 10] = [
    (0.3, 0.2),
    (0.9, 0.5),
    (1.7, 1.0),
    (2.6, 1.4),
    (4.5, 0.7),
    (5.5, -0.4),
    (8.4, 2.0),
    (9.3, 0.9),
    (12.1, -1.2),
    (15.0, 0.35),
];

/// ∫₀^{2π} cos φ e^{iw sin(φ+α)} dφ = 2πi sin α J₁(w).
fn angular_j1(tol: f64) -> Result<BoundCertificate> {
    let grid = grid_of(vec![
        GridAxis::values("w", &ANGULAR_SAMPLES.map(|s| s.0))?,
        GridAxis::values("alpha", &ANGULAR_SAMPLES.map(|s| s.1))?,
    ]);
    let mut tr = Tracker::new("angular_j1", 0.0);
    for &(w, alpha) in &ANGULAR_SAMPLES {
        let p = [("w", w), ("alpha", alpha)];
        let exact = Complex64::new(0.0, 2.0 * PI * alpha.sin() * bessel_j1(w));
        let q = try_integrate_interval(
            |phi: f64| Ok(Complex64::from_polar(phi.cos(), w * (phi + alpha).sin())),
            0.0,
            2.0 * PI,
            &opts(tol).with_abs_tol(1e-15),
        );
        match q {
            Ok(q) => {
                tr.add_evaluations(q.evaluations);
                tr.record("identity", &p, (q.value - exact).norm(), tol * exact.norm());
            }
            Err(e) => tr.fail("identity", &p, crate::Error::from(e).to_string()),
        }
    }
    Ok(tr.finish(grid))
}

const POLAR_SAMPLES: [f64; 10] = [0.5, 1.0, 2.0, 3.0, 5.0, 6.0, 9.0, 12.0, 16.0, 20.0];

/// 2∫₀^{π/2} sin²θ J₁(ξ sin θ) dθ = √(2π/ξ) J_{3/2}(ξ).
fn polar_j32(tol: f64) -> Result<BoundCertificate> {
    let grid = grid_of(vec![GridAxis::values("xi", &POLAR_SAMPLES)?]);
    let mut tr = Tracker::new("polar_j32", 0.0);
    for &xi in &POLAR_SAMPLES {
        let p = [("xi", xi)];
        let exact = (2.0 * PI / xi).sqrt() * bessel_j3_2(xi);
        let q = try_integrate_interval(
            |th: f64| {
                let s = th.sin();
                Ok(2.0 * s * s * bessel_j1(xi * s))
            },
            0.0,
            0.5 * PI,
            &opts(tol),
        );
        match q {
            Ok(q) => {
                tr.add_evaluations(q.evaluations);
                tr.record("identity", &p, (q.value - exact).abs(), tol * exact.abs());
            }
            Err(e) => tr.fail("identity", &p, crate::Error::from(e).to_string()),
        }
    }
    Ok(tr.finish(grid))
}

/// ∫₀^∞ ξ^{−3/2} J_{3/2}(ξ) dξ = √π / (2√2).
fn j32_moment(tol: f64) -> Result<BoundCertificate> {
    let grid = grid_of(vec![]);
    let mut tr = Tracker::new("j32_moment", 0.0);
    let exact = PI.sqrt() / (2.0 * SQRT_2);
    let spec = IntegrandSpec::new(
        0.0,
        Decay::Oscillatory {
            first_zero: 4.493_409_457_909_064,
            half_period: PI,
        },
    )?;
    let q = try_integrate_semiaxis_with(
        |x: f64| Ok(if x == 0.0 { 0.0 } else { bessel_j3_2(x) / (x * x.sqrt()) }),
        &spec,
        &opts(tol),
    );
    match q {
        Ok(q) => {
            tr.add_evaluations(q.evaluations);
            tr.record("identity", &[], (q.value - exact).abs(), tol * exact);
        }
        Err(e) => tr.fail("identity", &[], crate::Error::from(e).to_string()),
    }
    Ok(tr.finish(grid))
}

/// Quadrature against closed form for the Bessel and angular integral
/// identities used by the kernel bounds, each at relative tolerance `tol`.
pub fn verify_identities(tol: f64) -> Result<Vec<BoundCertificate>> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(domain(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    Ok(vec![
        laplace_bessel(tol)?,
        bessel_moment(tol)?,
        angular_j1(tol)?,
        polar_j32(tol)?,
        j32_moment(tol)?,
    ])
}
