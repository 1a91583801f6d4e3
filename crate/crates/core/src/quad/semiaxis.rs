use super::adaptive::{adaptive, RULE_POINTS};
use super::{Decay, IntegrandSpec, QuadError, QuadOptions, QuadValue, QuadratureResult};
use crate::error::Result;

type QResult<T> = std::result::Result<QuadratureResult<T>, QuadError<T>>;

// Breakpoint ladder u = scale·4^j, j = −LADDER..=LADDER, in the substituted variable.
const LADDER: i32 = 8;
const MAX_OSC_PANELS: usize = 400;
const MIN_OSC_PANELS: usize = 8;

/// ∫₀^∞ f(t) dt for an integrand described by `spec`.
pub fn integrate_semiaxis<T, F>(mut f: F, spec: &IntegrandSpec, tol: f64) -> QResult<T>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    try_integrate_semiaxis_with(|t| Ok(f(t)), spec, &QuadOptions::new(tol))
}

/// Fallible-integrand form of [`integrate_semiaxis`].
pub fn try_integrate_semiaxis<T, F>(f: F, spec: &IntegrandSpec, tol: f64) -> QResult<T>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    try_integrate_semiaxis_with(f, spec, &QuadOptions::new(tol))
}

/// Semi-axis integration with explicit tolerances and budget.
pub fn try_integrate_semiaxis_with<T, F>(f: F, spec: &IntegrandSpec, opts: &QuadOptions) -> QResult<T>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    opts.validate()?;
    match spec.decay {
        Decay::Oscillatory {
            first_zero,
            half_period,
        } => oscillatory(f, spec.endpoint_exponent, first_zero, half_period, opts),
        _ => compactified(f, spec.endpoint_exponent, spec.scale, opts),
    }
}

/// Power of the substitution t = u^k that flattens t^α at the origin.
fn power_for(alpha: f64) -> f64 {
    1.0 / (1.0 + alpha)
}

/// t = (s·x/(1−x))^k on x ∈ [0, 1), with a geometric ladder of breakpoints.
fn compactified<T, F>(mut f: F, alpha: f64, scale: f64, opts: &QuadOptions) -> QResult<T>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    let k = power_for(alpha);
    let u_scale = scale.powf(1.0 / k);
    let mut points = Vec::with_capacity(2 * LADDER as usize + 3);
    points.push(0.0);
    for j in -LADDER..=LADDER {
        let q = 4f64.powi(j);
        points.push(q / (1.0 + q));
    }
    points.push(1.0);
    let integrand = |x: f64| -> Result<T> {
        let one_minus = 1.0 - x;
        let u = u_scale * x / one_minus;
        let du_dx = u_scale / (one_minus * one_minus);
        if k == 1.0 {
            return Ok(f(u)? * du_dx);
        }
        let t = u.powf(k);
        if t == 0.0 || !t.is_finite() {
            return Ok(T::zero());
        }
        let dt_du = k * u.powf(k - 1.0);
        Ok(f(t)? * (dt_du * du_dx))
    };
    adaptive(integrand, &points, opts)
}

/// ∫₀^a f(t) dt with the endpoint power removed at 0.
fn head<T, F>(f: &mut F, alpha: f64, a: f64, opts: &QuadOptions) -> QResult<T>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    let k = power_for(alpha);
    let ua = a.powf(1.0 / k);
    let integrand = |u: f64| -> Result<T> {
        if k == 1.0 {
            return f(u);
        }
        let t = u.powf(k);
        Ok(f(t)? * (k * u.powf(k - 1.0)))
    };
    // A few panels toward the origin help integrands that are tiny there.
    let mut points: Vec<f64> = (0..=6).rev().map(|j| ua / 4f64.powi(j)).collect();
    points.insert(0, 0.0);
    adaptive(integrand, &points, opts)
}

/// Zero-to-zero panels with epsilon-algorithm acceleration of the partial sums.
fn oscillatory<T, F>(
    mut f: F,
    alpha: f64,
    first_zero: f64,
    half_period: f64,
    opts: &QuadOptions,
) -> QResult<T>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    let panel_opts = QuadOptions {
        rel_tol: opts.rel_tol * 0.1,
        abs_tol: opts.abs_tol * 0.01,
        max_evaluations: opts.max_evaluations,
    };
    let first = head(&mut f, alpha, first_zero, &panel_opts)?;
    let mut evaluations = first.evaluations;
    let mut panel_error = first.error_estimate;
    let mut sum = first.value;
    let mut partial = vec![sum];
    let mut peak = sum.modulus();
    let mut last_estimate: Option<T> = None;
    let mut stable = 0;
    for n in 0..MAX_OSC_PANELS {
        let a = first_zero + n as f64 * half_period;
        let b = a + half_period;
        let remaining = opts.max_evaluations.saturating_sub(evaluations);
        if remaining < RULE_POINTS {
            break;
        }
        // Panels far out only need accuracy relative to the running total.
        let local = QuadOptions {
            rel_tol: panel_opts.rel_tol,
            abs_tol: panel_opts.abs_tol.max(1e-3 * opts.rel_tol * peak),
            max_evaluations: remaining,
        };
        let panel = adaptive(&mut f, &[a, b], &local).map_err(|e| match e {
            QuadError::NotConverged(mut best) => {
                best.value = best.value + sum;
                best.evaluations += evaluations;
                QuadError::NotConverged(best)
            }
            other => other,
        })?;
        evaluations += panel.evaluations;
        panel_error += panel.error_estimate;
        sum = sum + panel.value;
        peak = peak.max(sum.modulus());
        partial.push(sum);
        // Exponentially damped tails converge without acceleration.
        if panel.value.modulus() <= f64::EPSILON * sum.modulus() && n >= 2 {
            return Ok(QuadratureResult {
                value: sum,
                error_estimate: panel_error + panel.value.modulus(),
                evaluations,
            });
        }
        if partial.len() < MIN_OSC_PANELS {
            continue;
        }
        let (estimate, extrap_err) = T::extrapolate(&partial);
        let target = opts.target(estimate.modulus());
        let drift = last_estimate.map_or(f64::INFINITY, |prev| (estimate - prev).modulus());
        last_estimate = Some(estimate);
        if extrap_err.max(drift) <= 0.1 * target {
            stable += 1;
        } else {
            stable = 0;
        }
        if stable >= 2 {
            return Ok(QuadratureResult {
                value: estimate,
                error_estimate: extrap_err.max(drift) + panel_error,
                evaluations,
            });
        }
    }
    let (estimate, extrap_err) = T::extrapolate(&partial);
    Err(QuadError::NotConverged(QuadratureResult {
        value: estimate,
        error_estimate: extrap_err + panel_error,
        evaluations,
    }))
}
