use std::cell::Cell;

use serde::{Deserialize, Serialize};

use super::adaptive::adaptive;
use super::semiaxis::try_integrate_semiaxis_with;
use super::{IntegrandSpec, QuadError, QuadOptions, QuadValue, QuadratureResult};
use crate::error::{domain, Error, Result};

type QResult<T> = std::result::Result<QuadratureResult<T>, QuadError<T>>;

/// Axis-aligned finite rectangle [x0, x1] × [y0, y1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rectangle {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        let ok = [x0, x1, y0, y1].iter().all(|v| v.is_finite()) && x0 < x1 && y0 < y1;
        if !ok {
            return Err(domain("rectangle needs finite, increasing bounds"));
        }
        Ok(Self { x0, x1, y0, y1 })
    }

    /// The square [−h, h]².
    pub fn centered_square(h: f64) -> Result<Self> {
        Self::new(-h, h, -h, h)
    }

    pub fn area(&self) -> f64 {
        (self.x1 - self.x0) * (self.y1 - self.y0)
    }
}

fn inner_options(opts: &QuadOptions) -> QuadOptions {
    QuadOptions {
        rel_tol: opts.rel_tol * 0.25,
        abs_tol: opts.abs_tol * 0.25,
        max_evaluations: opts.max_evaluations,
    }
}

/// Running totals of the inner integrations behind one outer integral.
#[derive(Default)]
struct InnerLedger {
    rel_err: Cell<f64>,
    evaluations: Cell<usize>,
    calls: Cell<usize>,
}

impl InnerLedger {
    fn settle<T: QuadValue>(&self, r: QResult<T>) -> Result<T> {
        let r = r.map_err(Error::from)?;
        let size = r.value.modulus();
        let rel = if size > 0.0 { r.error_estimate / size } else { 0.0 };
        self.rel_err.set(self.rel_err.get() + rel);
        self.evaluations.set(self.evaluations.get() + r.evaluations);
        self.calls.set(self.calls.get() + 1);
        Ok(r.value)
    }

    /// Fold the mean relative inner error into the outer estimate.
    fn combine<T: QuadValue>(&self, outer: QResult<T>) -> QResult<T> {
        let calls = self.calls.get().max(1) as f64;
        let mean_rel = self.rel_err.get() / calls;
        let fold = |mut r: QuadratureResult<T>| {
            r.error_estimate += mean_rel * r.value.modulus();
            r.evaluations += self.evaluations.get();
            r
        };
        match outer {
            Ok(r) => Ok(fold(r)),
            Err(QuadError::NotConverged(r)) => Err(QuadError::NotConverged(fold(r))),
            Err(e) => Err(e),
        }
    }
}

/// ∫₀^∞∫₀^∞ f(x, y) dy dx as an iterated semi-axis integral.
///
/// `outer` describes the integrand as a function of x after the y
/// integration, `inner` describes y ↦ f(x, y).
pub fn integrate_rect2d<T, F>(
    mut f: F,
    outer: &IntegrandSpec,
    inner: &IntegrandSpec,
    opts: &QuadOptions,
) -> QResult<T>
where
    T: QuadValue,
    F: FnMut(f64, f64) -> T,
{
    try_integrate_rect2d(|x, y| Ok(f(x, y)), outer, inner, opts)
}

/// Fallible-integrand form of [`integrate_rect2d`].
pub fn try_integrate_rect2d<T, F>(
    mut f: F,
    outer: &IntegrandSpec,
    inner: &IntegrandSpec,
    opts: &QuadOptions,
) -> QResult<T>
where
    T: QuadValue,
    F: FnMut(f64, f64) -> Result<T>,
{
    opts.validate()?;
    let inner_opts = inner_options(opts);
    let ledger = InnerLedger::default();
    let result = try_integrate_semiaxis_with(
        |x| ledger.settle(try_integrate_semiaxis_with(|y| f(x, y), inner, &inner_opts)),
        outer,
        opts,
    );
    ledger.combine(result)
}

/// ∫∫ f(x, y) dy dx over a finite rectangle as an iterated integral.
pub fn integrate_finite2d<T, F>(mut f: F, rect: &Rectangle, opts: &QuadOptions) -> QResult<T>
where
    T: QuadValue,
    F: FnMut(f64, f64) -> T,
{
    try_integrate_finite2d(|x, y| Ok(f(x, y)), rect, opts)
}

/// Fallible-integrand form of [`integrate_finite2d`].
pub fn try_integrate_finite2d<T, F>(mut f: F, rect: &Rectangle, opts: &QuadOptions) -> QResult<T>
where
    T: QuadValue,
    F: FnMut(f64, f64) -> Result<T>,
{
    opts.validate()?;
    let inner_opts = inner_options(opts);
    let ledger = InnerLedger::default();
    let result = adaptive(
        |x| ledger.settle(adaptive(|y| f(x, y), &[rect.y0, rect.y1], &inner_opts)),
        &[rect.x0, rect.x1],
        opts,
    );
    ledger.combine(result)
}
