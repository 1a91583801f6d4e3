//! Adaptive Gauss–Kronrod integration on finite intervals, the semi-axis
//! [0, ∞) and rectangles.
//!
//! Every integral representation in this crate carries a t^{-1/2} weight at
//! the origin and either an exponential or an oscillatory tail. The semi-axis
//! integrator removes the endpoint power with t = u^{1/(1+α)}, compactifies
//! u ∈ [0, ∞) onto [0, 1) and runs a global adaptive 21-point Kronrod scheme
//! seeded with a geometric breakpoint ladder around the integrand's scale.
//! Oscillatory tails are integrated zero-to-zero and the partial sums are
//! accelerated with Wynn's epsilon algorithm.
//!
//! Integration is serial, so results are bit-reproducible.

mod adaptive;
mod extrapolate;
mod rect;
mod semiaxis;

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub use adaptive::{integrate_interval, try_integrate_interval};
pub use extrapolate::wynn_epsilon;
pub use rect::{
    integrate_finite2d, integrate_rect2d, try_integrate_finite2d, try_integrate_rect2d, Rectangle,
};
pub use semiaxis::{integrate_semiaxis, try_integrate_semiaxis, try_integrate_semiaxis_with};

/// Default evaluation budget for a single one-dimensional integral.
pub const DEFAULT_MAX_EVALUATIONS: usize = 1_000_000;

/// Scalar types an integrand may return.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + std::fmt::Debug
{
    fn zero() -> Self;
    fn modulus(self) -> f64;
    fn is_finite_value(self) -> bool;
    /// Epsilon-algorithm limit of a sequence, with an error estimate.
    fn extrapolate(seq: &[Self]) -> (Self, f64);
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
    fn extrapolate(seq: &[Self]) -> (Self, f64) {
        wynn_epsilon(seq)
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn is_finite_value(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn extrapolate(seq: &[Self]) -> (Self, f64) {
        let re: Vec<f64> = seq.iter().map(|z| z.re).collect();
        let im: Vec<f64> = seq.iter().map(|z| z.im).collect();
        let (r, er) = wynn_epsilon(&re);
        let (i, ei) = wynn_epsilon(&im);
        (Complex64::new(r, i), er.hypot(ei))
    }
}

/// Value, error estimate and evaluation count of an integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult<T = f64> {
    pub value: T,
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl<T: QuadValue> QuadratureResult<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> QuadratureResult<U> {
        QuadratureResult {
            value: f(self.value),
            error_estimate: self.error_estimate,
            evaluations: self.evaluations,
        }
    }

    /// Multiply value and error estimate by a constant.
    pub fn scaled(self, factor: f64) -> Self {
        QuadratureResult {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            evaluations: self.evaluations,
        }
    }
}

/// Failure of an adaptive integration.
#[derive(Debug, Clone, PartialEq)]
pub enum QuadError<T = f64> {
    /// Budget exhausted; carries the best available estimate.
    NotConverged(QuadratureResult<T>),
    /// The integrand itself failed or returned a non-finite value.
    Integrand(Error),
}

impl<T: QuadValue> From<QuadError<T>> for Error {
    fn from(e: QuadError<T>) -> Self {
        match e {
            QuadError::NotConverged(best) => Error::Quadrature {
                estimate: best.value.modulus(),
                error_estimate: best.error_estimate,
                evaluations: best.evaluations,
            },
            QuadError::Integrand(e) => e,
        }
    }
}

impl<T> From<Error> for QuadError<T> {
    fn from(e: Error) -> Self {
        QuadError::Integrand(e)
    }
}

/// Tail behaviour of a semi-axis integrand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Decay {
    /// |f(t)| falls off like e^{−rate·t}.
    Exponential { rate: f64 },
    /// |f(t)| falls off like t^{−power}, power > 1.
    Algebraic { power: f64 },
    /// Sign-changing tail with zeros near `first_zero + n·half_period`.
    Oscillatory { first_zero: f64, half_period: f64 },
}

/// Shape information that selects substitutions for a semi-axis integrand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrandSpec {
    /// Power α of t as t → 0, with −1 < α ≤ 0.
    pub endpoint_exponent: f64,
    pub decay: Decay,
    /// Characteristic length in t where the integrand has most of its mass.
    pub scale: f64,
}

impl IntegrandSpec {
    pub fn new(endpoint_exponent: f64, decay: Decay) -> Result<Self> {
        if !(endpoint_exponent > -1.0 && endpoint_exponent <= 0.0) {
            return Err(domain(format!(
                "endpoint exponent must lie in (-1, 0], got {endpoint_exponent}"
            )));
        }
        match decay {
            Decay::Exponential { rate } if !(rate > 0.0) => {
                return Err(domain(format!("decay rate must be positive, got {rate}")))
            }
            Decay::Algebraic { power } if !(power > 1.0) => {
                return Err(domain(format!("algebraic decay needs power > 1, got {power}")))
            }
            Decay::Oscillatory {
                first_zero,
                half_period,
            } if !(first_zero > 0.0 && half_period > 0.0) => {
                return Err(domain("oscillatory spec needs positive zero spacing"))
            }
            _ => {}
        }
        let scale = match decay {
            Decay::Exponential { rate } => 1.0 / rate,
            Decay::Algebraic { .. } => 1.0,
            Decay::Oscillatory { half_period, .. } => half_period,
        };
        Ok(Self {
            endpoint_exponent,
            decay,
            scale,
        })
    }

    /// Smooth at the origin with exponential decay.
    pub fn smooth_exponential(rate: f64) -> Result<Self> {
        Self::new(0.0, Decay::Exponential { rate })
    }

    /// The ubiquitous dt/√t weight with exponential decay.
    pub fn inverse_sqrt(rate: f64) -> Result<Self> {
        Self::new(-0.5, Decay::Exponential { rate })
    }

    pub fn with_scale(mut self, scale: f64) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(domain(format!("scale must be positive, got {scale}")));
        }
        self.scale = scale;
        Ok(self)
    }
}

/// Tolerances and budget for one integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_evaluations: usize,
}

impl QuadOptions {
    pub fn new(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            abs_tol: 0.0,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
        }
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_max_evaluations(mut self, n: usize) -> Self {
        self.max_evaluations = n;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.rel_tol >= 0.0 && self.abs_tol >= 0.0) || (self.rel_tol == 0.0 && self.abs_tol == 0.0)
        {
            return Err(domain("tolerances must be nonnegative and not both zero"));
        }
        if self.max_evaluations == 0 {
            return Err(domain("evaluation budget must be positive"));
        }
        Ok(())
    }

    pub(crate) fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}
