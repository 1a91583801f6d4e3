//! Gauss hypergeometric function ₂F₁(a, b; c; x) on 0 ≤ x ≤ 1.

use super::gamma::{gamma_real, rgamma_real};
use crate::error::{domain, Error, Result};

const SERIES_TOL: f64 = 1e-16;
const MAX_TERMS: usize = 2_000_000;

/// ₂F₁(a, b; c; x) for x ∈ [0, 1].
///
/// The defining series is summed directly for x ≤ 1/2. Above that, the
/// connection formula to 1 − x is used when c − a − b is not an integer; the
/// integer case falls back to the direct series, which converges geometrically
/// for x < 1. At x = 1 the Gauss summation value is returned.
pub fn gauss_2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(domain(format!("2F1 requires 0 <= x <= 1, got {x}")));
    }
    if c <= 0.0 && c == c.floor() {
        return Err(domain(format!("2F1 undefined for c = {c}")));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        // terminating polynomial
        return series(a, b, c, x);
    }
    if x == 1.0 {
        return gauss_sum(a, b, c);
    }
    let s = c - a - b;
    if x <= 0.5 || s == s.round() {
        return series(a, b, c, x);
    }
    // A&S 15.3.6
    let y = 1.0 - x;
    let g1 = gamma_real(c)? * gamma_real(s)? * rgamma_real(c - a)? * rgamma_real(c - b)?;
    let g2 = gamma_real(c)? * gamma_real(-s)? * rgamma_real(a)? * rgamma_real(b)?;
    let f1 = series(a, b, 1.0 - s, y)?;
    let f2 = series(c - a, c - b, 1.0 + s, y)?;
    Ok(g1 * f1 + y.powf(s) * g2 * f2)
}

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v == v.floor()
}

fn gauss_sum(a: f64, b: f64, c: f64) -> Result<f64> {
    let s = c - a - b;
    if s <= 0.0 {
        return Err(Error::Divergence(format!(
            "2F1({a}, {b}; {c}; 1) needs c > a + b"
        )));
    }
    Ok(gamma_real(c)? * gamma_real(s)? * rgamma_real(c - a)? * rgamma_real(c - b)?)
}

fn series(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut comp = 0.0;
    for n in 0..MAX_TERMS {
        let fnn = n as f64;
        let denom = (c + fnn) * (fnn + 1.0);
        if denom == 0.0 {
            return Err(domain(format!("2F1 series hits a pole for c = {c}")));
        }
        term *= (a + fnn) * (b + fnn) / denom * x;
        // Kahan summation
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term == 0.0 {
            return Ok(sum);
        }
        if term.abs() < SERIES_TOL * sum.abs() && fnn > (a.abs() + b.abs()) {
            return Ok(sum);
        }
    }
    Err(Error::SeriesConvergence(format!(
        "2F1({a}, {b}; {c}; {x}) series"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn origin_is_one() {
        assert_eq!(gauss_2f1(0.5, 1.5, 2.5, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn gauss_summation_at_one() {
        let v = gauss_2f1(0.5, 1.5, 2.5, 1.0).unwrap();
        assert!((v / (0.75 * PI) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn elementary_cases() {
        // 2F1(1, 1; 2; x) = −ln(1 − x)/x
        for x in [0.1, 0.5, 0.8, 0.95] {
            let v = gauss_2f1(1.0, 1.0, 2.0, x).unwrap();
            let e = -(1.0f64 - x).ln() / x;
            assert!((v / e - 1.0).abs() < 1e-12, "x={x}");
        }
        // 2F1(1/2, 1; 3/2; x²) = atanh(x)/x, c − a − b = 0 is an integer
        // 2F1(1/2, 1/2; 3/2; x²) = asin(x)/x, c − a − b = 1/2
        for x in [0.3f64, 0.8, 0.99] {
            let v = gauss_2f1(0.5, 0.5, 1.5, x * x).unwrap();
            assert!((v / (x.asin() / x) - 1.0).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn terminating_polynomial() {
        // 2F1(−2, b; c; x) = 1 − 2bx/c + b(b+1)x²/(c(c+1))
        let (b, c, x) = (1.5, 2.5, 0.9);
        let e = 1.0 - 2.0 * b * x / c + b * (b + 1.0) * x * x / (c * (c + 1.0));
        assert!((gauss_2f1(-2.0, b, c, x).unwrap() - e).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(gauss_2f1(0.5, 1.5, 2.5, 1.5).is_err());
        assert!(gauss_2f1(0.5, 1.5, 2.5, -0.1).is_err());
        assert!(matches!(
            gauss_2f1(1.0, 1.5, 2.0, 1.0),
            Err(Error::Divergence(_))
        ));
    }
}
