//! Modified Bessel function of the second kind K_ν(z) for real ν ≥ 0, z > 0.
//!
//! Orders are split as ν = μ + n with |μ| ≤ 1/2. The pair K_μ, K_{μ+1} comes
//! from Temme's series for z < 2 and from Steed's continued fraction (CF2)
//! otherwise; higher orders follow by forward recurrence, which is stable for K.
//! Half-integer orders use the terminating closed form.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::gamma::temme_gammas;
use crate::error::{domain, Error, Result};

const EPS: f64 = 1e-16;
const MAX_ITER: usize = 10_000;

/// Nonnegative order of a modified Bessel function.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct BesselOrder(f64);

impl BesselOrder {
    /// Accepts any finite order; negative orders are folded with K_{−ν} = K_ν.
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() {
            return Err(domain(format!("Bessel order must be finite, got {nu}")));
        }
        Ok(Self(nu.abs()))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    fn half_integer(self) -> Option<usize> {
        let twice = 2.0 * self.0;
        if twice == twice.round() && (twice as i64) % 2 == 1 {
            Some(((twice as i64 - 1) / 2) as usize)
        } else {
            None
        }
    }
}

impl TryFrom<f64> for BesselOrder {
    type Error = Error;

    fn try_from(nu: f64) -> Result<Self> {
        Self::new(nu)
    }
}

/// K_ν(z) together with an underflow indicator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselKValue {
    pub value: f64,
    /// Set when the true value is below the smallest positive double and
    /// `value` has been flushed to zero.
    pub underflow: bool,
}

/// K_ν(z). Returns 0 when the result underflows; see [`bessel_k_eval`] for the flag.
pub fn bessel_k(order: BesselOrder, z: f64) -> Result<f64> {
    Ok(bessel_k_eval(order, z)?.value)
}

/// K_ν(z) with the underflow flag.
pub fn bessel_k_eval(order: BesselOrder, z: f64) -> Result<BesselKValue> {
    let scaled = bessel_k_scaled(order, z)?;
    Ok(unscale(scaled, z))
}

/// e^z K_ν(z), which stays representable for all z > 0.
pub fn bessel_k_scaled(order: BesselOrder, z: f64) -> Result<f64> {
    check_arg(z)?;
    if let Some(n) = order.half_integer() {
        return Ok(half_integer_scaled(n, z).0);
    }
    let n = (order.0 + 0.5).floor() as usize;
    let mu = order.0 - n as f64;
    let (mut k_mu, mut k_mu1) = base_pair_scaled(mu, z)?;
    for i in 1..=n {
        let next = (mu + i as f64) * (2.0 / z) * k_mu1 + k_mu;
        k_mu = k_mu1;
        k_mu1 = next;
    }
    Ok(k_mu)
}

/// K_{ν}, K_{ν+1}, …, K_{ν+len−1} at the same argument.
///
/// Cheaper than separate calls because only one base pair is computed.
pub fn bessel_k_sequence(order: BesselOrder, len: usize, z: f64) -> Result<Vec<f64>> {
    check_arg(z)?;
    if len == 0 {
        return Ok(Vec::new());
    }
    let nu = order.0;
    let n = (nu + 0.5).floor() as usize;
    let mu = nu - n as f64;
    let (mut a, mut b) = match order.half_integer() {
        Some(hn) => half_integer_scaled(hn, z),
        None => {
            let (mut k0, mut k1) = base_pair_scaled(mu, z)?;
            for i in 1..=n {
                let next = (mu + i as f64) * (2.0 / z) * k1 + k0;
                k0 = k1;
                k1 = next;
            }
            (k0, k1)
        }
    };
    let mut out = Vec::with_capacity(len);
    for j in 0..len {
        out.push(unscale(a, z).value);
        let next = (nu + (j + 1) as f64) * (2.0 / z) * b + a;
        a = b;
        b = next;
    }
    Ok(out)
}

fn check_arg(z: f64) -> Result<()> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain(format!("K_nu(z) requires finite z > 0, got {z}")));
    }
    Ok(())
}

fn unscale(scaled: f64, z: f64) -> BesselKValue {
    // Split e^{-z} so that large-order values near the overflow edge survive.
    let value = scaled * (-0.5 * z).exp() * (-0.5 * z).exp();
    if value < f64::MIN_POSITIVE && scaled > 0.0 {
        BesselKValue {
            value: 0.0,
            underflow: true,
        }
    } else {
        BesselKValue {
            value,
            underflow: false,
        }
    }
}

/// e^z K_{n+1/2}(z) and e^z K_{n+3/2}(z).
fn half_integer_scaled(n: usize, z: f64) -> (f64, f64) {
    // e^z K_{1/2} = √(π/2z), e^z K_{3/2} = √(π/2z)(1 + 1/z)
    let base = (PI / (2.0 * z)).sqrt();
    let mut a = base;
    let mut b = base * (1.0 + 1.0 / z);
    for i in 0..n {
        let next = (2.0 * (i as f64 + 1.5) / z) * b + a;
        a = b;
        b = next;
    }
    (a, b)
}

/// e^z K_μ(z) and e^z K_{μ+1}(z) for |μ| ≤ 1/2.
fn base_pair_scaled(mu: f64, z: f64) -> Result<(f64, f64)> {
    if z < 2.0 {
        let (k_mu, k_mu1) = temme_series(mu, z)?;
        let ez = z.exp();
        Ok((k_mu * ez, k_mu1 * ez))
    } else {
        steed_cf2(mu, z)
    }
}

fn temme_series(mu: f64, z: f64) -> Result<(f64, f64)> {
    let x2 = 0.5 * z;
    let pimu = PI * mu;
    let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
    let d = -x2.ln();
    let e = mu * d;
    let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
    let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let ee = e.exp();
    let mut p = 0.5 * ee / gampl;
    let mut q = 0.5 / (ee * gammi);
    let mut c = 1.0;
    let dd = x2 * x2;
    let mut sum1 = p;
    for i in 1..=MAX_ITER {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu * mu);
        c *= dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * EPS {
            return Ok((sum, sum1 * (2.0 / z)));
        }
    }
    Err(Error::SeriesConvergence(format!("Temme series for K at z = {z}")))
}

fn steed_cf2(mu: f64, z: f64) -> Result<(f64, f64)> {
    let mut b = 2.0 * (1.0 + z);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu * mu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut converged = false;
    for i in 2..=MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::SeriesConvergence(format!("CF2 for K at z = {z}")));
    }
    let h = a1 * h;
    let k_mu = (PI / (2.0 * z)).sqrt() / s;
    let k_mu1 = k_mu * (mu + z + 0.5 - h) / z;
    Ok((k_mu, k_mu1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(nu: f64, z: f64) -> f64 {
        bessel_k(BesselOrder::new(nu).unwrap(), z).unwrap()
    }

    #[test]
    fn half_order_closed_form() {
        let expected = (PI / 2.0).sqrt() * (-1.0f64).exp();
        assert!((k(0.5, 1.0) / expected - 1.0).abs() < 1e-15);
        assert!((k(0.5, 1.0) - 0.461_068_504_447_894_56).abs() < 1e-15);
    }

    #[test]
    fn known_integer_order_values() {
        assert!((k(0.0, 1.0) / 0.421_024_438_240_708_33 - 1.0).abs() < 1e-13);
        assert!((k(1.0, 1.0) / 0.601_907_230_197_234_57 - 1.0).abs() < 1e-13);
        assert!((k(2.0, 1.0) / 1.624_838_898_635_177_5 - 1.0).abs() < 1e-13);
        assert!((k(0.0, 0.001) / 7.023_688_800_562_381_3 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn branches_agree_at_switch_point() {
        for nu in [0.0, 0.25, 0.75, 1.0, 1.75, 2.75, 3.0] {
            let below = k(nu, 2.0 - 1e-12);
            let above = k(nu, 2.0);
            assert!((below / above - 1.0).abs() < 1e-11, "nu={nu}");
        }
    }

    #[test]
    fn negative_order_folds() {
        let o = BesselOrder::new(-1.75).unwrap();
        assert_eq!(o.value(), 1.75);
    }

    #[test]
    fn domain_errors() {
        let o = BesselOrder::new(1.0).unwrap();
        assert!(bessel_k(o, 0.0).is_err());
        assert!(bessel_k(o, -1.0).is_err());
        assert!(bessel_k(o, f64::NAN).is_err());
        assert!(BesselOrder::new(f64::INFINITY).is_err());
    }

    #[test]
    fn underflow_is_flagged() {
        let o = BesselOrder::new(0.0).unwrap();
        let v = bessel_k_eval(o, 800.0).unwrap();
        assert_eq!(v.value, 0.0);
        assert!(v.underflow);
        let v = bessel_k_eval(o, 700.0).unwrap();
        assert!(v.value > 0.0 && !v.underflow);
    }

    #[test]
    fn sequence_matches_single_calls() {
        for nu0 in [0.0, 0.5, 0.75] {
            for z in [0.01, 1.0, 5.0, 40.0] {
                let seq = bessel_k_sequence(BesselOrder::new(nu0).unwrap(), 4, z).unwrap();
                for (j, v) in seq.iter().enumerate() {
                    let single = k(nu0 + j as f64, z);
                    assert!((v / single - 1.0).abs() < 1e-14, "nu0={nu0} j={j} z={z}");
                }
            }
        }
    }
}
