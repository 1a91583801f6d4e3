//! Bessel functions of the first kind for the two orders the kernels need.

use std::f64::consts::PI;

use super::bessel_k::BesselOrder;
use crate::error::{domain, Error, Result};

/// J_ν(z) for ν ∈ {1, 3/2} and z ≥ 0.
pub fn bessel_j(order: BesselOrder, z: f64) -> Result<f64> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(domain(format!("J_nu(z) requires finite z >= 0, got {z}")));
    }
    match order.value() {
        1.0 => Ok(bessel_j1(z)),
        1.5 => Ok(bessel_j3_2(z)),
        nu => Err(Error::UnsupportedOrder(nu)),
    }
}

/// J_1 by Miller's backward recurrence normalised with
/// J_0 + 2 Σ J_{2k} = 1.
pub(crate) fn bessel_j1(z: f64) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    if z < 1e-8 {
        return 0.5 * z;
    }
    // Start well above z where J_n is negligible.
    let mut start = (1.2 * z + 40.0 + 6.0 * z.cbrt()) as usize;
    start += start % 2;
    let two_over_z = 2.0 / z;
    let mut j_next = 0.0; // J_{n+1}
    let mut j_cur = 1e-300; // J_n, arbitrary seed
    let mut norm = 0.0;
    let mut j1 = 0.0;
    for n in (1..=start).rev() {
        let j_prev = n as f64 * two_over_z * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        // j_cur now holds the unnormalised J_{n-1}
        if n - 1 == 1 {
            j1 = j_cur;
        }
        if (n - 1) % 2 == 0 && n - 1 > 0 {
            norm += 2.0 * j_cur;
        }
        if j_cur.abs() > 1e250 {
            j_cur *= 1e-250;
            j_next *= 1e-250;
            norm *= 1e-250;
            j1 *= 1e-250;
        }
    }
    norm += j_cur; // J_0
    j1 / norm
}

/// J_{3/2}(z) = √(2/(πz)) (sin z / z − cos z), with the power series near 0.
pub(crate) fn bessel_j3_2(z: f64) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    if z < 0.5 {
        // (z/2)^{3/2} Σ (−z²/4)^k / (k! Γ(k + 5/2))
        let q = -0.25 * z * z;
        let mut term = 1.0 / (0.75 * PI.sqrt());
        let mut sum = term;
        for k in 1..30 {
            let fk = k as f64;
            term *= q / (fk * (fk + 1.5));
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        return (0.5 * z).powf(1.5) * sum;
    }
    (2.0 / (PI * z)).sqrt() * (z.sin() / z - z.cos())
}
