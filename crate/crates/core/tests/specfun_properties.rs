mod common;

use common::{gamma_stirling, hyp2f1_series, j1_series_dd, k_oracle, k_scaled_oracle};
use magkern::specfun::*;
use proptest::prelude::*;
use std::f64::consts::PI;

const ORDERS: [f64; 10] = [0.0, 0.5, 0.75, 1.0, 1.5, 1.75, 2.0, 2.5, 2.75, 3.0];

fn kv(nu: f64, z: f64) -> f64 {
    bessel_k(BesselOrder::new(nu).unwrap(), z).unwrap()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

#[test]
fn recurrence_holds_on_log_grid() {
    for nu in ORDERS.iter().copied().filter(|nu| *nu >= 1.0) {
        for z in log_grid(0.1, 50.0, 1000) {
            let lhs = kv(nu + 1.0, z);
            let resid = (lhs - kv(nu - 1.0, z) - 2.0 * nu / z * kv(nu, z)).abs() / lhs;
            assert!(resid <= 1e-10, "nu={nu} z={z} resid={resid:e}");
        }
    }
}

#[test]
fn matches_integral_representation_on_grid() {
    let nus: Vec<f64> = (0..20).map(|i| i as f64 * 3.0 / 19.0).collect();
    for &nu in &nus {
        for z in log_grid(1e-3, 100.0, 20) {
            let v = bessel_k_scaled(BesselOrder::new(nu).unwrap(), z).unwrap();
            let o = k_scaled_oracle(nu, z);
            assert!((v / o - 1.0).abs() <= 1e-9, "nu={nu} z={z} {v} {o}");
        }
    }
}

#[test]
fn supported_orders_are_accurate_over_full_range() {
    for &nu in &ORDERS {
        for z in log_grid(1e-6, 700.0, 80) {
            let v = bessel_k_scaled(BesselOrder::new(nu).unwrap(), z).unwrap();
            let o = k_scaled_oracle(nu, z);
            assert!((v / o - 1.0).abs() <= 1e-12, "nu={nu} z={z} rel={:e}", v / o - 1.0);
        }
    }
}

#[test]
fn large_argument_asymptotics() {
    let z: f64 = 100.0;
    for &nu in &ORDERS {
        let scaled = kv(nu, z) * (2.0 * z / PI).sqrt() * z.exp();
        // The first Hankel correction (4ν² − 1)/8z reaches 1% at ν = 3/2.
        if nu < 1.5 {
            assert!((scaled - 1.0).abs() < 0.01, "nu={nu} {scaled}");
        }
        let corrected = scaled / (1.0 + (4.0 * nu * nu - 1.0) / (8.0 * z));
        assert!((corrected - 1.0).abs() < 1e-3, "nu={nu} {corrected}");
    }
}

#[test]
fn small_argument_law() {
    for nu in ORDERS.iter().copied().filter(|nu| *nu > 0.0) {
        let z: f64 = 1e-4;
        let law = z.powf(nu) * kv(nu, z) / (gamma_fn(nu).unwrap() * 2f64.powf(nu - 1.0));
        assert!((law - 1.0).abs() < 1e-3, "nu={nu} {law}");
    }
}

#[test]
fn k0_logarithmic_anchor() {
    let v = kv(0.0, 0.001);
    assert!((v / -(0.001f64.ln()) - 1.0).abs() < 0.05);
    assert!((v / k_oracle(0.0, 0.001) - 1.0).abs() < 1e-13);
}

#[test]
fn quarter_order_recurrence_example() {
    let k34 = k_oracle(0.75, 2.0);
    let k74 = k_oracle(1.75, 2.0);
    let expect = k34 + 1.75 * k74;
    assert!((kv(2.75, 2.0) / expect - 1.0).abs() < 1e-13);
}

#[test]
fn half_order_closed_form() {
    assert!((kv(0.5, 1.0) - (PI / 2.0).sqrt() * (-1f64).exp()).abs() < 1e-16);
}

#[test]
fn underflow_is_reported_not_raised() {
    let v = bessel_k_eval(BesselOrder::new(1.0).unwrap(), 800.0).unwrap();
    assert_eq!(v.value, 0.0);
    assert!(v.underflow);
    let v = bessel_k_eval(BesselOrder::new(1.0).unwrap(), 1.0).unwrap();
    assert!(!v.underflow);
    assert!(bessel_k(BesselOrder::new(1.0).unwrap(), 0.0).is_err());
}

#[test]
fn j1_against_double_double_series() {
    for z in [0.0, 0.1, 1.0, 2.5, 5.0, 10.0, 15.0, 20.0, 25.0] {
        let v = bessel_j(BesselOrder::new(1.0).unwrap(), z).unwrap();
        let o = j1_series_dd(z);
        assert!((v - o).abs() <= 1e-10 * o.abs().max(1e-300), "z={z} {v} {o}");
    }
}

#[test]
fn j1_is_accurate_to_two_hundred() {
    let rule = common::gauss_legendre(60);
    for z in [50.0, 100.0, 150.0, 200.0] {
        // Bessel's integral J₁(z) = (1/π) ∫₀^π cos(θ − z sin θ) dθ, panelled Gauss–Legendre.
        let f = |t: f64| (t - z * t.sin()).cos();
        let panels = 400;
        let mut s = 0.0;
        for i in 0..panels {
            let a = PI * i as f64 / panels as f64;
            let b = PI * (i + 1) as f64 / panels as f64;
            s += common::gl_panel(&f, a, b, &rule);
        }
        let o = s / PI;
        let v = bessel_j(BesselOrder::new(1.0).unwrap(), z).unwrap();
        assert!((v - o).abs() <= 1e-10 * o.abs(), "z={z} {v} {o}");
    }
}

#[test]
fn j_three_halves_closed_form() {
    let v = bessel_j(BesselOrder::new(1.5).unwrap(), PI).unwrap();
    assert!((v - (2.0 / (PI * PI)).sqrt()).abs() < 1e-15);
    assert_eq!(bessel_j(BesselOrder::new(1.0).unwrap(), 0.0).unwrap(), 0.0);
    assert!(bessel_j(BesselOrder::new(2.0).unwrap(), 1.0).is_err());
}

#[test]
fn gamma_values() {
    let g = gamma_fn(0.5).unwrap();
    assert!((g / PI.sqrt() - 1.0).abs() < 1e-13);
    assert!((gamma_fn(2.5).unwrap() / (0.75 * PI.sqrt()) - 1.0).abs() < 1e-13);
    assert!((gamma_fn(0.25).unwrap() / gamma_stirling(0.25) - 1.0).abs() < 1e-13);
    assert!(gamma_fn(0.0).is_err());
}

#[test]
fn hypergeometric_values() {
    assert_eq!(gauss_2f1(0.5, 1.5, 2.5, 0.0).unwrap(), 1.0);
    assert!((gauss_2f1(0.5, 1.5, 2.5, 1.0).unwrap() - 0.75 * PI).abs() < 1e-14);
    let v = gauss_2f1(0.5, 1.5, 2.5, 0.5).unwrap();
    assert!((v / hyp2f1_series(0.5, 1.5, 2.5, 0.5) - 1.0).abs() < 1e-10);
    assert!(gauss_2f1(0.5, 1.5, 2.5, 1.1).is_err());
    assert!(gauss_2f1(1.0, 1.5, 2.5, 1.0).is_err());
}

proptest! {
    #[test]
    fn k_is_positive_and_decreasing(nu in 0.0f64..3.0, z in 1e-6f64..600.0, f in 1.0001f64..2.0) {
        let a = kv(nu, z);
        let b = kv(nu, z * f);
        prop_assert!(a > 0.0);
        prop_assert!(b < a);
    }

    #[test]
    fn k_negative_orders_fold(nu in 0.0f64..3.0, z in 0.01f64..50.0) {
        prop_assert_eq!(kv(-nu, z), kv(nu, z));
    }

    #[test]
    fn hypergeometric_series_agree(x in 0.0f64..0.9) {
        let v = gauss_2f1(0.5, 1.5, 2.5, x).unwrap();
        let o = hyp2f1_series(0.5, 1.5, 2.5, x);
        prop_assert!((v / o - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gamma_matches_stirling(x in 0.05f64..60.0) {
        let rel = gamma_fn(x).unwrap() / gamma_stirling(x) - 1.0;
        prop_assert!(rel.abs() < 1e-12, "x={} rel={:e}", x, rel);
    }
}
