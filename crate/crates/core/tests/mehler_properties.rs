use magkern::mehler::*;
use magkern::quad::{integrate_semiaxis, IntegrandSpec};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn cfg(eb0: f64, m: f64) -> FieldConfig {
    FieldConfig::from_eb0(eb0, m).unwrap()
}

fn random_point(rng: &mut ChaCha8Rng, h: f64) -> Point3 {
    std::array::from_fn(|_| rng.gen_range(-h..h))
}

#[test]
fn coincident_point_examples() {
    let o = [0.0; 3];
    let k = mehler_hs_kernel(&cfg(0.0, 0.0), 1.0, &o, &o).unwrap();
    assert!((k.value().re / (4.0 * PI).powf(-1.5) - 1.0).abs() < 1e-14);
    assert!((k.value().re / 2.24485e-2 - 1.0).abs() < 1e-5);
    let k = mehler_hs_kernel(&cfg(1.0, 0.0), 1.0, &o, &o).unwrap();
    let arithmetic = (4.0 * PI).powf(-0.5) / (4.0 * PI * 1f64.sinh());
    assert!((k.modulus() / arithmetic - 1.0).abs() < 1e-14);
    assert!((k.modulus() / 1.91002e-2 - 1.0).abs() < 1e-4);
    let k = ea2_heat_kernel(&cfg(0.0, 1.0), SpinChannel::Down, 1.0, &o, &o).unwrap();
    let field_free = (-1f64).exp() * (4.0 * PI).powf(-1.5);
    assert!((k.modulus() / field_free - 1.0).abs() < 1e-14);
    assert!((k.modulus() / 8.25827e-3 - 1.0).abs() < 1e-5);
    let f = free_heat_kernel(1.0, &o, &[0.0, 2.0, 0.0]).unwrap();
    assert!((f / field_free - 1.0).abs() < 1e-14);
    let b = prefactor_bound_a6a(&cfg(1.0, 0.0), 1.0, &o, &o).unwrap();
    assert!((b / (3.0 * (4.0 * PI).powf(-1.5)) - 1.0).abs() < 1e-14);
    assert!((b / 6.73456e-2 - 1.0).abs() < 1e-5);
}

#[test]
fn field_free_prefactor_bound_is_massive_free_kernel() {
    let c = cfg(0.0, 0.8);
    let (x, xp) = ([0.1, 0.2, 0.3], [1.0, -0.5, 0.0]);
    let b = prefactor_bound_a6a(&c, 0.7, &x, &xp).unwrap();
    let f = free_heat_kernel(0.7, &x, &xp).unwrap() * (-0.7 * 0.64f64).exp();
    assert!((b / f - 1.0).abs() < 1e-14);
}

#[test]
fn lowest_landau_level_ratio() {
    let c = cfg(1.0, 0.0);
    let o = [0.0; 3];
    for t in [10.0, 20.0, 40.0] {
        let k = ea2_heat_kernel(&c, SpinChannel::Up, t, &o, &o).unwrap().modulus();
        let lll = (4.0 * PI * t).powf(-0.5) / (2.0 * PI);
        let expect = 1.0 / -(-2.0 * t).exp_m1();
        assert!((k / lll / expect - 1.0).abs() < 1e-13);
    }
}

#[test]
fn hermitian_symmetry_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let c = cfg(rng.gen_range(0.0..5.0), 0.0);
        let (x, xp) = (random_point(&mut rng, 3.0), random_point(&mut rng, 3.0));
        let t = rng.gen_range(0.01..5.0);
        let a = mehler_hs_kernel(&c, t, &x, &xp).unwrap().value();
        let b = mehler_hs_kernel(&c, t, &xp, &x).unwrap().value();
        assert!((a - b.conj()).norm() <= 4.0 * f64::EPSILON * a.norm());
    }
}

#[test]
fn translation_part_is_exactly_shift_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let c = cfg(rng.gen_range(0.0..3.0), 0.5);
        // Dyadic coordinates keep the shifted differences exact.
        let dy = |rng: &mut ChaCha8Rng| (rng.gen_range(-64i32..64) as f64) / 16.0;
        let x: Point3 = std::array::from_fn(|_| dy(&mut rng));
        let xp: Point3 = std::array::from_fn(|_| dy(&mut rng));
        let s: Point3 = std::array::from_fn(|_| dy(&mut rng));
        let xs = [x[0] + s[0], x[1] + s[1], x[2] + s[2]];
        let xps = [xp[0] + s[0], xp[1] + s[1], xp[2] + s[2]];
        let t = rng.gen_range(0.1..2.0);
        let a = mehler_hs_kernel(&c, t, &x, &xp).unwrap();
        let b = mehler_hs_kernel(&c, t, &xs, &xps).unwrap();
        assert_eq!(a.translation_part, b.translation_part);
        for spin in SpinChannel::BOTH {
            let a = ea2_heat_kernel(&c, spin, t, &x, &xp).unwrap();
            let b = ea2_heat_kernel(&c, spin, t, &xs, &xps).unwrap();
            assert_eq!(a.translation_part, b.translation_part);
        }
    }
}

#[test]
fn diamagnetic_domination_on_ten_thousand_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10_000 {
        let c = cfg(10f64.powf(rng.gen_range(-3.0..2.0)), rng.gen_range(0.0..2.0));
        let (x, xp) = (random_point(&mut rng, 4.0), random_point(&mut rng, 4.0));
        let t = 10f64.powf(rng.gen_range(-2.0..1.0));
        let k = mehler_hs_kernel(&c, t, &x, &xp).unwrap().modulus();
        let f = free_heat_kernel(t, &x, &xp).unwrap();
        assert!(k <= f * (1.0 + 1e-12), "{k} > {f}");
        let b = prefactor_bound_a6a(&c, t, &x, &xp).unwrap();
        for spin in SpinChannel::BOTH {
            let e = ea2_heat_kernel(&c, spin, t, &x, &xp).unwrap().modulus();
            assert!(e <= b * (1.0 + 1e-12), "{e} > {b}");
        }
    }
}

#[test]
fn continuity_at_vanishing_field() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let zero = cfg(0.0, 1.0);
    let tiny = FieldConfig::with_default_coupling(1e-8, 1.0).unwrap();
    for _ in 0..200 {
        let (x, xp) = (random_point(&mut rng, 2.0), random_point(&mut rng, 2.0));
        let t = rng.gen_range(0.05..5.0);
        let a = mehler_hs_kernel(&zero, t, &x, &xp).unwrap().value();
        let b = mehler_hs_kernel(&tiny, t, &x, &xp).unwrap().value();
        assert!((a - b).norm() <= 1e-8 * a.norm());
    }
}

#[test]
fn free_kernel_has_unit_mass() {
    for t in [0.1, 1.0, 4.0] {
        let spec = IntegrandSpec::smooth_exponential(1.0 / (4.0 * t)).unwrap();
        let o = [0.0; 3];
        let r = integrate_semiaxis(
            |r: f64| 4.0 * PI * r * r * free_heat_kernel(t, &o, &[r, 0.0, 0.0]).unwrap(),
            &spec,
            1e-12,
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-11, "t={t}: {}", r.value);
    }
}

#[test]
fn nonpositive_time_is_rejected() {
    let c = cfg(1.0, 1.0);
    let o = [0.0; 3];
    for t in [0.0, -1.0, f64::NAN] {
        assert!(mehler_hs_kernel(&c, t, &o, &o).is_err());
        assert!(ea2_heat_kernel(&c, SpinChannel::Up, t, &o, &o).is_err());
        assert!(free_heat_kernel(t, &o, &o).is_err());
        assert!(prefactor_bound_a6a(&c, t, &o, &o).is_err());
    }
}

proptest! {
    #[test]
    fn gauge_phase_is_unimodular(
        eb0 in 0.0f64..10.0,
        t in 0.01f64..10.0,
        x in prop::array::uniform3(-5.0f64..5.0),
        xp in prop::array::uniform3(-5.0f64..5.0),
    ) {
        let k = mehler_hs_kernel(&FieldConfig::from_eb0(eb0, 0.0).unwrap(), t, &x, &xp).unwrap();
        prop_assert!((k.gauge_phase.norm() - 1.0).abs() < 1e-15);
        prop_assert_eq!(k.value(), k.translation_part * k.gauge_phase);
    }

    #[test]
    fn spin_channels_differ_by_field_factor(
        eb0 in 0.0f64..5.0,
        m in 0.0f64..2.0,
        t in 0.01f64..5.0,
        xp in prop::array::uniform3(-3.0f64..3.0),
    ) {
        let c = FieldConfig::from_eb0(eb0, m).unwrap();
        let o = [0.0; 3];
        let up = ea2_heat_kernel(&c, SpinChannel::Up, t, &o, &xp).unwrap().modulus();
        let down = ea2_heat_kernel(&c, SpinChannel::Down, t, &o, &xp).unwrap().modulus();
        if down > 1e-250 {
            prop_assert!((up / down / (2.0 * t * eb0).exp() - 1.0).abs() < 1e-12);
        }
    }
}
