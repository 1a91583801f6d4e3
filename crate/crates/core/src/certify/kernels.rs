use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::certificate::{BoundCertificate, Tracker};
use super::grid::{GridAxis, GridSpec};
use crate::error::{domain, Result};
use crate::mehler::{
    ea2_heat_kernel, free_heat_kernel, ln_ea2, ln_mehler, mehler_hs_kernel, prefactor_bound_a6a,
    split_sq, FieldConfig, KernelValue, Point3, SpinChannel,
};
use crate::quad::{try_integrate_finite2d, QuadOptions, Rectangle};

/// Base point of the diamagnetic samples; the moduli are translation invariant.
const BASE: Point3 = [0.3, -0.2, 0.1];

/// Smallest right-hand side compared directly rather than through logarithms.
const DIRECT_FLOOR: f64 = 1e-280;

/// `eb0` ∈ {0, 1, 100} and `m` ∈ {0, 1}.
pub fn default_diamagnetic_cfg_grid() -> GridSpec {
    GridSpec::new(vec![
        GridAxis::values("eb0", &[0.0, 1.0, 100.0]).expect("valid axis"),
        GridAxis::values("m", &[0.0, 1.0]).expect("valid axis"),
    ])
    .expect("valid grid")
}

/// `t` log on [0.01, 10], `r` linear on [0, 10] (25 points each) and three
/// polar angles `theta` of the separation against the field.
pub fn default_diamagnetic_space_grid() -> GridSpec {
    GridSpec::new(vec![
        GridAxis::log("t", 0.01, 10.0, 25).expect("valid axis"),
        GridAxis::linear("r", 0.0, 10.0, 25).expect("valid axis"),
        GridAxis::values("theta", &[0.0, FRAC_PI_4, FRAC_PI_2]).expect("valid axis"),
    ])
    .expect("valid grid")
}

fn offset(x: &Point3, r: f64, theta: f64) -> Point3 {
    [x[0] + r * theta.sin(), x[1], x[2] + r * theta.cos()]
}

/// Record lhs ≤ rhs, through logarithms once the bound underflows.
fn record_moduli(t: &mut Tracker, component: &str, p: &[(&str, f64)], lhs: f64, rhs: f64, ln_ratio: f64) {
    if rhs > DIRECT_FLOOR {
        t.record(component, p, lhs, rhs);
    } else {
        t.record(component, p, ln_ratio.exp(), 1.0);
    }
}

/// |e^{−tH_s}| ≤ e^{−tp²} and |e^{−tE_A²}| ≤ the (1 + 2eB₀t) envelope for
/// both spins over `eb0` × `m` × `t` × `r` × `theta`.
pub fn certify_diamagnetic(cfg_grid: &GridSpec, space_grid: &GridSpec) -> Result<BoundCertificate> {
    cfg_grid.only(&["eb0", "m"])?;
    space_grid.only(&["t", "r", "theta"])?;
    let grid = cfg_grid.merged(space_grid)?;
    let bs = cfg_grid.samples("eb0")?;
    let ms = cfg_grid.samples("m")?;
    let ts = space_grid.samples("t")?;
    let rs = space_grid.samples("r")?;
    let thetas = space_grid.samples_or("theta", &[0.0]);
    let mut tr = Tracker::new("diamagnetic", super::CLOSED_FORM_SLACK);
    for &b in &bs {
        for &m in &ms {
            let cfg = FieldConfig::from_eb0(b, m)?;
            for &t in &ts {
                for &r in &rs {
                    for &th in &thetas {
                        let xp = offset(&BASE, r, th);
                        let (z3, rho) = split_sq(&BASE, &xp);
                        let ln_free = -1.5 * (4.0 * PI * t).ln() - (z3 + rho) / (4.0 * t);
                        let p = [("eb0", b), ("m", m), ("t", t), ("r", r), ("theta", th)];
                        let k = mehler_hs_kernel(&cfg, t, &BASE, &xp)?.modulus();
                        let f = free_heat_kernel(t, &BASE, &xp)?;
                        let ln_k = ln_mehler(b, t, z3, rho);
                        record_moduli(&mut tr, "mehler_le_free", &p, k, f, ln_k - ln_free);
                        let bound = prefactor_bound_a6a(&cfg, t, &BASE, &xp)?;
                        let ln_bound = ln_free - t * m * m + (2.0 * b * t).ln_1p();
                        for spin in SpinChannel::BOTH {
                            let ps = [p[0], p[1], p[2], p[3], p[4], ("spin", spin.sign())];
                            let e = ea2_heat_kernel(&cfg, spin, t, &BASE, &xp)?.modulus();
                            let ln_e = ln_ea2(&cfg, spin, t, z3, rho);
                            record_moduli(&mut tr, "ea2_le_a6a", &ps, e, bound, ln_e - ln_bound);
                        }
                    }
                }
            }
        }
    }
    Ok(tr.finish(grid))
}

/// Relative tolerance of the semigroup identity.
pub const SEMIGROUP_TOL: f64 = 1e-6;
const HERMITIAN_SAMPLES: usize = 100;
const HERMITIAN_TOL: f64 = 1e-12;

/// Point pairs (x, x') at which the semigroup identity is checked.
const SEMIGROUP_PAIRS: [(Point3, Point3); 2] = [
    ([0.0; 3], [0.0; 3]),
    ([0.3, -0.2, 0.1], [-0.4, 0.5, 0.2]),
];

/// `eb0` ∈ {0, 1} and `m` = 1.
pub fn default_semigroup_cfg_grid() -> GridSpec {
    GridSpec::new(vec![
        GridAxis::values("eb0", &[0.0, 1.0]).expect("valid axis"),
        GridAxis::values("m", &[1.0]).expect("valid axis"),
    ])
    .expect("valid grid")
}

/// `t` ∈ {0.5, 1} and `s` ∈ {0.5, 2}.
pub fn default_semigroup_time_grid() -> GridSpec {
    GridSpec::new(vec![
        GridAxis::values("t", &[0.5, 1.0]).expect("valid axis"),
        GridAxis::values("s", &[0.5, 2.0]).expect("valid axis"),
    ])
    .expect("valid grid")
}

#[derive(Clone, Copy)]
enum Kind {
    Mehler,
    Ea2(SpinChannel),
}

impl Kind {
    fn label(self) -> &'static str {
        match self {
            Kind::Mehler => "mehler_semigroup",
            Kind::Ea2(SpinChannel::Up) => "ea2_up_semigroup",
            Kind::Ea2(SpinChannel::Down) => "ea2_down_semigroup",
        }
    }

    fn eval(self, cfg: &FieldConfig, t: f64, x: &Point3, xp: &Point3) -> Result<KernelValue> {
        match self {
            Kind::Mehler => mehler_hs_kernel(cfg, t, x, xp),
            Kind::Ea2(spin) => ea2_heat_kernel(cfg, spin, t, x, xp),
        }
    }
}

struct Convolution {
    value: Complex64,
    evaluations: usize,
}

/// ∫ K_t(x, y) K_s(y, x') d³y with the e₃ integral done in closed form.
fn convolve(kind: Kind, cfg: &FieldConfig, t: f64, s: f64, x: &Point3, xp: &Point3) -> Result<Convolution> {
    // With y₃ = x₃ (resp. x₃') the longitudinal factors reduce to (4πt)^{−1/2}.
    let lt = (4.0 * PI * t).sqrt();
    let ls = (4.0 * PI * s).sqrt();
    let (cx, cy) = (0.5 * (x[0] + xp[0]), 0.5 * (x[1] + xp[1]));
    let half_gap = 0.5 * (xp[0] - x[0]).hypot(xp[1] - x[1]);
    let h = half_gap + (180.0 * t.max(s)).sqrt();
    let rect = Rectangle::new(cx - h, cx + h, cy - h, cy + h)?;
    let opts = QuadOptions::new(1e-10).with_abs_tol(1e-300);
    let res = try_integrate_finite2d(
        |y1, y2| {
            let a = kind.eval(cfg, t, x, &[y1, y2, x[2]])?.value();
            let b = kind.eval(cfg, s, &[y1, y2, xp[2]], xp)?.value();
            Ok(a * b * (lt * ls))
        },
        &rect,
        &opts,
    )?;
    let dz = xp[2] - x[2];
    let ts = t + s;
    let longitudinal = (4.0 * PI * ts).powf(-0.5) * (-dz * dz / (4.0 * ts)).exp();
    Ok(Convolution {
        value: res.value * longitudinal,
        evaluations: res.evaluations,
    })
}

/// K_t ∗ K_s = K_{t+s} for the Mehler kernel and both e^{−tE_A²} channels,
/// plus seeded spot checks of K(x, x') = conj K(x', x).
pub fn certify_semigroup(cfg_grid: &GridSpec, time_grid: &GridSpec) -> Result<BoundCertificate> {
    cfg_grid.only(&["eb0", "m"])?;
    time_grid.only(&["t", "s"])?;
    let grid = cfg_grid.merged(time_grid)?;
    let bs = cfg_grid.samples("eb0")?;
    let ms = cfg_grid.samples_or("m", &[1.0]);
    let ts = time_grid.samples("t")?;
    let ss = time_grid.samples("s")?;
    if ts.iter().chain(ss.iter()).any(|v| !(*v > 0.0)) {
        return Err(domain("semigroup times must be positive"));
    }
    let kinds = [
        Kind::Mehler,
        Kind::Ea2(SpinChannel::Up),
        Kind::Ea2(SpinChannel::Down),
    ];
    let mut tr = Tracker::new("semigroup", SEMIGROUP_TOL);
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    for &b in &bs {
        for &m in &ms {
            let cfg = FieldConfig::from_eb0(b, m)?;
            for &t in &ts {
                for &s in &ss {
                    for (pair, (x, xp)) in SEMIGROUP_PAIRS.iter().enumerate() {
                        let p = [("eb0", b), ("m", m), ("t", t), ("s", s), ("pair", pair as f64)];
                        for kind in kinds {
                            let exact = kind.eval(&cfg, t + s, x, xp)?.value();
                            match convolve(kind, &cfg, t, s, x, xp) {
                                Ok(conv) => {
                                    tr.add_evaluations(conv.evaluations);
                                    let err = (conv.value - exact).norm();
                                    tr.record(kind.label(), &p, err, SEMIGROUP_TOL * exact.norm());
                                }
                                Err(e) => tr.fail(kind.label(), &p, e.to_string()),
                            }
                        }
                    }
                }
            }
            for _ in 0..HERMITIAN_SAMPLES {
                let x: Point3 = std::array::from_fn(|_| rng.gen_range(-3.0..3.0));
                let xp: Point3 = std::array::from_fn(|_| rng.gen_range(-3.0..3.0));
                let t = rng.gen_range(0.1..3.0);
                let p = [("eb0", b), ("m", m), ("t", t), ("x1", x[0]), ("x2", x[1]), ("x3", x[2])];
                for kind in kinds {
                    let a = kind.eval(&cfg, t, &x, &xp)?.value();
                    let r = kind.eval(&cfg, t, &xp, &x)?.value();
                    tr.record("hermitian", &p, (a - r.conj()).norm(), HERMITIAN_TOL * a.norm());
                }
            }
        }
    }
    Ok(tr.finish(grid))
}
