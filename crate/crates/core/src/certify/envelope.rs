use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use super::certificate::{BoundCertificate, Coordinates, Tracker};
use super::grid::{GridAxis, GridSpec};
use super::par_map;
use crate::ekernel::{ea_bound_b9, ea_kernel, Displacement};
use crate::error::{domain, Error, Result};
use crate::mehler::{FieldConfig, SpinChannel};

/// Slack of quadrature-backed inequalities.
pub const QUADRATURE_SLACK: f64 = 1e-6;
/// Relative tolerance of each kernel quadrature in the envelope sweep.
pub const ENVELOPE_QUAD_TOL: f64 = 1e-8;

/// `m` ∈ {0.5, 1, 2} and `eb0` ∈ {0, 0.5, 1, 5}.
pub fn default_envelope_cfg_grid() -> GridSpec {
    GridSpec::new(vec![
        GridAxis::values("m", &[0.5, 1.0, 2.0]).expect("valid axis"),
        GridAxis::values("eb0", &[0.0, 0.5, 1.0, 5.0]).expect("valid axis"),
    ])
    .expect("valid grid")
}

/// `r` log on [0.05, 10] with 60 points and polar angles {0, π/4, π/2}.
pub fn default_envelope_r_grid() -> GridSpec {
    GridSpec::new(vec![
        GridAxis::log("r", 0.05, 10.0, 60).expect("valid axis"),
        GridAxis::values("theta", &[0.0, FRAC_PI_4, FRAC_PI_2]).expect("valid axis"),
    ])
    .expect("valid grid")
}

struct Sample {
    m: f64,
    b: f64,
    r: f64,
    theta: f64,
    spin: SpinChannel,
}

struct Outcome {
    kernel: Result<(f64, usize)>,
    bound: f64,
}

/// |E_A(z')| ≤ C(B₀) e^{-(m/2)r} / r⁴ in both spin channels, with the
/// empirical C(B₀) = sup |E_A| r⁴ e^{(m/2)r} reported per (m, eB₀).
pub fn certify_ea_envelope(
    cfg_grid: &GridSpec,
    r_grid: &GridSpec,
    jobs: usize,
) -> Result<BoundCertificate> {
    cfg_grid.only(&["m", "eb0"])?;
    r_grid.only(&["r", "theta"])?;
    let grid = cfg_grid.merged(r_grid)?;
    let ms = cfg_grid.samples("m")?;
    let bs = cfg_grid.samples("eb0")?;
    let rs = r_grid.samples("r")?;
    let thetas = r_grid.samples_or("theta", &[FRAC_PI_2]);
    if ms.iter().any(|m| !(*m > 0.0)) {
        return Err(Error::UnsupportedMass);
    }
    if rs.iter().any(|r| !(*r > 0.0)) {
        return Err(domain("envelope radii must be positive"));
    }
    let mut samples = Vec::new();
    for &m in &ms {
        for &b in &bs {
            for &r in &rs {
                for &theta in &thetas {
                    for spin in SpinChannel::BOTH {
                        samples.push(Sample { m, b, r, theta, spin });
                    }
                }
            }
        }
    }
    let outcomes = par_map(&samples, jobs, |s| -> Result<Outcome> {
        let cfg = FieldConfig::from_eb0(s.b, s.m)?;
        let d = Displacement::polar(s.r, s.theta, 0.0)?;
        let kernel = ea_kernel(&cfg, s.spin, &d, ENVELOPE_QUAD_TOL).map(|q| (q.value, q.evaluations));
        Ok(Outcome {
            kernel,
            bound: ea_bound_b9(&cfg, s.r)?,
        })
    });
    let mut tr = Tracker::new("ea_envelope", QUADRATURE_SLACK);
    let mut slice: Option<(f64, f64, f64, Coordinates)> = None;
    for (s, out) in samples.iter().zip(outcomes) {
        let out = out?;
        if slice.as_ref().is_some_and(|(m, b, _, _)| (*m, *b) != (s.m, s.b)) {
            let (m, b, c, at) = slice.take().expect("slice present");
            tr.constant(&[("m", m), ("eb0", b)], c, at);
        }
        let p = [
            ("m", s.m),
            ("eb0", s.b),
            ("r", s.r),
            ("theta", s.theta),
            ("spin", s.spin.sign()),
        ];
        let entry = slice.get_or_insert((s.m, s.b, 0.0, Coordinates::default()));
        match out.kernel {
            Ok((value, evals)) => {
                tr.add_evaluations(evals);
                tr.record("ea_le_b9", &p, value.abs(), out.bound);
                let scaled = value.abs() * s.r.powi(4) * (0.5 * s.m * s.r).exp();
                if scaled > entry.2 {
                    entry.2 = scaled;
                    entry.3 = Coordinates::new(&p);
                }
            }
            Err(e) => tr.fail("ea_le_b9", &p, e.to_string()),
        }
    }
    if let Some((m, b, c, at)) = slice {
        tr.constant(&[("m", m), ("eb0", b)], c, at);
    }
    Ok(tr.finish(grid))
}

/// Trend of the empirical C(B₀) of an envelope certificate: nondecreasing
/// in eB₀ for each m, and no faster than quadratic between successive
/// positive eB₀, i.e. ln(C₂/C₁) ≤ 2 ln(b₂/b₁).
pub fn envelope_trend(envelope: &BoundCertificate) -> Result<BoundCertificate> {
    let mut rows: Vec<(f64, f64, f64)> = Vec::new();
    for c in &envelope.constants {
        let (Some(m), Some(b)) = (c.params.get("m"), c.params.get("eb0")) else {
            return Err(domain("envelope constants need m and eb0 parameters"));
        };
        rows.push((m, b, c.value));
    }
    rows.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    let mut tr = Tracker::new("ea_envelope_trend", 0.0);
    for w in rows.windows(2) {
        let ((m1, b1, c1), (m2, b2, c2)) = (w[0], w[1]);
        if m1 != m2 {
            continue;
        }
        let p = [("m", m1), ("eb0_lo", b1), ("eb0_hi", b2)];
        tr.record("nondecreasing", &p, c1, c2);
        if b1 > 0.0 && c1 > 0.0 && c2 > 0.0 {
            let growth = (c2 / c1).ln().max(0.0);
            tr.record("at_most_quadratic", &p, growth, 2.0 * (b2 / b1).ln());
        }
    }
    Ok(tr.finish(envelope.grid.clone()))
}
