use std::f64::consts::PI;

use serde::Serialize;

use super::certificate::{BoundCertificate, Tracker};
use super::grid::{GridAxis, GridSpec};
use crate::error::{domain, Result};
use crate::mehler::{u_coth, FieldConfig};

/// Slack for inequalities between closed-form expressions.
pub const CLOSED_FORM_SLACK: f64 = 1e-12;

/// `z` log-spaced on [1e-6, 50] with 10⁴ points.
pub fn default_hyperbolic_grid() -> GridSpec {
    GridSpec::new(vec![GridAxis::log("z", 1e-6, 50.0, 10_000).expect("valid axis")])
        .expect("valid grid")
}

/// z·e^z / sinh z = 2z / (1 − e^{−2z}).
fn z_exp_over_sinh(z: f64) -> f64 {
    2.0 * z / -(-2.0 * z).exp_m1()
}

/// z / sinh z.
fn z_over_sinh(z: f64) -> f64 {
    if z < 1e-4 {
        let z2 = z * z;
        1.0 / (1.0 + z2 / 6.0 + z2 * z2 / 120.0)
    } else {
        z / z.sinh()
    }
}

/// The elementary bounds z coth z ≤ 1 + z, sinh z ≥ z, z coth z ≥ 1 and
/// z e^z / sinh z ≤ 1 + 2z on the `z` axis.
pub fn certify_hyperbolic(grid: &GridSpec) -> Result<BoundCertificate> {
    grid.only(&["z"])?;
    let zs = grid.samples("z")?;
    if let Some(bad) = zs.iter().find(|z| !(**z > 0.0)) {
        return Err(domain(format!("hyperbolic grid must be positive, got {bad}")));
    }
    let mut t = Tracker::new("hyperbolic", CLOSED_FORM_SLACK);
    for &z in &zs {
        let p = [("z", z)];
        let zc = u_coth(z);
        t.record("zcoth_le_1_plus_z", &p, zc, 1.0 + z);
        t.record("sinh_ge_z", &p, z_over_sinh(z), 1.0);
        t.record("zcoth_ge_1", &p, 1.0, zc);
        t.record("zexp_over_sinh_le_1_plus_2z", &p, z_exp_over_sinh(z), 1.0 + 2.0 * z);
    }
    Ok(t.finish(grid.clone()))
}

/// Closed-form spectral constants of the two-electron problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingConstants {
    /// Critical coupling 2/π − e².
    pub gamma_c: f64,
    /// π(γ + e²)√(eB₀).
    pub c1_of_b0: f64,
    /// m² / (m² + eB₀), taken as 1 when m = eB₀ = 0.
    pub delta_m_lower: f64,
    /// Coulomb coupling γ = Ze².
    pub gamma: f64,
    pub supercritical: bool,
    /// eB₀ / (m² + eB₀), the bound on S_mS_m*.
    pub sm_bound: f64,
}

pub fn coupling_constants(cfg: &FieldConfig, gamma: f64) -> Result<CouplingConstants> {
    if !(gamma >= 0.0) || !gamma.is_finite() {
        return Err(domain(format!("Coulomb coupling must be finite and ≥ 0, got {gamma}")));
    }
    let e2 = cfg.e2();
    let gamma_c = 2.0 / PI - e2;
    let eb0 = cfg.eb0();
    let m2 = cfg.m() * cfg.m();
    let denom = m2 + eb0;
    let (delta_m_lower, sm_bound) = if denom == 0.0 {
        (1.0, 0.0)
    } else {
        (m2 / denom, eb0 / denom)
    };
    Ok(CouplingConstants {
        gamma_c,
        c1_of_b0: PI * (gamma + e2) * eb0.sqrt(),
        delta_m_lower,
        gamma,
        supercritical: gamma >= gamma_c,
        sm_bound,
    })
}

/// `m` log on [1e-3, 1e3] and `eb0` = 0 plus log on [1e-6, 1e6].
pub fn default_sm_grid() -> GridSpec {
    let mut eb0 = vec![0.0];
    eb0.extend(GridAxis::log("eb0", 1e-6, 1e6, 60).expect("valid axis").samples());
    GridSpec::new(vec![
        GridAxis::log("m", 1e-3, 1e3, 60).expect("valid axis"),
        GridAxis::values("eb0", &eb0).expect("valid axis"),
    ])
    .expect("valid grid")
}

/// eB₀/(m² + eB₀) < 1 and 0 < m²/(m² + eB₀) ≤ 1 with equality iff eB₀ = 0,
/// over `m` (> 0) and `eb0` (≥ 0).
pub fn certify_sm_bound(grid: &GridSpec) -> Result<BoundCertificate> {
    grid.only(&["m", "eb0"])?;
    let ms = grid.samples("m")?;
    let bs = grid.samples("eb0")?;
    if ms.iter().any(|m| !(*m > 0.0)) || bs.iter().any(|b| !(*b >= 0.0)) {
        return Err(domain("sm-bound grid needs m > 0 and eb0 ≥ 0"));
    }
    let mut t = Tracker::new("sm_bound", 0.0);
    for &m in &ms {
        for &b in &bs {
            let p = [("m", m), ("eb0", b)];
            let cfg = FieldConfig::from_eb0(b, m)?;
            let c = coupling_constants(&cfg, 0.0)?;
            // Strict: a ratio of exactly 1 is pushed past the slack.
            let sm = if c.sm_bound < 1.0 { c.sm_bound } else { f64::INFINITY };
            t.record("sm_lt_1", &p, sm, 1.0);
            t.record("delta_le_1", &p, c.delta_m_lower, 1.0);
            let positive = if c.delta_m_lower > 0.0 { 0.0 } else { f64::INFINITY };
            t.record("delta_positive", &p, positive, 1.0);
            let unit_iff_free = if (c.delta_m_lower == 1.0) == (b == 0.0) {
                0.0
            } else {
                f64::INFINITY
            };
            t.record("delta_unit_iff_free", &p, unit_iff_free, 1.0);
        }
    }
    Ok(t.finish(grid.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_default_passes() {
        let c = certify_hyperbolic(&default_hyperbolic_grid()).unwrap();
        assert!(c.pass, "{:?}", c.worst_point);
        assert_eq!(c.checks, 40_000);
    }

    #[test]
    fn coth_at_one() {
        assert!(u_coth(1.0) <= 2.0);
        assert!((u_coth(1.0) - 1.313_035_285_499_331).abs() < 1e-14);
    }

    #[test]
    fn constants_values() {
        let cfg = FieldConfig::with_default_coupling(0.0, 1.0).unwrap();
        let c = coupling_constants(&cfg, 0.5).unwrap();
        assert!((c.gamma_c - 0.629).abs() < 5e-4);
        assert!(!c.supercritical);
        assert_eq!(c.c1_of_b0, 0.0);
        assert_eq!(c.delta_m_lower, 1.0);
        let cfg = FieldConfig::from_eb0(1.0, 1.0).unwrap();
        assert_eq!(coupling_constants(&cfg, 0.0).unwrap().delta_m_lower, 0.5);
        assert!(coupling_constants(&cfg, -1.0).is_err());
        assert!(coupling_constants(&cfg, 0.7).unwrap().supercritical);
    }

    #[test]
    fn sm_bound_default_passes() {
        let c = certify_sm_bound(&default_sm_grid()).unwrap();
        assert!(c.pass, "{:?}", c.components);
    }
}
