use magkern::certify::*;
use magkern::{Error, Result};
use serde_json::{json, Value as Json};

use crate::args::CertTarget;
use crate::report::Row;

/// Outcome of a certify or verify run.
pub struct CertRun {
    pub pass: bool,
    pub rows: Vec<Row>,
    pub certificate: Json,
    pub params: Json,
}

/// Default grids of a target with axes replaced by the user's, by name.
fn resolve(defaults: Vec<GridSpec>, user: &[String], seed: Option<u64>) -> Result<Vec<GridSpec>> {
    let user = GridSpec::parse(user, 0)?;
    for a in &user.axes {
        if !defaults.iter().any(|g| g.axis(&a.name).is_some()) {
            let known: Vec<&str> = defaults.iter().flat_map(|g| g.names()).collect();
            return Err(Error::Grid(format!(
                "axis {:?} not used by this certificate; expected one of {known:?}",
                a.name
            )));
        }
    }
    defaults
        .into_iter()
        .map(|g| {
            let axes = g
                .axes
                .iter()
                .map(|a| user.axis(&a.name).unwrap_or(a).clone())
                .collect();
            GridSpec::with_seed(axes, seed.unwrap_or(g.seed))
        })
        .collect()
}

pub fn component_rows(c: &BoundCertificate) -> Vec<Row> {
    c.components
        .iter()
        .map(|s| {
            Row::new()
                .text("certificate", &c.name)
                .text("component", &s.name)
                .int("checks", s.checks)
                .real("worst_ratio", s.worst_ratio)
                .real("lhs", s.lhs)
                .real("rhs", s.rhs)
                .flag("pass", c.pass)
        })
        .collect()
}

fn to_json(c: &BoundCertificate) -> Json {
    serde_json::to_value(c).expect("certificate serializes")
}

pub fn certify(target: CertTarget, user: &[String], seed: Option<u64>, jobs: usize) -> Result<CertRun> {
    use CertTarget::*;
    let defaults = match target {
        Hyperbolic => vec![default_hyperbolic_grid()],
        Diamagnetic => vec![default_diamagnetic_cfg_grid(), default_diamagnetic_space_grid()],
        Semigroup => vec![default_semigroup_cfg_grid(), default_semigroup_time_grid()],
        EaEnvelope | EaEnvelopeTrend => vec![default_envelope_cfg_grid(), default_envelope_r_grid()],
        SmBound => vec![default_sm_grid()],
    };
    let g = resolve(defaults, user, seed)?;
    let params = json!({
        "grid": g.iter().flat_map(|s| s.axes.iter().map(|a| a.to_string())).collect::<Vec<_>>(),
        "seed": g[0].seed,
        "jobs": jobs,
    });
    let (cert, extra_pass) = match target {
        Hyperbolic => (certify_hyperbolic(&g[0])?, true),
        Diamagnetic => (certify_diamagnetic(&g[0], &g[1])?, true),
        Semigroup => (certify_semigroup(&g[0], &g[1])?, true),
        EaEnvelope => (certify_ea_envelope(&g[0], &g[1], jobs)?, true),
        EaEnvelopeTrend => {
            let env = certify_ea_envelope(&g[0], &g[1], jobs)?;
            (envelope_trend(&env)?, env.pass)
        }
        SmBound => (certify_sm_bound(&g[0])?, true),
    };
    Ok(CertRun {
        pass: cert.pass && extra_pass,
        rows: component_rows(&cert),
        certificate: to_json(&cert),
        params,
    })
}

pub fn verify(tol: f64) -> Result<CertRun> {
    let certs = verify_identities(tol)?;
    let rows = certs
        .iter()
        .map(|c| {
            Row::new()
                .text("identity", &c.name)
                .int("checks", c.checks)
                .real("worst_ratio", c.worst_ratio)
                .flag("complete", c.complete)
                .flag("pass", c.pass)
        })
        .collect();
    Ok(CertRun {
        pass: certs.iter().all(|c| c.pass),
        rows,
        certificate: Json::Array(certs.iter().map(to_json).collect()),
        params: json!({ "tol": tol }),
    })
}
