use std::f64::consts::FRAC_PI_2;

use magkern::ekernel::{
    ae_bound_closed_form, ae_bound_integral, ea2_tau_derivative, ea_bound_b9, ea_kernel,
    exp_tea_bound, exp_tea_kernel, sk_closed_form, sk_quadrature, u0_offdiag_bound,
    y_replaced_integral, Axis, Displacement, OmegaVector,
};
use magkern::mehler::{
    ea2_heat_kernel, free_heat_kernel, mehler_hs_kernel, prefactor_bound_a6a, FieldConfig,
    KernelValue, Point3, SpinChannel,
};
use magkern::certify::coupling_constants;
use magkern::specfun::{bessel_j, bessel_k, gamma_fn, gauss_2f1, BesselOrder};
use magkern::{Error, QuadratureResult, Result};
use serde_json::{json, Map, Value as Json};

use crate::args::{EvalTarget, ParamArgs, SpinArg};
use crate::report::Row;

/// Resolved parameters of an evaluation point.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    pub b0: Option<f64>,
    pub eb0: Option<f64>,
    pub m: f64,
    pub e2: f64,
    pub t: f64,
    pub x: Point3,
    pub xp: Option<Point3>,
    pub r: Option<f64>,
    pub theta: Option<f64>,
    pub spin: SpinArg,
    pub gamma: f64,
    pub tol: f64,
    pub omega: Option<[f64; 2]>,
    pub axis: u8,
    pub nu: f64,
    pub arg: f64,
    pub abc: [f64; 3],
}

/// Names a sweep grid may vary.
pub const SWEEP_AXES: &[&str] = &[
    "b0", "eb0", "m", "e2", "t", "r", "theta", "gamma", "tol", "nu", "arg", "x1", "x2", "x3",
    "xp1", "xp2", "xp3", "omega1", "omega2", "spin",
];

impl From<&ParamArgs> for Params {
    fn from(a: &ParamArgs) -> Self {
        Self {
            b0: a.b0,
            eb0: a.eb0,
            m: a.m,
            e2: a.e2,
            t: a.t,
            x: a.x.unwrap_or([0.0; 3]),
            xp: a.xp,
            r: a.r,
            theta: a.theta,
            spin: a.spin,
            gamma: a.gamma,
            tol: a.tol,
            omega: a.omega,
            axis: a.axis,
            nu: a.nu,
            arg: a.arg,
            abc: a.abc.unwrap_or([0.5, 1.5, 2.5]),
        }
    }
}

impl Params {
    /// Set one named parameter; `name` must be in [`SWEEP_AXES`].
    pub fn set(&mut self, name: &str, v: f64) -> Result<()> {
        match name {
            "b0" => self.b0 = Some(v),
            "eb0" => self.eb0 = Some(v),
            "m" => self.m = v,
            "e2" => self.e2 = v,
            "t" => self.t = v,
            "r" => self.r = Some(v),
            "theta" => self.theta = Some(v),
            "gamma" => self.gamma = v,
            "tol" => self.tol = v,
            "nu" => self.nu = v,
            "arg" => self.arg = v,
            "x1" | "x2" | "x3" => {
                let i = (name.as_bytes()[1] - b'1') as usize;
                self.x[i] = v;
            }
            "xp1" | "xp2" | "xp3" => {
                let i = (name.as_bytes()[2] - b'1') as usize;
                let mut p = self.xp.unwrap_or(self.x);
                p[i] = v;
                self.xp = Some(p);
            }
            "omega1" | "omega2" => {
                let mut w = self.omega.unwrap_or([0.0; 2]);
                w[(name.as_bytes()[5] - b'1') as usize] = v;
                self.omega = Some(w);
            }
            "spin" => {
                self.spin = match v {
                    1.0 => SpinArg::Up,
                    -1.0 => SpinArg::Down,
                    _ => return Err(Error::Domain(format!("spin must be 1 or -1, got {v}"))),
                }
            }
            _ => return Err(Error::Grid(format!("cannot sweep {name:?}; expected one of {SWEEP_AXES:?}"))),
        }
        Ok(())
    }

    pub fn field(&self) -> Result<FieldConfig> {
        if !(self.e2 > 0.0) || !self.e2.is_finite() {
            return Err(Error::Domain(format!("e2 must be positive and finite, got {}", self.e2)));
        }
        let e = self.e2.sqrt();
        match (self.b0, self.eb0) {
            (Some(_), Some(_)) => Err(Error::Domain("give either b0 or eb0, not both".into())),
            (_, Some(eb0)) => FieldConfig::from_eb0_with_coupling(eb0, self.m, e),
            (b0, None) => FieldConfig::new(b0.unwrap_or(0.0), self.m, e),
        }
    }

    /// The point x' implied by --xp, or by --r and --theta relative to x.
    pub fn xp(&self) -> Result<Point3> {
        match self.r {
            Some(r) => {
                if !(r >= 0.0) || !r.is_finite() {
                    return Err(Error::Domain(format!("r must be finite and ≥ 0, got {r}")));
                }
                let z = Displacement::polar(r, self.theta.unwrap_or(FRAC_PI_2), 0.0)?.z();
                Ok([self.x[0] + z[0], self.x[1] + z[1], self.x[2] + z[2]])
            }
            None => Ok(self.xp.unwrap_or(self.x)),
        }
    }

    pub fn displacement(&self) -> Result<Displacement> {
        Displacement::between(&self.x, &self.xp()?)
    }

    pub fn separation(&self) -> Result<f64> {
        Ok(self.displacement()?.r())
    }

    pub fn spins(&self) -> &'static [SpinChannel] {
        match self.spin {
            SpinArg::Up => &[SpinChannel::Up],
            SpinArg::Down => &[SpinChannel::Down],
            SpinArg::Both => &SpinChannel::BOTH,
        }
    }

    pub fn to_json(&self) -> Json {
        let mut m = Map::new();
        if let Some(b) = self.b0 {
            m.insert("b0".into(), json!(b));
        }
        if let Some(b) = self.eb0 {
            m.insert("eb0".into(), json!(b));
        }
        m.insert("m".into(), json!(self.m));
        m.insert("e2".into(), json!(self.e2));
        m.insert("t".into(), json!(self.t));
        m.insert("x".into(), json!(self.x));
        if let Ok(xp) = self.xp() {
            m.insert("xp".into(), json!(xp));
        }
        if let Some(r) = self.r {
            m.insert("r".into(), json!(r));
        }
        if let Some(th) = self.theta {
            m.insert("theta".into(), json!(th));
        }
        let spin = match self.spin {
            SpinArg::Up => "up",
            SpinArg::Down => "down",
            SpinArg::Both => "both",
        };
        m.insert("spin".into(), json!(spin));
        m.insert("gamma".into(), json!(self.gamma));
        m.insert("tol".into(), json!(self.tol));
        if let Some(w) = self.omega {
            m.insert("omega".into(), json!(w));
        }
        m.insert("axis".into(), json!(self.axis));
        m.insert("nu".into(), json!(self.nu));
        m.insert("arg".into(), json!(self.arg));
        m.insert("abc".into(), json!(self.abc));
        Json::Object(m)
    }
}

fn kernel_row(k: &KernelValue) -> Row {
    Row::new()
        .complex("value", k.value())
        .complex("translation", k.translation_part)
        .complex("phase", k.gauge_phase)
        .real("modulus", k.modulus())
}

fn quad_row(q: &QuadratureResult) -> Row {
    Row::new()
        .real("value", q.value)
        .real("error_estimate", q.error_estimate)
        .int("evaluations", q.evaluations)
}

fn per_spin(p: &Params, mut f: impl FnMut(SpinChannel) -> Result<Row>) -> Result<Vec<Row>> {
    p.spins()
        .iter()
        .map(|&s| Ok(f(s)?.prefixed(Row::new().real("spin", s.sign()))))
        .collect()
}

fn omega(p: &Params, cfg: &FieldConfig) -> Result<OmegaVector> {
    match p.omega {
        Some([w1, w2]) => OmegaVector::new(w1, w2),
        None => OmegaVector::from_position(cfg, &p.x),
    }
}

/// Evaluate `target` at `p`, one row per spin channel where it applies.
pub fn evaluate(target: EvalTarget, p: &Params) -> Result<Vec<Row>> {
    use EvalTarget::*;
    let single = |row: Row| Ok(vec![row]);
    let value = |v: f64| Ok(vec![Row::new().real("value", v)]);
    match target {
        Constants => {
            let c = coupling_constants(&p.field()?, p.gamma)?;
            single(
                Row::new()
                    .real("gamma_c", c.gamma_c)
                    .real("c1_of_b0", c.c1_of_b0)
                    .real("delta_m_lower", c.delta_m_lower)
                    .real("gamma", c.gamma)
                    .flag("supercritical", c.supercritical)
                    .real("sm_bound", c.sm_bound),
            )
        }
        Mehler => single(kernel_row(&mehler_hs_kernel(&p.field()?, p.t, &p.x, &p.xp()?)?)),
        Ea2 => {
            let (cfg, xp) = (p.field()?, p.xp()?);
            per_spin(p, |s| Ok(kernel_row(&ea2_heat_kernel(&cfg, s, p.t, &p.x, &xp)?)))
        }
        Free => value(free_heat_kernel(p.t, &p.x, &p.xp()?)?),
        A6a => value(prefactor_bound_a6a(&p.field()?, p.t, &p.x, &p.xp()?)?),
        Ea2Deriv => {
            let (cfg, d) = (p.field()?, p.displacement()?);
            per_spin(p, |s| Ok(Row::new().real("value", ea2_tau_derivative(&cfg, s, p.t, &d)?)))
        }
        Ea => {
            let (cfg, d) = (p.field()?, p.displacement()?);
            per_spin(p, |s| Ok(quad_row(&ea_kernel(&cfg, s, &d, p.tol)?)))
        }
        ExpTea => {
            let (cfg, d) = (p.field()?, p.displacement()?);
            per_spin(p, |s| Ok(quad_row(&exp_tea_kernel(&cfg, s, p.t, &d, p.tol)?)))
        }
        B9 => value(ea_bound_b9(&p.field()?, p.separation()?)?),
        ExpTeaBound => value(exp_tea_bound(&p.field()?, p.t, p.separation()?)?),
        U0 => value(u0_offdiag_bound(&p.field()?, p.separation()?)?),
        Ae => single(quad_row(&ae_bound_integral(&p.field()?, p.separation()?, p.tol)?)),
        AeY => single(quad_row(&y_replaced_integral(&p.field()?, p.separation()?, p.tol)?)),
        AeClosed => value(ae_bound_closed_form(&p.field()?, p.separation()?)?),
        Sk => {
            let cfg = p.field()?;
            let v = sk_closed_form(&cfg, Axis::from_index(p.axis)?, &omega(p, &cfg)?)?;
            single(Row::new().complex("value", v))
        }
        SkQuad => {
            let cfg = p.field()?;
            let q = sk_quadrature(&cfg, Axis::from_index(p.axis)?, &omega(p, &cfg)?, p.tol)?;
            single(
                Row::new()
                    .complex("value", q.value)
                    .real("error_estimate", q.error_estimate)
                    .int("evaluations", q.evaluations),
            )
        }
        BesselK => value(bessel_k(BesselOrder::new(p.nu)?, p.arg)?),
        BesselJ => value(bessel_j(BesselOrder::new(p.nu)?, p.arg)?),
        Gamma => value(gamma_fn(p.arg)?),
        Hyp2f1 => value(gauss_2f1(p.abc[0], p.abc[1], p.abc[2], p.arg)?),
    }
}
