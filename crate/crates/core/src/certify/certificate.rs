use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use super::grid::GridSpec;

/// Named coordinates of a grid point, serialized as an ordered map.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Coordinates(pub Vec<(String, f64)>);

impl Coordinates {
    pub fn new(pairs: &[(&str, f64)]) -> Self {
        Self(pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect())
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }
}

impl Serialize for Coordinates {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// Worst case of one named check inside a certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentSummary {
    pub name: String,
    pub checks: usize,
    pub worst_ratio: f64,
    pub worst_point: Coordinates,
    pub lhs: f64,
    pub rhs: f64,
}

/// A grid point where a check could not be evaluated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub point: Coordinates,
    pub message: String,
}

/// An empirical constant attached to a slice of the grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalConstant {
    pub params: Coordinates,
    pub value: f64,
    pub attained_at: Coordinates,
}

/// Result of checking an inequality or identity over a grid.
///
/// Each check is a pair (lhs, rhs) with lhs ≥ 0 claimed to satisfy
/// lhs ≤ rhs; the certificate passes when the largest lhs/rhs is at most
/// 1 + slack. Points that could not be evaluated count as ratio ∞ and are
/// listed in `failures`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCertificate {
    pub name: String,
    pub grid: GridSpec,
    pub worst_ratio: f64,
    pub worst_point: Coordinates,
    pub worst_lhs: f64,
    pub worst_rhs: f64,
    pub pass: bool,
    pub slack: f64,
    pub empirical_constant: Option<f64>,
    pub constants: Vec<EmpiricalConstant>,
    pub components: Vec<ComponentSummary>,
    pub checks: usize,
    pub complete: bool,
    pub failures: Vec<Failure>,
    pub evaluations: usize,
}

/// Accumulates checks into a [`BoundCertificate`].
#[derive(Debug)]
pub(crate) struct Tracker {
    name: String,
    slack: f64,
    components: Vec<ComponentSummary>,
    failures: Vec<Failure>,
    constants: Vec<EmpiricalConstant>,
    evaluations: usize,
}

fn ratio(lhs: f64, rhs: f64) -> f64 {
    if lhs.is_nan() || rhs.is_nan() {
        return f64::INFINITY;
    }
    if lhs == 0.0 {
        return 0.0;
    }
    if rhs <= 0.0 {
        return f64::INFINITY;
    }
    lhs / rhs
}

impl Tracker {
    pub fn new(name: &str, slack: f64) -> Self {
        Self {
            name: name.to_string(),
            slack,
            components: Vec::new(),
            failures: Vec::new(),
            constants: Vec::new(),
            evaluations: 0,
        }
    }

    fn component(&mut self, name: &str) -> &mut ComponentSummary {
        let idx = match self.components.iter().position(|c| c.name == name) {
            Some(i) => i,
            None => {
                self.components.push(ComponentSummary {
                    name: name.to_string(),
                    checks: 0,
                    worst_ratio: f64::NEG_INFINITY,
                    worst_point: Coordinates::default(),
                    lhs: 0.0,
                    rhs: 0.0,
                });
                self.components.len() - 1
            }
        };
        &mut self.components[idx]
    }

    /// Record the claim lhs ≤ rhs at `point`. Returns the ratio.
    pub fn record(&mut self, component: &str, point: &[(&str, f64)], lhs: f64, rhs: f64) -> f64 {
        let q = ratio(lhs, rhs);
        let c = self.component(component);
        c.checks += 1;
        if q > c.worst_ratio {
            c.worst_ratio = q;
            c.worst_point = Coordinates::new(point);
            c.lhs = lhs;
            c.rhs = rhs;
        }
        q
    }

    pub fn fail(&mut self, component: &str, point: &[(&str, f64)], message: String) {
        self.record(component, point, f64::NAN, f64::NAN);
        self.failures.push(Failure {
            point: Coordinates::new(point),
            message,
        });
    }

    pub fn add_evaluations(&mut self, n: usize) {
        self.evaluations += n;
    }

    pub fn constant(&mut self, params: &[(&str, f64)], value: f64, attained_at: Coordinates) {
        self.constants.push(EmpiricalConstant {
            params: Coordinates::new(params),
            value,
            attained_at,
        });
    }

    pub fn finish(self, grid: GridSpec) -> BoundCertificate {
        let mut worst: Option<&ComponentSummary> = None;
        for c in &self.components {
            if worst.is_none_or(|w| c.worst_ratio > w.worst_ratio) {
                worst = Some(c);
            }
        }
        let (worst_ratio, worst_point, worst_lhs, worst_rhs) = match worst {
            Some(w) => (w.worst_ratio, w.worst_point.clone(), w.lhs, w.rhs),
            None => (0.0, Coordinates::default(), 0.0, 0.0),
        };
        let checks = self.components.iter().map(|c| c.checks).sum();
        let empirical_constant = self
            .constants
            .iter()
            .map(|c| c.value)
            .reduce(f64::max);
        BoundCertificate {
            name: self.name,
            grid,
            worst_ratio,
            worst_point,
            worst_lhs,
            worst_rhs,
            pass: worst_ratio <= 1.0 + self.slack,
            slack: self.slack,
            empirical_constant,
            constants: self.constants,
            components: self.components,
            checks,
            complete: self.failures.is_empty(),
            failures: self.failures,
            evaluations: self.evaluations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_case_is_first_maximum() {
        let mut t = Tracker::new("t", 0.0);
        t.record("a", &[("x", 1.0)], 1.0, 2.0);
        t.record("a", &[("x", 2.0)], 3.0, 4.0);
        t.record("b", &[("x", 3.0)], 3.0, 4.0);
        let c = t.finish(GridSpec::new(vec![]).unwrap());
        assert_eq!(c.worst_ratio, 0.75);
        assert_eq!(c.worst_point.get("x"), Some(2.0));
        assert!(c.pass && c.complete);
        assert_eq!(c.checks, 3);
    }

    #[test]
    fn failures_make_certificate_fail() {
        let mut t = Tracker::new("t", 1e-6);
        t.record("a", &[("x", 1.0)], 1.0, 2.0);
        t.fail("a", &[("x", 5.0)], "boom".into());
        let c = t.finish(GridSpec::new(vec![]).unwrap());
        assert!(!c.pass && !c.complete);
        assert_eq!(c.worst_ratio, f64::INFINITY);
        assert_eq!(c.failures.len(), 1);
    }

    #[test]
    fn zero_over_zero_is_satisfied() {
        assert_eq!(ratio(0.0, 0.0), 0.0);
        assert_eq!(ratio(1.0, 0.0), f64::INFINITY);
    }
}
