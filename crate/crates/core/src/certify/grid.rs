use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Spacing of a range axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[serde(rename = "lin")]
    Linear,
    Log,
}

/// Sample points along one named axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AxisPoints {
    Range {
        min: f64,
        max: f64,
        count: usize,
        spacing: Spacing,
    },
    Values { values: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridAxis {
    pub name: String,
    #[serde(flatten)]
    pub points: AxisPoints,
}

fn grid_err(msg: impl Into<String>) -> Error {
    Error::Grid(msg.into())
}

fn check_name(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(())
    } else {
        Err(grid_err(format!("invalid axis name {name:?}")))
    }
}

impl GridAxis {
    pub fn linear(name: &str, min: f64, max: f64, count: usize) -> Result<Self> {
        Self::range(name, min, max, count, Spacing::Linear)
    }

    pub fn log(name: &str, min: f64, max: f64, count: usize) -> Result<Self> {
        Self::range(name, min, max, count, Spacing::Log)
    }

    pub fn range(name: &str, min: f64, max: f64, count: usize, spacing: Spacing) -> Result<Self> {
        check_name(name)?;
        if count < 2 {
            return Err(grid_err(format!("axis {name} needs at least 2 points")));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(grid_err(format!("axis {name} needs finite min < max")));
        }
        if spacing == Spacing::Log && !(min > 0.0) {
            return Err(grid_err(format!("log axis {name} needs min > 0")));
        }
        Ok(Self {
            name: name.to_string(),
            points: AxisPoints::Range {
                min,
                max,
                count,
                spacing,
            },
        })
    }

    pub fn values(name: &str, values: &[f64]) -> Result<Self> {
        check_name(name)?;
        if values.is_empty() || !values.iter().all(|v| v.is_finite()) {
            return Err(grid_err(format!("axis {name} needs finite values")));
        }
        Ok(Self {
            name: name.to_string(),
            points: AxisPoints::Values {
                values: values.to_vec(),
            },
        })
    }

    pub fn len(&self) -> usize {
        match &self.points {
            AxisPoints::Range { count, .. } => *count,
            AxisPoints::Values { values } => values.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The sample values, endpoints included exactly.
    pub fn samples(&self) -> Vec<f64> {
        match &self.points {
            AxisPoints::Values { values } => values.clone(),
            &AxisPoints::Range {
                min,
                max,
                count,
                spacing,
            } => {
                let last = (count - 1) as f64;
                (0..count)
                    .map(|i| {
                        if i == 0 {
                            return min;
                        }
                        if i == count - 1 {
                            return max;
                        }
                        let f = i as f64 / last;
                        match spacing {
                            Spacing::Linear => min + (max - min) * f,
                            Spacing::Log => (min.ln() + (max.ln() - min.ln()) * f).exp(),
                        }
                    })
                    .collect()
            }
        }
    }
}

/// `name:min:max:count:lin|log` or `name=v1,v2,...`.
impl FromStr for GridAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some((name, list)) = s.split_once('=') {
            let values = list
                .split(',')
                .map(|v| v.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| grid_err(format!("bad value list in {s:?}")))?;
            return Self::values(name.trim(), &values);
        }
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let [name, min, max, count, spacing] = parts[..] else {
            return Err(grid_err(format!("expected name:min:max:count:lin|log, got {s:?}")));
        };
        let num = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| grid_err(format!("bad number {v:?} in {s:?}")))
        };
        let count = count
            .parse::<usize>()
            .map_err(|_| grid_err(format!("bad count {count:?} in {s:?}")))?;
        let spacing = match spacing {
            "lin" => Spacing::Linear,
            "log" => Spacing::Log,
            other => return Err(grid_err(format!("spacing must be lin or log, got {other:?}"))),
        };
        Self::range(name, num(min)?, num(max)?, count, spacing)
    }
}

impl fmt::Display for GridAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.points {
            AxisPoints::Range {
                min,
                max,
                count,
                spacing,
            } => {
                let sp = match spacing {
                    Spacing::Linear => "lin",
                    Spacing::Log => "log",
                };
                write!(f, "{}:{min}:{max}:{count}:{sp}", self.name)
            }
            AxisPoints::Values { values } => {
                let list: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                write!(f, "{}={}", self.name, list.join(","))
            }
        }
    }
}

/// Cartesian product of named axes plus the seed for randomized samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub axes: Vec<GridAxis>,
    pub seed: u64,
}

/// Seed used when a grid does not specify one.
pub const DEFAULT_SEED: u64 = 0x6d61_676b_6572_6e00;

impl GridSpec {
    pub fn new(axes: Vec<GridAxis>) -> Result<Self> {
        Self::with_seed(axes, DEFAULT_SEED)
    }

    pub fn with_seed(axes: Vec<GridAxis>, seed: u64) -> Result<Self> {
        for (i, a) in axes.iter().enumerate() {
            if axes[..i].iter().any(|b| b.name == a.name) {
                return Err(grid_err(format!("duplicate axis {}", a.name)));
            }
        }
        Ok(Self { axes, seed })
    }

    /// Parse axes written in the command-line grammar.
    pub fn parse<S: AsRef<str>>(axes: &[S], seed: u64) -> Result<Self> {
        let axes = axes
            .iter()
            .map(|s| s.as_ref().parse())
            .collect::<Result<Vec<GridAxis>>>()?;
        Self::with_seed(axes, seed)
    }

    pub fn axis(&self, name: &str) -> Option<&GridAxis> {
        self.axes.iter().find(|a| a.name == name)
    }

    /// Samples along `name`, or an error naming the missing axis.
    pub fn samples(&self, name: &str) -> Result<Vec<f64>> {
        self.axis(name)
            .map(GridAxis::samples)
            .ok_or_else(|| grid_err(format!("grid has no axis {name:?}")))
    }

    /// Samples along `name`, or `fallback` when the axis is absent.
    pub fn samples_or(&self, name: &str, fallback: &[f64]) -> Vec<f64> {
        self.axis(name)
            .map(GridAxis::samples)
            .unwrap_or_else(|| fallback.to_vec())
    }

    /// Reject axes a certificate does not understand.
    pub fn only(&self, allowed: &[&str]) -> Result<()> {
        match self.axes.iter().find(|a| !allowed.contains(&a.name.as_str())) {
            Some(a) => Err(grid_err(format!(
                "unexpected axis {:?}; expected one of {allowed:?}",
                a.name
            ))),
            None => Ok(()),
        }
    }

    /// Concatenate the axes of two grids, keeping this grid's seed.
    pub fn merged(&self, other: &GridSpec) -> Result<Self> {
        let mut axes = self.axes.clone();
        axes.extend(other.axes.iter().cloned());
        Self::with_seed(axes, self.seed)
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(GridAxis::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All grid points in row-major order (last axis fastest).
    pub fn points(&self) -> Vec<Vec<f64>> {
        let samples: Vec<Vec<f64>> = self.axes.iter().map(GridAxis::samples).collect();
        let mut out = vec![Vec::with_capacity(samples.len())];
        for axis in &samples {
            let mut next = Vec::with_capacity(out.len() * axis.len());
            for prefix in &out {
                for &v in axis {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }

    pub fn names(&self) -> Vec<&str> {
        self.axes.iter().map(|a| a.name.as_str()).collect()
    }
}
