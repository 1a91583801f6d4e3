use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{Map, Value as Json};

/// One cell of a result row.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Complex(Complex64),
    Int(u64),
    Bool(bool),
    Text(String),
}

/// A named, ordered result row.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Row(pub Vec<(String, Value)>);

impl Row {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn real(mut self, name: &str, v: f64) -> Self {
        self.0.push((name.into(), Value::Real(v)));
        self
    }

    pub fn complex(mut self, name: &str, v: Complex64) -> Self {
        self.0.push((name.into(), Value::Complex(v)));
        self
    }

    pub fn int(mut self, name: &str, v: usize) -> Self {
        self.0.push((name.into(), Value::Int(v as u64)));
        self
    }

    pub fn flag(mut self, name: &str, v: bool) -> Self {
        self.0.push((name.into(), Value::Bool(v)));
        self
    }

    pub fn text(mut self, name: &str, v: &str) -> Self {
        self.0.push((name.into(), Value::Text(v.into())));
        self
    }

    /// Prepend cells, keeping their order.
    pub fn prefixed(self, head: Row) -> Row {
        let mut cells = head.0;
        cells.extend(self.0);
        Row(cells)
    }

    /// Column names with complex cells split into `re_*` and `im_*`.
    pub fn columns(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, v) in &self.0 {
            match v {
                Value::Complex(_) => {
                    out.push(format!("re_{name}"));
                    out.push(format!("im_{name}"));
                }
                _ => out.push(name.clone()),
            }
        }
        out
    }

    pub fn csv_cells(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (_, v) in &self.0 {
            match v {
                Value::Real(x) => out.push(float(*x)),
                Value::Complex(z) => {
                    out.push(float(z.re));
                    out.push(float(z.im));
                }
                Value::Int(n) => out.push(n.to_string()),
                Value::Bool(b) => out.push(b.to_string()),
                Value::Text(s) => out.push(s.clone()),
            }
        }
        out
    }

    pub fn to_json(&self) -> Json {
        let mut map = Map::new();
        for (name, v) in &self.0 {
            match v {
                Value::Real(x) => {
                    map.insert(name.clone(), json_float(*x));
                }
                Value::Complex(z) => {
                    map.insert(format!("re_{name}"), json_float(z.re));
                    map.insert(format!("im_{name}"), json_float(z.im));
                }
                Value::Int(n) => {
                    map.insert(name.clone(), Json::from(*n));
                }
                Value::Bool(b) => {
                    map.insert(name.clone(), Json::Bool(*b));
                }
                Value::Text(s) => {
                    map.insert(name.clone(), Json::String(s.clone()));
                }
            }
        }
        Json::Object(map)
    }
}

/// 17 significant digits, enough to reproduce every double exactly.
fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// Non-finite values are written as the strings "inf", "-inf" and "NaN".
fn json_float(x: f64) -> Json {
    serde_json::Number::from_f64(x)
        .map(Json::Number)
        .unwrap_or_else(|| Json::String(x.to_string()))
}

/// Everything one invocation emits.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub target: String,
    pub params: Json,
    pub results: Vec<Row>,
    pub certificate: Option<Json>,
    pub runtime_ms: f64,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    target: &'a str,
    params: &'a Json,
    results: Vec<Json>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: &'a Option<Json>,
    runtime_ms: f64,
}

impl Report {
    pub fn to_json(&self) -> Json {
        let r = JsonReport {
            target: &self.target,
            params: &self.params,
            results: self.results.iter().map(Row::to_json).collect(),
            certificate: &self.certificate,
            runtime_ms: self.runtime_ms,
        };
        serde_json::to_value(r).expect("report serializes")
    }

    pub fn write_json(&self, w: &mut dyn Write) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut *w, &self.to_json())?;
        writeln!(w)
    }

    pub fn write_csv(&self, w: &mut dyn Write) -> std::io::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        if let Some(first) = self.results.first() {
            out.write_record(first.columns())?;
        }
        for row in &self.results {
            out.write_record(row.csv_cells())?;
        }
        out.flush()
    }
}
