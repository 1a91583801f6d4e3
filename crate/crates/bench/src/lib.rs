//! Shared fixtures for the `magkern` benchmarks.

use magkern::ekernel::Displacement;
use magkern::mehler::FieldConfig;

/// (eB₀, m) pairs spanning weak to strong fields.
pub const FIELDS: [(f64, f64); 3] = [(0.0, 1.0), (1.0, 1.0), (5.0, 0.5)];

/// Separations from the short-distance regime to the exponential tail.
pub const RADII: [f64; 4] = [0.05, 0.5, 2.0, 10.0];

pub fn field(eb0: f64, m: f64) -> FieldConfig {
    FieldConfig::from_eb0(eb0, m).expect("fixture field is valid")
}

/// A separation of length r at 60° to the field.
pub fn tilted(r: f64) -> Displacement {
    Displacement::polar(r, std::f64::consts::FRAC_PI_3, 0.3).expect("fixture displacement is finite")
}

pub fn label(eb0: f64, m: f64) -> String {
    format!("eb0={eb0},m={m}")
}
