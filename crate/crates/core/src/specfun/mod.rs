//! Double-precision special functions used by the kernel formulas.
//!
//! | Function | |
//! |----------|--|
//! | [`bessel_k`] | modified Bessel K_ν(z), ν ≥ 0 |
//! | [`bessel_j`] | Bessel J_ν(z), ν ∈ {1, 3/2} |
//! | [`gamma_fn`] | Γ(x), x > 0 |
//! | [`gauss_2f1`] | ₂F₁(a, b; c; x), 0 ≤ x ≤ 1 |
//!
//! All functions are pure.

mod bessel_j;
mod bessel_k;
mod gamma;
mod hyp2f1;

pub use bessel_j::bessel_j;
pub use bessel_k::{
    bessel_k, bessel_k_eval, bessel_k_scaled, bessel_k_sequence, BesselKValue, BesselOrder,
};
pub use gamma::{gamma_fn, GAMMA_MAX_ARG};
pub use hyp2f1::gauss_2f1;

pub(crate) use bessel_j::{bessel_j1, bessel_j3_2};

/// K_ν(z) for an order known to be valid.
pub(crate) fn k(nu: f64, z: f64) -> crate::Result<f64> {
    bessel_k(BesselOrder::new(nu)?, z)
}
