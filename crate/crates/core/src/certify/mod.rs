//! Grid certification of the kernel inequalities and integral identities.
//!
//! Every certificate is a deterministic function of its grids: sampling is
//! serial or order-preserving, randomized spot checks draw from a ChaCha
//! stream seeded by [`GridSpec::seed`], and worst cases are the first
//! maximum in grid order.

mod certificate;
mod envelope;
mod grid;
mod identities;
mod kernels;
mod scalar;

pub use certificate::{BoundCertificate, ComponentSummary, Coordinates, EmpiricalConstant, Failure};
pub use envelope::{
    certify_ea_envelope, default_envelope_cfg_grid, default_envelope_r_grid, envelope_trend,
    ENVELOPE_QUAD_TOL, QUADRATURE_SLACK,
};
pub use grid::{AxisPoints, GridAxis, GridSpec, Spacing, DEFAULT_SEED};
pub use identities::verify_identities;
pub use kernels::{
    certify_diamagnetic, certify_semigroup, default_diamagnetic_cfg_grid,
    default_diamagnetic_space_grid, default_semigroup_cfg_grid, default_semigroup_time_grid,
    SEMIGROUP_TOL,
};
pub use scalar::{
    certify_hyperbolic, certify_sm_bound, coupling_constants, default_hyperbolic_grid,
    default_sm_grid, CouplingConstants, CLOSED_FORM_SLACK,
};

/// Map `f` over `items` on up to `jobs` threads, returning results in input order.
pub fn par_map<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let jobs = jobs.clamp(1, items.len().max(1));
    if jobs == 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| scope.spawn(|| part.iter().map(&f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}
