//! Magnetic heat kernels, the relativistic kernel envelopes built from them,
//! and grid certification of the inequalities they satisfy.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod certify;
pub mod ekernel;
pub mod error;
pub mod mehler;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
pub use mehler::{FieldConfig, KernelValue, Point3, SpinChannel};
pub use quad::QuadratureResult;
