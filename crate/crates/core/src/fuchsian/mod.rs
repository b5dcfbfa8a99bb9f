//! Exact 2×2 matrices over Q(√2) and Z, the once-punctured torus representation,
//! lengths, axes, and the Lobachevsky function.

mod length;
mod lobachevsky;
mod matrix;
mod rep;
mod ring;

pub use length::{
    axis_endpoints, classify_trace, length_from_ln_trace, trace_length, translation_length, AxisData, Endpoint,
};
pub use lobachevsky::{integrate, lobachevsky, lobachevsky_series, v3};
pub use matrix::{ExactMatrix, IntMatrix, Mat2, Mat2f};
pub use rep::{rho_eval, Representation};
pub use ring::{Ring, RingElem};

use crate::words::Gen;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FuchsianError {
    #[error("parabolic element (|trace| = 2)")]
    Parabolic,
    #[error("elliptic element (|trace| < 2)")]
    Elliptic,
    #[error("generator {0:?} has no image under the representation")]
    ForeignGenerator(Gen),
    #[error("matrix does not have determinant 1")]
    NotUnimodular,
}
