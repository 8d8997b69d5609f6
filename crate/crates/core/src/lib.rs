//! Exact computations around triangulated categories of projective modules.

#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod dg;
pub mod error;
pub mod genhyp;
pub mod linalg;
pub mod modcat;
pub mod ring;
pub mod scalar;

pub use error::{DgError, GenHypError, ModuleError, RingError};
pub use ring::{GradedRing, Ideal, RingElement, RingSpec};
pub use scalar::{Coeffs, Scalar};
