//! Numerical evaluation of Euler-Riemann and periodic Lerch-Lipschitz zeta functions.
//!
//! Direct series with explicit tail bounds, Hankel-contour continuation of the
//! k-periodic cut to all of `C`, residues and monodromies, and vectorial Taylor
//! continuation in the sequence variable at a finite truncation window.

// `!(x > 0.0)` rejects NaN along with nonpositive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod contour;
pub mod error;
pub mod exec;
pub mod gamma;
pub mod grid;
pub mod num;
pub mod params;
pub mod quad;
pub mod seqspace;
pub mod series;
pub mod taylor;
pub mod verify;

pub use error::{Result, ZetaError};
pub use exec::Execution;
pub use num_complex::Complex64;
pub use params::{BranchRecord, EvalResult, Method, Param, PeriodicParams};
