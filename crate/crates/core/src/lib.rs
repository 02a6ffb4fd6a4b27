//! Absolute continuity of convolutions of orbital measures in the classical
//! compact simple Lie algebras su(n+1), so(2n+1), sp(n) and so(2n).
//!
//! [`classifier::decide`] gives the verdict from the annihilating-root types
//! of the tuple. Two independent checks back it up: the tangent-space span
//! oracle in [`span_oracle`] (numeric or exact rational) and the sufficient
//! combinatorial criterion in [`wright`].

pub mod classifier;
pub mod error;
pub mod linalg;
pub mod matrix_model;
pub mod par;
pub mod root_system;
pub mod span_oracle;
pub mod wright;

pub use error::{Error, Result};
pub use root_system::Family;
