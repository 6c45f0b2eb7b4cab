//! Exact computations on maximal-chain invariants of small Lie algebras.

pub mod algebra;
pub mod catalog;
pub mod claims;
pub mod error;
pub mod fields;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod report;
pub mod structural;
pub mod verify;

pub use algebra::LieAlgebra;
pub use error::{Error, Result};
pub use fields::{FieldSpec, Scalar};
pub use linalg::{Matrix, Subspace};
