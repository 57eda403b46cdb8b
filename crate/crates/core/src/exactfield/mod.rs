//! Exact arithmetic over F_p, F_{p^k} and Q, and the dense linear algebra
//! (row reduction, solving, subspaces) the rest of the crate is built on.

mod enumerate;
mod field;
mod matrix;
mod poly;
mod subspace;
pub mod upoly;

pub use enumerate::{all_vectors, projective_vectors};
pub use field::{ArithOp, FieldError, FieldSpec, Scalar, MAX_EXTENSION_DEGREE, MAX_PRIME};
pub use matrix::{Matrix, Rref};
pub use subspace::{Subspace, SubspaceError};
