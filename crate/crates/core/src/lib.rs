//! Exact Wedderburn-Artin decomposition of finite-dimensional algebras.
//!
//! Given an associative unital algebra `R` over F_p, F_{p^k} or Q by its
//! structure constants, [`wedderburn::decompose`] either produces matrix
//! units and an explicit isomorphism `R ≅ M_n(D)` with `D` a division
//! ring, or a pair of nonzero elements `a, b` with `aRb = 0` proving that
//! `R` is not prime. Every result is re-checked by the independent
//! verifiers in [`certify`] before it is returned.

pub mod algebra;
pub mod certify;
pub mod cli;
pub mod exactfield;
pub mod ideals;
pub mod io;
pub mod wedderburn;
