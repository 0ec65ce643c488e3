//! Exact Smith normal forms of combinatorial incidence matrices, the
//! closed-form predictors that describe them, and the enumeration machinery
//! (finite fields, subspaces, subsets, abelian groups) that generates them.
//!
//! `no_std` with `alloc`. Wall-clock limits are injected through
//! [`smith::Budget`].

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cayley;
pub mod divisors;
pub mod error;
pub mod field;
pub mod formulas;
pub mod incidence;
pub mod matrix;
pub mod minors;
pub mod smith;
pub mod subspace;

pub use divisors::{
    diagonal_form_to_invariant_factors, elementary_divisor_profile, DiagonalFormPrediction, ElementaryDivisorProfile,
    Locality,
};
pub use error::{Error, Result};
pub use field::{field_tables, FieldTables, PrimePower};
pub use incidence::{build, IncidenceSpec};
pub use matrix::IntegerMatrix;
pub use minors::invariant_factors_via_minor_gcds;
pub use smith::{smith_normal_form, smith_normal_form_with, verify_equivalence, Budget, SmithDecomposition, SnfOptions};
pub use subspace::{enumerate_subspaces, SubspaceRep};
