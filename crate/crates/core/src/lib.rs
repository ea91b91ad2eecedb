//! Exact linear algebra over small finite fields, specialized to the study of
//! principal-rank (pr) and enhanced-principal-rank (epr) sequences of symmetric
//! matrices, together with the machinery built on top of them: sequence-form
//! catalogs, exhaustive attainability enumeration, Ramsey-style structural
//! checks, and the minimum-distance bound for linear codes via `epr(HᵀH)`.

pub mod codes;
pub mod constructions;
pub mod enumerate;
pub mod epr;
pub mod error;
pub mod field;
pub mod matrix;
pub mod pattern;
pub mod theorems;

pub use epr::{EprSequence, Letter, PrSequence};
pub use error::Error;
pub use field::{FieldElement, FieldSpec};
pub use matrix::{IndexSet, SymMatrix};
