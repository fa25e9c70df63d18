//! Finite and normal-form algebras (monoids, commutative monoids, semirings,
//! subtraction algebras) with points, pullbacks, closure, and object-wise
//! checks for the unital / strongly unital / subtractive / Mal'tsev /
//! protomodular properties.

pub mod algebra;
pub mod catalog;
pub mod classify;
pub mod constructions;
pub mod error;
pub mod hom;
pub mod io;
pub mod lazy;
pub mod points;

pub use algebra::{validate_axioms, AxiomReport, Elem, FiniteAlgebra, Kind, Signature, Table};
pub use catalog::{builtin, Algebra};
pub use error::{Error, Result};
pub use hom::{enumerate_homs, is_homomorphism, Homomorphism};
pub use lazy::{LazyMonoid, ReducedWord, Word};
