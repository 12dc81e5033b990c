//! Scalars, words, free-algebra polynomials, linear algebra and completion.

pub mod matrix;
pub mod poly;
pub mod rewriting;
pub mod scalar;
pub mod upoly;
pub mod word;

pub use matrix::{matrix_rank, Echelon, Matrix, Vector};
pub use poly::NcPoly;
pub use rewriting::{complete, complete_with, CompletionOptions, RewritingSystem, Rule};
pub use scalar::{CycloField, CycloScalar, Rational};
pub use upoly::{berlekamp_massey, UPoly};
pub use word::{deglex_compare, Word};
