//! Exact computations for finite group actions on graded algebras.

pub mod error;
pub mod homology;
pub mod kernel;
pub mod smash;

pub mod action;
pub mod algebra;

pub use error::{Error, Result};
