//! Exact cohomology, extensions and formal deformations of Leibniz algebras
//! equipped with a derivation, plus the two-term sh Leibniz dictionary.

pub mod cohomology;
pub mod corpus;
pub mod deformations;
pub mod error;
pub mod exactlin;
pub mod extensions;
pub mod formats;
pub mod leibniz;
pub mod shleibniz;
pub mod tensor;

pub use error::{Error, Report, Result, Violation};
pub use exactlin::{Matrix, Scalar, Vector};
