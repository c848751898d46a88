//! Exact computations in partition algebras: the diagram monoid, the
//! algebras over a generic or specialized parameter, their Bratteli graphs,
//! Schur-Weyl actions, Murphy elements, matrix units and Specht modules.

pub mod algebra;
pub mod combinatorics;
pub mod diagrams;
pub mod error;
pub mod linalg;
pub mod murphy;
pub mod presentation;
pub mod scalars;
pub mod structure;
pub mod symgroup;
pub mod tensor;

pub mod cli;

pub use error::{Error, Result};
