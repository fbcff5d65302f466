//! Exact computations for linked and Eisenbud–Harris–Teixidor limit linear
//! series on trees of rational curves, prelinked Grassmannians, and
//! determinantal loci over `Q[t]`.

pub mod error;
pub mod curve_model;
pub mod degree_graph;
pub mod detloci;
pub mod exactlinalg;
pub mod fixtures;
pub mod genericity;
pub mod json;
pub mod prelinked;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use exactlinalg::{MatQ, Poly, PolyMatrix, Rational, Subspace};

#[cfg(test)]
mod properties;
