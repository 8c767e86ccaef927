//! Exact computation of graph parameters tied to orthogonal representations
//! over finite fields: chromatic and local chromatic numbers, orthogonality
//! dimension and its local variant, minrank, together with a SAT-to-graph
//! reduction and linear index codes built from these objects.
//!
//! Every solver returns a witness that can be checked independently of the
//! search that produced it.

pub mod coloring;
pub mod error;
pub mod field;
pub mod graph;
pub mod indexcoding;
pub mod linalg;
pub mod ortho;
pub mod reduction;
pub mod selftest;

pub use error::{Error, Result};
