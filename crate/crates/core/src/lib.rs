//! Exact computations with edge ideals of finite simple graphs.
//!
//! The crate builds edge ideals, their ordinary and symbolic powers, and their
//! multigraded Betti tables, and checks decomposition, colon-ideal, ordering and
//! regularity statements about them on small instances. Every check is exact:
//! monomial ideals are kept as minimal generating sets and homology ranks are
//! computed by fraction-free elimination.
//!
//! Vertices are 0-based internally. Every text format (graph files, monomial
//! strings such as `x1^2*x3`, JSON reports) is 1-based.

pub mod betti;
pub mod evencon;
pub mod families;
pub mod graph;
pub mod harness;
pub mod homology;
pub mod ideal;
pub mod io;
pub mod monomial;
pub mod report;
pub mod symbolic;

use serde::Serialize;

pub use graph::{CycleCertificate, Graph, GraphError, VertexSet};
pub use ideal::{IdealError, MonomialIdeal};
pub use monomial::Monomial;

/// Hard bounds for every exhaustive search and homology computation.
///
/// Exceeding a bound is always an error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_vertices: usize,
    pub max_generators: usize,
    pub max_lcm_closure: usize,
    pub max_cycles: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vertices: 16,
            max_generators: 200,
            max_lcm_closure: 20_000,
            max_cycles: 100_000,
        }
    }
}

/// Crate-level error.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Betti(#[from] betti::BettiError),
    #[error(transparent)]
    Parse(#[from] io::ParseError),
    #[error("invalid cycle decomposition: {0}")]
    Decomposition(String),
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
