//! Rank, inertia and extremal-structure analysis for complex unit gain graphs.
//!
//! A complex unit gain graph labels each oriented edge of a simple graph with a
//! unit complex number, the reverse orientation carrying the conjugate. This
//! crate computes the rank and inertia of the Hermitian adjacency matrix, the
//! matching and cyclomatic numbers of the underlying graph, and checks the
//! bounds `2m - 2c <= r <= 2m + c` together with the structural description
//! of graphs attaining either bound against independent spectral and
//! combinatorial computations.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod generators;
pub mod graph;
pub mod spectral;
pub mod theorems;

pub use error::{Error, Result};
pub use graph::{Gain, GainGraph, SimpleGraph};

/// Size limits for the exponential oracles and exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest order accepted by the elementary-subgraph rank/coefficient oracle.
    pub oracle_n: usize,
    /// Largest vertex subset accepted by `elementary_spanning_subgraphs`.
    pub elementary_span: usize,
    /// Largest order for odd-cycle-transversal and acyclic-deletion searches.
    pub transversal_n: usize,
    /// Largest number of simple cycles `enumerate_cycles` will return.
    pub max_cycles: usize,
    /// Orders up to which verification cross-checks the numeric rank with the oracle.
    pub cross_check_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            oracle_n: 12,
            elementary_span: 14,
            transversal_n: 20,
            max_cycles: 100_000,
            cross_check_n: 9,
        }
    }
}
