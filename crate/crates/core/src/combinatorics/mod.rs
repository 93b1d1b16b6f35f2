//! Matching, cycle structure, contraction, transversals and the
//! elementary-subgraph oracle.

mod blocks;
mod cycles;
mod elementary;
mod matching;
mod transversal;

pub use blocks::{
    block_decomposition, condition_iii, condition_iii_values, contract_cycles, cycle_vertex_set,
    cycles_pairwise_disjoint, Block, BlockDecomposition, ConditionIii, Contraction, CycleDisjointness,
};
pub(crate) use blocks::condition_iii_with;
pub use cycles::{
    canonical_orientation, cycle_records, enumerate_cycles, oriented_gain_product, CycleRecord, CycleSummary,
};
pub use elementary::{
    char_coeff_combinatorial, char_coeff_combinatorial_with, determinant_combinatorial,
    elementary_spanning_subgraphs, elementary_spanning_subgraphs_with, rank_combinatorial,
    rank_combinatorial_with, rank_from_coefficients, ElementaryExpansion, ElementarySubgraph, COEFF_TOL,
};
pub use matching::{matching_number, matching_number_bruteforce, maximum_matching};
pub use transversal::{
    max_acyclic_deletion_matching, max_acyclic_deletion_matching_with, odd_cycle_transversal,
    odd_cycle_transversal_with,
};

use crate::graph::SimpleGraph;

/// `c(G) = |E| - |V| + ω(G)`.
pub fn cyclomatic_number(g: &SimpleGraph) -> usize {
    g.edge_count() + g.component_count() - g.n()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclomatic_examples() {
        let fig1 = SimpleGraph::new(8, [(0, 1), (0, 3), (0, 4), (0, 6), (0, 7), (1, 2), (2, 3), (4, 5), (5, 6)]).unwrap();
        assert_eq!(cyclomatic_number(&fig1), 2);
        assert_eq!(cyclomatic_number(&SimpleGraph::path(7)), 0);
        // Theta: endpoints 0 and 1 joined through 2, 3 and 4.
        let theta = SimpleGraph::new(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
        assert_eq!(cyclomatic_number(&theta), 2);
        assert_eq!(cyclomatic_number(&SimpleGraph::empty(4)), 0);
        assert_eq!(cyclomatic_number(&SimpleGraph::complete(5)), 6);
    }
}
