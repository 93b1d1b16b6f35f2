//! Structural characterizations of lower-optimal (`r = 2m - 2c`) and
//! upper-optimal (`r = 2m + c`) gain graphs, checked against the rank.

use serde::Serialize;

use super::classify::{classify_gain, CycleType};
use crate::combinatorics::{
    canonical_orientation, condition_iii_with, cycles_pairwise_disjoint, cyclomatic_number, matching_number,
    oriented_gain_product, ConditionIii, CycleDisjointness, ElementaryExpansion,
};
use crate::error::Result;
use crate::graph::{GainGraph, SimpleGraph};
use crate::spectral::{exact_rank, hermitian_adjacency, inertia, RankMode};
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremal {
    Lower,
    Upper,
}

impl Extremal {
    fn admits(self, t: CycleType) -> bool {
        match self {
            Extremal::Lower => t == CycleType::A,
            Extremal::Upper => matches!(t, CycleType::C | CycleType::D),
        }
    }
}

/// First condition that fails, with its witness in input vertex ids.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "condition")]
pub enum StructuralFailure {
    /// (i): some vertex lies on two cycles.
    #[serde(rename = "i")]
    SharedCycles { component: Vec<usize>, witness: CycleDisjointness },
    /// (ii): a cycle of the wrong type.
    #[serde(rename = "ii")]
    CycleType { cycle: Vec<usize>, cycle_type: CycleType },
    /// (iii): `m(T_G) != m(G - O(G))`.
    #[serde(rename = "iii")]
    Matching { component: Vec<usize>, values: ConditionIii },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructuralVerdict {
    pub holds: bool,
    /// (i) over all components.
    pub disjoint_cycles: bool,
    /// (ii), defined when (i) holds.
    pub cycle_types: Option<bool>,
    /// (iii), defined when (i) holds.
    pub condition_iii: Option<bool>,
    pub failure: Option<StructuralFailure>,
}

#[derive(Debug, Clone)]
struct ComponentStructure {
    vertices: Vec<usize>,
    disjointness: CycleDisjointness,
    /// Cycles in input ids, canonical orientation; empty unless disjoint.
    cycles: Vec<Vec<usize>>,
    condition_iii: Option<ConditionIii>,
}

/// Everything the verdict needs that does not depend on the gains.
#[derive(Debug, Clone)]
pub struct GraphStructure {
    graph: SimpleGraph,
    components: Vec<ComponentStructure>,
    pub m: usize,
    pub c: usize,
    expansion: Option<ElementaryExpansion>,
}

impl GraphStructure {
    pub fn new(g: &SimpleGraph) -> GraphStructure {
        GraphStructure::with_limits(g, &Limits::default())
    }

    pub fn with_limits(g: &SimpleGraph, limits: &Limits) -> GraphStructure {
        let components = g
            .components()
            .into_iter()
            .map(|comp| {
                let disjointness = cycles_pairwise_disjoint(&comp.graph);
                let (cycles, condition_iii) = match disjointness.cycles() {
                    Some(local) => {
                        let values = condition_iii_with(&comp.graph, local);
                        let cycles = local
                            .iter()
                            .map(|c| canonical_orientation(&c.iter().map(|&v| comp.parent_ids[v]).collect::<Vec<_>>()))
                            .collect();
                        (cycles, Some(values))
                    }
                    None => (Vec::new(), None),
                };
                let disjointness = match disjointness {
                    CycleDisjointness::Disjoint(_) => CycleDisjointness::Disjoint(cycles.clone()),
                    CycleDisjointness::DenseBlock(b) => {
                        CycleDisjointness::DenseBlock(b.iter().map(|&v| comp.parent_ids[v]).collect())
                    }
                    CycleDisjointness::SharedVertex(v) => CycleDisjointness::SharedVertex(comp.parent_ids[v]),
                };
                ComponentStructure { vertices: comp.parent_ids, disjointness, cycles, condition_iii }
            })
            .collect();
        let expansion = (g.n() <= limits.cross_check_n).then(|| ElementaryExpansion::new(g));
        GraphStructure {
            m: matching_number(g),
            c: cyclomatic_number(g),
            graph: g.clone(),
            components,
            expansion,
        }
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn disjoint_cycles(&self) -> bool {
        self.components.iter().all(|c| c.disjointness.is_disjoint())
    }

    /// `m(T_G) = m(G - O(G))` on every component, when (i) holds.
    pub fn condition_iii(&self) -> Option<bool> {
        self.components.iter().map(|c| c.condition_iii.map(|v| v.holds())).collect::<Option<Vec<_>>>().map(|v| v.iter().all(|&b| b))
    }

    pub fn structural(&self, g: &GainGraph, kind: Extremal) -> StructuralVerdict {
        debug_assert_eq!(g.edge_count(), self.graph.edge_count());
        let disjoint = self.disjoint_cycles();
        let mut failure = None;
        let mut types_ok = disjoint;
        let mut iii_ok = disjoint;
        for comp in &self.components {
            let Some(values) = comp.condition_iii else {
                failure.get_or_insert(StructuralFailure::SharedCycles {
                    component: comp.vertices.clone(),
                    witness: comp.disjointness.clone(),
                });
                continue;
            };
            for cycle in &comp.cycles {
                let gain = oriented_gain_product(g, cycle).expect("cycle of the prepared graph");
                let t = classify_gain(cycle.len(), &gain);
                if !kind.admits(t) {
                    types_ok = false;
                    failure.get_or_insert(StructuralFailure::CycleType { cycle: cycle.clone(), cycle_type: t });
                    break;
                }
            }
            if !values.holds() {
                iii_ok = false;
                failure.get_or_insert(StructuralFailure::Matching { component: comp.vertices.clone(), values });
            }
        }
        StructuralVerdict {
            holds: failure.is_none(),
            disjoint_cycles: disjoint,
            cycle_types: disjoint.then_some(types_ok),
            condition_iii: disjoint.then_some(iii_ok),
            failure,
        }
    }
}

pub fn lower_optimal_structural(g: &GainGraph) -> StructuralVerdict {
    GraphStructure::with_limits(&g.underlying(), &Limits { cross_check_n: 0, ..Limits::default() })
        .structural(g, Extremal::Lower)
}

pub fn upper_optimal_structural(g: &GainGraph) -> StructuralVerdict {
    GraphStructure::with_limits(&g.underlying(), &Limits { cross_check_n: 0, ..Limits::default() })
        .structural(g, Extremal::Upper)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimalityVerdict {
    pub rank: usize,
    /// Backend whose rank decided the spectral flags.
    pub backend: RankMode,
    /// Numeric rank, when computed as a cross-check.
    pub numeric_rank: Option<usize>,
    /// Rank from the elementary-subgraph oracle, when within limits.
    pub oracle_rank: Option<usize>,
    /// Every computed rank agrees.
    pub ranks_agree: bool,
    pub m: usize,
    pub c: usize,
    pub spectral_lower: bool,
    pub spectral_upper: bool,
    pub structural_lower: StructuralVerdict,
    pub structural_upper: StructuralVerdict,
    pub consistent: bool,
}

impl OptimalityVerdict {
    pub fn holds(&self, kind: Extremal) -> (bool, bool) {
        match kind {
            Extremal::Lower => (self.spectral_lower, self.structural_lower.holds),
            Extremal::Upper => (self.spectral_upper, self.structural_upper.holds),
        }
    }
}

pub fn verify_equivalence(g: &GainGraph) -> Result<OptimalityVerdict> {
    verify_equivalence_with(g, &Limits::default())
}

pub fn verify_equivalence_with(g: &GainGraph, limits: &Limits) -> Result<OptimalityVerdict> {
    GraphStructure::with_limits(&g.underlying(), limits).verdict(g)
}

impl GraphStructure {
    /// Rank by the exact backend when every gain is Gaussian, else by the
    /// oracle when prepared, else numerically; the other available backends
    /// are computed as cross-checks.
    pub fn verdict(&self, g: &GainGraph) -> Result<OptimalityVerdict> {
        self.verdict_inner(g, true)
    }

    /// Like [`Self::verdict`] but decided by the oracle alone (the exact
    /// backend if the graph was prepared without one), skipping the
    /// eigenvalue cross-check. For exhaustive sweeps.
    pub fn oracle_verdict(&self, g: &GainGraph) -> Result<OptimalityVerdict> {
        self.verdict_inner(g, false)
    }

    fn verdict_inner(&self, g: &GainGraph, cross_check: bool) -> Result<OptimalityVerdict> {
        let oracle = self.expansion.as_ref().map(|e| e.rank(g));
        let numeric = if cross_check || (oracle.is_none() && !g.has_gaussian_gains()) {
            Some(inertia(&hermitian_adjacency(g), None)?.rank)
        } else {
            None
        };
        let (rank, backend) = match (oracle, numeric) {
            (Some(r), _) if !cross_check => (r, RankMode::Oracle),
            _ if g.has_gaussian_gains() => (exact_rank(g)?, RankMode::Exact),
            (Some(r), _) => (r, RankMode::Oracle),
            (None, Some(r)) => (r, RankMode::Numeric),
            (None, None) => unreachable!("numeric rank is computed when nothing else is available"),
        };
        let ranks_agree = numeric.is_none_or(|r| r == rank) && oracle.is_none_or(|r| r == rank);
        let (r, m, c) = (rank as i64, self.m as i64, self.c as i64);
        let spectral_lower = r == 2 * m - 2 * c;
        let spectral_upper = r == 2 * m + c;
        let structural_lower = self.structural(g, Extremal::Lower);
        let structural_upper = self.structural(g, Extremal::Upper);
        let consistent = spectral_lower == structural_lower.holds && spectral_upper == structural_upper.holds;
        Ok(OptimalityVerdict {
            rank,
            backend,
            numeric_rank: numeric,
            oracle_rank: oracle,
            ranks_agree,
            m: self.m,
            c: self.c,
            spectral_lower,
            spectral_upper,
            structural_lower,
            structural_upper,
            consistent,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Gain;

    fn cycle(l: usize, gain: Gain) -> GainGraph {
        let mut edges: Vec<_> = (1..l).map(|i| (i - 1, i, Gain::ONE)).collect();
        edges.push((l - 1, 0, gain));
        GainGraph::new(l, edges).unwrap()
    }

    #[test]
    fn lower_examples() {
        assert!(lower_optimal_structural(&cycle(4, Gain::ONE)).holds);
        let v = lower_optimal_structural(&cycle(4, Gain::I));
        assert!(!v.holds);
        assert_eq!(v.cycle_types, Some(false));
        assert!(matches!(v.failure, Some(StructuralFailure::CycleType { cycle_type: CycleType::B, .. })));

        let pendant = GainGraph::new(5, [(0, 1, Gain::ONE), (1, 2, Gain::ONE), (2, 3, Gain::ONE), (3, 0, Gain::ONE), (0, 4, Gain::ONE)]).unwrap();
        let v = lower_optimal_structural(&pendant);
        assert!(!v.holds);
        assert_eq!(v.cycle_types, Some(true));
        assert_eq!(v.condition_iii, Some(false));
        let verdict = verify_equivalence(&pendant).unwrap();
        assert!(!verdict.spectral_lower);
        assert!(verdict.consistent);
    }

    #[test]
    fn upper_examples() {
        let c3 = cycle(3, Gain::ONE);
        assert!(upper_optimal_structural(&c3).holds);
        let v = verify_equivalence(&c3).unwrap();
        assert_eq!(v.rank, 3);
        assert!(v.spectral_upper && v.consistent);

        let v = upper_optimal_structural(&cycle(3, Gain::I));
        assert!(matches!(v.failure, Some(StructuralFailure::CycleType { cycle_type: CycleType::E, .. })));

        let c5 = verify_equivalence(&cycle(5, Gain::ONE)).unwrap();
        assert_eq!(c5.rank, 5);
        assert!(c5.spectral_upper && c5.structural_upper.holds);
    }

    #[test]
    fn c4_verdict() {
        let v = verify_equivalence(&cycle(4, Gain::ONE)).unwrap();
        assert_eq!(v.backend, RankMode::Exact);
        assert_eq!(v.rank, 2);
        assert!(v.spectral_lower && v.structural_lower.holds && v.consistent && v.ranks_agree);
        assert!(!v.spectral_upper && !v.structural_upper.holds);
    }

    #[test]
    fn trees_are_both() {
        let tree = GainGraph::new(5, [(0, 1, Gain::ONE), (1, 2, Gain::root_of_unity(1, 7).unwrap()), (1, 3, Gain::ONE), (3, 4, Gain::I)]).unwrap();
        let v = verify_equivalence(&tree).unwrap();
        assert_eq!(v.backend, RankMode::Oracle);
        assert!(v.spectral_lower && v.spectral_upper);
        assert!(v.structural_lower.holds && v.structural_upper.holds);
        assert!(v.consistent);
    }

    #[test]
    fn shared_vertex_fails_condition_i() {
        let bowtie = GainGraph::with_unit_gains(&SimpleGraph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap());
        let v = upper_optimal_structural(&bowtie);
        assert!(!v.disjoint_cycles);
        assert_eq!(v.cycle_types, None);
        assert!(matches!(
            v.failure,
            Some(StructuralFailure::SharedCycles { witness: CycleDisjointness::SharedVertex(2), .. })
        ));
        assert!(verify_equivalence(&bowtie).unwrap().consistent);
    }

    #[test]
    fn witnesses_use_input_ids() {
        // Triangle on 2, 3, 4 in a graph with an isolated edge 0-1.
        let g = GainGraph::new(5, [(0, 1, Gain::ONE), (2, 3, Gain::ONE), (3, 4, Gain::ONE), (2, 4, Gain::ONE)]).unwrap();
        let v = lower_optimal_structural(&g);
        match v.failure {
            Some(StructuralFailure::CycleType { cycle, .. }) => assert_eq!(cycle, vec![2, 3, 4]),
            other => panic!("unexpected failure {other:?}"),
        }
    }
}
