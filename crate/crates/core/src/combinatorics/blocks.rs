//! Biconnected blocks, the cycle vertex set `O(G)`, and the contraction `T_G`.

use serde::Serialize;

use super::matching::matching_number;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    /// Sorted vertex set.
    pub vertices: Vec<usize>,
    /// Sorted `(u, v)` edges, `u < v`.
    pub edges: Vec<(usize, usize)>,
}

impl Block {
    pub fn is_bridge(&self) -> bool {
        self.edges.len() == 1
    }

    pub fn is_cycle(&self) -> bool {
        self.vertices.len() >= 3 && self.edges.len() == self.vertices.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    /// Indices into `blocks` of the single-edge blocks.
    pub bridges: Vec<usize>,
    /// Indices into `blocks` of the blocks that are cycles.
    pub cycle_blocks: Vec<usize>,
}

/// Hopcroft–Tarjan lowpoint decomposition with an explicit edge stack.
pub fn block_decomposition(g: &SimpleGraph) -> BlockDecomposition {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, parent, next neighbor index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
            if *next < g.degree(v) {
                let w = g.neighbors(v)[*next];
                *next += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent == usize::MAX {
                    continue;
                }
                low[parent] = low[parent].min(low[v]);
                if low[v] >= disc[parent] {
                    let mut edges = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        edges.push((e.0.min(e.1), e.0.max(e.1)));
                        if e == (parent, v) {
                            break;
                        }
                    }
                    edges.sort_unstable();
                    let mut vertices: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
                    vertices.sort_unstable();
                    vertices.dedup();
                    blocks.push(Block { vertices, edges });
                }
            }
        }
    }
    blocks.sort_by(|a, b| a.vertices.cmp(&b.vertices).then(a.edges.cmp(&b.edges)));
    let bridges = (0..blocks.len()).filter(|&i| blocks[i].is_bridge()).collect();
    let cycle_blocks = (0..blocks.len()).filter(|&i| blocks[i].is_cycle()).collect();
    BlockDecomposition { blocks, bridges, cycle_blocks }
}

/// `O(G)`: vertices lying on at least one cycle, sorted.
pub fn cycle_vertex_set(g: &SimpleGraph) -> Vec<usize> {
    let mut on_cycle = vec![false; g.n()];
    for b in block_decomposition(g).blocks.iter().filter(|b| !b.is_bridge()) {
        for &v in &b.vertices {
            on_cycle[v] = true;
        }
    }
    (0..g.n()).filter(|&v| on_cycle[v]).collect()
}

/// Vertex sequence of a cycle block: lowest vertex first, then its
/// lower-indexed neighbor on the cycle.
fn cycle_block_sequence(block: &Block) -> Vec<usize> {
    let nbrs = |v: usize| -> Vec<usize> {
        block
            .edges
            .iter()
            .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect()
    };
    let start = block.vertices[0];
    let first = nbrs(start);
    let mut seq = vec![start, first[0].min(first[1])];
    while seq.len() < block.vertices.len() {
        let cur = seq[seq.len() - 1];
        let prev = seq[seq.len() - 2];
        let next = nbrs(cur).into_iter().find(|&w| w != prev).expect("cycle block is 2-regular");
        seq.push(next);
    }
    seq
}

/// Outcome of the pairwise vertex-disjointness test for cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CycleDisjointness {
    /// Cycles (each in canonical orientation) when they are pairwise vertex-disjoint.
    Disjoint(Vec<Vec<usize>>),
    /// A block that is neither an edge nor a cycle (so two of its cycles share a vertex).
    DenseBlock(Vec<usize>),
    /// A vertex shared by two cycle blocks.
    SharedVertex(usize),
}

impl CycleDisjointness {
    pub fn is_disjoint(&self) -> bool {
        matches!(self, CycleDisjointness::Disjoint(_))
    }

    pub fn cycles(&self) -> Option<&[Vec<usize>]> {
        match self {
            CycleDisjointness::Disjoint(c) => Some(c),
            _ => None,
        }
    }
}

/// Cycles are pairwise vertex-disjoint iff every block is an edge or a cycle
/// and no vertex lies in two cycle blocks.
pub fn cycles_pairwise_disjoint(g: &SimpleGraph) -> CycleDisjointness {
    let dec = block_decomposition(g);
    if let Some(b) = dec.blocks.iter().find(|b| !b.is_bridge() && !b.is_cycle()) {
        return CycleDisjointness::DenseBlock(b.vertices.clone());
    }
    let mut owner = vec![false; g.n()];
    for &i in &dec.cycle_blocks {
        for &v in &dec.blocks[i].vertices {
            if owner[v] {
                return CycleDisjointness::SharedVertex(v);
            }
            owner[v] = true;
        }
    }
    let mut cycles: Vec<Vec<usize>> = dec.cycle_blocks.iter().map(|&i| cycle_block_sequence(&dec.blocks[i])).collect();
    cycles.sort();
    CycleDisjointness::Disjoint(cycles)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    /// `T_G`.
    pub graph: SimpleGraph,
    /// `vertex_map[old] = new`.
    pub vertex_map: Vec<usize>,
    /// `cyclic[new]` is true for vertices standing for a contracted cycle.
    pub cyclic: Vec<bool>,
}

fn not_disjoint() -> Error {
    Error::Precondition("cycles are not pairwise vertex-disjoint, T_G is undefined".into())
}

/// Contracts every cycle to a single cyclic vertex, collapsing parallel edges.
pub fn contract_cycles(g: &SimpleGraph) -> Result<Contraction> {
    let disjointness = cycles_pairwise_disjoint(g);
    let cycles = disjointness.cycles().ok_or_else(not_disjoint)?;
    Ok(contract_with(g, cycles))
}

pub(crate) fn contract_with(g: &SimpleGraph, cycles: &[Vec<usize>]) -> Contraction {
    let n = g.n();
    let mut group = vec![usize::MAX; n];
    for (ci, cycle) in cycles.iter().enumerate() {
        for &v in cycle {
            group[v] = ci;
        }
    }
    // New ids in order of first appearance by old id.
    let mut vertex_map = vec![usize::MAX; n];
    let mut cyclic = Vec::new();
    let mut group_id = vec![usize::MAX; cycles.len()];
    for v in 0..n {
        if group[v] == usize::MAX {
            vertex_map[v] = cyclic.len();
            cyclic.push(false);
        } else {
            let gi = group[v];
            if group_id[gi] == usize::MAX {
                group_id[gi] = cyclic.len();
                cyclic.push(true);
            }
            vertex_map[v] = group_id[gi];
        }
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(a, b)| (vertex_map[a], vertex_map[b]))
        .filter(|&(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let graph = SimpleGraph::new(cyclic.len(), edges).expect("contracted edges are simple");
    Contraction { graph, vertex_map, cyclic }
}

/// Both sides of `m(T_G) = m(G - O(G))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionIii {
    pub m_contracted: usize,
    pub m_outside_cycles: usize,
}

impl ConditionIii {
    pub fn holds(&self) -> bool {
        self.m_contracted == self.m_outside_cycles
    }
}

pub fn condition_iii_values(g: &SimpleGraph) -> Result<ConditionIii> {
    let disjointness = cycles_pairwise_disjoint(g);
    let cycles = disjointness.cycles().ok_or_else(not_disjoint)?;
    Ok(condition_iii_with(g, cycles))
}

pub(crate) fn condition_iii_with(g: &SimpleGraph, cycles: &[Vec<usize>]) -> ConditionIii {
    let t = contract_with(g, cycles);
    let o: Vec<usize> = cycles.iter().flatten().copied().collect();
    let outside = g.delete_vertices(&o).expect("cycle vertices are in range");
    ConditionIii {
        m_contracted: matching_number(&t.graph),
        m_outside_cycles: matching_number(&outside.graph),
    }
}

/// `m(T_G) = m(G - O(G))`; requires pairwise vertex-disjoint cycles.
pub fn condition_iii(g: &SimpleGraph) -> Result<bool> {
    condition_iii_values(g).map(|c| c.holds())
}
