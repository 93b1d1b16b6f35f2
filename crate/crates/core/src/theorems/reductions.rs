//! Rank and matching identities under pendant-edge and vertex deletion.

use serde::Serialize;

use crate::combinatorics::matching_number;
use crate::error::Result;
use crate::graph::GainGraph;
use crate::spectral::{rank, RankMode};

/// `r(G) = r(G - {x, y}) + 2` and `m(G) = m(G - {x, y}) + 1` for a pendant
/// vertex `x` with neighbour `y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PendantReduction {
    pub pendant: usize,
    pub neighbor: usize,
    pub rank: usize,
    pub rank_reduced: usize,
    pub m: usize,
    pub m_reduced: usize,
}

impl PendantReduction {
    pub fn holds(&self) -> bool {
        self.rank == self.rank_reduced + 2 && self.m == self.m_reduced + 1
    }
}

/// The reduction at the lowest-numbered pendant vertex, `None` if there is none.
pub fn pendant_reduction(g: &GainGraph, mode: RankMode) -> Result<Option<PendantReduction>> {
    let under = g.underlying();
    let Some(&x) = under.pendant_vertices().first() else {
        return Ok(None);
    };
    pendant_reduction_at(g, x, mode).map(Some)
}

pub fn pendant_reduction_at(g: &GainGraph, x: usize, mode: RankMode) -> Result<PendantReduction> {
    let under = g.underlying();
    if under.degree(x) != 1 {
        return Err(crate::Error::Precondition(format!("vertex {x} is not pendant")));
    }
    let y = under.neighbors(x)[0];
    let reduced = g.delete_vertices(&[x, y])?.graph;
    Ok(PendantReduction {
        pendant: x,
        neighbor: y,
        rank: rank(g, mode)?,
        rank_reduced: rank(&reduced, mode)?,
        m: matching_number(&under),
        m_reduced: matching_number(&reduced.underlying()),
    })
}

/// `r - 2 <= r(G - v) <= r` and `m - 1 <= m(G - v) <= m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexDeletion {
    pub vertex: usize,
    pub rank: usize,
    pub rank_deleted: usize,
    pub m: usize,
    pub m_deleted: usize,
}

impl VertexDeletion {
    pub fn holds(&self) -> bool {
        self.rank_deleted <= self.rank
            && self.rank <= self.rank_deleted + 2
            && self.m_deleted <= self.m
            && self.m <= self.m_deleted + 1
    }
}

pub fn vertex_deletion(g: &GainGraph, v: usize, mode: RankMode) -> Result<VertexDeletion> {
    let deleted = g.delete_vertices(&[v])?.graph;
    Ok(VertexDeletion {
        vertex: v,
        rank: rank(g, mode)?,
        rank_deleted: rank(&deleted, mode)?,
        m: matching_number(&g.underlying()),
        m_deleted: matching_number(&deleted.underlying()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Gain, SimpleGraph};

    #[test]
    fn path_reductions() {
        let p4 = GainGraph::with_unit_gains(&SimpleGraph::path(4));
        let r = pendant_reduction(&p4, RankMode::Exact).unwrap().unwrap();
        assert_eq!((r.pendant, r.neighbor), (0, 1));
        assert_eq!((r.rank, r.rank_reduced, r.m, r.m_reduced), (4, 2, 2, 1));
        assert!(r.holds());
        assert!(pendant_reduction(&GainGraph::with_unit_gains(&SimpleGraph::cycle(5)), RankMode::Numeric).unwrap().is_none());
        assert!(pendant_reduction_at(&p4, 1, RankMode::Numeric).is_err());
    }

    #[test]
    fn deletion_bounds() {
        let g = GainGraph::new(4, [(0, 1, Gain::I), (1, 2, Gain::ONE), (2, 3, Gain::ONE), (3, 0, Gain::ONE)]).unwrap();
        for v in 0..4 {
            let d = vertex_deletion(&g, v, RankMode::Exact).unwrap();
            assert!(d.holds(), "{d:?}");
        }
        // C4 with product i has full rank 4 and P3 has rank 2.
        let d = vertex_deletion(&g, 0, RankMode::Exact).unwrap();
        assert_eq!((d.rank, d.rank_deleted), (4, 2));
    }
}
