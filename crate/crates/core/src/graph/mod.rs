//! Gain graph data model and elementary structural operations.

mod format;
mod gain;

pub use format::{parse_gain_graph, serialize_gain_graph};
pub use gain::{Angle, Gain, INPUT_MODULUS_TOL};

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`, edges stored as `(u, v)` with `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<SimpleGraph> {
        let mut list = Vec::new();
        for (a, b) in edges {
            for id in [a, b] {
                if id >= n {
                    return Err(Error::VertexOutOfRange { id, n });
                }
            }
            if a == b {
                return Err(Error::Loop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted(n, list))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> SimpleGraph {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        SimpleGraph { n, edges, adj }
    }

    pub fn empty(n: usize) -> SimpleGraph {
        Self::from_sorted(n, Vec::new())
    }

    pub fn path(n: usize) -> SimpleGraph {
        Self::from_sorted(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    pub fn cycle(n: usize) -> SimpleGraph {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((0, n - 1));
        }
        edges.sort_unstable();
        Self::from_sorted(n, edges)
    }

    pub fn complete(n: usize) -> SimpleGraph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_sorted(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Component label for every vertex, labels numbered by lowest member.
    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().0
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_count() == 1
    }

    /// A forest: `|E| = |V| - ω`.
    pub fn is_acyclic(&self) -> bool {
        self.edges.len() + self.component_count() == self.n
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if side[y] == u8::MAX {
                        side[y] = 1 - side[x];
                        stack.push(y);
                    } else if side[y] == side[x] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Induced subgraph on `keep` (in the given order).
    pub fn induced(&self, keep: &[usize]) -> Subgraph<SimpleGraph> {
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(u, v)| new_id[u] != usize::MAX && new_id[v] != usize::MAX)
            .map(|&(u, v)| {
                let (a, b) = (new_id[u], new_id[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        Subgraph { graph: Self::from_sorted(keep.len(), edges), parent_ids: keep.to_vec() }
    }

    /// `G - S`.
    pub fn delete_vertices(&self, s: &[usize]) -> Result<Subgraph<SimpleGraph>> {
        let keep = complement(self.n, s)?;
        Ok(self.induced(&keep))
    }

    pub fn components(&self) -> Vec<Subgraph<SimpleGraph>> {
        component_vertex_sets(self).iter().map(|vs| self.induced(vs)).collect()
    }

    pub fn pendant_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Vertices of degree at least 2 that are adjacent to a pendant vertex.
    pub fn quasi_pendant_vertices(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| self.degree(v) >= 2 && self.adj[v].iter().any(|&w| self.degree(w) == 1))
            .collect()
    }
}

fn complement(n: usize, s: &[usize]) -> Result<Vec<usize>> {
    let mut removed = vec![false; n];
    for &v in s {
        if v >= n {
            return Err(Error::VertexOutOfRange { id: v, n });
        }
        removed[v] = true;
    }
    Ok((0..n).filter(|&v| !removed[v]).collect())
}

fn component_vertex_sets(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let (count, label) = g.component_labels();
    let mut sets = vec![Vec::new(); count];
    for (v, &l) in label.iter().enumerate() {
        sets[l].push(v);
    }
    sets
}

/// A derived graph together with the parent id of every one of its vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Subgraph<G> {
    pub graph: G,
    /// `parent_ids[new] = old`.
    pub parent_ids: Vec<usize>,
}

impl<G> Subgraph<G> {
    /// Inverse map `old -> new`, `None` for vertices not present.
    pub fn new_ids(&self, parent_n: usize) -> Vec<Option<usize>> {
        let mut map = vec![None; parent_n];
        for (new, &old) in self.parent_ids.iter().enumerate() {
            map[old] = Some(new);
        }
        map
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainEdge {
    pub u: usize,
    pub v: usize,
    /// Gain of the oriented edge `u -> v` (with `u < v`).
    pub gain: Gain,
}

/// A complex unit gain graph. Each unordered edge stores the gain of its
/// `u -> v` orientation with `u < v`; the reverse orientation is the conjugate.
#[derive(Debug, Clone, PartialEq)]
pub struct GainGraph {
    n: usize,
    edges: Vec<GainEdge>,
}

impl GainGraph {
    /// Builds a gain graph from oriented gains `(a, b, φ(a→b))`; an edge given as
    /// `(b, a)` with `b > a` is stored as the conjugate on `(a, b)`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, Gain)>) -> Result<GainGraph> {
        let mut list = Vec::new();
        for (a, b, gain) in edges {
            for id in [a, b] {
                if id >= n {
                    return Err(Error::VertexOutOfRange { id, n });
                }
            }
            if a == b {
                return Err(Error::Loop(a));
            }
            let edge = if a < b {
                GainEdge { u: a, v: b, gain }
            } else {
                GainEdge { u: b, v: a, gain: gain.conj() }
            };
            list.push(edge);
        }
        list.sort_by_key(|e| (e.u, e.v));
        if let Some(w) = list.windows(2).find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v)) {
            return Err(Error::DuplicateEdge(w[0].u, w[0].v));
        }
        Ok(GainGraph { n, edges: list })
    }

    /// Every edge of `g` with gain 1.
    pub fn with_unit_gains(g: &SimpleGraph) -> GainGraph {
        GainGraph {
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| GainEdge { u, v, gain: Gain::ONE }).collect(),
        }
    }

    /// `g`'s edges (in sorted order) labeled with `gains`.
    pub fn from_simple(g: &SimpleGraph, gains: &[Gain]) -> Result<GainGraph> {
        if gains.len() != g.edge_count() {
            return Err(Error::Precondition(format!(
                "{} gains supplied for {} edges",
                gains.len(),
                g.edge_count()
            )));
        }
        Ok(GainGraph {
            n: g.n(),
            edges: g
                .edges()
                .iter()
                .zip(gains)
                .map(|(&(u, v), &gain)| GainEdge { u, v, gain })
                .collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[GainEdge] {
        &self.edges
    }

    /// `φ(e_{a,b})`, or `None` when `ab` is not an edge.
    pub fn gain(&self, a: usize, b: usize) -> Option<Gain> {
        let key = (a.min(b), a.max(b));
        self.edges
            .binary_search_by_key(&key, |e| (e.u, e.v))
            .ok()
            .map(|i| if a < b { self.edges[i].gain } else { self.edges[i].gain.conj() })
    }

    pub fn underlying(&self) -> SimpleGraph {
        SimpleGraph::from_sorted(self.n, self.edges.iter().map(|e| (e.u, e.v)).collect())
    }

    pub fn induced(&self, keep: &[usize]) -> Subgraph<GainGraph> {
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let mut edges: Vec<GainEdge> = self
            .edges
            .iter()
            .filter(|e| new_id[e.u] != usize::MAX && new_id[e.v] != usize::MAX)
            .map(|e| {
                let (a, b) = (new_id[e.u], new_id[e.v]);
                if a < b {
                    GainEdge { u: a, v: b, gain: e.gain }
                } else {
                    GainEdge { u: b, v: a, gain: e.gain.conj() }
                }
            })
            .collect();
        edges.sort_by_key(|e| (e.u, e.v));
        Subgraph { graph: GainGraph { n: keep.len(), edges }, parent_ids: keep.to_vec() }
    }

    /// `(G, φ) - S`, with the id map back to this graph.
    pub fn delete_vertices(&self, s: &[usize]) -> Result<Subgraph<GainGraph>> {
        let keep = complement(self.n, s)?;
        Ok(self.induced(&keep))
    }

    pub fn components(&self) -> Vec<Subgraph<GainGraph>> {
        component_vertex_sets(&self.underlying()).iter().map(|vs| self.induced(vs)).collect()
    }

    pub fn pendant_vertices(&self) -> Vec<usize> {
        self.underlying().pendant_vertices()
    }

    pub fn quasi_pendant_vertices(&self) -> Vec<usize> {
        self.underlying().quasi_pendant_vertices()
    }

    /// True when every gain lies in {1, -1, i, -i}.
    pub fn has_gaussian_gains(&self) -> bool {
        self.edges.iter().all(|e| e.gain.is_gaussian_unit())
    }

    /// Applies the switching `φ'(a→b) = conj(s_a)·φ(a→b)·s_b`, a unitary
    /// similarity that preserves the spectrum and every cycle gain.
    pub fn switched(&self, s: &[Gain]) -> GainGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| GainEdge { u: e.u, v: e.v, gain: s[e.u].conj().mul(&e.gain).mul(&s[e.v]) })
            .collect();
        GainGraph { n: self.n, edges }
    }
}
