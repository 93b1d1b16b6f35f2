//! Elementary subgraphs (every component a `K2` or a cycle) and the
//! determinant / characteristic-coefficient expansion over them.
//!
//! A nonvanishing permutation term of `det H(G[S])` decomposes into
//! transpositions along edges and cyclic permutations along cycles, so
//!
//! ```text
//! det H(G[S]) = Σ_U (-1)^(|S| - p(U)) · 2^c(U) · Π_{C ∈ U} Re φ(C)
//! ```
//!
//! over spanning elementary subgraphs `U` of `G[S]`, where `p(U)` counts
//! components and `c(U)` cycle components (the two orientations of a cycle
//! contribute `φ(C) + conj φ(C)`). The coefficient `a_k` of `λ^(n-k)` in the
//! characteristic polynomial satisfies `(-1)^k a_k = Σ_{|S|=k} det H(G[S])`.

use std::collections::HashMap;

use super::cycles::CycleRecord;
use crate::error::{Error, Result};
use crate::graph::{GainGraph, SimpleGraph};
use crate::Limits;

/// Coefficients with magnitude at or below this are treated as zero.
pub const COEFF_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct ElementarySubgraph {
    pub edge_components: Vec<(usize, usize)>,
    pub cycle_components: Vec<CycleRecord>,
    /// Sorted.
    pub vertex_span: Vec<usize>,
}

impl ElementarySubgraph {
    pub fn component_count(&self) -> usize {
        self.edge_components.len() + self.cycle_components.len()
    }

    /// `(-1)^(|S| - p(U)) · 2^c(U) · Π Re φ(C)`.
    pub fn determinant_term(&self) -> f64 {
        let k = self.vertex_span.len();
        let sign = if (k - self.component_count()).is_multiple_of(2) { 1.0 } else { -1.0 };
        self.cycle_components.iter().fold(sign, |acc, c| acc * 2.0 * c.real_part)
    }
}

/// Cycles through `v` inside `free`, with `v` the lowest vertex and each
/// cycle reported once (second vertex lower than the last).
fn cycles_through(g: &SimpleGraph, v: usize, free: &[bool], out: &mut Vec<Vec<usize>>) {
    fn walk(g: &SimpleGraph, v: usize, free: &[bool], path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if w == v && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            } else if w > v && free[w] && !on[w] {
                on[w] = true;
                path.push(w);
                walk(g, v, free, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut on = vec![false; g.n()];
    on[v] = true;
    walk(g, v, free, &mut vec![v], &mut on, out);
}

/// All spanning elementary subgraphs of `G[S]`, in `g`'s vertex ids.
/// Branches on the lowest uncovered vertex: either an incident `K2` or a
/// cycle through it within the uncovered vertices.
pub fn elementary_spanning_subgraphs(g: &GainGraph, s: &[usize]) -> Result<Vec<ElementarySubgraph>> {
    elementary_spanning_subgraphs_with(g, s, &Limits::default())
}

pub fn elementary_spanning_subgraphs_with(
    g: &GainGraph,
    s: &[usize],
    limits: &Limits,
) -> Result<Vec<ElementarySubgraph>> {
    if s.len() > limits.elementary_span {
        return Err(Error::LimitExceeded {
            what: "elementary subgraph vertex set",
            limit: limits.elementary_span,
            actual: s.len(),
        });
    }
    let under = g.underlying();
    let mut free = vec![false; g.n()];
    for &v in s {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { id: v, n: g.n() });
        }
        free[v] = true;
    }
    let mut span: Vec<usize> = s.to_vec();
    span.sort_unstable();
    span.dedup();

    struct State<'a> {
        g: &'a GainGraph,
        under: &'a SimpleGraph,
        span: &'a [usize],
        edges: Vec<(usize, usize)>,
        cycles: Vec<Vec<usize>>,
        out: Vec<ElementarySubgraph>,
    }

    fn go(st: &mut State<'_>, free: &mut [bool]) {
        let Some(v) = st.span.iter().copied().find(|&x| free[x]) else {
            let cycle_components = st
                .cycles
                .iter()
                .map(|c| CycleRecord::new(st.g, c).expect("enumerated cycle"))
                .collect();
            st.out.push(ElementarySubgraph {
                edge_components: st.edges.clone(),
                cycle_components,
                vertex_span: st.span.to_vec(),
            });
            return;
        };
        free[v] = false;
        let nbrs: Vec<usize> = st.under.neighbors(v).iter().copied().filter(|&w| free[w]).collect();
        for w in nbrs {
            free[w] = false;
            st.edges.push((v, w));
            go(st, free);
            st.edges.pop();
            free[w] = true;
        }
        let mut cycles = Vec::new();
        cycles_through(st.under, v, free, &mut cycles);
        for c in cycles {
            for &x in &c[1..] {
                free[x] = false;
            }
            st.cycles.push(c);
            go(st, free);
            let c = st.cycles.pop().unwrap();
            for &x in &c[1..] {
                free[x] = true;
            }
        }
        free[v] = true;
    }

    let mut st = State { g, under: &under, span: &span, edges: Vec::new(), cycles: Vec::new(), out: Vec::new() };
    go(&mut st, &mut free);
    Ok(st.out)
}

/// `det H(G[S])` from the elementary expansion.
pub fn determinant_combinatorial(g: &GainGraph, s: &[usize]) -> Result<f64> {
    Ok(elementary_spanning_subgraphs(g, s)?.iter().map(ElementarySubgraph::determinant_term).sum())
}

fn check_order(g: &GainGraph, limits: &Limits) -> Result<()> {
    if g.n() > limits.oracle_n {
        return Err(Error::LimitExceeded { what: "oracle graph order", limit: limits.oracle_n, actual: g.n() });
    }
    Ok(())
}

fn k_subsets(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return Ok(());
    }
    loop {
        f(&idx)?;
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return Ok(());
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `a_k` by summing principal-minor determinants over all `k`-subsets.
pub fn char_coeff_combinatorial(g: &GainGraph, k: usize) -> Result<f64> {
    char_coeff_combinatorial_with(g, k, &Limits::default())
}

pub fn char_coeff_combinatorial_with(g: &GainGraph, k: usize, limits: &Limits) -> Result<f64> {
    check_order(g, limits)?;
    if k == 0 {
        return Ok(1.0);
    }
    if k > g.n() {
        return Err(Error::Precondition(format!("coefficient index {k} exceeds order {}", g.n())));
    }
    let mut total = 0.0;
    k_subsets(g.n(), k, |s| {
        total += elementary_spanning_subgraphs_with(g, s, limits)?
            .iter()
            .map(ElementarySubgraph::determinant_term)
            .sum::<f64>();
        Ok(())
    })?;
    Ok(if k.is_multiple_of(2) { total } else { -total })
}

/// Characteristic coefficients of a graph prepared once and evaluated for
/// many gain assignments. Elementary subgraphs (not necessarily spanning)
/// sharing a vertex count and cycle set are merged into one integer weight.
#[derive(Debug, Clone)]
pub struct ElementaryExpansion {
    n: usize,
    cycles: Vec<Vec<usize>>,
    /// `(k, cycle ids, signed weight)`; the term contributes
    /// `weight · Π 2 Re φ(C)` to `(-1)^k a_k`.
    terms: Vec<(usize, Vec<usize>, i64)>,
}

impl ElementaryExpansion {
    pub fn new(g: &SimpleGraph) -> ElementaryExpansion {
        let n = g.n();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut cycle_index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut weights: HashMap<(usize, Vec<usize>), i64> = HashMap::new();

        struct Walk<'a> {
            g: &'a SimpleGraph,
            k: usize,
            parts: usize,
            chosen: Vec<usize>,
        }

        fn record(
            w: &Walk<'_>,
            weights: &mut HashMap<(usize, Vec<usize>), i64>,
        ) {
            let mut ids = w.chosen.clone();
            ids.sort_unstable();
            let sign = if (w.k - w.parts).is_multiple_of(2) { 1 } else { -1 };
            *weights.entry((w.k, ids)).or_insert(0) += sign;
        }

        #[allow(clippy::too_many_arguments)]
        fn go(
            w: &mut Walk<'_>,
            v: usize,
            free: &mut [bool],
            cycles: &mut Vec<Vec<usize>>,
            cycle_index: &mut HashMap<Vec<usize>, usize>,
            weights: &mut HashMap<(usize, Vec<usize>), i64>,
        ) {
            let n = w.g.n();
            let mut v = v;
            while v < n && !free[v] {
                v += 1;
            }
            if v >= n {
                record(w, weights);
                return;
            }
            // v left uncovered
            free[v] = false;
            go(w, v + 1, free, cycles, cycle_index, weights);
            let g = w.g;
            for &x in g.neighbors(v) {
                if free[x] {
                    free[x] = false;
                    w.k += 2;
                    w.parts += 1;
                    go(w, v + 1, free, cycles, cycle_index, weights);
                    w.k -= 2;
                    w.parts -= 1;
                    free[x] = true;
                }
            }
            let mut through = Vec::new();
            cycles_through(g, v, free, &mut through);
            for c in through {
                let id = *cycle_index.entry(c.clone()).or_insert_with(|| {
                    cycles.push(c.clone());
                    cycles.len() - 1
                });
                for &x in &c[1..] {
                    free[x] = false;
                }
                w.k += c.len();
                w.parts += 1;
                w.chosen.push(id);
                go(w, v + 1, free, cycles, cycle_index, weights);
                w.chosen.pop();
                w.k -= c.len();
                w.parts -= 1;
                for &x in &c[1..] {
                    free[x] = true;
                }
            }
            free[v] = true;
        }

        let mut walk = Walk { g, k: 0, parts: 0, chosen: Vec::new() };
        let mut free = vec![true; n];
        go(&mut walk, 0, &mut free, &mut cycles, &mut cycle_index, &mut weights);

        let mut terms: Vec<(usize, Vec<usize>, i64)> = weights
            .into_iter()
            .filter(|(_, w)| *w != 0)
            .map(|((k, ids), w)| (k, ids, w))
            .collect();
        terms.sort();
        ElementaryExpansion { n, cycles, terms }
    }

    /// Distinct cycles of the prepared graph, canonical orientation.
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// `(a_1, ..., a_n)` given `Re φ(C)` for every cycle in [`Self::cycles`] order.
    pub fn coefficients_from_real_parts(&self, real_parts: &[f64]) -> Vec<f64> {
        let mut signed = vec![0.0f64; self.n + 1];
        for (k, ids, weight) in &self.terms {
            let product = ids.iter().fold(*weight as f64, |acc, &c| acc * 2.0 * real_parts[c]);
            signed[*k] += product;
        }
        (1..=self.n).map(|k| if k % 2 == 0 { signed[k] } else { -signed[k] }).collect()
    }

    /// `(a_1, ..., a_n)` for gains `g` on the prepared underlying graph.
    pub fn coefficients(&self, g: &GainGraph) -> Vec<f64> {
        let real_parts: Vec<f64> = self
            .cycles
            .iter()
            .map(|c| super::cycles::oriented_gain_product(g, c).expect("cycle of prepared graph").re())
            .collect();
        self.coefficients_from_real_parts(&real_parts)
    }

    /// `max{k : |a_k| > 1e-8}`, 0 when every coefficient vanishes.
    pub fn rank(&self, g: &GainGraph) -> usize {
        rank_from_coefficients(&self.coefficients(g))
    }
}

pub fn rank_from_coefficients(coeffs: &[f64]) -> usize {
    coeffs.iter().rposition(|a| a.abs() > COEFF_TOL).map_or(0, |i| i + 1)
}

/// Rank as the index of the last nonzero characteristic coefficient
/// (valid because `H` is diagonalizable).
pub fn rank_combinatorial(g: &GainGraph) -> Result<usize> {
    rank_combinatorial_with(g, &Limits::default())
}

pub fn rank_combinatorial_with(g: &GainGraph, limits: &Limits) -> Result<usize> {
    check_order(g, limits)?;
    Ok(ElementaryExpansion::new(&g.underlying()).rank(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Gain;

    fn cycle_with_gain(l: usize, gain: Gain) -> GainGraph {
        let mut edges: Vec<_> = (1..l).map(|i| (i - 1, i, Gain::ONE)).collect();
        edges.push((l - 1, 0, gain));
        GainGraph::new(l, edges).unwrap()
    }

    #[test]
    fn spanning_enumeration_counts() {
        let c4 = GainGraph::with_unit_gains(&SimpleGraph::cycle(4));
        let subs = elementary_spanning_subgraphs(&c4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(subs.len(), 3);
        assert_eq!(subs.iter().filter(|u| u.cycle_components.len() == 1).count(), 1);

        let p3 = GainGraph::with_unit_gains(&SimpleGraph::path(3));
        assert!(elementary_spanning_subgraphs(&p3, &[0, 1, 2]).unwrap().is_empty());

        let c3 = GainGraph::with_unit_gains(&SimpleGraph::cycle(3));
        let subs = elementary_spanning_subgraphs(&c3, &[0, 1, 2]).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].cycle_components[0].vertices, vec![0, 1, 2]);

        // Empty set: one (empty) elementary subgraph, det of 0x0 is 1.
        assert_eq!(elementary_spanning_subgraphs(&c3, &[]).unwrap().len(), 1);
    }

    #[test]
    fn spanning_enumeration_limit() {
        let g = GainGraph::new(15, []).unwrap();
        let all: Vec<usize> = (0..15).collect();
        assert!(matches!(elementary_spanning_subgraphs(&g, &all), Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn coefficient_examples() {
        let k2 = GainGraph::new(2, [(0, 1, Gain::from_radians(1.1))]).unwrap();
        assert!((char_coeff_combinatorial(&k2, 2).unwrap() + 1.0).abs() < 1e-12);
        let c3 = GainGraph::with_unit_gains(&SimpleGraph::cycle(3));
        assert!((char_coeff_combinatorial(&c3, 3).unwrap() + 2.0).abs() < 1e-12);
        let c4 = GainGraph::with_unit_gains(&SimpleGraph::cycle(4));
        assert_eq!(char_coeff_combinatorial(&c4, 4).unwrap(), 0.0);
        assert_eq!(char_coeff_combinatorial(&c4, 0).unwrap(), 1.0);
        assert!(char_coeff_combinatorial(&c4, 5).is_err());
    }

    #[test]
    fn expansion_agrees_with_subset_sum() {
        let g = GainGraph::new(
            6,
            [
                (0, 1, Gain::I),
                (1, 2, Gain::root_of_unity(1, 8).unwrap()),
                (0, 2, Gain::ONE),
                (2, 3, Gain::MINUS_ONE),
                (3, 4, Gain::from_radians(0.4)),
                (4, 5, Gain::ONE),
                (3, 5, Gain::MINUS_I),
                (1, 4, Gain::ONE),
            ],
        )
        .unwrap();
        let fast = ElementaryExpansion::new(&g.underlying()).coefficients(&g);
        for k in 1..=6 {
            let slow = char_coeff_combinatorial(&g, k).unwrap();
            assert!((fast[k - 1] - slow).abs() < 1e-10, "k={k}: {} vs {slow}", fast[k - 1]);
        }
    }

    #[test]
    fn oracle_ranks() {
        assert_eq!(rank_combinatorial(&cycle_with_gain(4, Gain::ONE)).unwrap(), 2);
        assert_eq!(rank_combinatorial(&cycle_with_gain(3, Gain::I)).unwrap(), 2);
        assert_eq!(rank_combinatorial(&GainGraph::new(4, []).unwrap()).unwrap(), 0);
        assert_eq!(rank_combinatorial(&cycle_with_gain(5, Gain::ONE)).unwrap(), 5);
    }

    #[test]
    fn subset_iteration_covers_binomial() {
        let mut count = 0;
        k_subsets(6, 3, |_| {
            count += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(count, 20);
        let mut seen = Vec::new();
        k_subsets(3, 3, |s| {
            seen.push(s.to_vec());
            Ok(())
        })
        .unwrap();
        assert_eq!(seen, vec![vec![0, 1, 2]]);
    }
}
