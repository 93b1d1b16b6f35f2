//! Exhaustive vertex-deletion searches: odd cycle transversal `b(G)` and the
//! best matching left after deleting a feedback vertex set.

use std::collections::{HashSet, VecDeque};

use super::matching::matching_number;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::Limits;

fn check(g: &SimpleGraph, limits: &Limits, what: &'static str) -> Result<()> {
    if g.n() > limits.transversal_n {
        return Err(Error::LimitExceeded { what, limit: limits.transversal_n, actual: g.n() });
    }
    Ok(())
}

fn masks(g: &SimpleGraph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect()
}

fn bipartite_after(adj: &[u32], removed: u32) -> bool {
    let n = adj.len();
    let mut side = vec![u8::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if removed >> s & 1 == 1 || side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            let mut nb = adj[x] & !removed;
            while nb != 0 {
                let y = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if side[y] == u8::MAX {
                    side[y] = 1 - side[x];
                    queue.push_back(y);
                } else if side[y] == side[x] {
                    return false;
                }
            }
        }
    }
    true
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Visits `k`-subsets of `0..n` as bitmasks in lexicographic order of their sorted elements.
fn first_subset_where(n: usize, k: usize, mut pred: impl FnMut(u32) -> bool) -> Option<u32> {
    fn go(n: usize, k: usize, start: usize, acc: u32, pred: &mut dyn FnMut(u32) -> bool) -> Option<u32> {
        if k == 0 {
            return pred(acc).then_some(acc);
        }
        for v in start..=n - k {
            if let Some(found) = go(n, k - 1, v + 1, acc | (1 << v), pred) {
                return Some(found);
            }
        }
        None
    }
    go(n, k, 0, 0, &mut pred)
}

/// `b(G)`: the minimum `|S|` with `G - S` bipartite, with a lexicographically
/// first witness of that size.
pub fn odd_cycle_transversal(g: &SimpleGraph) -> Result<(usize, Vec<usize>)> {
    odd_cycle_transversal_with(g, &Limits::default())
}

pub fn odd_cycle_transversal_with(g: &SimpleGraph, limits: &Limits) -> Result<(usize, Vec<usize>)> {
    check(g, limits, "odd cycle transversal order")?;
    let adj = masks(g);
    for k in 0..=g.n() {
        if let Some(s) = first_subset_where(g.n(), k, |m| bipartite_after(&adj, m)) {
            return Ok((k, bits(s)));
        }
    }
    unreachable!("deleting every vertex leaves a bipartite graph")
}

/// Shortest cycle in `G - removed` by BFS from every vertex, as a vertex list.
fn shortest_cycle(adj: &[u32], removed: u32) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut best: Option<Vec<usize>> = None;
    for s in 0..n {
        if removed >> s & 1 == 1 {
            continue;
        }
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let mut nb = adj[x] & !removed;
            while nb != 0 {
                let y = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    let len = dist[x] + dist[y] + 1;
                    if best.as_ref().is_none_or(|b| len < b.len()) {
                        // Walk both ends back to their meeting point.
                        let (mut a, mut b) = (x, y);
                        let mut left = vec![a];
                        let mut right = vec![b];
                        while dist[a] > dist[b] {
                            a = parent[a];
                            left.push(a);
                        }
                        while dist[b] > dist[a] {
                            b = parent[b];
                            right.push(b);
                        }
                        while a != b {
                            a = parent[a];
                            b = parent[b];
                            left.push(a);
                            right.push(b);
                        }
                        right.pop();
                        left.extend(right.into_iter().rev());
                        let mut cyc = left;
                        cyc.sort_unstable();
                        cyc.dedup();
                        best = Some(cyc);
                    }
                }
            }
        }
    }
    best
}

/// `max m(G - V0)` over proper subsets `V0` (the empty set included) with
/// `G - V0` acyclic. The matching number of an induced subgraph only drops as
/// more vertices are deleted, so it suffices to branch on the vertices of a
/// shortest remaining cycle until none is left. Ties are broken by smaller
/// `|V0|`, then lexicographically.
pub fn max_acyclic_deletion_matching(g: &SimpleGraph) -> Result<(usize, Vec<usize>)> {
    max_acyclic_deletion_matching_with(g, &Limits::default())
}

pub fn max_acyclic_deletion_matching_with(g: &SimpleGraph, limits: &Limits) -> Result<(usize, Vec<usize>)> {
    check(g, limits, "acyclic deletion order")?;
    let adj = masks(g);
    let mut seen: HashSet<u32> = HashSet::new();
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut stack = vec![0u32];
    while let Some(removed) = stack.pop() {
        if !seen.insert(removed) {
            continue;
        }
        match shortest_cycle(&adj, removed) {
            Some(cycle) => {
                for v in cycle {
                    stack.push(removed | (1 << v));
                }
            }
            None => {
                let set = bits(removed);
                let value = matching_number(&g.delete_vertices(&set)?.graph);
                let better = match &best {
                    None => true,
                    Some((bv, bs)) => value > *bv || (value == *bv && (set.len(), &set) < (bs.len(), bs)),
                };
                if better {
                    best = Some((value, set));
                }
            }
        }
    }
    Ok(best.expect("the search always reaches an acyclic remainder"))
}
