//! Maximum cardinality matching in general graphs.

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

const NONE: usize = usize::MAX;

/// Edmonds' blossom algorithm: repeated augmenting-path search by BFS from
/// each exposed vertex, shrinking odd cycles (blossoms) onto their base.
struct Blossom<'a> {
    g: &'a SimpleGraph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    in_tree: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: std::collections::VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a SimpleGraph) -> Self {
        let n = g.n();
        Blossom {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            in_tree: vec![false; n],
            in_blossom: vec![false; n],
            queue: Default::default(),
        }
    }

    fn greedy_start(&mut self) {
        for &(u, v) in self.g.edges() {
            if self.mate[u] == NONE && self.mate[v] == NONE {
                self.mate[u] = v;
                self.mate[v] = u;
            }
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Returns the exposed endpoint of an augmenting path from `root`, if any.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.in_tree.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.in_tree[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.g.degree(v) {
                let to = self.g.neighbors(v)[idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.in_tree[i] {
                                self.in_tree[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.in_tree[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }

    fn run(mut self) -> Vec<usize> {
        self.greedy_start();
        for root in 0..self.g.n() {
            if self.mate[root] == NONE {
                if let Some(end) = self.find_path(root) {
                    self.augment(end);
                }
            }
        }
        self.mate
    }
}

/// A maximum matching as sorted `(u, v)` pairs with `u < v`.
pub fn maximum_matching(g: &SimpleGraph) -> Vec<(usize, usize)> {
    let mate = Blossom::new(g).run();
    mate.iter()
        .enumerate()
        .filter(|&(u, &v)| v != NONE && u < v)
        .map(|(u, &v)| (u, v))
        .collect()
}

/// `m(G)`.
pub fn matching_number(g: &SimpleGraph) -> usize {
    maximum_matching(g).len()
}

/// Exhaustive search over matchings; `n <= 12`.
pub fn matching_number_bruteforce(g: &SimpleGraph) -> Result<usize> {
    const LIMIT: usize = 12;
    if g.n() > LIMIT {
        return Err(Error::LimitExceeded { what: "brute-force matching order", limit: LIMIT, actual: g.n() });
    }
    fn go(g: &SimpleGraph, v: usize, used: &mut [bool]) -> usize {
        let n = g.n();
        let mut v = v;
        while v < n && used[v] {
            v += 1;
        }
        if v >= n {
            return 0;
        }
        used[v] = true;
        let mut best = go(g, v + 1, used);
        for &w in g.neighbors(v) {
            if !used[w] {
                used[w] = true;
                best = best.max(1 + go(g, v + 1, used));
                used[w] = false;
            }
        }
        used[v] = false;
        best
    }
    Ok(go(g, 0, &mut vec![false; g.n()]))
}
