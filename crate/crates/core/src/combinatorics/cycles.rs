//! Simple cycles and their gain products.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Gain, GainGraph, SimpleGraph};

/// A simple cycle in canonical orientation with its gain product
/// `φ(C) = φ(v1 v2)·φ(v2 v3)···φ(vl v1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleRecord {
    pub vertices: Vec<usize>,
    pub length: usize,
    pub gain_product: Gain,
    pub real_part: f64,
}

/// Rotates/reflects a cyclic sequence to: lowest vertex first, then its
/// lower-indexed neighbor.
pub fn canonical_orientation(seq: &[usize]) -> Vec<usize> {
    let l = seq.len();
    let (pos, _) = seq.iter().enumerate().min_by_key(|&(_, &v)| v).expect("nonempty cycle");
    let next = seq[(pos + 1) % l];
    let prev = seq[(pos + l - 1) % l];
    if next <= prev {
        (0..l).map(|i| seq[(pos + i) % l]).collect()
    } else {
        (0..l).map(|i| seq[(pos + l - i) % l]).collect()
    }
}

/// Gain product along `seq` as given (closing edge included).
pub fn oriented_gain_product(g: &GainGraph, seq: &[usize]) -> Result<Gain> {
    let l = seq.len();
    let mut product = Gain::ONE;
    for i in 0..l {
        let gain = g.gain(seq[i], seq[(i + 1) % l]).ok_or_else(|| Error::NotACycle(seq.to_vec()))?;
        product = product.mul(&gain);
    }
    Ok(product)
}

impl CycleRecord {
    /// Validates that `seq` is a simple cycle of `g` (length >= 3, distinct
    /// vertices, consecutive vertices adjacent) and stores it canonically.
    pub fn new(g: &GainGraph, seq: &[usize]) -> Result<CycleRecord> {
        let l = seq.len();
        if l < 3 || seq.iter().any(|&v| v >= g.n()) {
            return Err(Error::NotACycle(seq.to_vec()));
        }
        let mut sorted = seq.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotACycle(seq.to_vec()));
        }
        let vertices = canonical_orientation(seq);
        let gain_product = oriented_gain_product(g, &vertices)?;
        Ok(CycleRecord { length: l, real_part: gain_product.re(), vertices, gain_product })
    }

    /// The same cycle traversed the other way: `v1 vl ... v2`, product conjugated.
    pub fn reversed_sequence(&self) -> Vec<usize> {
        let mut rev = Vec::with_capacity(self.length);
        rev.push(self.vertices[0]);
        rev.extend(self.vertices[1..].iter().rev());
        rev
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleSummary {
    pub vertices: Vec<usize>,
    pub length: usize,
    pub gain: String,
    pub gain_re: f64,
    pub gain_im: f64,
}

impl From<&CycleRecord> for CycleSummary {
    fn from(c: &CycleRecord) -> Self {
        CycleSummary {
            vertices: c.vertices.clone(),
            length: c.length,
            gain: c.gain_product.token(),
            gain_re: c.gain_product.value().re,
            gain_im: c.gain_product.value().im,
        }
    }
}

/// All simple cycles, each once, in canonical orientation, ordered by
/// starting (lowest) vertex. Backtracks from each start `s` through vertices
/// `> s`, pruning branches that can no longer return to `s`.
pub fn enumerate_cycles(g: &SimpleGraph, limit: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    let mut path = Vec::new();
    for s in 0..n {
        // Vertices > s that can reach a neighbor of s without passing through s.
        let reachable = reach_above(g, s);
        if g.neighbors(s).iter().filter(|&&w| w > s).count() < 2 {
            continue;
        }
        path.clear();
        path.push(s);
        on_path[s] = true;
        extend(g, s, &reachable, &mut path, &mut on_path, &mut out, limit)?;
        on_path[s] = false;
    }
    Ok(out)
}

fn reach_above(g: &SimpleGraph, s: usize) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    let mut stack: Vec<usize> = g.neighbors(s).iter().copied().filter(|&w| w > s).collect();
    for &w in &stack {
        seen[w] = true;
    }
    while let Some(x) = stack.pop() {
        for &y in g.neighbors(x) {
            if y > s && !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// Can `from` reach some neighbor of `s` (other than through the current path)?
fn can_close(g: &SimpleGraph, s: usize, from: usize, on_path: &[bool], allowed: &[bool]) -> bool {
    if g.has_edge(from, s) {
        return true;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(x) = stack.pop() {
        for &y in g.neighbors(x) {
            if y == s && x != from {
                return true;
            }
            if y > s && allowed[y] && !on_path[y] && !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    false
}

fn extend(
    g: &SimpleGraph,
    s: usize,
    allowed: &[bool],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) -> Result<()> {
    let v = *path.last().unwrap();
    for &w in g.neighbors(v) {
        if w == s && path.len() >= 3 && path[1] < v {
            if out.len() >= limit {
                return Err(Error::LimitExceeded { what: "simple cycle count", limit, actual: limit + 1 });
            }
            out.push(path.clone());
        } else if w > s && allowed[w] && !on_path[w] {
            on_path[w] = true;
            if can_close(g, s, w, on_path, allowed) {
                path.push(w);
                extend(g, s, allowed, path, on_path, out, limit)?;
                path.pop();
            }
            on_path[w] = false;
        }
    }
    Ok(())
}

/// All simple cycles of `g` as records.
pub fn cycle_records(g: &GainGraph, limit: usize) -> Result<Vec<CycleRecord>> {
    enumerate_cycles(&g.underlying(), limit)?
        .iter()
        .map(|seq| CycleRecord::new(g, seq))
        .collect()
}
