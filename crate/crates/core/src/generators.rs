//! Seeded instance generation: random connected gain graphs, exhaustive
//! streams of small graphs and gain assignments, and extremal constructors.

use std::fmt;
use std::str::FromStr;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::cycle_records;
use crate::error::{Error, Result};
use crate::graph::{serialize_gain_graph, Gain, GainGraph, SimpleGraph};
use crate::theorems::{Extremal, GraphStructure, TYPE_A_TOL};
use crate::Limits;

/// Float gains keep every cycle product at least this far from the Type E
/// axis and from the Type A target.
pub const FLOAT_GAIN_MARGIN: f64 = 1e-6;

const FLOAT_RESAMPLES: usize = 1000;
const EXTREMAL_RETRIES: usize = 500;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GainKind {
    /// `{1}`.
    Trivial,
    /// `{1, -1}`.
    Signed,
    /// `{1, -1, i, -i}`.
    Gaussian,
    /// `e^(2πip/q)`, `p = 0..q`.
    Roots(u64),
    /// Uniform angle, inexact.
    UniformFloat,
}

impl GainKind {
    /// Order of the gain group, `None` for float gains.
    pub fn order(self) -> Option<u64> {
        match self {
            GainKind::Trivial => Some(1),
            GainKind::Signed => Some(2),
            GainKind::Gaussian => Some(4),
            GainKind::Roots(q) => Some(q),
            GainKind::UniformFloat => None,
        }
    }

    pub fn sample<R: Rng>(self, rng: &mut R) -> Gain {
        match self.order() {
            Some(q) => element(rng.gen_range(0..q), q),
            None => Gain::from_radians(rng.gen_range(0.0..std::f64::consts::TAU)),
        }
    }
}

fn element(p: u64, q: u64) -> Gain {
    Gain::root_of_unity(p as i64, q).expect("q >= 1")
}

impl FromStr for GainKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "trivial" => Ok(GainKind::Trivial),
            "signed" => Ok(GainKind::Signed),
            "gaussian" => Ok(GainKind::Gaussian),
            "uniform" => Ok(GainKind::UniformFloat),
            _ => match s.strip_prefix("roots:").map(str::parse::<u64>) {
                Some(Ok(q)) if q >= 1 => Ok(GainKind::Roots(q)),
                Some(_) => Err(format!("bad root order in {s:?}, expected roots:Q with Q >= 1")),
                None => Err(format!("unknown gain set {s:?} (trivial|signed|gaussian|roots:Q|uniform)")),
            },
        }
    }
}

impl fmt::Display for GainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GainKind::Trivial => f.write_str("trivial"),
            GainKind::Signed => f.write_str("signed"),
            GainKind::Gaussian => f.write_str("gaussian"),
            GainKind::Roots(q) => write!(f, "roots:{q}"),
            GainKind::UniformFloat => f.write_str("uniform"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GainSetSpec {
    pub kind: GainKind,
    pub seed: u64,
}

impl GainSetSpec {
    pub fn new(kind: GainKind, seed: u64) -> GainSetSpec {
        GainSetSpec { kind, seed }
    }
}

/// Uniform labeled tree from a random Prüfer sequence.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf remains");
        edges.push((leaf.min(v), leaf.max(v)));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Uniform spanning tree plus `extra_edges` distinct non-tree edges, so that
/// the cyclomatic number is `extra_edges`.
pub fn random_connected_graph(n: usize, extra_edges: usize, seed: u64) -> Result<SimpleGraph> {
    if n == 0 {
        return Err(Error::Precondition("a connected graph needs at least one vertex".into()));
    }
    let max_extra = n * (n - 1) / 2 - (n - 1);
    if extra_edges > max_extra {
        return Err(Error::Precondition(format!(
            "{extra_edges} extra edges requested, at most {max_extra} fit on {n} vertices"
        )));
    }
    let mut rng = rng(seed);
    let mut edges = random_tree(n, &mut rng);
    let mut in_tree = vec![vec![false; n]; n];
    for &(u, v) in &edges {
        in_tree[u][v] = true;
    }
    let candidates: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !in_tree[u][v]).collect();
    edges.extend(candidates.choose_multiple(&mut rng, extra_edges).copied());
    SimpleGraph::new(n, edges)
}

fn float_gains_clear_of_boundaries(g: &GainGraph) -> bool {
    let Ok(records) = cycle_records(g, Limits::default().max_cycles) else {
        return true;
    };
    records.iter().all(|c| {
        if c.length % 2 == 1 {
            c.real_part.abs() > FLOAT_GAIN_MARGIN
        } else {
            let target = if (c.length / 2) % 2 == 0 { 1.0 } else { -1.0 };
            (c.gain_product.value() - target).norm() > FLOAT_GAIN_MARGIN.max(TYPE_A_TOL)
        }
    })
}

/// Independent gains from `spec` on every edge; float gains are resampled
/// until every cycle product is clear of the classification boundaries.
pub fn assign_gains(g: &SimpleGraph, spec: GainSetSpec) -> GainGraph {
    let mut rng = rng(spec.seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let gains: Vec<Gain> = (0..g.edge_count()).map(|_| spec.kind.sample(rng)).collect();
        GainGraph::from_simple(g, &gains).expect("one gain per edge")
    };
    let mut out = draw(&mut rng);
    if spec.kind == GainKind::UniformFloat {
        for _ in 0..FLOAT_RESAMPLES {
            if float_gains_clear_of_boundaries(&out) {
                break;
            }
            out = draw(&mut rng);
        }
    }
    out
}

/// The cycle `0 1 ... l-1` with every gain 1 except `φ(l-1 → 0) = target`,
/// so the canonical gain product is `target`.
pub fn make_cycle(l: usize, target: Gain) -> Result<GainGraph> {
    if l < 3 {
        return Err(Error::Precondition(format!("cycle length {l} < 3")));
    }
    let mut edges: Vec<_> = (1..l).map(|i| (i - 1, i, Gain::ONE)).collect();
    edges.push((l - 1, 0, target));
    GainGraph::new(l, edges)
}

/// The example graph with two 4-cycles through a common center: vertex 0 is
/// the center, `u = 1`, `v = 4`, and 7 is a pendant at the center.
pub fn figure_one() -> SimpleGraph {
    SimpleGraph::new(8, [(0, 1), (0, 3), (0, 4), (0, 6), (0, 7), (1, 2), (2, 3), (4, 5), (5, 6)])
        .expect("static edge list")
}

/// Gains along a cycle drawn from `roots(8)`, with the last one fixing the product.
fn cycle_gains<R: Rng>(l: usize, product: Gain, rng: &mut R) -> Vec<Gain> {
    let mut gains: Vec<Gain> = (0..l - 1).map(|_| GainKind::Roots(8).sample(rng)).collect();
    let partial = gains.iter().fold(Gain::ONE, |acc, g| acc.mul(g));
    gains.push(partial.conj().mul(&product));
    gains
}

fn extremal_product<R: Rng>(kind: Extremal, l: usize, rng: &mut R) -> Gain {
    match kind {
        Extremal::Lower => Gain::sign_power(l / 2),
        // Any eighth root off the imaginary axis, so Type C or D.
        Extremal::Upper => element(*[0, 1, 3, 4, 5, 7].choose(rng).expect("nonempty"), 8),
    }
}

/// Glue tree over `k` cycle nodes (ids `0..k`) and fresh vertices (ids `k..`),
/// with no two cycle nodes adjacent. Returns the node count and edges.
fn glue_tree<R: Rng>(k: usize, rng: &mut R) -> (usize, Vec<(usize, usize)>) {
    let mut count = k;
    let mut edges = Vec::new();
    // Random tree on the cycle nodes, each edge subdivided.
    let skeleton = random_tree(k, rng);
    for (a, b) in skeleton {
        let internal = rng.gen_range(1..=3);
        let mut prev = a;
        for _ in 0..internal {
            edges.push((prev, count));
            prev = count;
            count += 1;
        }
        edges.push((prev, b));
    }
    // Pendant paths hung on cycle nodes and fresh vertices.
    let extra = rng.gen_range(0..=k + 3);
    for _ in 0..extra {
        let at = rng.gen_range(0..count);
        let len = rng.gen_range(1..=3);
        let mut prev = at;
        for _ in 0..len {
            edges.push((prev, count));
            prev = count;
            count += 1;
        }
    }
    // Hang a leaf on most fresh neighbours of cycle nodes, which keeps
    // cycle nodes out of some maximum matching.
    let mut leaves = Vec::new();
    for &(a, b) in &edges {
        for (x, y) in [(a, b), (b, a)] {
            if x < k && y >= k && rng.gen_bool(0.7) {
                leaves.push(y);
            }
        }
    }
    leaves.sort_unstable();
    leaves.dedup();
    for y in leaves {
        edges.push((y, count));
        count += 1;
    }
    (count, edges)
}

/// Disjoint cycles with Type A gains (`lower`) or Type C/D gains (`upper`),
/// glued by a random tree whose paths between cycles have length at least 2,
/// relabeled at random; candidates are regenerated until the structural
/// predicate holds.
pub fn make_extremal(kind: Extremal, num_cycles: usize, cycle_lengths: &[usize], seed: u64) -> Result<GainGraph> {
    if cycle_lengths.len() != num_cycles {
        return Err(Error::Precondition(format!(
            "{num_cycles} cycles requested but {} lengths given",
            cycle_lengths.len()
        )));
    }
    for &l in cycle_lengths {
        let ok = match kind {
            Extremal::Lower => l >= 4 && l % 2 == 0,
            Extremal::Upper => l >= 3 && l % 2 == 1,
        };
        if !ok {
            return Err(Error::Precondition(format!("cycle length {l} not allowed for {kind:?}-optimal graphs")));
        }
    }
    let mut rng = rng(seed);
    let mut last = String::new();
    for _ in 0..EXTREMAL_RETRIES {
        let candidate = extremal_candidate(kind, cycle_lengths, &mut rng)?;
        let structure = GraphStructure::with_limits(&candidate.underlying(), &Limits { cross_check_n: 0, ..Limits::default() });
        if structure.structural(&candidate, kind).holds {
            return Ok(candidate);
        }
        last = serialize_gain_graph(&candidate);
    }
    Err(Error::RetryBudget { attempts: EXTREMAL_RETRIES, last })
}

fn extremal_candidate<R: Rng>(kind: Extremal, lengths: &[usize], rng: &mut R) -> Result<GainGraph> {
    let k = lengths.len();
    let (nodes, glue) = if k == 0 {
        let n = rng.gen_range(1..=8);
        (n, random_tree(n, rng))
    } else {
        glue_tree(k, rng)
    };
    // Cycle node i occupies vertices offset[i]..offset[i] + lengths[i];
    // fresh glue node j >= k becomes vertex base + (j - k).
    let mut offset = Vec::with_capacity(k);
    let mut n = 0;
    for &l in lengths {
        offset.push(n);
        n += l;
    }
    let base = n;
    let fresh = nodes - k;
    n += fresh;
    let mut edges: Vec<(usize, usize, Gain)> = Vec::new();
    for (i, &l) in lengths.iter().enumerate() {
        let gains = cycle_gains(l, extremal_product(kind, l, rng), rng);
        for (j, gain) in gains.into_iter().enumerate() {
            edges.push((offset[i] + j, offset[i] + (j + 1) % l, gain));
        }
    }
    let place = |node: usize, rng: &mut R| -> usize {
        if k == 0 {
            node
        } else if node < k {
            offset[node] + rng.gen_range(0..lengths[node])
        } else {
            base + node - k
        }
    };
    for (a, b) in glue {
        let (x, y) = (place(a, rng), place(b, rng));
        edges.push((x, y, GainKind::Roots(8).sample(rng)));
    }
    if k == 0 {
        n = nodes;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    GainGraph::new(n, edges.into_iter().map(|(a, b, g)| (perm[a], perm[b], g)))
}

/// Every connected labeled graph on `2..=n_max` vertices, by vertex count and
/// then by edge bitmask over the pairs `(0,1), (0,2), ..., (n-2,n-1)`.
pub fn enumerate_connected_graphs(n_max: usize) -> Result<ConnectedGraphs> {
    if n_max > 8 {
        return Err(Error::LimitExceeded { what: "exhaustive enumeration order", limit: 8, actual: n_max });
    }
    Ok(ConnectedGraphs { n_max, n: 2, pairs: pairs(2), mask: 0 })
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

pub struct ConnectedGraphs {
    n_max: usize,
    n: usize,
    pairs: Vec<(usize, usize)>,
    mask: u64,
}

fn connected_mask(n: usize, adj: &[u8]) -> bool {
    let full = if n == 8 { u8::MAX } else { (1u8 << n) - 1 };
    let mut seen = 1u8;
    let mut frontier = 1u8;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == full
}

impl Iterator for ConnectedGraphs {
    type Item = SimpleGraph;

    fn next(&mut self) -> Option<SimpleGraph> {
        loop {
            if self.n > self.n_max {
                return None;
            }
            if self.mask >= 1u64 << self.pairs.len() {
                self.n += 1;
                self.pairs = pairs(self.n);
                self.mask = 0;
                continue;
            }
            let mask = self.mask;
            self.mask += 1;
            let mut adj = [0u8; 8];
            let mut bits = mask;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let (u, v) = self.pairs[i];
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            if connected_mask(self.n, &adj) {
                let edges = (0..self.pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| self.pairs[i]);
                return Some(SimpleGraph::new(self.n, edges).expect("pairs are distinct"));
            }
        }
    }
}

/// Calls `visit` on every connected labeled graph on `2..=n_max` vertices
/// whose cycles are pairwise vertex-disjoint. Edges are added in pair order;
/// an edge joining two already connected vertices is accepted only if the
/// path it closes avoids all existing cycles.
pub fn visit_connected_cacti(n_max: usize, mut visit: impl FnMut(&SimpleGraph)) -> Result<()> {
    if n_max > 8 {
        return Err(Error::LimitExceeded { what: "exhaustive enumeration order", limit: 8, actual: n_max });
    }
    for n in 2..=n_max {
        let ps = pairs(n);
        let mut chosen = Vec::new();
        cactus_walk(n, &ps, 0, &mut [0u8; 8], 0, &mut chosen, &mut visit);
    }
    Ok(())
}

/// [`visit_connected_cacti`] collected; about two million graphs at `n_max = 8`.
pub fn enumerate_connected_cacti(n_max: usize) -> Result<Vec<SimpleGraph>> {
    let mut out = Vec::new();
    visit_connected_cacti(n_max, |g| out.push(g.clone()))?;
    Ok(out)
}

/// Path from `u` to `v` through vertices outside `blocked`, as a bitmask.
fn forest_path(adj: &[u8; 8], blocked: u8, u: usize, v: usize) -> Option<u8> {
    let mut parent = [usize::MAX; 8];
    parent[u] = u;
    let mut queue = vec![u];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let mut nb = adj[x] & !blocked;
        while nb != 0 {
            let y = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push(y);
            }
        }
    }
    if parent[v] == usize::MAX {
        return None;
    }
    let mut mask = 1u8 << v;
    let mut x = v;
    while x != u {
        x = parent[x];
        mask |= 1 << x;
    }
    Some(mask)
}

fn cactus_walk(
    n: usize,
    ps: &[(usize, usize)],
    i: usize,
    adj: &mut [u8; 8],
    on_cycle: u8,
    chosen: &mut Vec<(usize, usize)>,
    visit: &mut dyn FnMut(&SimpleGraph),
) {
    if i == ps.len() {
        if connected_mask(n, &adj[..n]) {
            visit(&SimpleGraph::new(n, chosen.iter().copied()).expect("pairs are distinct"));
        }
        return;
    }
    cactus_walk(n, ps, i + 1, adj, on_cycle, chosen, visit);
    let (u, v) = ps[i];
    let closes = if (on_cycle >> u | on_cycle >> v) & 1 == 1 {
        // Both endpoints must avoid existing cycles if they are already joined.
        match forest_path(adj, 0, u, v) {
            None => Some(0),
            Some(_) => None,
        }
    } else {
        match forest_path(adj, 0, u, v) {
            None => Some(0),
            Some(_) => forest_path(adj, on_cycle, u, v),
        }
    };
    let Some(new_cycle) = closes else { return };
    adj[u] |= 1 << v;
    adj[v] |= 1 << u;
    chosen.push((u, v));
    cactus_walk(n, ps, i + 1, adj, on_cycle | new_cycle, chosen, visit);
    chosen.pop();
    adj[u] &= !(1 << v);
    adj[v] &= !(1 << u);
}

/// Representatives of the switching classes of `roots(q)` assignments on `g`,
/// one gain per edge in edge order. A spanning forest is fixed to gain 1 and
/// the `c(G)` remaining edges range over all `q^c` choices, or over `cap`
/// distinct choices drawn deterministically from `seed` when `q^c > cap`.
/// Each representative is then switched by random `roots(q)` vertex gains so
/// forest edges are not all 1.
pub fn switching_class_assignments(g: &SimpleGraph, q: u64, cap: usize, seed: u64) -> Result<Vec<Vec<Gain>>> {
    if q == 0 {
        return Err(Error::Precondition("gain group order must be at least 1".into()));
    }
    if cap == 0 {
        return Err(Error::Precondition("assignment cap must be at least 1".into()));
    }
    let cotree = cotree_edges(g);
    let c = cotree.len() as u32;
    let total = (q as u128).checked_pow(c);
    let mut rng = rng(seed);
    let indices: Vec<u128> = match total {
        Some(t) if t <= cap as u128 => (0..t).collect(),
        Some(t) if t <= usize::MAX as u128 => {
            let mut v: Vec<u128> = index::sample(&mut rng, t as usize, cap).into_iter().map(|i| i as u128).collect();
            v.sort_unstable();
            v
        }
        _ => {
            // Too many to index; draw digit strings directly.
            let mut seen = std::collections::BTreeSet::new();
            while seen.len() < cap {
                let digits: Vec<u64> = (0..c).map(|_| rng.gen_range(0..q)).collect();
                seen.insert(digits);
            }
            return Ok(seen.into_iter().map(|d| realize(g, &cotree, &d, q, &mut rng)).collect());
        }
    };
    Ok(indices
        .into_iter()
        .map(|mut idx| {
            let digits: Vec<u64> = (0..c)
                .map(|_| {
                    let d = (idx % q as u128) as u64;
                    idx /= q as u128;
                    d
                })
                .collect();
            realize(g, &cotree, &digits, q, &mut rng)
        })
        .collect())
}

/// Edge indices not in the BFS spanning forest.
fn cotree_edges(g: &SimpleGraph) -> Vec<usize> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut tree = std::collections::HashSet::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    tree.insert((x.min(y), x.max(y)));
                    queue.push_back(y);
                }
            }
        }
    }
    (0..g.edge_count()).filter(|&i| !tree.contains(&g.edges()[i])).collect()
}

fn realize<R: Rng>(g: &SimpleGraph, cotree: &[usize], digits: &[u64], q: u64, rng: &mut R) -> Vec<Gain> {
    let mut gains = vec![Gain::ONE; g.edge_count()];
    for (&e, &d) in cotree.iter().zip(digits) {
        gains[e] = element(d, q);
    }
    let s: Vec<Gain> = (0..g.n()).map(|_| element(rng.gen_range(0..q), q)).collect();
    g.edges()
        .iter()
        .zip(&gains)
        .map(|(&(u, v), gain)| s[u].conj().mul(gain).mul(&s[v]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{cycles_pairwise_disjoint, cyclomatic_number, oriented_gain_product, CycleRecord};
    use crate::theorems::{classify_gain, CycleType};

    #[test]
    fn random_graph_shapes() {
        for seed in 0..20 {
            let t = random_connected_graph(5, 0, seed).unwrap();
            assert!(t.is_connected() && t.is_acyclic());
            let g = random_connected_graph(6, 2, seed).unwrap();
            assert!(g.is_connected());
            assert_eq!(cyclomatic_number(&g), 2);
        }
        assert_eq!(random_connected_graph(4, 3, 9).unwrap(), SimpleGraph::complete(4));
        assert!(random_connected_graph(4, 4, 9).is_err());
        assert!(random_connected_graph(0, 0, 9).is_err());
        assert_eq!(random_connected_graph(1, 0, 9).unwrap().n(), 1);
    }

    #[test]
    fn reproducible() {
        let a = assign_gains(&random_connected_graph(9, 3, 77).unwrap(), GainSetSpec::new(GainKind::UniformFloat, 5));
        let b = assign_gains(&random_connected_graph(9, 3, 77).unwrap(), GainSetSpec::new(GainKind::UniformFloat, 5));
        assert_eq!(serialize_gain_graph(&a), serialize_gain_graph(&b));
    }

    #[test]
    fn gain_sets() {
        let g = random_connected_graph(8, 4, 1).unwrap();
        let trivial = assign_gains(&g, GainSetSpec::new(GainKind::Trivial, 1));
        assert!(trivial.edges().iter().all(|e| e.gain == Gain::ONE));
        let signed = assign_gains(&g, GainSetSpec::new(GainKind::Signed, 1));
        assert!(signed.edges().iter().all(|e| e.gain == Gain::ONE || e.gain == Gain::MINUS_ONE));
        let roots = assign_gains(&g, GainSetSpec::new(GainKind::Roots(8), 1));
        assert!(roots.edges().iter().all(|e| 8 % e.gain.exact_angle().unwrap().den() == 0));
        let float = assign_gains(&g, GainSetSpec::new(GainKind::UniformFloat, 1));
        assert!(float.edges().iter().all(|e| (e.gain.value().norm() - 1.0).abs() < 1e-15));
        assert_eq!("roots:8".parse::<GainKind>().unwrap(), GainKind::Roots(8));
        assert!("roots:0".parse::<GainKind>().is_err());
        assert!("octonion".parse::<GainKind>().is_err());
    }

    #[test]
    fn cycle_targets() {
        for (l, target, t) in [(4, Gain::ONE, CycleType::A), (4, Gain::MINUS_ONE, CycleType::B), (3, Gain::I, CycleType::E)] {
            let g = make_cycle(l, target).unwrap();
            let seq: Vec<usize> = (0..l).collect();
            let r = CycleRecord::new(&g, &seq).unwrap();
            assert_eq!(r.gain_product, target);
            assert_eq!(classify_gain(l, &r.gain_product), t);
        }
        let z = Gain::from_radians(0.3);
        let g = make_cycle(7, z).unwrap();
        let p = oriented_gain_product(&g, &(0..7).collect::<Vec<_>>()).unwrap();
        assert!((p.value() - z.value()).norm() < 1e-12);
        assert!(make_cycle(2, Gain::ONE).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_connected_graphs(2).unwrap().count(), 1);
        assert_eq!(enumerate_connected_graphs(3).unwrap().count(), 5);
        assert_eq!(enumerate_connected_graphs(4).unwrap().filter(|g| g.n() == 4).count(), 38);
        assert_eq!(enumerate_connected_graphs(5).unwrap().filter(|g| g.n() == 5).count(), 728);
        assert!(enumerate_connected_graphs(9).is_err());
    }

    #[test]
    fn cacti_match_filtered_enumeration() {
        let cacti = enumerate_connected_cacti(6).unwrap();
        let filtered: Vec<SimpleGraph> =
            enumerate_connected_graphs(6).unwrap().filter(|g| cycles_pairwise_disjoint(g).is_disjoint()).collect();
        assert_eq!(cacti.len(), filtered.len());
        let mut a: Vec<_> = cacti.iter().map(|g| (g.n(), g.edges().to_vec())).collect();
        let mut b: Vec<_> = filtered.iter().map(|g| (g.n(), g.edges().to_vec())).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn switching_classes_cover_cycle_gains() {
        let g = figure_one();
        let all = switching_class_assignments(&g, 4, 1000, 3).unwrap();
        assert_eq!(all.len(), 16);
        let mut seen = std::collections::BTreeSet::new();
        for gains in &all {
            let gg = GainGraph::from_simple(&g, gains).unwrap();
            let key: Vec<String> = [vec![0, 1, 2, 3], vec![0, 4, 5, 6]]
                .iter()
                .map(|c| oriented_gain_product(&gg, c).unwrap().token())
                .collect();
            seen.insert(key);
        }
        assert_eq!(seen.len(), 16);
        let capped = switching_class_assignments(&SimpleGraph::complete(5), 8, 50, 3).unwrap();
        assert_eq!(capped.len(), 50);
        assert_eq!(capped, switching_class_assignments(&SimpleGraph::complete(5), 8, 50, 3).unwrap());
    }

    #[test]
    fn extremal_outputs_pass_predicate() {
        for seed in 0..10 {
            let g = make_extremal(Extremal::Lower, 2, &[4, 6], seed).unwrap();
            let s = GraphStructure::new(&g.underlying());
            assert!(g.underlying().is_connected());
            assert!(s.structural(&g, Extremal::Lower).holds);
            let g = make_extremal(Extremal::Upper, 2, &[3, 5], seed).unwrap();
            assert!(GraphStructure::new(&g.underlying()).structural(&g, Extremal::Upper).holds);
        }
        assert!(make_extremal(Extremal::Lower, 1, &[5], 0).is_err());
        assert!(make_extremal(Extremal::Upper, 2, &[3], 0).is_err());
    }
}
