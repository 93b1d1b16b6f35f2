//! Report building behind the `gainrank` binary. Every command produces one
//! JSON document carrying `schema_version`; the text output is a rendering of
//! that document.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::combinatorics::{
    condition_iii_values, cycle_records, cycles_pairwise_disjoint, ConditionIii, CycleDisjointness,
};
use crate::error::{Error, Result};
use crate::generators::{
    assign_gains, enumerate_connected_graphs, random_connected_graph, rng, switching_class_assignments,
    visit_connected_cacti, GainKind, GainSetSpec,
};
use crate::graph::{parse_gain_graph, serialize_gain_graph, GainGraph, SimpleGraph};
use crate::spectral::{hermitian_adjacency, inertia, rank_with, InertiaResult, RankMode};
use crate::theorems::{
    check_t30_with, check_t60_with, classify_gain, pendant_reduction, vertex_deletion, BoundReport, CycleType,
    GraphStructure, OptimalityVerdict,
};
use crate::Limits;

pub const SCHEMA_VERSION: &str = "1";

/// Environment variable holding the worker count for `verify` and `enumerate`.
pub const WORKERS_ENV: &str = "GAINRANK_WORKERS";

/// Failures retained in a report; further ones are only counted.
const MAX_REPORTED_FAILURES: usize = 100;

pub fn read_graph(path: &Path) -> Result<GainGraph> {
    let bytes = fs::read(path).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_gain_graph(&bytes)
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleRow {
    pub vertices: Vec<usize>,
    pub length: usize,
    pub gain: String,
    pub gain_re: f64,
    pub gain_im: f64,
    #[serde(rename = "type")]
    pub cycle_type: CycleType,
}

fn cycle_rows(g: &GainGraph, max_cycles: usize) -> Result<Vec<CycleRow>> {
    Ok(cycle_records(g, max_cycles)?
        .into_iter()
        .map(|c| CycleRow {
            cycle_type: classify_gain(c.length, &c.gain_product),
            gain: c.gain_product.token(),
            gain_re: c.gain_product.value().re,
            gain_im: c.gain_product.value().im,
            vertices: c.vertices,
            length: c.length,
        })
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub n: usize,
    pub edge_count: usize,
    pub component_count: usize,
    pub m: usize,
    pub c: usize,
    pub rank: usize,
    pub rank_backend: RankMode,
    pub inertia: InertiaResult,
    pub t30: BoundReport,
    /// Absent when the graph is beyond the transversal search limit.
    pub t60: Option<BoundReport>,
    pub cycles: Vec<CycleRow>,
    pub disjoint_cycles: bool,
    pub condition_iii: Option<ConditionIii>,
    pub verdict: OptimalityVerdict,
    /// Internal invariants that failed; nonempty means an implementation bug.
    pub violations: Vec<String>,
}

pub fn analyze(g: &GainGraph, tol: Option<f64>, mode: RankMode, limits: &Limits) -> Result<AnalysisReport> {
    let under = g.underlying();
    let inertia = inertia(&hermitian_adjacency(g), tol)?;
    let rank = match mode {
        RankMode::Numeric => inertia.rank,
        other => rank_with(g, other, limits)?,
    };
    let t30 = check_t30_with(g, mode, limits)?;
    let t60 = if g.n() <= limits.transversal_n { Some(check_t60_with(g, mode, limits)?) } else { None };
    let cycles = cycle_rows(g, limits.max_cycles)?;
    let disjoint = cycles_pairwise_disjoint(&under);
    let condition_iii = match disjoint {
        CycleDisjointness::Disjoint(_) => Some(condition_iii_values(&under)?),
        _ => None,
    };
    let verdict = GraphStructure::with_limits(&under, limits).verdict(g)?;

    let mut violations = Vec::new();
    if inertia.p_plus + inertia.n_minus != inertia.rank {
        violations.push("inertia does not sum to the rank".to_string());
    }
    if rank != inertia.rank {
        violations.push(format!("{mode} rank {rank} differs from numeric inertia rank {}", inertia.rank));
    }
    if !t30.holds_t30 {
        violations.push(format!("rank {} outside [{}, {}]", t30.rank, t30.lower_t30, t30.upper_t30));
    }
    if let Some(t) = &t60 {
        if t.holds_t60 != Some(true) {
            violations.push(format!("rank {} outside [{:?}, {:?}]", t.rank, t.lower_t60, t.upper_t60));
        }
        if t.t60_within_t30 != Some(true) {
            violations.push("transversal interval is not inside the matching/cyclomatic interval".to_string());
        }
    }
    if !verdict.ranks_agree {
        violations.push("rank backends disagree".to_string());
    }
    if !verdict.consistent {
        violations.push("spectral and structural optimality flags disagree".to_string());
    }
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        command: "analyze",
        n: g.n(),
        edge_count: g.edge_count(),
        component_count: under.component_count(),
        m: t30.m,
        c: t30.c,
        rank,
        rank_backend: mode,
        inertia,
        t30,
        t60,
        cycles,
        disjoint_cycles: disjoint.is_disjoint(),
        condition_iii,
        verdict,
        violations,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CyclesReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub count: usize,
    pub cycles: Vec<CycleRow>,
}

pub fn list_cycles(g: &GainGraph, max_cycles: usize) -> Result<CyclesReport> {
    let cycles = cycle_rows(g, max_cycles).map_err(|e| match e {
        Error::LimitExceeded { what, limit, actual } => Error::Precondition(format!(
            "{what} limit exceeded: {actual} > {limit}; raise it with --max-cycles"
        )),
        other => other,
    })?;
    Ok(CyclesReport { schema_version: SCHEMA_VERSION, command: "cycles", count: cycles.len(), cycles })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FailureRecord {
    pub check: String,
    pub instance: u64,
    pub detail: String,
    /// The failing graph in the input text format.
    pub graph: String,
    /// Where the graph was written, if anywhere.
    pub file: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CheckCount {
    pub run: u64,
    pub passed: u64,
}

impl CheckCount {
    fn record(&mut self, ok: bool) {
        self.run += 1;
        self.passed += ok as u64;
    }

    fn merge(self, o: CheckCount) -> CheckCount {
        CheckCount { run: self.run + o.run, passed: self.passed + o.passed }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub count: u64,
    pub n_max: usize,
    pub extra_edges: usize,
    pub gains: GainKind,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub count: u64,
    pub n_max: usize,
    pub extra_edges: usize,
    pub gains: String,
    pub seed: u64,
    pub checks: BTreeMap<String, CheckCount>,
    pub failure_count: u64,
    pub failures: Vec<FailureRecord>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// Seed of instance `i` in a run seeded with `seed` (SplitMix64 step).
pub fn instance_seed(seed: u64, i: u64) -> u64 {
    let mut z = seed.wrapping_add(i.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Instance `i` of a verify run: order in `2..=n_max`, cyclomatic number up
/// to `extra_edges`, gains from `kind`.
pub fn verify_instance(cfg: &VerifyConfig, i: u64) -> Result<GainGraph> {
    let s = instance_seed(cfg.seed, i);
    let mut r = rng(s);
    let n = r.gen_range(2..=cfg.n_max.max(2));
    let room = n * (n - 1) / 2 - (n - 1);
    let extra = r.gen_range(0..=cfg.extra_edges.min(room));
    let g = random_connected_graph(n, extra, r.gen())?;
    Ok(assign_gains(&g, GainSetSpec::new(cfg.gains, r.gen())))
}

type Outcome = (BTreeMap<String, CheckCount>, Vec<(String, String)>);

fn verify_one(g: &GainGraph, i: u64, limits: &Limits) -> Result<Outcome> {
    let mut checks: BTreeMap<String, CheckCount> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut record = |name: &str, ok: bool, detail: String| {
        checks.entry(name.to_string()).or_default().record(ok);
        if !ok {
            failures.push((name.to_string(), detail));
        }
    };

    let t30 = check_t30_with(g, RankMode::Numeric, limits)?;
    let oracle = if g.n() <= limits.cross_check_n { Some(rank_with(g, RankMode::Oracle, limits)?) } else { None };
    let ok = t30.holds_t30 && oracle.is_none_or(|r| r == t30.rank);
    record("t30", ok, format!("rank {} (oracle {oracle:?}) vs [{}, {}]", t30.rank, t30.lower_t30, t30.upper_t30));

    if g.n() <= limits.transversal_n {
        let t60 = check_t60_with(g, RankMode::Numeric, limits)?;
        let ok = t60.holds_t60 == Some(true) && t60.t60_within_t30 == Some(true);
        record("t60", ok, format!("rank {} vs [{:?}, {:?}]", t60.rank, t60.lower_t60, t60.upper_t60));
    }

    let verdict = GraphStructure::with_limits(&g.underlying(), limits).verdict(g)?;
    let ok = verdict.consistent && verdict.ranks_agree;
    record(
        "equivalence",
        ok,
        format!(
            "rank {} ({}), spectral lower/upper {}/{}, structural lower/upper {}/{}",
            verdict.rank,
            verdict.backend,
            verdict.spectral_lower,
            verdict.spectral_upper,
            verdict.structural_lower.holds,
            verdict.structural_upper.holds
        ),
    );

    if let Some(p) = pendant_reduction(g, RankMode::Numeric)? {
        record("pendant_reduction", p.holds(), format!("{p:?}"));
    }
    let v = (instance_seed(i, 7) % g.n() as u64) as usize;
    let d = vertex_deletion(g, v, RankMode::Numeric)?;
    record("vertex_deletion", d.holds(), format!("{d:?}"));
    Ok((checks, failures))
}

fn write_failures(failures: &mut [FailureRecord], out_dir: Option<&Path>) -> Result<()> {
    let Some(dir) = out_dir else { return Ok(()) };
    if failures.is_empty() {
        return Ok(());
    }
    fs::create_dir_all(dir).map_err(|e| Error::Io { path: dir.display().to_string(), message: e.to_string() })?;
    for f in failures {
        let path = dir.join(format!("{}-{}.txt", f.check, f.instance));
        fs::write(&path, &f.graph).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
        f.file = Some(path.display().to_string());
    }
    Ok(())
}

pub fn run_verify(cfg: &VerifyConfig, limits: &Limits) -> Result<VerifyReport> {
    if cfg.n_max < 2 {
        return Err(Error::Precondition("--n must be at least 2".into()));
    }
    if cfg.n_max > limits.oracle_n.max(limits.transversal_n) {
        return Err(Error::LimitExceeded { what: "verify order", limit: limits.oracle_n.max(limits.transversal_n), actual: cfg.n_max });
    }
    let per_instance: Vec<Result<(u64, GainGraph, Outcome)>> = (0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let g = verify_instance(cfg, i)?;
            let outcome = verify_one(&g, i, limits)?;
            Ok((i, g, outcome))
        })
        .collect();
    let mut checks: BTreeMap<String, CheckCount> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut failure_count = 0;
    for item in per_instance {
        let (i, g, (c, f)) = item?;
        for (name, count) in c {
            let slot = checks.entry(name).or_default();
            *slot = slot.merge(count);
        }
        for (check, detail) in f {
            failure_count += 1;
            if failures.len() < MAX_REPORTED_FAILURES {
                failures.push(FailureRecord { check, instance: i, detail, graph: serialize_gain_graph(&g), file: None });
            }
        }
    }
    failures.sort();
    write_failures(&mut failures, cfg.out_dir.as_deref())?;
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        command: "verify",
        count: cfg.count,
        n_max: cfg.n_max,
        extra_edges: cfg.extra_edges,
        gains: cfg.gains.to_string(),
        seed: cfg.seed,
        checks,
        failure_count,
        failures,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Every connected labeled graph.
    All,
    /// Connected graphs with pairwise vertex-disjoint cycles.
    Cactus,
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "all" => Ok(Family::All),
            "cactus" => Ok(Family::Cactus),
            other => Err(format!("unknown family {other:?} (all|cactus)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EnumerateConfig {
    pub n_max: usize,
    pub gains: GainKind,
    pub cap: usize,
    pub family: Family,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EnumerateTally {
    pub graphs: u64,
    pub instances: u64,
    pub spectral_lower: u64,
    pub structural_lower: u64,
    pub spectral_upper: u64,
    pub structural_upper: u64,
    pub inconsistent_lower: u64,
    pub inconsistent_upper: u64,
}

impl EnumerateTally {
    fn merge(mut self, o: &EnumerateTally) -> EnumerateTally {
        self.graphs += o.graphs;
        self.instances += o.instances;
        self.spectral_lower += o.spectral_lower;
        self.structural_lower += o.structural_lower;
        self.spectral_upper += o.spectral_upper;
        self.structural_upper += o.structural_upper;
        self.inconsistent_lower += o.inconsistent_lower;
        self.inconsistent_upper += o.inconsistent_upper;
        self
    }

    pub fn consistent(&self) -> bool {
        self.inconsistent_lower == 0 && self.inconsistent_upper == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumerateReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub n_max: usize,
    pub gains: String,
    pub cap: usize,
    pub family: Family,
    pub seed: u64,
    pub tally: EnumerateTally,
    pub failures: Vec<FailureRecord>,
}

/// Seed for the assignment subsample of `g`, independent of stream position.
fn graph_seed(seed: u64, g: &SimpleGraph) -> u64 {
    g.edges()
        .iter()
        .fold(instance_seed(seed, g.n() as u64), |h, &(u, v)| instance_seed(h, (u * 8 + v) as u64))
}

/// Verdicts for every sampled switching class on one graph.
pub fn enumerate_graph(
    g: &SimpleGraph,
    q: u64,
    cap: usize,
    seed: u64,
) -> Result<(EnumerateTally, Vec<(GainGraph, OptimalityVerdict)>)> {
    let structure = GraphStructure::new(g);
    let mut tally = EnumerateTally { graphs: 1, ..Default::default() };
    let mut bad = Vec::new();
    for gains in switching_class_assignments(g, q, cap, graph_seed(seed, g))? {
        let gg = GainGraph::from_simple(g, &gains)?;
        let v = structure.oracle_verdict(&gg)?;
        tally.instances += 1;
        tally.spectral_lower += v.spectral_lower as u64;
        tally.structural_lower += v.structural_lower.holds as u64;
        tally.spectral_upper += v.spectral_upper as u64;
        tally.structural_upper += v.structural_upper.holds as u64;
        let lower_bad = v.spectral_lower != v.structural_lower.holds;
        let upper_bad = v.spectral_upper != v.structural_upper.holds;
        tally.inconsistent_lower += lower_bad as u64;
        tally.inconsistent_upper += upper_bad as u64;
        if lower_bad || upper_bad {
            bad.push((gg, v));
        }
    }
    Ok((tally, bad))
}

pub fn run_enumerate(cfg: &EnumerateConfig) -> Result<EnumerateReport> {
    let q = cfg
        .gains
        .order()
        .ok_or_else(|| Error::Precondition("enumerate needs a finite gain set".into()))?;
    if cfg.cap == 0 {
        return Err(Error::Precondition("--cap must be at least 1".into()));
    }
    if cfg.n_max > 8 {
        return Err(Error::LimitExceeded { what: "exhaustive enumeration order", limit: 8, actual: cfg.n_max });
    }
    const BATCH: usize = 4096;
    let mut tally = EnumerateTally::default();
    let mut failures: Vec<FailureRecord> = Vec::new();
    let mut process = |batch: &mut Vec<SimpleGraph>| -> Result<()> {
        let results: Vec<_> = batch.par_iter().map(|g| enumerate_graph(g, q, cfg.cap, cfg.seed)).collect();
        batch.clear();
        for r in results {
            let (t, bad) = r?;
            tally = std::mem::take(&mut tally).merge(&t);
            for (gg, v) in bad {
                if failures.len() < MAX_REPORTED_FAILURES {
                    failures.push(FailureRecord {
                        check: "equivalence".into(),
                        instance: 0,
                        detail: format!(
                            "rank {} spectral lower/upper {}/{} structural lower/upper {}/{}",
                            v.rank, v.spectral_lower, v.spectral_upper, v.structural_lower.holds, v.structural_upper.holds
                        ),
                        graph: serialize_gain_graph(&gg),
                        file: None,
                    });
                }
            }
        }
        Ok(())
    };
    let mut batch = Vec::with_capacity(BATCH);
    let mut status = Ok(());
    match cfg.family {
        Family::All => {
            for g in enumerate_connected_graphs(cfg.n_max)? {
                batch.push(g);
                if batch.len() == BATCH {
                    process(&mut batch)?;
                }
            }
        }
        Family::Cactus => {
            visit_connected_cacti(cfg.n_max, |g| {
                batch.push(g.clone());
                if batch.len() == BATCH && status.is_ok() {
                    status = process(&mut batch);
                }
            })?;
            status?;
        }
    }
    process(&mut batch)?;
    // Numbered after sorting so the report does not depend on batching.
    failures.sort();
    write_failures_numbered(&mut failures, cfg.out_dir.as_deref())?;
    Ok(EnumerateReport {
        schema_version: SCHEMA_VERSION,
        command: "enumerate",
        n_max: cfg.n_max,
        gains: cfg.gains.to_string(),
        cap: cfg.cap,
        family: cfg.family,
        seed: cfg.seed,
        tally,
        failures,
    })
}

fn write_failures_numbered(failures: &mut [FailureRecord], out_dir: Option<&Path>) -> Result<()> {
    for (i, f) in failures.iter_mut().enumerate() {
        f.instance = i as u64;
    }
    write_failures(failures, out_dir)
}

/// Renders a report as indented `key: value` lines.
pub fn render_text(doc: &Value) -> String {
    let mut out = String::new();
    render_into(doc, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render_into(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match scalar(val) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_into(val, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        render_into(item, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

/// Exit status for an error: 2 for internal invariant violations, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TheoremViolation(_) => 2,
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::figure_one;
    use crate::graph::Gain;

    #[test]
    fn figure1_report() {
        let g = GainGraph::with_unit_gains(&figure_one());
        let r = analyze(&g, None, RankMode::Exact, &Limits::default()).unwrap();
        assert_eq!((r.m, r.c, r.rank), (3, 2, 6));
        assert_eq!((r.t30.lower_t30, r.t30.upper_t30), (2, 8));
        let t60 = r.t60.as_ref().unwrap();
        assert_eq!((t60.lower_t60, t60.upper_t60), (Some(6), Some(6)));
        assert_eq!(r.cycles.len(), 2);
        assert!(!r.disjoint_cycles);
        assert!(r.violations.is_empty());
        let doc = serde_json::to_value(&r).unwrap();
        assert_eq!(doc["schema_version"], "1");
        assert!(render_text(&doc).contains("rank: 6"));
    }

    #[test]
    fn small_reports() {
        let edge = GainGraph::new(2, [(0, 1, Gain::I)]).unwrap();
        let r = analyze(&edge, None, RankMode::Numeric, &Limits::default()).unwrap();
        assert_eq!((r.rank, r.m, r.c), (2, 1, 0));
        let c3 = crate::generators::make_cycle(3, Gain::I).unwrap();
        let l = list_cycles(&c3, 10).unwrap();
        assert_eq!(l.count, 1);
        assert_eq!(l.cycles[0].cycle_type, CycleType::E);
        assert!(list_cycles(&GainGraph::with_unit_gains(&SimpleGraph::complete(5)), 10).is_err());
    }

    #[test]
    fn verify_and_enumerate_small() {
        let cfg = VerifyConfig { count: 30, n_max: 7, extra_edges: 3, gains: GainKind::Gaussian, seed: 4, out_dir: None };
        let r = run_verify(&cfg, &Limits::default()).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures);
        assert_eq!(r.checks["t30"].run, 30);

        let cfg = EnumerateConfig { n_max: 4, gains: GainKind::Signed, cap: 64, family: Family::All, seed: 1, out_dir: None };
        let r = run_enumerate(&cfg).unwrap();
        assert_eq!(r.tally.graphs, 1 + 4 + 38);
        assert!(r.tally.consistent());
        let again = run_enumerate(&cfg).unwrap();
        assert_eq!(r.tally, again.tally);
    }

    #[test]
    fn text_projection_shapes() {
        let doc = serde_json::json!({"a": 1, "b": [1, 2], "c": {"d": null}, "e": [{"f": true}]});
        assert_eq!(render_text(&doc), "a: 1\nb: [1, 2]\nc:\n  d: -\ne:\n  [0]\n    f: true\n");
    }
}
