//! Rank bounds in terms of matching number, cyclomatic number, odd cycle
//! transversal and acyclic deletions.

use serde::Serialize;

use crate::combinatorics::{
    cyclomatic_number, matching_number, max_acyclic_deletion_matching_with, odd_cycle_transversal_with,
};
use crate::error::Result;
use crate::graph::GainGraph;
use crate::spectral::{rank_with, RankMode};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub rank: usize,
    pub m: usize,
    pub c: usize,
    /// `2m - 2c`, may be negative.
    pub lower_t30: i64,
    /// `2m + c`.
    pub upper_t30: i64,
    /// Odd cycle transversal number `b(G)`.
    pub b: Option<usize>,
    /// `max m(G - V0)` over acyclic deletions.
    pub acyclic_deletion_value: Option<usize>,
    /// A deletion set attaining `acyclic_deletion_value`, in input vertex ids.
    pub acyclic_deletion_witness: Option<Vec<usize>>,
    pub lower_t60: Option<i64>,
    pub upper_t60: Option<i64>,
    pub holds_t30: bool,
    pub holds_t60: Option<bool>,
    /// The `b`/`V0` interval lies inside the `m`/`c` interval.
    pub t60_within_t30: Option<bool>,
}

#[derive(Debug, Clone, Copy)]
struct ComponentBounds {
    rank: usize,
    m: usize,
    c: usize,
}

impl ComponentBounds {
    fn holds(&self) -> bool {
        let (r, m, c) = (self.rank as i64, self.m as i64, self.c as i64);
        2 * m - 2 * c <= r && r <= 2 * m + c
    }
}

fn component_bounds(g: &GainGraph, mode: RankMode, limits: &Limits) -> Result<Vec<ComponentBounds>> {
    g.components()
        .iter()
        .map(|comp| {
            let under = comp.graph.underlying();
            Ok(ComponentBounds {
                rank: rank_with(&comp.graph, mode, limits)?,
                m: matching_number(&under),
                c: cyclomatic_number(&under),
            })
        })
        .collect()
}

fn t30_report(parts: &[ComponentBounds]) -> BoundReport {
    let rank = parts.iter().map(|p| p.rank).sum();
    let m: usize = parts.iter().map(|p| p.m).sum();
    let c: usize = parts.iter().map(|p| p.c).sum();
    BoundReport {
        rank,
        m,
        c,
        lower_t30: 2 * m as i64 - 2 * c as i64,
        upper_t30: 2 * m as i64 + c as i64,
        b: None,
        acyclic_deletion_value: None,
        acyclic_deletion_witness: None,
        lower_t60: None,
        upper_t60: None,
        holds_t30: parts.iter().all(ComponentBounds::holds),
        holds_t60: None,
        t60_within_t30: None,
    }
}

/// `2m - 2c <= r <= 2m + c`, evaluated per connected component and summed.
pub fn check_t30(g: &GainGraph) -> Result<BoundReport> {
    check_t30_with(g, RankMode::Numeric, &Limits::default())
}

pub fn check_t30_with(g: &GainGraph, mode: RankMode, limits: &Limits) -> Result<BoundReport> {
    Ok(t30_report(&component_bounds(g, mode, limits)?))
}

/// Adds `2 max m(G - V0) <= r <= 2m + b` to the T30 report; `b` and the
/// deletion search are additive over components, so they are computed per
/// component and summed.
pub fn check_t60(g: &GainGraph) -> Result<BoundReport> {
    check_t60_with(g, RankMode::Numeric, &Limits::default())
}

pub fn check_t60_with(g: &GainGraph, mode: RankMode, limits: &Limits) -> Result<BoundReport> {
    let mut report = check_t30_with(g, mode, limits)?;
    let mut b = 0;
    let mut value = 0;
    let mut witness = Vec::new();
    let mut holds = true;
    let mut within = true;
    for comp in g.components() {
        let under = comp.graph.underlying();
        let (cb, _) = odd_cycle_transversal_with(&under, limits)?;
        let (cv, cw) = max_acyclic_deletion_matching_with(&under, limits)?;
        b += cb;
        value += cv;
        witness.extend(cw.iter().map(|&v| comp.parent_ids[v]));
        let r = rank_with(&comp.graph, mode, limits)? as i64;
        let m = matching_number(&under) as i64;
        let c = cyclomatic_number(&under) as i64;
        let (lo, hi) = (2 * cv as i64, 2 * m + cb as i64);
        holds &= lo <= r && r <= hi;
        within &= lo >= 2 * m - 2 * c && hi <= 2 * m + c;
    }
    witness.sort_unstable();
    report.b = Some(b);
    report.acyclic_deletion_value = Some(value);
    report.acyclic_deletion_witness = Some(witness);
    report.lower_t60 = Some(2 * value as i64);
    report.upper_t60 = Some(2 * report.m as i64 + b as i64);
    report.holds_t60 = Some(holds);
    report.t60_within_t30 = Some(within);
    Ok(report)
}
