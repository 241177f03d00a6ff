//! Bound verification over graph corpora, extremal search, and report output.
//!
//! Every inequality is checked in integer arithmetic. Ratios are carried as
//! a numerator/denominator pair and compared by cross-multiplication.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::canonical_form;
use crate::enumeration::{enumerate_parallel, read_graph6_file, EnumError, EnumSpec};
use crate::graph::{Graph, VertexSet};
use crate::graph6::write_graph6;
use crate::solvers::{domination_number, independent_domination_number, verify_set, SetMode};
use crate::structure::{
    n1_induced, near_independent_to_independent, reduce_to_near_independent, weight_summary,
    StructureError,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("{graph6} is outside the hypothesis of {theorem}: {}", flags.join("; "))]
    OutOfHypothesis {
        theorem: Theorem,
        graph6: String,
        flags: Vec<String>,
    },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("cannot build worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, HarnessError>;

/// The three inequalities the harness checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    /// `14 i(G) <= w(G)` for subcubic graphs without 4-cycles.
    #[serde(rename = "T15")]
    SubcubicBound,
    /// `14 i(G) <= 5n` for cubic graphs without 4-cycles.
    #[serde(rename = "T14")]
    CubicBound,
    /// `4 i(G) <= 5 γ(G)` for cubic graphs without 4-cycles.
    #[serde(rename = "T17")]
    RatioBound,
}

impl Theorem {
    pub fn code(self) -> &'static str {
        match self {
            Theorem::SubcubicBound => "T15",
            Theorem::CubicBound => "T14",
            Theorem::RatioBound => "T17",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Theorem {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T15" | "subcubic_bound" => Ok(Theorem::SubcubicBound),
            "T14" | "cubic_bound" => Ok(Theorem::CubicBound),
            "T17" | "ratio_bound" => Ok(Theorem::RatioBound),
            _ => Err(HarnessError::Invalid(format!(
                "unknown theorem `{s}`; expected T15, T14 or T17"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphId {
    /// graph6 of the canonically relabelled graph.
    pub canonical: String,
    /// graph6 of the graph as given.
    pub graph6: String,
}

impl GraphId {
    pub fn of(g: &Graph) -> Self {
        GraphId {
            canonical: canonical_form(g),
            graph6: write_graph6(g),
        }
    }
}

/// Per-graph outcome of a verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub graph_id: GraphId,
    pub n: usize,
    pub i_value: usize,
    pub gamma_value: usize,
    /// `None` when the graph has a vertex of degree above three.
    pub weight_total: Option<i64>,
    pub theorem15_lhs: i64,
    pub theorem15_rhs: Option<i64>,
    pub ratio_num: usize,
    pub ratio_den: usize,
    pub tight15: bool,
    pub flags: Vec<String>,
    pub theorem: Theorem,
    /// Whether `4 i <= 5 γ`.
    pub ratio_ok: bool,
    pub in_scope: bool,
    pub violation: bool,
    pub i_witness: VertexSet,
    pub gamma_witness: VertexSet,
}

impl BoundReport {
    /// Whether the inequality of `self.theorem` holds, in or out of scope.
    pub fn holds(&self) -> bool {
        match self.theorem {
            Theorem::SubcubicBound => self
                .theorem15_rhs
                .is_some_and(|w| self.theorem15_lhs <= w),
            Theorem::CubicBound => 14 * self.i_value <= 5 * self.n,
            Theorem::RatioBound => self.ratio_ok,
        }
    }

    /// Whether the inequality of `self.theorem` holds with equality.
    pub fn is_tight(&self) -> bool {
        match self.theorem {
            Theorem::SubcubicBound => self.tight15,
            Theorem::CubicBound => 14 * self.i_value == 5 * self.n,
            Theorem::RatioBound => 4 * self.ratio_num == 5 * self.ratio_den,
        }
    }
}

/// Reasons `g` falls outside the hypothesis of `theorem`; empty when in scope.
pub fn hypothesis_flags(g: &Graph, theorem: Theorem) -> Vec<String> {
    let mut flags = Vec::new();
    match theorem {
        Theorem::SubcubicBound => {
            if !g.is_subcubic() {
                flags.push(format!("max degree {}: not subcubic", g.max_degree()));
            }
        }
        Theorem::CubicBound | Theorem::RatioBound => {
            if !g.is_cubic() {
                flags.push("not cubic".to_string());
            }
        }
    }
    if g.has_four_cycle() {
        flags.push("has C4: outside the 4-cycle-free hypothesis".to_string());
    }
    flags
}

/// Solves `g` and evaluates every inequality. Never fails: graphs outside
/// the hypothesis are flagged.
pub fn bound_report(g: &Graph, theorem: Theorem) -> BoundReport {
    let i = independent_domination_number(g);
    let gamma = domination_number(g);
    let weight_total = weight_summary(g).ok().map(|w| w.total);
    let lhs = 14 * i.value as i64;
    let flags = hypothesis_flags(g, theorem);
    let mut report = BoundReport {
        graph_id: GraphId::of(g),
        n: g.order(),
        i_value: i.value,
        gamma_value: gamma.value,
        weight_total,
        theorem15_lhs: lhs,
        theorem15_rhs: weight_total,
        ratio_num: i.value,
        ratio_den: gamma.value,
        tight15: weight_total == Some(lhs),
        ratio_ok: 4 * i.value <= 5 * gamma.value,
        in_scope: flags.is_empty(),
        flags,
        theorem,
        violation: false,
        i_witness: i.witness,
        gamma_witness: gamma.witness,
    };
    report.violation = report.in_scope && !report.holds();
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub theorem: Theorem,
    pub pass: bool,
    pub graphs: usize,
    pub in_scope: usize,
    pub out_of_scope: usize,
    pub tight: usize,
    pub violations: Vec<BoundReport>,
}

pub fn verdict(theorem: Theorem, reports: &[BoundReport]) -> Verdict {
    let in_scope = reports.iter().filter(|r| r.in_scope).count();
    let violations: Vec<BoundReport> = reports.iter().filter(|r| r.violation).cloned().collect();
    Verdict {
        theorem,
        pass: violations.is_empty(),
        graphs: reports.len(),
        in_scope,
        out_of_scope: reports.len() - in_scope,
        tight: reports.iter().filter(|r| r.in_scope && r.is_tight()).count(),
        violations,
    }
}

/// Where verification graphs come from.
#[derive(Debug, Clone)]
pub enum Source {
    Enumerate(Vec<EnumSpec>),
    File(PathBuf),
    Graphs(Vec<Graph>),
}

impl Source {
    /// Materialises the source. Enumeration runs on the current rayon pool.
    pub fn load(&self, override_guard: bool) -> Result<Vec<Graph>> {
        Ok(match self {
            Source::Enumerate(specs) => {
                let mut out = Vec::new();
                for &spec in specs {
                    out.extend(enumerate_parallel(spec, override_guard)?);
                }
                out
            }
            Source::File(path) => read_graph6_file(path)?,
            Source::Graphs(gs) => gs.clone(),
        })
    }
}

/// Reports for every graph, in input order, computed on the current pool.
pub fn verify_graphs(graphs: &[Graph], theorem: Theorem, strict: bool) -> Result<Vec<BoundReport>> {
    if strict {
        if let Some(g) = graphs.iter().find(|g| !hypothesis_flags(g, theorem).is_empty()) {
            return Err(HarnessError::OutOfHypothesis {
                theorem,
                graph6: write_graph6(g),
                flags: hypothesis_flags(g, theorem),
            });
        }
    }
    Ok(graphs.par_iter().map(|g| bound_report(g, theorem)).collect())
}

pub fn verify_theorem(
    source: &Source,
    theorem: Theorem,
    strict: bool,
    override_guard: bool,
) -> Result<(Vec<BoundReport>, Verdict)> {
    let graphs = source.load(override_guard)?;
    let reports = verify_graphs(&graphs, theorem, strict)?;
    let v = verdict(theorem, &reports);
    Ok((reports, v))
}

/// A record that violates `theorem` by construction, for exercising the
/// failure path of callers. It does not describe a real graph's values.
pub fn fabricated_violation(theorem: Theorem) -> BoundReport {
    let g = crate::families::build(crate::families::FamilySpec::Petersen).expect("valid family");
    let mut r = bound_report(&g, theorem);
    r.i_value = 10;
    r.ratio_num = 10;
    r.theorem15_lhs = 140;
    r.tight15 = false;
    r.ratio_ok = false;
    r.flags.push("fabricated".to_string());
    r.violation = r.in_scope && !r.holds();
    r
}

/// Canonical graph6 of every in-scope tight report, grouped by order and
/// sorted, so runs can be compared regardless of enumeration order.
pub fn equality_cases(reports: &[BoundReport]) -> BTreeMap<usize, Vec<String>> {
    let mut out: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for r in reports.iter().filter(|r| r.in_scope && r.is_tight()) {
        out.entry(r.n).or_default().push(r.graph_id.canonical.clone());
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

/// Exact non-negative rational. Comparison is by cross-multiplication.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        Ratio { num, den }
    }

    pub fn reduced(self) -> Self {
        let g = gcd(self.num, self.den).max(1);
        Ratio::new(self.num / g, self.den / g)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// Largest `i/γ`.
    MaxRatio,
    /// Graphs with `14 i = 5 n`.
    #[serde(rename = "tight_5_14")]
    Tight514,
}

impl FromStr for Objective {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ratio" | "max_ratio" => Ok(Objective::MaxRatio),
            "tight" | "tight_5_14" => Ok(Objective::Tight514),
            _ => Err(HarnessError::Invalid(format!(
                "unknown objective `{s}`; expected ratio or tight"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub objective: Objective,
    /// For `MaxRatio` the largest `i/γ`; for `Tight514` the largest `i/n`.
    /// `None` if nothing was scanned.
    pub best_value: Option<Ratio>,
    /// graph6 strings in scan order. For `MaxRatio` the graphs attaining
    /// `best_value`; for `Tight514` every graph with `14 i = 5 n`.
    pub witnesses: Vec<String>,
    pub graphs_scanned: u64,
}

fn objective_value(g: &Graph, objective: Objective) -> (Ratio, bool) {
    let i = independent_domination_number(g).value as u64;
    match objective {
        Objective::MaxRatio => {
            let gamma = domination_number(g).value as u64;
            (Ratio::new(i, gamma), false)
        }
        Objective::Tight514 => {
            let n = g.order() as u64;
            (Ratio::new(i, n), 14 * i == 5 * n)
        }
    }
}

pub fn search_graphs(graphs: &[Graph], objective: Objective) -> SearchSummary {
    let values: Vec<(Ratio, bool)> = graphs.par_iter().map(|g| objective_value(g, objective)).collect();
    let best = values.iter().map(|&(r, _)| r).max();
    let witnesses = graphs
        .iter()
        .zip(&values)
        .filter(|(_, &(r, tight))| match objective {
            Objective::MaxRatio => Some(r) == best,
            Objective::Tight514 => tight,
        })
        .map(|(g, _)| write_graph6(g))
        .collect();
    SearchSummary {
        objective,
        best_value: best.map(Ratio::reduced),
        witnesses,
        graphs_scanned: graphs.len() as u64,
    }
}

/// Scans every class in `specs` (in order) for `objective`.
pub fn search_extremal(specs: &[EnumSpec], objective: Objective, override_guard: bool) -> Result<SearchSummary> {
    let graphs = Source::Enumerate(specs.to_vec()).load(override_guard)?;
    Ok(search_graphs(&graphs, objective))
}

/// One row of the per-order CSV summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: usize,
    pub count: usize,
    pub max_i: usize,
    pub max_ratio_num: usize,
    pub max_ratio_den: usize,
    /// Reports where the checked inequality holds with equality.
    pub tight_count: usize,
}

pub fn summarize(reports: &[BoundReport]) -> Vec<SummaryRow> {
    let mut rows: BTreeMap<usize, SummaryRow> = BTreeMap::new();
    for r in reports {
        let row = rows.entry(r.n).or_insert(SummaryRow {
            n: r.n,
            count: 0,
            max_i: 0,
            max_ratio_num: 0,
            max_ratio_den: 1,
            tight_count: 0,
        });
        row.count += 1;
        row.max_i = row.max_i.max(r.i_value);
        let current = Ratio::new(row.max_ratio_num as u64, row.max_ratio_den as u64);
        if r.ratio_den > 0 && Ratio::new(r.ratio_num as u64, r.ratio_den as u64) > current {
            row.max_ratio_num = r.ratio_num;
            row.max_ratio_den = r.ratio_den;
        }
        if r.is_tight() {
            row.tight_count += 1;
        }
    }
    rows.into_values().collect()
}

pub fn write_summary_csv<W: Write>(out: W, rows: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// One JSON object per line.
pub fn write_jsonl<W: Write, T: Serialize>(mut out: W, items: &[T]) -> Result<()> {
    for item in items {
        serde_json::to_writer(&mut out, item)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Runs `f` on a dedicated pool of `workers` threads (0 means rayon's default).
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build()?;
    Ok(pool.install(f))
}

/// Result of chaining a minimum dominating set through the near-independent
/// reduction and the conversion to an independent dominating set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub gamma: usize,
    pub dominating: VertexSet,
    pub near_independent: VertexSet,
    /// Vertices of degree one in the subgraph induced by `near_independent`.
    pub n1: usize,
    pub independent: VertexSet,
    pub swaps: usize,
    pub conversion_steps: usize,
}

impl PipelineReport {
    /// `|I| <= γ + ⌊n1/2⌋ <= ⌊5γ/4⌋`.
    pub fn within_bound(&self) -> bool {
        let mid = self.gamma + self.n1 / 2;
        self.independent.len() <= mid && mid <= 5 * self.gamma / 4
    }
}

/// γ-solver, then swap reduction, then conversion. Every intermediate set is
/// re-verified; a failed check is reported as a precondition error.
pub fn constructive_pipeline(g: &Graph) -> Result<PipelineReport> {
    let gamma = domination_number(g);
    let reduced = reduce_to_near_independent(g, gamma.witness)?;
    for swap in &reduced.swaps {
        if swap.edges_after >= swap.edges_before {
            return Err(StructureError::PreconditionViolated("swap did not remove an edge").into());
        }
    }
    let near = reduced.result;
    if near.len() != gamma.value || !verify_set(g, near, SetMode::NearIndependentDominating) {
        return Err(StructureError::PreconditionViolated("reduction output is not near independent").into());
    }
    let converted = near_independent_to_independent(g, near)?;
    if !verify_set(g, converted.result, SetMode::IndependentDominating) {
        return Err(StructureError::PreconditionViolated("conversion output is not independent dominating").into());
    }
    Ok(PipelineReport {
        gamma: gamma.value,
        dominating: gamma.witness,
        near_independent: near,
        n1: n1_induced(g, near),
        independent: converted.result,
        swaps: reduced.swaps.len(),
        conversion_steps: converted.steps.len(),
    })
}
