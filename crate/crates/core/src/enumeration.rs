//! Isomorph-free generation of subcubic and cubic graphs on a fixed vertex
//! set, and ingestion of graph6 corpora.
//!
//! Graphs are grown one edge at a time from the edgeless graph. A child
//! `G + e` is kept only when `e` lies in the automorphism orbit of the
//! canonical deletable edge of `G + e`, and isomorphic siblings are merged,
//! so every isomorphism class is reached exactly once. In connected mode the
//! tree is restricted to graphs with at most one component that has edges;
//! a deletable edge is then one whose removal keeps that property.
//!
//! Four-cycles and short cycles never disappear when edges are added, so
//! they are pruned as soon as they appear. Cubic targets are additionally
//! pruned when some vertex can no longer reach degree three.

use std::collections::HashSet;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonical_labeling, canonical_labeling_colored, CanonicalKey};
use crate::graph::{Girth, Graph, VertexSet, MAX_ORDER};
use crate::graph6::{parse_graph6, Graph6Error};

pub const CUBIC_ORDER_GUARD: usize = 16;
pub const SUBCUBIC_ORDER_GUARD: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regularity {
    Cubic,
    Subcubic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnumSpec {
    pub order: usize,
    pub regularity: Regularity,
    pub forbid_c4: bool,
    pub min_girth: Option<usize>,
    pub connected: bool,
}

#[derive(Debug, Error)]
pub enum EnumError {
    #[error("invalid enumeration spec: {0}")]
    InvalidSpec(String),
    #[error("order {order} exceeds the {regularity:?} guard of {limit}; override the guard to run anyway")]
    GuardExceeded {
        order: usize,
        regularity: Regularity,
        limit: usize,
    },
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{line}: {source}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        source: Graph6Error,
    },
}

impl EnumSpec {
    pub fn cubic(order: usize) -> Self {
        EnumSpec {
            order,
            regularity: Regularity::Cubic,
            forbid_c4: false,
            min_girth: None,
            connected: false,
        }
    }

    pub fn subcubic(order: usize) -> Self {
        EnumSpec {
            regularity: Regularity::Subcubic,
            ..EnumSpec::cubic(order)
        }
    }

    pub fn no_c4(mut self) -> Self {
        self.forbid_c4 = true;
        self
    }

    pub fn connected(mut self) -> Self {
        self.connected = true;
        self
    }

    pub fn min_girth(mut self, g: usize) -> Self {
        self.min_girth = Some(g);
        self
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order;
        self
    }

    pub fn validate(&self) -> Result<(), EnumError> {
        if self.order > MAX_ORDER {
            return Err(EnumError::InvalidSpec(format!(
                "order {} exceeds the representable maximum {MAX_ORDER}",
                self.order
            )));
        }
        if self.regularity == Regularity::Cubic && (self.order % 2 == 1 || self.order < 4) {
            return Err(EnumError::InvalidSpec(format!(
                "cubic graphs need an even order of at least 4, got {}",
                self.order
            )));
        }
        if let Some(g) = self.min_girth {
            if g < 3 {
                return Err(EnumError::InvalidSpec(format!("girth bound {g} is below 3")));
            }
        }
        Ok(())
    }

    pub fn guard(&self) -> usize {
        match self.regularity {
            Regularity::Cubic => CUBIC_ORDER_GUARD,
            Regularity::Subcubic => SUBCUBIC_ORDER_GUARD,
        }
    }

    fn check(&self, override_guard: bool) -> Result<(), EnumError> {
        self.validate()?;
        if !override_guard && self.order > self.guard() {
            return Err(EnumError::GuardExceeded {
                order: self.order,
                regularity: self.regularity,
                limit: self.guard(),
            });
        }
        Ok(())
    }

    /// Whether `g` belongs to the class described by this spec.
    pub fn accepts(&self, g: &Graph) -> bool {
        g.order() == self.order && self.accepts_any_order(g)
    }

    /// Like [`accepts`](Self::accepts) but ignoring the order.
    pub fn accepts_any_order(&self, g: &Graph) -> bool {
        let degree_ok = match self.regularity {
            Regularity::Cubic => g.is_cubic(),
            Regularity::Subcubic => g.is_subcubic(),
        };
        degree_ok
            && !(self.forbid_c4 && g.has_four_cycle())
            && self.min_girth.is_none_or(|b| g.girth() >= Girth::Finite(b))
            && (!self.connected || g.is_connected())
    }
}

/// `n=8,subcubic,no-c4,connected,girth=5`; fields after the order may come
/// in any order, and the class defaults to subcubic.
impl fmt::Display for EnumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.order)?;
        f.write_str(match self.regularity {
            Regularity::Cubic => ",cubic",
            Regularity::Subcubic => ",subcubic",
        })?;
        if self.forbid_c4 {
            f.write_str(",no-c4")?;
        }
        if self.connected {
            f.write_str(",connected")?;
        }
        if let Some(g) = self.min_girth {
            write!(f, ",girth={g}")?;
        }
        Ok(())
    }
}

/// A spec string whose order may be a range, e.g. `n=4..14,cubic,connected`.
/// Orders in the range that a cubic class cannot have (odd, or below 4) are
/// skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumRange {
    pub orders: std::ops::RangeInclusive<usize>,
    pub template: EnumSpec,
}

impl EnumRange {
    pub fn specs(&self) -> Vec<EnumSpec> {
        self.orders
            .clone()
            .map(|n| self.template.with_order(n))
            .filter(|s| s.validate().is_ok())
            .collect()
    }
}

impl FromStr for EnumRange {
    type Err = EnumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: String| EnumError::InvalidSpec(msg);
        let mut orders = None;
        let mut template = EnumSpec::subcubic(0);
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = match part.split_once('=') {
                Some((k, v)) => (k.trim(), Some(v.trim())),
                None => (part, None),
            };
            let number = |v: &str| {
                v.parse::<usize>()
                    .map_err(|_| bad(format!("`{v}` is not a non-negative integer in `{part}`")))
            };
            match (key, value) {
                ("n", Some(v)) => {
                    orders = Some(match v.split_once("..") {
                        Some((a, b)) => {
                            let b = b.strip_prefix('=').unwrap_or(b);
                            number(a)?..=number(b)?
                        }
                        None => number(v)?..=number(v)?,
                    })
                }
                ("cubic", None) => template.regularity = Regularity::Cubic,
                ("subcubic", None) => template.regularity = Regularity::Subcubic,
                ("no-c4" | "c4-free", None) => template.forbid_c4 = true,
                ("connected", None) => template.connected = true,
                ("girth" | "min-girth", Some(v)) => template.min_girth = Some(number(v)?),
                _ => return Err(bad(format!("unrecognised field `{part}`"))),
            }
        }
        let orders = orders.ok_or_else(|| bad(format!("`{s}` has no `n=` field")))?;
        if orders.is_empty() {
            return Err(bad(format!("empty order range in `{s}`")));
        }
        if let Some(g) = template.min_girth {
            if g < 3 {
                return Err(bad(format!("girth bound {g} is below 3")));
            }
        }
        Ok(EnumRange { orders, template })
    }
}

impl FromStr for EnumSpec {
    type Err = EnumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let range: EnumRange = s.parse()?;
        if range.orders.start() != range.orders.end() {
            return Err(EnumError::InvalidSpec(format!(
                "`{s}` names a range of orders where a single order is expected"
            )));
        }
        let spec = range.template.with_order(*range.orders.start());
        spec.validate()?;
        Ok(spec)
    }
}

/// Streams one representative of every isomorphism class in `spec`.
pub fn enumerate(spec: EnumSpec) -> Result<Enumeration, EnumError> {
    enumerate_with_guard(spec, false)
}

/// Like [`enumerate`], optionally ignoring the order guard.
pub fn enumerate_with_guard(spec: EnumSpec, override_guard: bool) -> Result<Enumeration, EnumError> {
    spec.check(override_guard)?;
    let tree = Tree::new(spec);
    let root = tree.root();
    Ok(Enumeration {
        tree,
        stack: vec![root],
    })
}

/// Collects the whole stream, splitting the generation tree over the current
/// rayon pool. The result is identical to collecting [`enumerate`].
pub fn enumerate_parallel(spec: EnumSpec, override_guard: bool) -> Result<Vec<Graph>, EnumError> {
    spec.check(override_guard)?;
    let tree = Tree::new(spec);
    let target = 32 * rayon::current_num_threads().max(1);
    let mut tasks = vec![Task::Subtree(tree.root())];
    loop {
        let open = tasks.iter().filter(|t| matches!(t, Task::Subtree(_))).count();
        if open == 0 || open >= target {
            break;
        }
        let mut next = Vec::with_capacity(tasks.len() * 4);
        for task in tasks {
            match task {
                Task::Subtree(g) => {
                    let children = tree.children(&g);
                    if tree.emits(&g) {
                        next.push(Task::Emit(g));
                    }
                    next.extend(children.into_iter().map(Task::Subtree));
                }
                emit => next.push(emit),
            }
        }
        tasks = next;
    }
    let parts: Vec<Vec<Graph>> = tasks
        .into_par_iter()
        .map(|task| match task {
            Task::Emit(g) => vec![g],
            Task::Subtree(g) => Enumeration {
                tree: tree.clone(),
                stack: vec![g],
            }
            .collect(),
        })
        .collect();
    Ok(parts.into_iter().flatten().collect())
}

enum Task {
    Emit(Graph),
    Subtree(Graph),
}

/// Depth-first stream over the generation tree; see [`enumerate`].
pub struct Enumeration {
    tree: Tree,
    stack: Vec<Graph>,
}

impl Enumeration {
    pub fn spec(&self) -> EnumSpec {
        self.tree.spec
    }
}

impl Iterator for Enumeration {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while let Some(g) = self.stack.pop() {
            let children = self.tree.children(&g);
            self.stack.extend(children.into_iter().rev());
            if self.tree.emits(&g) {
                return Some(g);
            }
        }
        None
    }
}

#[derive(Clone)]
struct Tree {
    spec: EnumSpec,
    /// Girth bound as a cycle length every new cycle must reach.
    girth: usize,
}

impl Tree {
    fn new(spec: EnumSpec) -> Self {
        Tree {
            spec,
            girth: spec.min_girth.unwrap_or(3),
        }
    }

    fn root(&self) -> Graph {
        Graph::empty(self.spec.order).expect("order validated")
    }

    fn emits(&self, g: &Graph) -> bool {
        match self.spec.regularity {
            Regularity::Cubic => g.is_cubic() && (!self.spec.connected || g.is_connected()),
            Regularity::Subcubic => !self.spec.connected || g.is_connected(),
        }
    }

    /// Accepted children of `g` in ascending order of the added edge.
    fn children(&self, g: &Graph) -> Vec<Graph> {
        let n = g.order();
        let rows = g.rows();
        let open: Vec<usize> = (0..n).filter(|&v| g.degree(v) < 3).collect();
        let has_edges = g.edge_count() > 0;
        let mut seen: HashSet<CanonicalKey> = HashSet::new();
        let mut out = Vec::new();
        for (i, &u) in open.iter().enumerate() {
            for &v in &open[i + 1..] {
                if rows[u] >> v & 1 == 1 {
                    continue;
                }
                if self.spec.connected && has_edges && rows[u] == 0 && rows[v] == 0 {
                    continue;
                }
                if self.spec.forbid_c4 && closes_four_cycle(rows, u, v) {
                    continue;
                }
                if self.girth > 3 && closes_short_cycle(rows, u, v, self.girth) {
                    continue;
                }
                let child = g.with_edge(u, v);
                if self.spec.regularity == Regularity::Cubic && !self.cubic_reachable(&child) {
                    continue;
                }
                if let Some(key) = self.canonical_child(&child, u, v) {
                    if seen.insert(key) {
                        out.push(child);
                    }
                }
            }
        }
        out
    }

    /// Necessary condition for `g` to be contained in a cubic graph of the
    /// class: every vertex has enough admissible partners left.
    fn cubic_reachable(&self, g: &Graph) -> bool {
        let rows = g.rows();
        let deficient: u64 = (0..g.order())
            .filter(|&v| g.degree(v) < 3)
            .fold(0, |a, v| a | 1 << v);
        VertexSet(deficient).iter().all(|v| {
            let need = 3 - g.degree(v);
            let mut candidates = deficient & !rows[v] & !(1 << v);
            if self.spec.forbid_c4 || self.girth > 3 {
                candidates = VertexSet(candidates)
                    .iter()
                    .filter(|&w| {
                        !(self.spec.forbid_c4 && closes_four_cycle(rows, v, w))
                            && !(self.girth > 3 && closes_short_cycle(rows, v, w, self.girth))
                    })
                    .fold(0, |a, w| a | 1 << w);
            }
            candidates.count_ones() as usize >= need
        })
    }

    /// Edges whose deletion leads back into the generation space.
    fn deletable(&self, g: &Graph, u: usize, v: usize) -> bool {
        if !self.spec.connected {
            return true;
        }
        let d = g.degree(u).min(g.degree(v));
        d == 1 || g.without_edge(u, v).component_of(u).contains(v)
    }

    /// The canonical key of `child` if `(u, v)` is its canonical deletion.
    fn canonical_child(&self, child: &Graph, u: usize, v: usize) -> Option<CanonicalKey> {
        let rank = edge_invariant(child, u, v);
        let mut ties = Vec::new();
        for (a, b) in child.edges() {
            let r = edge_invariant(child, a, b);
            if r > rank && self.deletable(child, a, b) {
                return None;
            }
            if r == rank && (a, b) != (u, v) && self.deletable(child, a, b) {
                ties.push((a, b));
            }
        }
        let labeling = canonical_labeling(child);
        if ties.is_empty() {
            return Some(labeling.key);
        }
        let pos = labeling.positions();
        let image = |a: usize, b: usize| (pos[a].max(pos[b]), pos[a].min(pos[b]));
        let best = ties
            .iter()
            .copied()
            .max_by_key(|&(a, b)| image(a, b))
            .expect("ties is non-empty");
        if image(u, v) > image(best.0, best.1) {
            return Some(labeling.key);
        }
        let marked = |a: usize, b: usize| {
            let m = VertexSet::from_vertices([a, b]);
            canonical_labeling_colored(child, &[child.vertices() - m, m]).key
        };
        (marked(u, v) == marked(best.0, best.1)).then_some(labeling.key)
    }
}

/// Cheap isomorphism invariant used to rank edges before any labelling.
fn edge_invariant(g: &Graph, u: usize, v: usize) -> (usize, usize, usize, usize) {
    let (du, dv) = (g.degree(u), g.degree(v));
    let common = (g.neighbors(u) & g.neighbors(v)).len();
    let reach: usize = g.neighbors(u).iter().chain(g.neighbors(v)).map(|w| g.degree(w)).sum();
    (du.max(dv), du.min(dv), common, reach)
}

/// Whether adding `uv` creates a 4-cycle, i.e. `u` and `v` are joined by a
/// path of length three.
fn closes_four_cycle(rows: &[u64], u: usize, v: usize) -> bool {
    let nv = rows[v] & !(1 << u);
    VertexSet(rows[u] & !(1 << v))
        .iter()
        .any(|a| rows[a] & nv != 0)
}

/// Whether adding `uv` creates a cycle shorter than `girth`, i.e. `u` and `v`
/// are at distance at most `girth - 2`.
fn closes_short_cycle(rows: &[u64], u: usize, v: usize, girth: usize) -> bool {
    let mut seen = 1u64 << u;
    let mut frontier = seen;
    for _ in 0..girth - 2 {
        let mut next = 0u64;
        for w in VertexSet(frontier) {
            next |= rows[w];
        }
        next &= !seen;
        if next >> v & 1 == 1 {
            return true;
        }
        if next == 0 {
            return false;
        }
        seen |= next;
        frontier = next;
    }
    false
}

/// Reads every graph of a graph6 file. Blank lines are ignored.
pub fn read_graph6_file(path: &Path) -> Result<Vec<Graph>, EnumError> {
    let mut out = Vec::new();
    for item in Ingest::open(path, None, true)? {
        out.push(item?);
    }
    Ok(out)
}

/// Streams the graphs of a graph6 file that belong to `spec`.
///
/// With `strict`, the first malformed line is returned as an error and ends
/// the stream; otherwise malformed lines are skipped and recorded in
/// [`Ingest::skipped`].
pub fn ingest_graph6(path: &Path, spec: EnumSpec, strict: bool) -> Result<Ingest, EnumError> {
    Ingest::open(path, Some(spec), strict)
}

pub struct Ingest {
    path: PathBuf,
    lines: std::io::Lines<BufReader<File>>,
    line: usize,
    spec: Option<EnumSpec>,
    strict: bool,
    done: bool,
    skipped: Vec<(usize, Graph6Error)>,
}

impl Ingest {
    fn open(path: &Path, spec: Option<EnumSpec>, strict: bool) -> Result<Self, EnumError> {
        let file = File::open(path).map_err(|source| EnumError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Ingest {
            path: path.to_path_buf(),
            lines: BufReader::new(file).lines(),
            line: 0,
            spec,
            strict,
            done: false,
            skipped: Vec::new(),
        })
    }

    /// Malformed lines passed over so far, as `(line number, error)`.
    pub fn skipped(&self) -> &[(usize, Graph6Error)] {
        &self.skipped
    }
}

impl Iterator for Ingest {
    type Item = Result<Graph, EnumError>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.done {
            let text = match self.lines.next()? {
                Ok(t) => t,
                Err(source) => {
                    self.done = true;
                    return Some(Err(EnumError::Io {
                        path: self.path.clone(),
                        source,
                    }));
                }
            };
            self.line += 1;
            let text = text.trim();
            if text.is_empty() {
                continue;
            }
            match parse_graph6(text) {
                Ok(g) => {
                    if self.spec.is_none_or(|s| s.accepts(&g)) {
                        return Some(Ok(g));
                    }
                }
                Err(source) if self.strict => {
                    self.done = true;
                    return Some(Err(EnumError::Parse {
                        path: self.path.clone(),
                        line: self.line,
                        source,
                    }));
                }
                Err(source) => self.skipped.push((self.line, source)),
            }
        }
        None
    }
}
