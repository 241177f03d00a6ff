//! Structural analysis of subcubic graphs around the 14/9/6/5 vertex weight.
//!
//! Vertices of degree 0, 1, 2 and 3 carry weight 14, 9, 6 and 5. The weight
//! change `c(X)` of a vertex set is the total rise in weight of the vertices
//! that survive when `X` is deleted. This module also classifies vertices by
//! how many degree-2 neighbours they have, detects a fixed catalogue of local
//! configurations, and implements the two procedures that turn a minimum
//! dominating set of a cubic graph into an independent dominating set.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DegreeProfile, Graph, VertexSet};
use crate::solvers::{greedy_independent_subset, verify_set, SetMode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("graph has maximum degree {0}; weights are defined for subcubic graphs only")]
    NotSubcubic(usize),
    #[error("graph is not cubic")]
    NotCubic,
    #[error("the vertex set must be non-empty")]
    EmptySet,
    #[error("set is not independent: {0} and {1} are adjacent")]
    NotIndependent(usize, usize),
    #[error("vertex {0} is not in the set")]
    VertexNotInSet(usize),
    #[error("graph has no vertex of degree 3 with exactly two degree-2 neighbours")]
    NoA2Vertex,
    #[error("set is not a minimum dominating set: vertex {vertex} has {private} external private neighbours")]
    NotMinimumDominating { vertex: usize, private: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
}

pub type Result<T> = std::result::Result<T, StructureError>;

/// Weight of a vertex of the given degree in a subcubic graph.
pub fn degree_weight(degree: usize) -> Option<i64> {
    match degree {
        0 => Some(14),
        1 => Some(9),
        2 => Some(6),
        3 => Some(5),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSummary {
    pub profile: DegreeProfile,
    pub total: i64,
}

fn require_subcubic(g: &Graph) -> Result<()> {
    let d = g.max_degree();
    if d > 3 {
        Err(StructureError::NotSubcubic(d))
    } else {
        Ok(())
    }
}

pub fn weight_summary(g: &Graph) -> Result<WeightSummary> {
    require_subcubic(g)?;
    let profile = g.degree_profile();
    let total = 14 * profile.n0 as i64 + 9 * profile.n1 as i64 + 6 * profile.n2 as i64
        + 5 * profile.n3 as i64;
    Ok(WeightSummary { profile, total })
}

/// `w_G(X)`: the weights (taken in `g`) of the members of `x`.
pub fn subset_weight(g: &Graph, x: VertexSet) -> Result<i64> {
    require_subcubic(g)?;
    Ok(x.iter().map(|v| degree_weight(g.degree(v)).unwrap()).sum())
}

/// `c_G(X) = Σ_{v ∉ X} (w_{G-X}(v) - w_G(v))`, computed on the materialised
/// graph `G - X`.
pub fn weight_change(g: &Graph, x: VertexSet) -> Result<i64> {
    require_subcubic(g)?;
    if x.is_empty() {
        return Err(StructureError::EmptySet);
    }
    let (rest, map) = g.remove_vertices(x);
    Ok(map
        .iter()
        .enumerate()
        .map(|(new, &old)| {
            degree_weight(rest.degree(new)).unwrap() - degree_weight(g.degree(old)).unwrap()
        })
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyLemmaSides {
    /// `14 |S|`
    pub lhs: i64,
    /// `w_G(N[S]) - c_G(N[S])`
    pub rhs: i64,
}

/// Both sides of the comparison `14|S|` versus `w_G(N[S]) - c_G(N[S])` for
/// an independent set `S`. No inequality is asserted: this is a calculator.
pub fn key_lemma_sides(g: &Graph, s: VertexSet) -> Result<KeyLemmaSides> {
    require_subcubic(g)?;
    if s.is_empty() {
        return Err(StructureError::EmptySet);
    }
    for v in s {
        if let Some(u) = (g.neighbors(v) & s).first() {
            return Err(StructureError::NotIndependent(v.min(u), v.max(u)));
        }
    }
    let closed = g.closed_neighborhood(s);
    Ok(KeyLemmaSides {
        lhs: 14 * s.len() as i64,
        rhs: subset_weight(g, closed)? - weight_change(g, closed)?,
    })
}

/// Degree-3 vertices (`a[i]`) and degree-2 vertices (`b[i]`) grouped by
/// their number `i` of degree-2 neighbours. `other` holds every remaining
/// vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ABPartition {
    pub a: [VertexSet; 4],
    pub b: [VertexSet; 3],
    pub other: VertexSet,
}

impl ABPartition {
    pub fn a2(&self) -> VertexSet {
        self.a[2]
    }

    /// Class label of `v`, e.g. `"A2"`, `"B0"` or `"other"`.
    pub fn label(&self, v: usize) -> String {
        if let Some(i) = self.a.iter().position(|s| s.contains(v)) {
            format!("A{i}")
        } else if let Some(i) = self.b.iter().position(|s| s.contains(v)) {
            format!("B{i}")
        } else {
            "other".to_string()
        }
    }
}

pub fn classify_ab(g: &Graph) -> ABPartition {
    let twos: VertexSet = (0..g.order()).filter(|&v| g.degree(v) == 2).collect();
    let mut p = ABPartition::default();
    for v in 0..g.order() {
        let k = (g.neighbors(v) & twos).len();
        match g.degree(v) {
            3 => p.a[k].insert(v),
            2 => p.b[k].insert(v),
            _ => p.other.insert(v),
        }
    }
    p
}

/// The six local configurations ruled out in a minimal counterexample to
/// the weight bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimPart {
    /// A vertex with two degree-1 neighbours.
    I,
    /// A vertex of positive degree all of whose neighbours have degree at most 2.
    Ii,
    /// A degree-3 vertex with a degree-1 and a degree-2 neighbour.
    Iii,
    /// A triangle `vuw` where `v` has a degree-1 neighbour.
    Iv,
    /// A triangle containing a degree-2 vertex.
    V,
    /// A path `vuw` of degree-3 vertices where `v` has a degree-1 neighbour
    /// and `u` has none.
    Vi,
}

/// One occurrence of a configuration. `anchor` is the vertex the definition
/// is phrased around (`v` in every case, the degree-2 vertex for `V`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigHit {
    pub part: ClaimPart,
    pub anchor: usize,
    pub vertices: VertexSet,
}

impl ConfigHit {
    /// Re-checks the configuration against `g` from the stored witness.
    pub fn recheck(&self, g: &Graph) -> bool {
        let v = self.anchor;
        if !self.vertices.contains(v) || !self.vertices.is_subset(g.vertices()) {
            return false;
        }
        let deg = |x: usize| g.degree(x);
        let nbrs_of_degree = |x: usize, d: usize| g.neighbors(x).iter().filter(|&y| deg(y) == d).count();
        let others = self.vertices.without(v);
        match self.part {
            ClaimPart::I => {
                others.len() >= 2 && others.iter().all(|y| g.has_edge(v, y) && deg(y) == 1)
            }
            ClaimPart::Ii => {
                deg(v) >= 1
                    && self.vertices == g.closed_neighbors(v)
                    && g.neighbors(v).iter().all(|y| deg(y) <= 2)
            }
            ClaimPart::Iii => {
                deg(v) == 3 && nbrs_of_degree(v, 1) >= 1 && nbrs_of_degree(v, 2) >= 1
            }
            ClaimPart::Iv => {
                let tri: Vec<usize> = others.iter().filter(|&y| deg(y) != 1).collect();
                let pend: Vec<usize> = others.iter().filter(|&y| deg(y) == 1).collect();
                tri.len() == 2
                    && pend.len() == 1
                    && g.has_edge(v, pend[0])
                    && g.has_edge(v, tri[0])
                    && g.has_edge(v, tri[1])
                    && g.has_edge(tri[0], tri[1])
            }
            ClaimPart::V => {
                let t: Vec<usize> = self.vertices.iter().collect();
                t.len() == 3
                    && g.has_edge(t[0], t[1])
                    && g.has_edge(t[1], t[2])
                    && g.has_edge(t[0], t[2])
                    && deg(v) == 2
            }
            ClaimPart::Vi => {
                let path: Vec<usize> = others.iter().collect();
                if path.len() != 2 {
                    return false;
                }
                let fits = |u: usize, w: usize| {
                    g.has_edge(v, u)
                        && g.has_edge(u, w)
                        && [v, u, w].iter().all(|&x| deg(x) == 3)
                        && nbrs_of_degree(v, 1) >= 1
                        && nbrs_of_degree(u, 1) == 0
                };
                fits(path[0], path[1]) || fits(path[1], path[0])
            }
        }
    }
}

/// Every occurrence of the six configurations, grouped by part and then by
/// ascending anchor.
///
/// Hits per part: (i) one per vertex with two or more degree-1 neighbours,
/// listing all of them; (ii) one per qualifying vertex with its closed
/// neighbourhood; (iii) one per qualifying vertex with its degree-1 and
/// degree-2 neighbours; (iv) one per (triangle, vertex with a degree-1
/// neighbour); (v) one per triangle, anchored at its lowest degree-2
/// vertex; (vi) one per directed path `v -> u -> w`.
pub fn find_forbidden_configs(g: &Graph) -> Vec<ConfigHit> {
    let n = g.order();
    let deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let of_degree = |v: usize, d: usize| -> VertexSet {
        g.neighbors(v).iter().filter(|&y| deg[y] == d).collect()
    };
    let mut hits = Vec::new();
    let mut push = |part, anchor, vertices| hits.push(ConfigHit { part, anchor, vertices });

    for v in 0..n {
        let ones = of_degree(v, 1);
        if ones.len() >= 2 {
            push(ClaimPart::I, v, ones.with(v));
        }
    }
    for v in 0..n {
        if deg[v] >= 1 && g.neighbors(v).iter().all(|y| deg[y] <= 2) {
            push(ClaimPart::Ii, v, g.closed_neighbors(v));
        }
    }
    for v in 0..n {
        let (ones, twos) = (of_degree(v, 1), of_degree(v, 2));
        if deg[v] == 3 && !ones.is_empty() && !twos.is_empty() {
            push(ClaimPart::Iii, v, (ones | twos).with(v));
        }
    }
    let triangles: Vec<[usize; 3]> = (0..n)
        .flat_map(|a| {
            let above_a = VertexSet(g.neighbors(a).0 & !((2u64 << a) - 1));
            above_a.iter().flat_map(move |b| {
                let above_b = VertexSet(g.neighbors(a).0 & g.neighbors(b).0 & !((2u64 << b) - 1));
                above_b.iter().map(move |c| [a, b, c])
            })
        })
        .collect();
    for t in &triangles {
        for &v in t {
            if let Some(p) = of_degree(v, 1).first() {
                let tri = VertexSet::from_vertices(*t);
                push(ClaimPart::Iv, v, tri.with(p));
            }
        }
    }
    for t in &triangles {
        if let Some(&v) = t.iter().find(|&&x| deg[x] == 2) {
            push(ClaimPart::V, v, VertexSet::from_vertices(*t));
        }
    }
    for v in 0..n {
        if deg[v] != 3 || of_degree(v, 1).is_empty() {
            continue;
        }
        for u in g.neighbors(v) {
            if deg[u] != 3 || !of_degree(u, 1).is_empty() {
                continue;
            }
            for w in g.neighbors(u).without(v) {
                if deg[w] == 3 {
                    push(ClaimPart::Vi, v, VertexSet::from_vertices([v, u, w]));
                }
            }
        }
    }
    hits
}

/// Why the cycle walk over `A2 ∪ B1` could not produce a valid cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MissingStructure {
    /// The B1 neighbour `b1` has a degree-2 neighbour outside B1.
    PartnerNotB1 { b1: usize, partner: usize },
    /// The B1 pair `b1 - partner` does not end at an A2 vertex.
    PathEndNotA2 { partner: usize, end: usize },
    /// The current A2 vertex has no fresh B1 neighbour and its degree-3
    /// neighbour is not in A2.
    NoA2Neighbor { degree3_neighbor: Option<usize> },
    /// The only way forward leads back to the previous vertex.
    Backtrack { previous: usize },
    /// The closed cycle has consecutive A2 vertices `from -> to` and `from`
    /// has no B0 neighbour.
    NoB0Neighbor { from: usize, to: usize },
    /// A B1 vertex on the closed cycle does not have exactly one B1
    /// neighbour on the cycle.
    B1PairingBroken { vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkFailure {
    /// Number of vertices on the walk when it got stuck.
    pub step: usize,
    /// The vertex the walk was extending from.
    pub vertex: usize,
    pub missing: MissingStructure,
    pub walk: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum WalkOutcome {
    /// The vertices of the cycle in walk order.
    Cycle { cycle: Vec<usize> },
    Stuck(WalkFailure),
}

/// Walks from the lowest-index A2 vertex: from an A2 vertex with a B1
/// neighbour other than its predecessor, follow the B1-B1-A2 path;
/// otherwise step to its A2 neighbour. The walk stops when it revisits a
/// vertex. The resulting cycle is accepted when every A2 vertex followed by
/// another A2 vertex has a B0 neighbour and every B1 vertex has exactly one
/// B1 neighbour on the cycle.
pub fn find_a2b1_cycle(g: &Graph) -> Result<WalkOutcome> {
    require_subcubic(g)?;
    let p = classify_ab(g);
    let Some(start) = p.a[2].first() else {
        return Err(StructureError::NoA2Vertex);
    };
    let twos: VertexSet = p.b[0] | p.b[1] | p.b[2];
    let b1 = p.b[1];
    let a2 = p.a[2];
    let mut walk = vec![start];
    let mut on_walk = VertexSet::singleton(start);

    let stuck = |walk: &Vec<usize>, vertex, missing| {
        Ok(WalkOutcome::Stuck(WalkFailure {
            step: walk.len(),
            vertex,
            missing,
            walk: walk.clone(),
        }))
    };

    loop {
        let x = *walk.last().unwrap();
        let prev = walk.len().checked_sub(2).map(|i| walk[i]);
        let fresh_b1 = (g.neighbors(x) & b1).iter().find(|&u| Some(u) != prev);
        let next: Vec<usize> = if let Some(u1) = fresh_b1 {
            let u2 = (g.neighbors(u1) & twos).first().expect("B1 has one degree-2 neighbour");
            if !b1.contains(u2) {
                return stuck(&walk, x, MissingStructure::PartnerNotB1 { b1: u1, partner: u2 });
            }
            let u3 = g.neighbors(u2).without(u1).first().expect("degree 2");
            if !a2.contains(u3) {
                return stuck(&walk, x, MissingStructure::PathEndNotA2 { partner: u2, end: u3 });
            }
            vec![u1, u2, u3]
        } else {
            let three = (g.neighbors(x) - twos).first();
            match three {
                Some(y) if a2.contains(y) => {
                    if Some(y) == prev {
                        return stuck(&walk, x, MissingStructure::Backtrack { previous: y });
                    }
                    vec![y]
                }
                other => {
                    return stuck(
                        &walk,
                        x,
                        MissingStructure::NoA2Neighbor { degree3_neighbor: other },
                    )
                }
            }
        };
        for y in next {
            if on_walk.contains(y) {
                let j = walk.iter().position(|&z| z == y).unwrap();
                let cycle = walk[j..].to_vec();
                return Ok(validate_cycle(g, &p, cycle, &walk));
            }
            walk.push(y);
            on_walk.insert(y);
        }
    }
}

fn validate_cycle(g: &Graph, p: &ABPartition, cycle: Vec<usize>, walk: &[usize]) -> WalkOutcome {
    let k = cycle.len();
    let on_cycle = VertexSet::from_vertices(cycle.iter().copied());
    let fail = |vertex, missing| {
        WalkOutcome::Stuck(WalkFailure {
            step: walk.len(),
            vertex,
            missing,
            walk: walk.to_vec(),
        })
    };
    for t in 0..k {
        let (x, y) = (cycle[t], cycle[(t + 1) % k]);
        if p.a[2].contains(x) && p.a[2].contains(y) && (g.neighbors(x) & p.b[0]).is_empty() {
            return fail(x, MissingStructure::NoB0Neighbor { from: x, to: y });
        }
    }
    for &x in &cycle {
        if p.b[1].contains(x) && (g.neighbors(x) & p.b[1] & on_cycle).len() != 1 {
            return fail(x, MissingStructure::B1PairingBroken { vertex: x });
        }
    }
    WalkOutcome::Cycle { cycle }
}

/// `epn(v, X)`: vertices outside `X` whose closed neighbourhood meets `X`
/// exactly in `v`.
pub fn epn(g: &Graph, v: usize, x: VertexSet) -> Result<VertexSet> {
    if !x.contains(v) {
        return Err(StructureError::VertexNotInSet(v));
    }
    Ok(g
        .neighbors(v)
        .iter()
        .filter(|&u| !x.contains(u) && (g.closed_neighbors(u) & x) == VertexSet::singleton(v))
        .collect())
}

fn require_cubic(g: &Graph) -> Result<()> {
    if g.is_cubic() {
        Ok(())
    } else {
        Err(StructureError::NotCubic)
    }
}

/// One swap `D' = (D ∪ epn(v, D)) \ {v}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Swap {
    pub removed: usize,
    pub added: usize,
    pub edges_before: usize,
    pub edges_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub result: VertexSet,
    pub swaps: Vec<Swap>,
}

/// Turns a minimum dominating set of a cubic graph into a near independent
/// dominating set of the same size. While some `v ∈ D` (lowest index first)
/// has two neighbours in `D`, `v` is replaced by its unique external private
/// neighbour; each swap lowers `|E(G[D])|` by at least two.
pub fn reduce_to_near_independent(g: &Graph, d: VertexSet) -> Result<ReductionTrace> {
    require_cubic(g)?;
    if !verify_set(g, d, SetMode::Dominating) {
        return Err(StructureError::PreconditionViolated("input set is not dominating"));
    }
    let mut set = d;
    let mut swaps = Vec::new();
    while let Some(v) = set.iter().find(|&v| g.degree_in(v, set) >= 2) {
        let private = epn(g, v, set)?;
        if private.len() != 1 {
            return Err(StructureError::NotMinimumDominating {
                vertex: v,
                private: private.len(),
            });
        }
        let p = private.first().unwrap();
        let edges_before = g.induced_edge_count(set);
        set = set.without(v).with(p);
        let edges_after = g.induced_edge_count(set);
        debug_assert!(edges_after < edges_before);
        swaps.push(Swap {
            removed: v,
            added: p,
            edges_before,
            edges_after,
        });
    }
    Ok(ReductionTrace { result: set, swaps })
}

pub fn n1_induced(g: &Graph, x: VertexSet) -> usize {
    x.iter().filter(|&v| g.degree_in(v, x) == 1).count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConversionStep {
    pub removed: usize,
    pub added: VertexSet,
    pub size_before: usize,
    pub size_after: usize,
    pub n1_before: usize,
    pub n1_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConversionTrace {
    pub result: VertexSet,
    pub steps: Vec<ConversionStep>,
}

/// Turns a near independent dominating set `X` of a cubic graph into an
/// independent dominating set of size at most `|X| + n1(G[X]) / 2`. While
/// `G[X]` has an edge, the lowest-index `v ∈ X` with a neighbour in `X` is
/// replaced by a greedy maximal independent subset of `epn(v, X)`.
pub fn near_independent_to_independent(g: &Graph, x: VertexSet) -> Result<ConversionTrace> {
    require_cubic(g)?;
    if !verify_set(g, x, SetMode::NearIndependentDominating) {
        return Err(StructureError::PreconditionViolated(
            "input set is not a near independent dominating set",
        ));
    }
    let mut set = x;
    let mut steps = Vec::new();
    while let Some(v) = set.iter().find(|&v| g.degree_in(v, set) > 0) {
        let private = epn(g, v, set)?;
        let chosen = greedy_independent_subset(g, private);
        let next = (set | chosen).without(v);
        steps.push(ConversionStep {
            removed: v,
            added: chosen,
            size_before: set.len(),
            size_after: next.len(),
            n1_before: n1_induced(g, set),
            n1_after: n1_induced(g, next),
        });
        set = next;
    }
    debug_assert!(verify_set(g, set, SetMode::IndependentDominating));
    Ok(ConversionTrace { result: set, steps })
}
