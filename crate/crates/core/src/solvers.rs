//! Exact domination number `γ(G)` and independent domination number `i(G)`.
//!
//! Both solvers are depth-first branch and bound over the closed
//! neighbourhood of an undominated vertex, bounded below by
//! `⌈undominated / (Δ + 1)⌉`. Disconnected inputs are solved one component
//! at a time and the results summed.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// Largest order accepted by [`maximal_independent_sets`].
pub const MIS_ORACLE_MAX_ORDER: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("order {order} exceeds the oracle limit of {limit}")]
    OrderTooLarge { order: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetMode {
    Dominating,
    Independent,
    IndependentDominating,
    /// Dominating, and `G[S]` has maximum degree at most one.
    NearIndependentDominating,
}

pub fn verify_set(g: &Graph, s: VertexSet, mode: SetMode) -> bool {
    if !s.is_subset(g.vertices()) {
        return false;
    }
    match mode {
        SetMode::Dominating => g.dominates(s),
        SetMode::Independent => g.is_independent(s),
        SetMode::IndependentDominating => g.is_independent(s) && g.dominates(s),
        SetMode::NearIndependentDominating => {
            g.dominates(s) && s.iter().all(|v| g.degree_in(v, s) <= 1)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub value: usize,
    pub witness: VertexSet,
    pub nodes_explored: u64,
    #[serde(with = "micros")]
    pub elapsed: Duration,
}

mod micros {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_micros() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_micros(u64::deserialize(d)?))
    }
}

/// Ascending-index greedy maximal independent subset of `candidates`.
pub fn greedy_independent_subset(g: &Graph, candidates: VertexSet) -> VertexSet {
    let mut chosen = VertexSet::EMPTY;
    let mut blocked = VertexSet::EMPTY;
    for v in candidates {
        if !blocked.contains(v) {
            chosen.insert(v);
            blocked |= g.closed_neighbors(v);
        }
    }
    chosen
}

/// Greedy maximal independent set of the whole graph, ascending index.
pub fn greedy_maximal_independent_set(g: &Graph) -> VertexSet {
    greedy_independent_subset(g, g.vertices())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Objective {
    Domination,
    IndependentDomination,
}

pub fn domination_number(g: &Graph) -> SolveResult {
    solve(g, Objective::Domination)
}

pub fn independent_domination_number(g: &Graph) -> SolveResult {
    solve(g, Objective::IndependentDomination)
}

fn solve(g: &Graph, objective: Objective) -> SolveResult {
    let start = Instant::now();
    let mut value = 0;
    let mut witness = VertexSet::EMPTY;
    let mut nodes = 0;
    for comp in g.components() {
        let (h, map) = g.induced_subgraph(comp);
        let mut search = BranchAndBound::new(&h, objective);
        search.run();
        value += search.best_size;
        nodes += search.nodes;
        witness |= search.best.iter().map(|v| map[v]).collect();
    }
    SolveResult {
        value,
        witness,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    }
}

struct BranchAndBound<'a> {
    g: &'a Graph,
    objective: Objective,
    all: u64,
    cover: u64,
    best: VertexSet,
    best_size: usize,
    nodes: u64,
}

impl<'a> BranchAndBound<'a> {
    fn new(g: &'a Graph, objective: Objective) -> Self {
        let incumbent = greedy_maximal_independent_set(g);
        BranchAndBound {
            g,
            objective,
            all: g.vertices().0,
            cover: g.max_degree() as u64 + 1,
            best: incumbent,
            best_size: incumbent.len(),
            nodes: 0,
        }
    }

    fn run(&mut self) {
        self.branch(0, 0, 0);
    }

    fn branch(&mut self, chosen: u64, size: usize, dominated: u64) {
        self.nodes += 1;
        let undominated = self.all & !dominated;
        if undominated == 0 {
            if size < self.best_size {
                self.best_size = size;
                self.best = VertexSet(chosen);
            }
            return;
        }
        let bound = (undominated.count_ones() as u64).div_ceil(self.cover) as usize;
        if size + bound >= self.best_size {
            return;
        }
        let (pivot, options) = match self.objective {
            Objective::IndependentDomination => {
                let u = undominated.trailing_zeros() as usize;
                // Vertices of N[u] adjacent to the partial set are excluded.
                (u, self.g.closed_neighbors(u).0 & undominated)
            }
            Objective::Domination => {
                let u = VertexSet(undominated)
                    .iter()
                    .min_by_key(|&u| self.g.degree(u))
                    .expect("undominated is non-empty");
                (u, self.g.closed_neighbors(u).0)
            }
        };
        debug_assert!(options & (1 << pivot) != 0);
        for w in VertexSet(options) {
            self.branch(
                chosen | 1 << w,
                size + 1,
                dominated | self.g.closed_neighbors(w).0,
            );
        }
    }
}

/// Calls `emit` once for every maximal independent set, using Bron–Kerbosch
/// with pivoting on the complement graph.
pub fn for_each_maximal_independent_set<F: FnMut(VertexSet)>(
    g: &Graph,
    mut emit: F,
) -> Result<(), SolverError> {
    if g.order() > MIS_ORACLE_MAX_ORDER {
        return Err(SolverError::OrderTooLarge {
            order: g.order(),
            limit: MIS_ORACLE_MAX_ORDER,
        });
    }
    let all = g.vertices().0;
    let non_adj: Vec<u64> = (0..g.order())
        .map(|v| all & !g.closed_neighbors(v).0)
        .collect();
    bron_kerbosch(&non_adj, 0, all, 0, &mut emit);
    Ok(())
}

fn bron_kerbosch<F: FnMut(VertexSet)>(non_adj: &[u64], r: u64, mut p: u64, mut x: u64, emit: &mut F) {
    if p == 0 {
        if x == 0 {
            emit(VertexSet(r));
        }
        return;
    }
    let pivot = VertexSet(p | x)
        .iter()
        .max_by_key(|&u| ((p & non_adj[u]).count_ones(), std::cmp::Reverse(u)))
        .expect("p is non-empty");
    for v in VertexSet(p & !non_adj[pivot]) {
        bron_kerbosch(non_adj, r | 1 << v, p & non_adj[v], x & non_adj[v], emit);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// Every maximal independent set; intended as a cross-check oracle.
pub fn maximal_independent_sets(g: &Graph) -> Result<Vec<VertexSet>, SolverError> {
    let mut out = Vec::new();
    for_each_maximal_independent_set(g, |s| out.push(s))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, FamilySpec};

    fn fam(spec: FamilySpec) -> Graph {
        build(spec).unwrap()
    }

    #[test]
    fn verify_set_examples() {
        let c7 = fam(FamilySpec::Cycle { n: 7 });
        let s = VertexSet::from_vertices([0, 2, 4]);
        assert!(verify_set(&c7, s, SetMode::IndependentDominating));
        assert!(!verify_set(&c7, VertexSet::EMPTY, SetMode::Dominating));
        assert!(verify_set(&c7, VertexSet::EMPTY, SetMode::Independent));
        let prism3 = fam(FamilySpec::Prism { k: 3 });
        let pair = VertexSet::from_vertices([0, 3]);
        assert!(verify_set(&prism3, pair, SetMode::NearIndependentDominating));
        assert!(!verify_set(&prism3, pair, SetMode::IndependentDominating));
        assert!(!verify_set(&c7, VertexSet::singleton(9), SetMode::Independent));
    }

    #[test]
    fn domination_examples() {
        assert_eq!(domination_number(&fam(FamilySpec::Complete { n: 4 })).value, 1);
        assert_eq!(domination_number(&fam(FamilySpec::Cycle { n: 7 })).value, 3);
        assert_eq!(domination_number(&fam(FamilySpec::Petersen)).value, 3);
        assert_eq!(domination_number(&Graph::empty(0).unwrap()).value, 0);
    }

    #[test]
    fn independent_domination_examples() {
        let k33 = fam(FamilySpec::CompleteBipartite { a: 3, b: 3 });
        assert_eq!(independent_domination_number(&k33).value, 3);
        assert_eq!(independent_domination_number(&fam(FamilySpec::PRISM5)).value, 4);
        assert_eq!(
            independent_domination_number(&fam(FamilySpec::Tkl { k: 3, l: 2 })).value,
            7
        );
        assert_eq!(
            independent_domination_number(&fam(FamilySpec::Edgeless { n: 5 })).value,
            5
        );
    }

    #[test]
    fn witnesses_certify_values() {
        for spec in [
            FamilySpec::Petersen,
            FamilySpec::PRISM5,
            FamilySpec::Tkl { k: 6, l: 0 },
            FamilySpec::Cycle { n: 7 },
        ] {
            let g = fam(spec);
            let i = independent_domination_number(&g);
            assert_eq!(i.witness.len(), i.value);
            assert!(verify_set(&g, i.witness, SetMode::IndependentDominating));
            let d = domination_number(&g);
            assert_eq!(d.witness.len(), d.value);
            assert!(verify_set(&g, d.witness, SetMode::Dominating));
            assert!(d.value <= i.value);
        }
    }

    #[test]
    fn mis_oracle_examples() {
        let c5 = fam(FamilySpec::Cycle { n: 5 });
        let sets = maximal_independent_sets(&c5).unwrap();
        assert_eq!(sets.len(), 5);
        assert!(sets.iter().all(|s| s.len() == 2));
        let k4 = fam(FamilySpec::Complete { n: 4 });
        let mut sets = maximal_independent_sets(&k4).unwrap();
        sets.sort();
        assert_eq!(sets, (0..4).map(VertexSet::singleton).collect::<Vec<_>>());
        let e3 = fam(FamilySpec::Edgeless { n: 3 });
        assert_eq!(maximal_independent_sets(&e3).unwrap(), vec![VertexSet::full(3)]);
        let big = fam(FamilySpec::Cycle { n: 25 });
        assert_eq!(
            maximal_independent_sets(&big),
            Err(SolverError::OrderTooLarge { order: 25, limit: 24 })
        );
    }

    #[test]
    fn deterministic_witness() {
        let g = fam(FamilySpec::Tkl { k: 5, l: 1 });
        let a = independent_domination_number(&g);
        let b = independent_domination_number(&g);
        assert_eq!(a.witness, b.witness);
    }
}
