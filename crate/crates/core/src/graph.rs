//! Small simple graphs stored as one `u64` adjacency row per vertex.
//!
//! Every algorithm in this crate works on graphs with at most
//! [`MAX_ORDER`] vertices so that any vertex subset fits in one machine word.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported order.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("order {0} exceeds the maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency is not symmetric between {0} and {1}")]
    Asymmetric(usize, usize),
}

/// A set of vertices as a bit mask. Bit `v` set means vertex `v` is a member.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

// Serialised as an ascending list of vertex indices.
impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let vertices = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = vertices.iter().find(|&&v| v >= MAX_ORDER) {
            return Err(serde::de::Error::custom(format!("vertex {bad} out of range")));
        }
        Ok(VertexSet::from_vertices(vertices))
    }
}

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in vertices {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && (self.0 >> v) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Lowest-index member.
    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitAndAssign for VertexSet {
    fn bitand_assign(&mut self, rhs: VertexSet) {
        self.0 &= rhs.0;
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitOrAssign for VertexSet {
    fn bitor_assign(&mut self, rhs: VertexSet) {
        self.0 |= rhs.0;
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> VertexSet {
        VertexSet(!self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Vertex counts by degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub n0: usize,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub max_degree: usize,
}

impl DegreeProfile {
    pub fn counts(&self) -> (usize, usize, usize, usize) {
        (self.n0, self.n1, self.n2, self.n3)
    }
}

/// Length of a shortest cycle. Forests have infinite girth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

/// An immutable simple undirected graph on vertices `0..order`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    order: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Graph with `order` vertices and no edges.
    pub fn empty(order: usize) -> Result<Self, GraphError> {
        if order > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(order));
        }
        Ok(Graph {
            order,
            adj: vec![0; order],
        })
    }

    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(order)?;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, checking symmetry and irreflexivity.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self, GraphError> {
        let order = rows.len();
        if order > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(order));
        }
        let valid = VertexSet::full(order).0;
        for (v, &row) in rows.iter().enumerate() {
            if row & !valid != 0 {
                let w = (row & !valid).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { vertex: w, order });
            }
            if (row >> v) & 1 == 1 {
                return Err(GraphError::SelfLoop(v));
            }
            for u in VertexSet(row) {
                if (rows[u] >> v) & 1 == 0 {
                    return Err(GraphError::Asymmetric(v, u));
                }
            }
        }
        Ok(Graph { order, adj: rows })
    }

    /// Rows are trusted to be symmetric and loop-free.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(Graph::from_rows(rows.clone()).is_ok());
        Graph {
            order: rows.len(),
            adj: rows,
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    /// Open neighbourhood `N(v)`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// Closed neighbourhood `N[v]`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v] | (1 << v))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.adj[u] >> v) & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| {
            VertexSet(self.adj[u] & !((2u64 << u) - 1)).iter().map(move |v| (u, v))
        })
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `N[S] = S ∪ N(S)`.
    pub fn closed_neighborhood(&self, s: VertexSet) -> VertexSet {
        let mut out = s;
        for v in s {
            out.0 |= self.adj[v];
        }
        out
    }

    /// `N(S)`, the union of the open neighbourhoods of the members of `s`.
    pub fn open_neighborhood(&self, s: VertexSet) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for v in s {
            out.0 |= self.adj[v];
        }
        out
    }

    /// Degree of `v` inside the induced subgraph `G[s]`.
    #[inline]
    pub fn degree_in(&self, v: usize, s: VertexSet) -> usize {
        (self.adj[v] & s.0).count_ones() as usize
    }

    /// Number of edges of `G[s]`.
    pub fn induced_edge_count(&self, s: VertexSet) -> usize {
        s.iter().map(|v| self.degree_in(v, s)).sum::<usize>() / 2
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v] & s.0 == 0)
    }

    pub fn dominates(&self, s: VertexSet) -> bool {
        self.closed_neighborhood(s) == self.vertices()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let mut p = DegreeProfile::default();
        for v in 0..self.order {
            let d = self.degree(v);
            match d {
                0 => p.n0 += 1,
                1 => p.n1 += 1,
                2 => p.n2 += 1,
                3 => p.n3 += 1,
                _ => {}
            }
            p.max_degree = p.max_degree.max(d);
        }
        p
    }

    pub fn is_subcubic(&self) -> bool {
        self.max_degree() <= 3
    }

    pub fn is_cubic(&self) -> bool {
        (0..self.order).all(|v| self.degree(v) == 3)
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.order).all(|v| self.degree(v) == k)
    }

    /// True iff two distinct vertices share at least two neighbours,
    /// i.e. the graph contains a 4-cycle as a subgraph.
    pub fn has_four_cycle(&self) -> bool {
        for u in 0..self.order {
            for v in u + 1..self.order {
                if (self.adj[u] & self.adj[v]).count_ones() >= 2 {
                    return true;
                }
            }
        }
        false
    }

    /// Shortest cycle length by breadth-first search from every vertex.
    pub fn girth(&self) -> Girth {
        let n = self.order;
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = Vec::with_capacity(n);
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            queue.clear();
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.push(root);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// Connected components as vertex sets, ordered by their lowest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for v in 0..self.order {
            if seen.contains(v) {
                continue;
            }
            let comp = self.component_of(v);
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn component_of(&self, v: usize) -> VertexSet {
        let mut comp = VertexSet::singleton(v);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let next = self.open_neighborhood(frontier) - comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.order == 0 || self.component_of(0).len() == self.order
    }

    /// The subgraph induced by `keep`, relabelled to `0..|keep|` in ascending
    /// order. The second value maps new indices back to old ones.
    pub fn induced_subgraph(&self, keep: VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = keep.iter().collect();
        let mut index = [usize::MAX; 64];
        for (new, &old) in map.iter().enumerate() {
            index[old] = new;
        }
        let rows = map
            .iter()
            .map(|&old| {
                VertexSet(self.adj[old] & keep.0)
                    .iter()
                    .fold(0u64, |acc, w| acc | (1 << index[w]))
            })
            .collect();
        (Graph::from_rows_unchecked(rows), map)
    }

    /// `G - X`, relabelled compactly.
    pub fn remove_vertices(&self, x: VertexSet) -> (Graph, Vec<usize>) {
        self.induced_subgraph(self.vertices() - x)
    }

    /// Graph obtained by applying `perm`: old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order);
        let mut rows = vec![0u64; self.order];
        for (u, v) in self.edges() {
            rows[perm[u]] |= 1 << perm[v];
            rows[perm[v]] |= 1 << perm[u];
        }
        Graph::from_rows_unchecked(rows)
    }

    pub(crate) fn with_edge(&self, u: usize, v: usize) -> Graph {
        let mut adj = self.adj.clone();
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
        Graph {
            order: self.order,
            adj,
        }
    }

    pub(crate) fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut adj = self.adj.clone();
        adj[u] &= !(1 << v);
        adj[v] &= !(1 << u);
        Graph {
            order: self.order,
            adj,
        }
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.order + other.order;
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        let mut rows = self.adj.clone();
        rows.extend(other.adj.iter().map(|r| r << self.order));
        Ok(Graph::from_rows_unchecked(rows))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.order)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn k33() -> Graph {
        Graph::from_edges(6, (0..3).flat_map(|u| (3..6).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn closed_neighborhood_on_cycle() {
        let c7 = cycle(7);
        assert_eq!(
            c7.closed_neighborhood(VertexSet::singleton(0)),
            VertexSet::from_vertices([6, 0, 1])
        );
        assert_eq!(c7.closed_neighborhood(VertexSet::EMPTY), VertexSet::EMPTY);
        assert_eq!(
            complete(4).closed_neighborhood(VertexSet::singleton(0)),
            VertexSet::full(4)
        );
    }

    #[test]
    fn four_cycles() {
        assert!(k33().has_four_cycle());
        assert!(!cycle(7).has_four_cycle());
        assert!(cycle(4).has_four_cycle());
        assert!(!complete(3).has_four_cycle());
    }

    #[test]
    fn girth_values() {
        assert_eq!(k33().girth(), Girth::Finite(4));
        assert_eq!(cycle(7).girth(), Girth::Finite(7));
        assert_eq!(complete(4).girth(), Girth::Finite(3));
        let path = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.girth(), Girth::Infinite);
        assert_eq!(Graph::empty(0).unwrap().girth(), Girth::Infinite);
        assert!(Girth::Finite(1000) < Girth::Infinite);
    }

    #[test]
    fn profiles() {
        let p = cycle(7).degree_profile();
        assert_eq!((p.counts(), p.max_degree), ((0, 0, 7, 0), 2));
        let p = complete(4).degree_profile();
        assert_eq!((p.counts(), p.max_degree), ((0, 0, 0, 4), 3));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Graph::empty(65), Err(GraphError::OrderTooLarge(65)));
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, .. })
        ));
        assert_eq!(Graph::from_rows(vec![0b10, 0]), Err(GraphError::Asymmetric(0, 1)));
    }

    #[test]
    fn induced_subgraph_relabels() {
        let c7 = cycle(7);
        let (p, map) = c7.remove_vertices(VertexSet::from_vertices([6, 0, 1]));
        assert_eq!(map, vec![2, 3, 4, 5]);
        assert_eq!(p.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn components_of_union() {
        let g = cycle(3).disjoint_union(&cycle(4)).unwrap();
        let comps = g.components();
        assert_eq!(comps, vec![VertexSet(0b111), VertexSet(0b1111000)]);
        assert!(!g.is_connected());
        assert!(cycle(5).is_connected());
    }

    #[test]
    fn vertex_set_ops() {
        let a = VertexSet::from_vertices([1, 3, 5]);
        let b = VertexSet::from_vertices([3, 4]);
        assert_eq!((a & b).to_vec(), vec![3]);
        assert_eq!((a | b).to_vec(), vec![1, 3, 4, 5]);
        assert_eq!((a - b).to_vec(), vec![1, 5]);
        assert_eq!(a.first(), Some(1));
        assert_eq!(VertexSet::full(64).len(), 64);
        assert!(VertexSet::from_vertices([1, 5]).is_subset(a));
    }
}
