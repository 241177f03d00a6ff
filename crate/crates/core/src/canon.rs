//! Canonical labelling by individualisation and refinement.
//!
//! The search refines an ordered vertex partition to an equitable one,
//! individualises each vertex of the first non-trivial cell in turn, and keeps
//! the lexicographically largest relabelled adjacency matrix found at a leaf.
//! Automorphisms discovered at leaves prune sibling subtrees that lie in the
//! same orbit of the pointwise stabiliser of the current path.
//!
//! Isolated vertices are never individualised: any order of them yields the
//! same relabelled graph.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::graph6::write_graph6;

/// Adjacency rows of the canonically relabelled graph. Two graphs (with the
/// same colour-class sizes, when colours are used) are isomorphic iff their
/// keys are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalKey(pub Vec<u64>);

impl CanonicalKey {
    pub fn to_graph(&self) -> Graph {
        Graph::from_rows_unchecked(self.0.clone())
    }

    /// The key rendered as graph6 of the canonical graph.
    pub fn to_graph6(&self) -> String {
        write_graph6(&self.to_graph())
    }
}

#[derive(Debug, Clone)]
pub struct CanonicalLabeling {
    /// `order[p]` is the vertex placed at canonical position `p`.
    pub order: Vec<usize>,
    pub key: CanonicalKey,
}

impl CanonicalLabeling {
    /// `position[v]` is the canonical position of vertex `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (p, &v) in self.order.iter().enumerate() {
            pos[v] = p;
        }
        pos
    }
}

/// Canonical labelling of an uncoloured graph.
pub fn canonical_labeling(g: &Graph) -> CanonicalLabeling {
    let cells = if g.order() == 0 {
        Vec::new()
    } else {
        vec![g.vertices().0]
    };
    run(g, cells)
}

/// Canonical labelling respecting an ordered vertex colouring. `classes`
/// must partition the vertex set; empty classes are ignored.
pub fn canonical_labeling_colored(g: &Graph, classes: &[VertexSet]) -> CanonicalLabeling {
    debug_assert_eq!(
        classes.iter().fold(0u64, |a, c| a | c.0),
        g.vertices().0,
        "colour classes must cover the vertex set"
    );
    let cells = classes.iter().map(|c| c.0).filter(|&c| c != 0).collect();
    run(g, cells)
}

pub fn canonical_key(g: &Graph) -> CanonicalKey {
    canonical_labeling(g).key
}

/// A labelling-invariant string key: graph6 of the canonically relabelled
/// graph.
pub fn canonical_form(g: &Graph) -> String {
    canonical_key(g).to_graph6()
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.edge_count() == b.edge_count() && canonical_key(a) == canonical_key(b)
}

fn run(g: &Graph, mut cells: Vec<u64>) -> CanonicalLabeling {
    let nonisolated = (0..g.order())
        .filter(|&v| g.degree(v) > 0)
        .fold(0u64, |a, v| a | 1 << v);
    let queue: VecDeque<u64> = cells.iter().copied().collect();
    refine(g, &mut cells, queue);
    let mut search = Search {
        g,
        nonisolated,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut path = Vec::new();
    search.descend(cells, &mut path);
    let best = search.best.expect("search visits at least one leaf");
    CanonicalLabeling {
        order: best.order,
        key: CanonicalKey(best.rows),
    }
}

/// Splits cells until every cell has a uniform neighbour count into every
/// splitter taken from the queue. Fragments are ordered by ascending count.
fn refine(g: &Graph, cells: &mut Vec<u64>, mut queue: VecDeque<u64>) {
    let adj = g.rows();
    let mut groups: Vec<(u32, u64)> = Vec::with_capacity(8);
    while let Some(splitter) = queue.pop_front() {
        let mut i = 0;
        while i < cells.len() {
            let cell = cells[i];
            if cell.count_ones() == 1 {
                i += 1;
                continue;
            }
            groups.clear();
            for v in VertexSet(cell) {
                let c = (adj[v] & splitter).count_ones();
                match groups.iter_mut().find(|(k, _)| *k == c) {
                    Some((_, m)) => *m |= 1 << v,
                    None => groups.push((c, 1 << v)),
                }
            }
            if groups.len() == 1 {
                i += 1;
                continue;
            }
            groups.sort_unstable_by_key(|&(c, _)| c);
            cells.splice(i..=i, groups.iter().map(|&(_, m)| m));
            queue.extend(groups.iter().map(|&(_, m)| m));
            i += groups.len();
        }
    }
}

struct Leaf {
    rows: Vec<u64>,
    order: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    nonisolated: u64,
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// Automorphisms as maps `v -> gamma(v)`.
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns `Some(d)` to unwind to the node at depth `d`.
    fn descend(&mut self, cells: Vec<u64>, path: &mut Vec<usize>) -> Option<usize> {
        let target = cells
            .iter()
            .position(|&c| c.count_ones() > 1 && c & self.nonisolated != 0);
        let Some(t) = target else {
            return self.leaf(&cells, path);
        };
        let depth = path.len();
        let cell = cells[t];
        let mut tried = 0u64;
        for v in VertexSet(cell) {
            if tried != 0 && self.same_orbit(v, tried, path) {
                continue;
            }
            let mut child = cells.clone();
            child[t] &= !(1 << v);
            child.insert(t, 1 << v);
            refine(self.g, &mut child, VecDeque::from([1u64 << v]));
            path.push(v);
            let unwind = self.descend(child, path);
            path.pop();
            tried |= 1 << v;
            if let Some(d) = unwind {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    /// Whether `v` shares an orbit with a member of `tried` under the group
    /// generated by known automorphisms fixing `path` pointwise.
    fn same_orbit(&self, v: usize, tried: u64, path: &[usize]) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.generators {
            if path.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            any = true;
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        VertexSet(tried).iter().any(|u| find(&mut parent, u) == root)
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> Option<usize> {
        let order: Vec<usize> = cells.iter().flat_map(|&c| VertexSet(c).iter()).collect();
        let mut pos = [0usize; 64];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let adj = self.g.rows();
        let rows: Vec<u64> = order
            .iter()
            .map(|&v| VertexSet(adj[v]).iter().fold(0u64, |a, w| a | 1 << pos[w]))
            .collect();
        let leaf = Leaf {
            rows,
            order,
            path: path.to_vec(),
        };
        let Some(first) = &self.first else {
            self.first = Some(Leaf {
                rows: leaf.rows.clone(),
                order: leaf.order.clone(),
                path: leaf.path.clone(),
            });
            self.best = Some(leaf);
            return None;
        };
        if leaf.rows == first.rows {
            let unwind = automorphism_unwind(first, &leaf);
            self.generators.push(unwind.0);
            return unwind.1;
        }
        let best = self.best.as_ref().expect("best set with first");
        match leaf.rows.cmp(&best.rows) {
            std::cmp::Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Equal => {
                let unwind = automorphism_unwind(best, &leaf);
                self.generators.push(unwind.0);
                unwind.1
            }
            std::cmp::Ordering::Less => None,
        }
    }
}

/// The automorphism mapping `from`'s leaf onto `to`'s, plus the depth to
/// unwind to when it also maps `from`'s path onto `to`'s up to the point
/// where they diverge.
fn automorphism_unwind(from: &Leaf, to: &Leaf) -> (Vec<usize>, Option<usize>) {
    let mut gamma = vec![0usize; from.order.len()];
    for (&a, &b) in from.order.iter().zip(&to.order) {
        gamma[a] = b;
    }
    let d = from
        .path
        .iter()
        .zip(&to.path)
        .position(|(a, b)| a != b);
    let unwind = d.filter(|&d| {
        from.path[..d].iter().all(|&p| gamma[p] == p) && gamma[from.path[d]] == to.path[d]
    });
    (gamma, unwind)
}
