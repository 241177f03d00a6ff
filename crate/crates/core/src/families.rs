//! Deterministic constructors for the named graph families.
//!
//! Labelling conventions are fixed so that fixtures and graph6 snapshots stay
//! stable:
//!
//! * `Tkl { k, l }`: the cycle `x_1 .. x_{k+4l}` occupies `0..k+4l`; the
//!   pendant attached to `x_j` (`j = 1..=k`) is `k+4l-1+j`; the vertex
//!   joining `x_{k+4i+1}` and `x_{k+4i+4}` (`i = 0..l`) is `2k+4l+i`.
//! * `Cycle`, `Path`: `0..n` in order.
//! * `CompleteBipartite { a, b }`: sides `0..a` and `a..a+b`.
//! * `Prism(k)`: outer cycle `0..k`, inner cycle `k..2k`, rungs `i -- i+k`.
//! * `Petersen`: outer 5-cycle `0..5`, inner pentagram `5..10`
//!   (`5+i -- 5+(i+2)%5`), spokes `i -- i+5`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    Tkl { k: usize, l: usize },
    Cycle { n: usize },
    Path { n: usize },
    CompleteBipartite { a: usize, b: usize },
    /// The prism `C_k □ K_2`; `Prism { k: 5 }` is the 10-vertex prism.
    Prism { k: usize },
    Petersen,
    Edgeless { n: usize },
    Complete { n: usize },
}

impl FamilySpec {
    pub const PRISM5: FamilySpec = FamilySpec::Prism { k: 5 };

    /// Number of vertices of the built graph.
    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Tkl { k, l } => 2 * k + 5 * l,
            FamilySpec::Cycle { n }
            | FamilySpec::Path { n }
            | FamilySpec::Edgeless { n }
            | FamilySpec::Complete { n } => n,
            FamilySpec::CompleteBipartite { a, b } => a + b,
            FamilySpec::Prism { k } => 2 * k,
            FamilySpec::Petersen => 10,
        }
    }

    fn validate(&self) -> Result<(), FamilyError> {
        let fail = |reason: &str| {
            Err(FamilyError::InvalidParameters {
                spec: *self,
                reason: reason.to_string(),
            })
        };
        match *self {
            FamilySpec::Tkl { k, l } if k + l < 5 => fail("T(k,l) requires k + l >= 5"),
            FamilySpec::Cycle { n } if n < 3 => fail("a cycle requires n >= 3"),
            FamilySpec::Path { n } if n < 1 => fail("a path requires n >= 1"),
            FamilySpec::CompleteBipartite { a, b } if a < 1 || b < 1 => {
                fail("K(a,b) requires a >= 1 and b >= 1")
            }
            FamilySpec::Prism { k } if k < 3 => fail("a prism requires k >= 3"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Tkl { k, l } => write!(f, "T({k},{l})"),
            FamilySpec::Cycle { n } => write!(f, "C{n}"),
            FamilySpec::Path { n } => write!(f, "P{n}"),
            FamilySpec::CompleteBipartite { a, b } => write!(f, "K({a},{b})"),
            FamilySpec::Prism { k } => write!(f, "C{k}xK2"),
            FamilySpec::Petersen => f.write_str("Petersen"),
            FamilySpec::Edgeless { n } => write!(f, "E{n}"),
            FamilySpec::Complete { n } => write!(f, "K{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameters for {spec}: {reason}")]
    InvalidParameters { spec: FamilySpec, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn build(spec: FamilySpec) -> Result<Graph, FamilyError> {
    spec.validate()?;
    let n = spec.order();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match spec {
        FamilySpec::Tkl { k, l } => {
            let m = k + 4 * l;
            edges.extend((0..m).map(|i| (i, (i + 1) % m)));
            edges.extend((0..k).map(|j| (j, m + j)));
            for i in 0..l {
                let hub = m + k + i;
                edges.push((k + 4 * i, hub));
                edges.push((k + 4 * i + 3, hub));
            }
        }
        FamilySpec::Cycle { n } => edges.extend((0..n).map(|i| (i, (i + 1) % n))),
        FamilySpec::Path { n } => edges.extend((1..n).map(|i| (i - 1, i))),
        FamilySpec::CompleteBipartite { a, b } => {
            edges.extend((0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
        }
        FamilySpec::Prism { k } => {
            for i in 0..k {
                edges.push((i, (i + 1) % k));
                edges.push((k + i, k + (i + 1) % k));
                edges.push((i, k + i));
            }
        }
        FamilySpec::Petersen => {
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((5 + i, 5 + (i + 2) % 5));
                edges.push((i, i + 5));
            }
        }
        FamilySpec::Edgeless { .. } => {}
        FamilySpec::Complete { n } => {
            edges.extend((0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// The independent domination number asserted for a family member where a
/// closed value is known: `k + 2l` for `T(k,l)`, `k` for `K(k,k)` and `4`
/// for the 10-vertex prism. `None` otherwise. Meant as an oracle target for
/// checking the solver, never as a shortcut.
pub fn family_expected_i(spec: FamilySpec) -> Option<usize> {
    match spec {
        FamilySpec::Tkl { k, l } if k + l >= 5 => Some(k + 2 * l),
        FamilySpec::CompleteBipartite { a, b } if a == b && a >= 1 => Some(a),
        FamilySpec::Prism { k: 5 } => Some(4),
        _ => None,
    }
}

/// Every valid `T(k,l)` with at most `max_order` vertices, ordered by `l`
/// then `k`.
pub fn tkl_up_to(max_order: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for l in 0..=max_order / 5 {
        for k in 0..=max_order / 2 {
            if k + l >= 5 && 2 * k + 5 * l <= max_order {
                out.push(FamilySpec::Tkl { k, l });
            }
        }
    }
    out
}
