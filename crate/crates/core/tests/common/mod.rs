//! Slow, independent reference implementations used to cross-check the
//! library. Nothing here calls the library's labelling, solvers or
//! enumerator.

#![allow(dead_code)]

use std::collections::HashMap;

use idom_core::{Graph, VertexSet};
use rand::Rng;

/// Every subset of `0..n` with exactly `k` elements, as bit masks.
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut cur = if k == 0 { Some(0u64) } else if k > n { None } else { Some((1u64 << k) - 1) };
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == 0 {
            None
        } else {
            // Gosper's hack: next mask with the same popcount.
            let c = out & out.wrapping_neg();
            let r = out + c;
            let next = (((r ^ out) >> 2) / c) | r;
            (next <= limit && next > out).then_some(next)
        };
        Some(out)
    })
}

fn dominates(g: &Graph, s: u64) -> bool {
    let mut covered = s;
    for v in VertexSet(s) {
        covered |= g.neighbors(v).0;
    }
    covered == g.vertices().0
}

fn independent(g: &Graph, s: u64) -> bool {
    VertexSet(s).iter().all(|v| g.neighbors(v).0 & s == 0)
}

/// Smallest `k` such that some `k`-subset dominates.
pub fn brute_gamma(g: &Graph) -> usize {
    (0..=g.order())
        .find(|&k| subsets_of_size(g.order(), k).any(|s| dominates(g, s)))
        .unwrap()
}

/// Smallest `k` such that some independent `k`-subset dominates.
pub fn brute_i(g: &Graph) -> usize {
    (0..=g.order())
        .find(|&k| subsets_of_size(g.order(), k).any(|s| independent(g, s) && dominates(g, s)))
        .unwrap()
}

/// All minimum dominating sets.
pub fn minimum_dominating_sets(g: &Graph) -> Vec<VertexSet> {
    let k = brute_gamma(g);
    subsets_of_size(g.order(), k)
        .filter(|&s| dominates(g, s))
        .map(VertexSet)
        .collect()
}

fn degree_multiset(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    let mut v: Vec<(usize, Vec<usize>)> = (0..g.order())
        .map(|x| {
            let mut nd: Vec<usize> = g.neighbors(x).iter().map(|y| g.degree(y)).collect();
            nd.sort();
            (g.degree(x), nd)
        })
        .collect();
    v.sort();
    v
}

/// Plain backtracking isomorphism test.
pub fn naive_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    if degree_multiset(a) != degree_multiset(b) {
        return false;
    }
    let n = a.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(a: &Graph, b: &Graph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let n = a.order();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || a.degree(v) != b.degree(w) {
                continue;
            }
            if (0..v).any(|u| a.has_edge(u, v) != b.has_edge(map[u], w)) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(a, b, v + 1, map, used) {
                return true;
            }
            used[w] = false;
        }
        map[v] = usize::MAX;
        false
    }
    extend(a, b, 0, &mut map, &mut used)
}

/// One representative per isomorphism class of labelled graphs on `n`
/// vertices with every degree at most `cap` (exactly `cap` if `regular`).
pub fn naive_classes(n: usize, cap: usize, regular: bool) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut buckets: HashMap<(usize, Vec<(usize, Vec<usize>)>), Vec<Graph>> = HashMap::new();
    let mut deg = vec![0usize; n];
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    fn rec(
        i: usize,
        n: usize,
        cap: usize,
        regular: bool,
        pairs: &[(usize, usize)],
        deg: &mut Vec<usize>,
        chosen: &mut Vec<(usize, usize)>,
        buckets: &mut HashMap<(usize, Vec<(usize, Vec<usize>)>), Vec<Graph>>,
    ) {
        if i == pairs.len() {
            if regular && deg.iter().any(|&d| d != cap) {
                return;
            }
            let g = Graph::from_edges(n, chosen.iter().copied()).unwrap();
            let key = (g.edge_count(), degree_multiset(&g));
            let bucket = buckets.entry(key).or_default();
            if !bucket.iter().any(|h| naive_isomorphic(h, &g)) {
                bucket.push(g);
            }
            return;
        }
        let (u, v) = pairs[i];
        if deg[u] < cap && deg[v] < cap {
            deg[u] += 1;
            deg[v] += 1;
            chosen.push((u, v));
            rec(i + 1, n, cap, regular, pairs, deg, chosen, buckets);
            chosen.pop();
            deg[u] -= 1;
            deg[v] -= 1;
        }
        // (u, n-1) is the last pair involving u, so a regular target needs
        // u full before it is skipped.
        let last_for_u = v == n - 1;
        if !(regular && last_for_u && deg[u] < cap) {
            rec(i + 1, n, cap, regular, pairs, deg, chosen, buckets);
        }
    }
    rec(0, n, cap, regular, &pairs, &mut deg, &mut chosen, &mut buckets);
    let mut out: Vec<Graph> = buckets.into_values().flatten().collect();
    out.sort_by_key(|g| (g.edge_count(), g.rows().to_vec()));
    out
}

/// Random graph: order in `lo..=hi`, edge probability drawn per graph.
pub fn random_graph<R: Rng>(rng: &mut R, lo: usize, hi: usize) -> Graph {
    let n = rng.gen_range(lo..=hi);
    let p: f64 = rng.gen_range(0.05..0.6);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

/// Random permutation of `0..n` as an old -> new map.
pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Number of unlabelled graphs on `n` vertices from connected counts
/// `c[1..]`, by the Euler transform.
pub fn euler_transform(c: &[u64], n: usize) -> u64 {
    // a(m) = (1/m) Σ_{k=1..m} b(k) a(m-k), b(k) = Σ_{d | k} d c(d).
    let mut a = vec![0u64; n + 1];
    a[0] = 1;
    let b: Vec<u64> = (0..=n)
        .map(|k| {
            if k == 0 {
                0
            } else {
                (1..=k).filter(|d| k % d == 0).map(|d| d as u64 * c[d]).sum()
            }
        })
        .collect();
    for m in 1..=n {
        let s: u64 = (1..=m).map(|k| b[k] * a[m - k]).sum();
        a[m] = s / m as u64;
    }
    a[n]
}
