//! Brute-force reference implementations. They share nothing with the
//! library beyond reading a graph's edge list, and are only fast enough for
//! a handful of vertices.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use itertools::Itertools;
use proptest::prelude::*;
use vtgraph::group::FiniteGroup;
use vtgraph::Graph;

/// Adjacency matrix as bit rows.
pub type Rows = Vec<u64>;

pub fn rows(g: &Graph) -> Rows {
    let mut r = vec![0u64; g.order()];
    for (u, v) in g.edges() {
        r[u] |= 1 << v;
        r[v] |= 1 << u;
    }
    r
}

pub fn graph(r: &Rows) -> Graph {
    let n = r.len();
    let edges = (0..n).tuple_combinations().filter(|&(u, v)| r[u] >> v & 1 == 1);
    Graph::from_edges(n, edges).unwrap()
}

fn adj(r: &Rows, u: usize, v: usize) -> bool {
    r[u] >> v & 1 == 1
}

/// Lexicographically smallest relabeled adjacency over all permutations.
pub fn canonical(r: &Rows) -> Rows {
    let n = r.len();
    (0..n)
        .permutations(n)
        .map(|p| {
            let mut out = vec![0u64; n];
            for u in 0..n {
                for v in 0..n {
                    if adj(r, u, v) {
                        out[p[u]] |= 1 << p[v];
                    }
                }
            }
            out
        })
        .min()
        .unwrap_or_default()
}

pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && canonical(&rows(a)) == canonical(&rows(b))
}

fn delete_vertex(r: &Rows, v: usize) -> Rows {
    let squeeze = |x: u64| (x & ((1 << v) - 1)) | ((x >> (v + 1)) << v);
    r.iter().enumerate().filter(|&(u, _)| u != v).map(|(_, &x)| squeeze(x)).collect()
}

fn contract(r: &Rows, u: usize, v: usize) -> Rows {
    // Merge v into u, then drop v.
    let mut m = r.clone();
    let merged = (m[u] | m[v]) & !(1 << u) & !(1 << v);
    m[u] = merged;
    for (w, row) in m.iter_mut().enumerate() {
        if merged >> w & 1 == 1 {
            *row |= 1 << u;
        }
    }
    delete_vertex(&m, v)
}

/// Canonical forms of every minor of `g`: closure under vertex deletion,
/// edge deletion and edge contraction.
pub fn all_minors(g: &Graph) -> HashSet<Rows> {
    let start = canonical(&rows(g));
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(r) = queue.pop_front() {
        let n = r.len();
        let mut next = Vec::new();
        for v in 0..n {
            next.push(delete_vertex(&r, v));
        }
        for (u, v) in (0..n).tuple_combinations() {
            if adj(&r, u, v) {
                let mut d = r.clone();
                d[u] &= !(1 << v);
                d[v] &= !(1 << u);
                next.push(d);
                next.push(contract(&r, u, v));
            }
        }
        for x in next {
            let c = canonical(&x);
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    seen
}

pub fn is_minor_oracle(h: &Graph, minors_of_g: &HashSet<Rows>) -> bool {
    minors_of_g.contains(&canonical(&rows(h)))
}

fn is_path(r: &Rows, p: &[usize]) -> bool {
    p.windows(2).all(|w| adj(r, w[0], w[1]))
}

pub fn ham_path_exists(g: &Graph) -> bool {
    let r = rows(g);
    let n = r.len();
    n == 0 || (0..n).permutations(n).any(|p| is_path(&r, &p))
}

pub fn ham_cycle_exists(g: &Graph) -> bool {
    let r = rows(g);
    let n = r.len();
    (1..n)
        .permutations(n - 1)
        .any(|rest| adj(&r, 0, rest[0]) && adj(&r, rest[n - 2], 0) && is_path(&r, &rest))
}

pub fn ham_path_between_exists(g: &Graph, x: usize, y: usize) -> bool {
    let r = rows(g);
    let n = r.len();
    (0..n)
        .permutations(n)
        .any(|p| p[0] == x && p[n - 1] == y && is_path(&r, &p))
}

pub fn automorphism_count(g: &Graph) -> usize {
    let r = rows(g);
    let n = r.len();
    (0..n)
        .permutations(n)
        .filter(|p| (0..n).all(|u| (0..n).all(|v| adj(&r, u, v) == adj(&r, p[u], p[v]))))
        .count()
}

fn connected_after_removing(r: &Rows, removed: u64) -> bool {
    let n = r.len();
    let alive: Vec<usize> = (0..n).filter(|&v| removed >> v & 1 == 0).collect();
    let Some(&s) = alive.first() else { return true };
    let mut seen = 1u64 << s;
    let mut stack = vec![s];
    while let Some(u) = stack.pop() {
        for &v in &alive {
            if adj(r, u, v) && seen >> v & 1 == 0 {
                seen |= 1 << v;
                stack.push(v);
            }
        }
    }
    alive.iter().all(|&v| seen >> v & 1 == 1)
}

/// Smallest number of vertices whose removal disconnects `g`; `n - 1` for complete graphs.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let r = rows(g);
    let n = r.len();
    for k in 0..n.saturating_sub(1) {
        if (0..n).combinations(k).any(|c| !connected_after_removing(&r, c.iter().fold(0, |m, &v| m | 1 << v))) {
            return k;
        }
    }
    n.saturating_sub(1)
}

/// Whether two groups are isomorphic: map a generating set of `a` to every
/// tuple of `b` with matching element orders, extend along words, and test
/// the homomorphism property.
pub fn groups_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    let n = a.order();
    if n != b.order() {
        return false;
    }
    let order = |g: &FiniteGroup, x: usize| {
        let mut k = 1;
        let mut y = x;
        while y != g.identity() {
            y = g.mul(y, x);
            k += 1;
        }
        k
    };
    let profile = |g: &FiniteGroup| (0..n).map(|x| order(g, x)).sorted().collect::<Vec<_>>();
    if profile(a) != profile(b) {
        return false;
    }
    // Greedy generating set of `a`.
    let mut gens = Vec::new();
    let mut span: HashSet<usize> = HashSet::from([a.identity()]);
    for x in 0..n {
        if span.contains(&x) {
            continue;
        }
        gens.push(x);
        let mut frontier: Vec<usize> = span.iter().copied().collect();
        while let Some(y) = frontier.pop() {
            for &g in &gens {
                let z = a.mul(y, g);
                if span.insert(z) {
                    frontier.push(z);
                }
            }
        }
    }
    let choices: Vec<Vec<usize>> =
        gens.iter().map(|&g| (0..n).filter(|&y| order(b, y) == order(a, g)).collect()).collect();
    choices.iter().multi_cartesian_product().any(|images| {
        let mut map = vec![usize::MAX; n];
        map[a.identity()] = b.identity();
        let mut queue = VecDeque::from([a.identity()]);
        while let Some(x) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images.iter()) {
                let z = a.mul(x, g);
                let w = b.mul(map[x], *img);
                if map[z] == usize::MAX {
                    map[z] = w;
                    queue.push_back(z);
                } else if map[z] != w {
                    return false;
                }
            }
        }
        let mut hit = vec![false; n];
        map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
            && (0..n).all(|x| (0..n).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])))
    })
}

/// Arbitrary graphs on `1..=max_n` vertices.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |bits| {
            let edges = pairs.iter().zip(bits).filter(|(_, b)| *b).map(|(&e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// A graph together with a permutation of its vertices.
pub fn arb_graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Every graph on `n` vertices (labelled), for very small `n`.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            Graph::from_edges(n, edges).unwrap()
        })
        .collect()
}
