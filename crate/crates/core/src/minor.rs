//! Classical and homogeneous minors.
//!
//! A witness for `H <= G` assigns to every vertex `h` of `H` a branch set
//! `V_h` of host vertices: the sets are pairwise disjoint, each induces a
//! connected subgraph, and every edge `hh'` of `H` is realised by at least one
//! host edge between `V_h` and `V_h'`. Extra host edges between branch sets of
//! non-adjacent pattern vertices are allowed, and the sets need not cover the
//! host. A homogeneous witness for `(H, H')` additionally requires every branch
//! set to induce a graph isomorphic to the connected graph `H'`.
//!
//! Searches take pattern vertices by descending degree and try candidate sets
//! by ascending size, then lexicographically, returning the first witness.
//! There is no symmetry reduction by host automorphisms yet; orbit pruning of
//! the first branch set would be the natural next step.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::budget::{Deadline, Search, TimedOut};
use crate::error::MinorError;
use crate::graph::{Graph, VertexSet};
use crate::iso::are_isomorphic;

/// Branch sets indexed by pattern vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BranchDecomposition {
    sets: Vec<VertexSet>,
}

impl BranchDecomposition {
    pub fn new(sets: Vec<VertexSet>) -> Self {
        BranchDecomposition { sets }
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn set(&self, pattern_vertex: usize) -> VertexSet {
        self.sets[pattern_vertex]
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn covered(&self) -> VertexSet {
        self.sets.iter().fold(VertexSet::EMPTY, |a, &s| a.union(s))
    }

    /// One line per pattern vertex: `pattern_vertex <h> branch_set <v> <v> ...`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Self, WitnessParseError> {
        let mut sets = Vec::new();
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let err = |column: usize, message: &str| WitnessParseError {
                line: i + 1,
                column,
                message: message.to_string(),
            };
            let toks: Vec<&str> = line.split(' ').collect();
            if toks.len() < 3 || toks[0] != "pattern_vertex" || toks[2] != "branch_set" {
                return Err(err(1, "expected `pattern_vertex <h> branch_set <vertices>`"));
            }
            let h: usize = toks[1].parse().map_err(|_| err(16, "invalid pattern vertex"))?;
            if h != sets.len() {
                return Err(err(16, "records must be sorted by pattern vertex, starting at 0"));
            }
            let mut set = VertexSet::EMPTY;
            let mut column = 17 + toks[1].len() + "branch_set ".len();
            let mut prev = None;
            for tok in &toks[3..] {
                let v: usize = tok.parse().map_err(|_| err(column, "invalid vertex"))?;
                if v >= crate::graph::MAX_VERTICES || prev.is_some_and(|p| p >= v) {
                    return Err(err(column, "branch set must be a strictly ascending list of vertices below 64"));
                }
                prev = Some(v);
                set.insert(v);
                column += tok.len() + 1;
            }
            sets.push(set);
        }
        Ok(BranchDecomposition { sets })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("witness parse error at line {line}, column {column}: {message}")]
pub struct WitnessParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for BranchDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (h, s) in self.sets.iter().enumerate() {
            write!(f, "pattern_vertex {h} branch_set")?;
            for v in s.iter() {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessRecord {
    pattern_vertex: usize,
    branch_set: Vec<usize>,
}

impl Serialize for BranchDecomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.sets.iter().enumerate().map(|(h, set)| WitnessRecord {
            pattern_vertex: h,
            branch_set: set.to_vec(),
        }))
    }
}

impl<'de> Deserialize<'de> for BranchDecomposition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let records = Vec::<WitnessRecord>::deserialize(d)?;
        let mut sets = Vec::with_capacity(records.len());
        for (i, r) in records.into_iter().enumerate() {
            if r.pattern_vertex != i {
                return Err(serde::de::Error::custom("records must be sorted by pattern vertex"));
            }
            if r.branch_set.iter().any(|&v| v >= crate::graph::MAX_VERTICES) {
                return Err(serde::de::Error::custom("vertex out of range"));
            }
            sets.push(r.branch_set.into_iter().collect());
        }
        Ok(BranchDecomposition { sets })
    }
}

/// The first clause a purported witness violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessViolation {
    /// One branch set per pattern vertex is required.
    SetCount { expected: usize, found: usize },
    OutOfRange { pattern_vertex: usize, vertex: usize },
    EmptySet { pattern_vertex: usize },
    Overlap { first: usize, second: usize, vertex: usize },
    Disconnected { pattern_vertex: usize },
    UncoveredEdge { u: usize, v: usize },
    /// Homogeneous witnesses only.
    NotIsomorphicToBranchGraph { pattern_vertex: usize },
}

impl fmt::Display for WitnessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessViolation::SetCount { expected, found } => {
                write!(f, "set count: expected {expected} branch sets, found {found}")
            }
            WitnessViolation::OutOfRange { pattern_vertex, vertex } => {
                write!(f, "range: branch set {pattern_vertex} contains non-host vertex {vertex}")
            }
            WitnessViolation::EmptySet { pattern_vertex } => write!(f, "non-empty: branch set {pattern_vertex} is empty"),
            WitnessViolation::Overlap { first, second, vertex } => {
                write!(f, "disjointness: branch sets {first} and {second} share vertex {vertex}")
            }
            WitnessViolation::Disconnected { pattern_vertex } => {
                write!(f, "connectivity: branch set {pattern_vertex} does not induce a connected subgraph")
            }
            WitnessViolation::UncoveredEdge { u, v } => {
                write!(f, "pattern edge uncovered: no host edge between branch sets {u} and {v}")
            }
            WitnessViolation::NotIsomorphicToBranchGraph { pattern_vertex } => {
                write!(f, "homogeneity: branch set {pattern_vertex} does not induce a copy of H'")
            }
        }
    }
}

/// Checks a minor witness clause by clause, reporting the first violation.
pub fn verify_minor_witness(host: &Graph, pattern: &Graph, d: &BranchDecomposition) -> Result<(), WitnessViolation> {
    let sets = d.sets();
    if sets.len() != pattern.order() {
        return Err(WitnessViolation::SetCount {
            expected: pattern.order(),
            found: sets.len(),
        });
    }
    for (h, s) in sets.iter().enumerate() {
        if let Some(v) = s.difference(host.vertices()).first() {
            return Err(WitnessViolation::OutOfRange { pattern_vertex: h, vertex: v });
        }
        if s.is_empty() {
            return Err(WitnessViolation::EmptySet { pattern_vertex: h });
        }
    }
    for (a, &sa) in sets.iter().enumerate() {
        for (b, &sb) in sets.iter().enumerate().skip(a + 1) {
            if let Some(v) = sa.intersection(sb).first() {
                return Err(WitnessViolation::Overlap {
                    first: a,
                    second: b,
                    vertex: v,
                });
            }
        }
    }
    if let Some(h) = sets.iter().position(|&s| !host.is_connected_within(s)) {
        return Err(WitnessViolation::Disconnected { pattern_vertex: h });
    }
    if let Some((u, v)) = pattern.edges().find(|&(u, v)| !host.sets_adjacent(sets[u], sets[v])) {
        return Err(WitnessViolation::UncoveredEdge { u, v });
    }
    Ok(())
}

/// [`verify_minor_witness`] plus `G[V_x] ~= H'` for every branch set.
pub fn verify_homogeneous_witness(
    host: &Graph,
    pattern: &Graph,
    branch_graph: &Graph,
    d: &BranchDecomposition,
) -> Result<(), WitnessViolation> {
    verify_minor_witness(host, pattern, d)?;
    for (h, &s) in d.sets().iter().enumerate() {
        let (induced, _) = host.induced_subgraph(s).expect("checked in range");
        if are_isomorphic(&induced, branch_graph).is_none() {
            return Err(WitnessViolation::NotIsomorphicToBranchGraph { pattern_vertex: h });
        }
    }
    Ok(())
}

/// Connected vertex subsets of `g` with between `min` and `max` vertices,
/// ordered by size and then lexicographically.
pub fn connected_subsets(g: &Graph, min: usize, max: usize) -> Vec<VertexSet> {
    let max = max.min(g.order());
    let mut out = Vec::new();
    if max == 0 {
        return out;
    }
    let mut level: Vec<VertexSet> = (0..g.order()).map(VertexSet::singleton).collect();
    for size in 1..=max {
        if size >= min {
            let mut sorted = level.clone();
            sorted.sort_by(|a, b| a.cmp_lex(*b));
            out.extend(sorted);
        }
        if size == max {
            break;
        }
        let mut next: HashSet<VertexSet> = HashSet::new();
        for &s in &level {
            for u in g.neighborhood(s).difference(s) {
                let mut t = s;
                t.insert(u);
                next.insert(t);
            }
        }
        level = next.into_iter().collect();
    }
    out
}

/// Backtracking over branch-set assignments. `candidates` must be sorted in
/// the preferred order; when `exact` is set the sets must cover the host.
fn assign_branch_sets(
    host: &Graph,
    pattern: &Graph,
    candidates: &[VertexSet],
    exact: bool,
    deadline: &Deadline,
) -> Result<Option<BranchDecomposition>, TimedOut> {
    let k = pattern.order();
    if k == 0 {
        return Ok((!exact || host.order() == 0).then(|| BranchDecomposition::new(Vec::new())));
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&h| std::cmp::Reverse(pattern.degree(h)));
    let min_size = candidates.iter().map(|c| c.len()).min().unwrap_or(0);
    let nbhd: Vec<VertexSet> = candidates.iter().map(|&c| host.neighborhood(c)).collect();

    struct Ctx<'a> {
        host: &'a Graph,
        pattern: &'a Graph,
        candidates: &'a [VertexSet],
        nbhd: &'a [VertexSet],
        order: &'a [usize],
        exact: bool,
        min_size: usize,
        deadline: &'a Deadline,
    }

    fn rec(cx: &Ctx, t: usize, assigned: &mut [Option<usize>], used: VertexSet) -> Result<bool, TimedOut> {
        let k = cx.order.len();
        if t == k {
            return Ok(!cx.exact || used == cx.host.vertices());
        }
        let h = cx.order[t];
        let placed_nbrs: Vec<usize> = cx
            .pattern
            .neighbors(h)
            .iter()
            .filter_map(|x| assigned[x])
            .collect();
        let remaining = k - t - 1;
        for (i, &cand) in cx.candidates.iter().enumerate() {
            cx.deadline.tick()?;
            if !cand.is_disjoint(used) {
                continue;
            }
            if placed_nbrs.iter().any(|&j| cx.nbhd[i].is_disjoint(cx.candidates[j])) {
                continue;
            }
            let used2 = used.union(cand);
            let free = cx.host.vertices().difference(used2);
            if free.len() < remaining * cx.min_size || (cx.exact && remaining == 0 && !free.is_empty()) {
                continue;
            }
            assigned[h] = Some(i);
            // Every placed set with an unplaced pattern neighbour needs free host neighbours.
            let stuck = (0..k).any(|x| {
                assigned[x].is_some_and(|j| {
                    cx.pattern.neighbors(x).iter().any(|y| assigned[y].is_none()) && cx.nbhd[j].is_disjoint(free)
                })
            });
            if !stuck && rec(cx, t + 1, assigned, used2)? {
                return Ok(true);
            }
            assigned[h] = None;
        }
        Ok(false)
    }

    let cx = Ctx {
        host,
        pattern,
        candidates,
        nbhd: &nbhd,
        order: &order,
        exact,
        min_size,
        deadline,
    };
    let mut assigned = vec![None; k];
    if rec(&cx, 0, &mut assigned, VertexSet::EMPTY)? {
        let sets = assigned.into_iter().map(|i| candidates[i.unwrap()]).collect();
        Ok(Some(BranchDecomposition::new(sets)))
    } else {
        Ok(None)
    }
}

/// Classical minor test: a witness for `h <= g`, or `None` after exhausting all assignments.
pub fn is_minor(h: &Graph, g: &Graph) -> Option<BranchDecomposition> {
    is_minor_within(h, g, &Deadline::never()).into_option()
}

pub fn is_minor_within(h: &Graph, g: &Graph, deadline: &Deadline) -> Search<BranchDecomposition> {
    if h.order() > g.order() || h.edge_count() > g.edge_count() {
        return Search::Absent;
    }
    let candidates = connected_subsets(g, 1, g.order() + 1 - h.order().max(1));
    assign_branch_sets(g, h, &candidates, false, deadline).into()
}

/// Homogeneous minor test for `(h, hprime) <=_1 g`.
pub fn is_homogeneous_minor(h: &Graph, hprime: &Graph, g: &Graph) -> Result<Option<BranchDecomposition>, MinorError> {
    Ok(is_homogeneous_minor_within(h, hprime, g, false, &Deadline::never())?.into_option())
}

/// `exact` restricts the search to witnesses whose sets partition the host.
pub fn is_homogeneous_minor_within(
    h: &Graph,
    hprime: &Graph,
    g: &Graph,
    exact: bool,
    deadline: &Deadline,
) -> Result<Search<BranchDecomposition>, MinorError> {
    if hprime.order() == 0 || !hprime.is_connected() {
        return Err(MinorError::DisconnectedBranchGraph);
    }
    let need = h.order() * hprime.order();
    if need > g.order() || (exact && need != g.order()) {
        return Ok(Search::Absent);
    }
    let candidates = homogeneous_candidates(g, hprime);
    Ok(assign_branch_sets(g, h, &candidates, exact, deadline).into())
}

/// Connected `|H'|`-subsets of `g` that induce a copy of `H'`.
pub fn homogeneous_candidates(g: &Graph, hprime: &Graph) -> Vec<VertexSet> {
    let k = hprime.order();
    let degrees = hprime.degree_multiset();
    let edges = hprime.edge_count();
    connected_subsets(g, k, k)
        .into_iter()
        .filter(|&s| {
            let (induced, _) = g.induced_subgraph(s).expect("subset of host");
            induced.edge_count() == edges
                && induced.degree_multiset() == degrees
                && are_isomorphic(&induced, hprime).is_some()
        })
        .collect()
}

/// `(C_m, C_n) <=_1 x`. Sizes other than `m * n = |x|` are searched with a warning.
pub fn cycle_pair_minor(x: &Graph, m: usize, n: usize) -> Result<Option<BranchDecomposition>, MinorError> {
    Ok(cycle_pair_minor_within(x, m, n, &Deadline::never())?.into_option())
}

pub fn cycle_pair_minor_within(
    x: &Graph,
    m: usize,
    n: usize,
    deadline: &Deadline,
) -> Result<Search<BranchDecomposition>, MinorError> {
    for k in [m, n] {
        if k < 3 {
            return Err(MinorError::CycleTooShort(k));
        }
    }
    if m * n != x.order() {
        log::warn!("cycle pair ({m}, {n}): m*n = {} but the host has {} vertices", m * n, x.order());
    }
    if m * n > crate::graph::MAX_VERTICES {
        return Ok(Search::Absent);
    }
    let cm = cycle_graph(m);
    let cn = cycle_graph(n);
    is_homogeneous_minor_within(&cm, &cn, x, false, deadline)
}

fn cycle_graph(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle fits")
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// For primes `3 <= p < q`: true iff `(C_p, H') <=_1 C_q` fails for every connected `H'`.
///
/// Every branch set induces a connected subgraph of `C_q` with at most `q / p`
/// vertices, so `H'` ranges over the connected induced subgraphs of `C_q` of
/// those sizes (up to isomorphism); each is searched exhaustively.
pub fn wqo_antichain_check(p: usize, q: usize) -> Result<bool, MinorError> {
    for x in [p, q] {
        if !is_prime(x) {
            return Err(MinorError::NotPrime(x));
        }
        if x < 3 {
            return Err(MinorError::PrimeTooSmall(x));
        }
    }
    if p >= q {
        return Err(MinorError::NotIncreasing(p, q));
    }
    let cq = cycle_graph(q);
    let cp = cycle_graph(p);
    for k in 1..=q / p {
        let mut shapes: Vec<Graph> = Vec::new();
        for s in connected_subsets(&cq, k, k) {
            let (induced, _) = cq.induced_subgraph(s)?;
            if !shapes.iter().any(|t| are_isomorphic(t, &induced).is_some()) {
                shapes.push(induced);
            }
        }
        for shape in &shapes {
            if is_homogeneous_minor(&cp, shape, &cq)?.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{complete, cycle, hypercube, path, petersen, rook};

    #[test]
    fn verify_examples() {
        let c5 = cycle(5).unwrap();
        let k1 = complete(1).unwrap();
        assert_eq!(verify_minor_witness(&c5, &k1, &BranchDecomposition::new(vec![VertexSet::singleton(3)])), Ok(()));
        let c3 = cycle(3).unwrap();
        let d = BranchDecomposition::new(vec![
            VertexSet::singleton(0),
            VertexSet::singleton(1),
            [2, 3].into_iter().collect(),
        ]);
        assert_eq!(verify_minor_witness(&c5, &c3, &d), Err(WitnessViolation::UncoveredEdge { u: 0, v: 2 }));
        let overlapping = BranchDecomposition::new(vec![
            [0, 1].into_iter().collect(),
            [1, 2].into_iter().collect(),
            [3, 4].into_iter().collect(),
        ]);
        assert_eq!(
            verify_minor_witness(&c5, &c3, &overlapping),
            Err(WitnessViolation::Overlap { first: 0, second: 1, vertex: 1 })
        );
        let split = BranchDecomposition::new(vec![
            [0, 2].into_iter().collect(),
            VertexSet::singleton(1),
            VertexSet::singleton(3),
        ]);
        assert_eq!(verify_minor_witness(&c5, &c3, &split), Err(WitnessViolation::Disconnected { pattern_vertex: 0 }));
    }

    #[test]
    fn classical_examples() {
        let w = is_minor(&complete(3).unwrap(), &complete(4).unwrap()).unwrap();
        assert!(w.sets().iter().all(|s| s.len() == 1));
        let p = petersen();
        let k5 = complete(5).unwrap();
        let w = is_minor(&k5, &p).unwrap();
        assert_eq!(verify_minor_witness(&p, &k5, &w), Ok(()));
        assert!(is_minor(&cycle(4).unwrap(), &complete(3).unwrap()).is_none());
    }

    #[test]
    fn homogeneous_examples() {
        let k2 = complete(2).unwrap();
        let q3 = hypercube(3).unwrap();
        let c4 = cycle(4).unwrap();
        let w = is_homogeneous_minor(&c4, &k2, &q3).unwrap().unwrap();
        assert_eq!(verify_homogeneous_witness(&q3, &c4, &k2, &w), Ok(()));

        let c3 = cycle(3).unwrap();
        let r = rook(3, 3).unwrap();
        let w = is_homogeneous_minor(&c3, &c3, &r).unwrap().unwrap();
        assert_eq!(verify_homogeneous_witness(&r, &c3, &c3, &w), Ok(()));

        let c5 = cycle(5).unwrap();
        for k in 1..=5 {
            assert!(is_homogeneous_minor(&c3, &path(k).unwrap(), &c5).unwrap().is_none());
        }
        assert!(is_homogeneous_minor(&c3, &c5, &c5).unwrap().is_none());
    }

    #[test]
    fn homogeneous_rejects_disconnected_branch_graph() {
        let two = Graph::empty(2).unwrap();
        let c5 = cycle(5).unwrap();
        assert_eq!(is_homogeneous_minor(&c5, &two, &c5), Err(MinorError::DisconnectedBranchGraph));
    }

    #[test]
    fn cycle_pair_examples() {
        assert!(cycle_pair_minor(&cycle(9).unwrap(), 3, 3).unwrap().is_none());
        assert!(cycle_pair_minor(&rook(3, 3).unwrap(), 3, 3).unwrap().is_some());
        let prism = crate::catalog::prism(3).unwrap();
        assert!(cycle_pair_minor(&prism, 3, 3).unwrap().is_none());
        assert_eq!(cycle_pair_minor(&prism, 2, 3), Err(MinorError::CycleTooShort(2)));
    }

    #[test]
    fn antichain_examples() {
        assert_eq!(wqo_antichain_check(3, 5), Ok(true));
        assert_eq!(wqo_antichain_check(3, 7), Ok(true));
        assert_eq!(wqo_antichain_check(5, 7), Ok(true));
        assert_eq!(wqo_antichain_check(3, 9), Err(MinorError::NotPrime(9)));
        assert_eq!(wqo_antichain_check(2, 5), Err(MinorError::PrimeTooSmall(2)));
        assert_eq!(wqo_antichain_check(7, 5), Err(MinorError::NotIncreasing(7, 5)));
    }

    #[test]
    fn witness_text_round_trip() {
        let d = BranchDecomposition::new(vec![[0, 3].into_iter().collect(), VertexSet::singleton(1)]);
        assert_eq!(d.to_text(), "pattern_vertex 0 branch_set 0 3\npattern_vertex 1 branch_set 1\n");
        assert_eq!(BranchDecomposition::parse(&d.to_text()).unwrap(), d);
        assert!(BranchDecomposition::parse("pattern_vertex 1 branch_set 0\n").is_err());
        assert!(BranchDecomposition::parse("pattern_vertex 0 branch_set 3 1\n").is_err());
    }

    #[test]
    fn connected_subset_counts() {
        // Arcs of C_5: 5 of each size below 5, plus the whole cycle.
        let subsets = connected_subsets(&cycle(5).unwrap(), 1, 5);
        assert_eq!(subsets.len(), 21);
        assert_eq!(subsets[0], VertexSet::singleton(0));
        assert_eq!(connected_subsets(&complete(4).unwrap(), 1, 4).len(), 15);
    }
}
