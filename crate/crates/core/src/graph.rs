//! Finite simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is one `u64` row per vertex, so neighbourhood intersection and
//! reachability are word operations. Vertices are the dense range `0..n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// A subset of `0..64`, stored as a bitmask. Iteration is ascending.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub const fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
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
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the ascending member lists.
    pub fn cmp_lex(self, other: Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(d)?;
        if let Some(v) = members.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(members.into_iter().collect())
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// A finite simple undirected graph. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph, rejecting loops, duplicate edges and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds from neighbour bitmasks; the rows must already be symmetric and loop-free.
    pub(crate) fn from_rows(rows: Vec<u64>) -> Self {
        debug_assert!(rows.len() <= MAX_VERTICES);
        debug_assert!(rows.iter().enumerate().all(|(v, r)| (r >> v) & 1 == 0));
        Graph { n: rows.len(), adj: rows }
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n;
        if u >= n || v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.adj[u] >> v) & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet(self.adj[u] & !((2u64 << u).wrapping_sub(1)))
                .iter()
                .map(move |v| (u, v))
        })
    }

    /// Host vertices adjacent to at least one member of `s`.
    pub fn neighborhood(&self, s: VertexSet) -> VertexSet {
        let mut out = 0u64;
        for v in s {
            out |= self.adj[v];
        }
        VertexSet(out)
    }

    /// Whether some edge joins `a` and `b`.
    pub fn sets_adjacent(&self, a: VertexSet, b: VertexSet) -> bool {
        !self.neighborhood(a).is_disjoint(b)
    }

    /// Vertices of `within` reachable from `start` using only vertices of `within`.
    pub fn reach_within(&self, start: VertexSet, within: VertexSet) -> VertexSet {
        let mut seen = start.intersection(within);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = self.neighborhood(frontier).intersection(within).difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    /// Whether the subgraph induced on `s` is connected. The empty set counts as connected.
    pub fn is_connected_within(&self, s: VertexSet) -> bool {
        match s.first() {
            None => true,
            Some(v) => self.reach_within(VertexSet::singleton(v), s) == s,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertices())
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) + 1 == self.n)
    }

    /// Connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut rest = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.reach_within(VertexSet::singleton(v), rest);
            rest = rest.difference(c);
            out.push(c);
        }
        out
    }

    /// The common degree of a regular graph.
    pub fn valency(&self) -> Result<usize, GraphError> {
        let d = if self.n == 0 { 0 } else { self.degree(0) };
        match (0..self.n).find(|&v| self.degree(v) != d) {
            None => Ok(d),
            Some(v) => Err(GraphError::NotRegular {
                vertex: v,
                degree: self.degree(v),
                expected: d,
            }),
        }
    }

    pub fn is_regular(&self) -> bool {
        self.valency().is_ok()
    }

    /// Subgraph induced on `s`, relabelled to `0..|s|` in ascending order.
    /// The returned vector maps each new vertex to its original.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if let Some(v) = s.difference(self.vertices()).first() {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let map = s.to_vec();
        let rows = map
            .iter()
            .map(|&old| {
                let row = VertexSet(self.adj[old]).intersection(s);
                map.iter()
                    .enumerate()
                    .filter(|(_, &o)| row.contains(o))
                    .fold(0u64, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        Ok((Graph::from_rows(rows), map))
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n || !is_permutation(perm) {
            return Err(GraphError::NotAPermutation);
        }
        let mut rows = vec![0u64; self.n];
        for (u, v) in self.edges() {
            rows[perm[u]] |= 1 << perm[v];
            rows[perm[v]] |= 1 << perm[u];
        }
        Ok(Graph::from_rows(rows))
    }

    pub fn complement(&self) -> Graph {
        let all = VertexSet::full(self.n).bits();
        let rows = (0..self.n).map(|v| all & !self.adj[v] & !(1 << v)).collect();
        Graph::from_rows(rows)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut rows = self.adj.clone();
        rows.extend(other.adj.iter().map(|r| r << self.n));
        Ok(Graph::from_rows(rows))
    }

    /// Cartesian product; vertex `(a, b)` is numbered `a * other.order() + b`.
    pub fn cartesian_product(&self, other: &Graph) -> Result<Graph, GraphError> {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let id = |a: usize, b: usize| a * n2 + b;
        let mut edges = Vec::new();
        for a in 0..n1 {
            for (b, c) in other.edges() {
                edges.push((id(a, b), id(a, c)));
            }
        }
        for (a, c) in self.edges() {
            for b in 0..n2 {
                edges.push((id(a, b), id(c, b)));
            }
        }
        Graph::from_edges(n, edges)
    }

    /// Sorted degree sequence, useful as a cheap isomorphism filter.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    /// Parses the `n <count>` / `e <u> <v>` text format.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        text.parse()
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return false;
        }
    }
    true
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for (u, v) in self.edges() {
            writeln!(f, "e {u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(text: &str) -> Result<Self, GraphError> {
        let err = |line: usize, column: usize, message: String| GraphError::Parse {
            line,
            column,
            message,
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (ln, header) = lines
            .next()
            .ok_or_else(|| err(1, 1, "empty input, expected `n <count>`".into()))?;
        let n = match header.split(' ').collect::<Vec<_>>().as_slice() {
            ["n", count] => count
                .parse::<usize>()
                .map_err(|_| err(ln, 3, format!("invalid vertex count `{count}`")))?,
            _ => return Err(err(ln, 1, "expected `n <count>`".into())),
        };
        let mut g = Graph::empty(n).map_err(|e| err(ln, 3, e.to_string()))?;
        for (ln, line) in lines {
            let fields: Vec<&str> = line.split(' ').collect();
            let (u, v) = match fields.as_slice() {
                ["e", u, v] => {
                    let u = u
                        .parse::<usize>()
                        .map_err(|_| err(ln, 3, format!("invalid vertex id `{u}`")))?;
                    let col_v = 4 + fields[1].len();
                    let v = v
                        .parse::<usize>()
                        .map_err(|_| err(ln, col_v, format!("invalid vertex id `{v}`")))?;
                    for (x, col) in [(u, 3), (v, col_v)] {
                        if x >= n {
                            return Err(err(ln, col, format!("vertex {x} out of range for {n} vertices")));
                        }
                    }
                    (u, v)
                }
                _ => return Err(err(ln, 1, "expected `e <u> <v>`".into())),
            };
            if u > v {
                return Err(err(ln, 3, format!("edge endpoints must satisfy u < v, got {u} {v}")));
            }
            if g.has_edge(u, v) {
                return Err(err(ln, 1, format!("duplicate edge {u} {v}")));
            }
            g.insert_edge(u, v).map_err(|e| err(ln, 3, e.to_string()))?;
        }
        Ok(g)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        Graph::from_edges(repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}
