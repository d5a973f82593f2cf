//! Decompositions of vertex-transitive graphs into a quotient of isomorphic
//! fibers, and the composition of a Hamiltonian path from them.
//!
//! A [`DecompositionCertificate`] partitions the host into `m` branch sets of
//! `n` vertices. Each set induces a copy of the fiber, and the sets realise the
//! quotient as a homogeneous minor. When the certificate passes
//! [`check_certificate`] and the quotient is connected,
//! [`compose_hamiltonian_path`] strings fiber paths together along a quotient
//! path.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Duration;

use serde::Serialize;

use crate::budget::{Deadline, Search, TimedOut};
use crate::catalog::{complete, connected_vt_catalog, cycle, edgeless};
use crate::error::ConjectureError;
use crate::graph::{Graph, VertexSet};
use crate::group::MAX_BUILTIN_ORDER;
use crate::hamilton::{
    hamiltonian_path_between_within, hamiltonian_path_within, low_degree_ham_connected, prime_pipeline,
    CirculantForm, HamCertificate, LowDegreeHamConnectivity,
};
use crate::iso::{are_isomorphic, is_vertex_transitive};
use crate::minor::{
    connected_subsets, cycle_pair_minor_within, homogeneous_candidates, is_prime, verify_minor_witness,
    BranchDecomposition,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionCertificate {
    pub host: Graph,
    /// `X'`, on `m` vertices; vertex `i` is represented by branch set `i`.
    pub quotient: Graph,
    /// `X''`, on `n` vertices.
    pub fiber: Graph,
    pub decomposition: BranchDecomposition,
    /// Valency of the host.
    pub d: usize,
}

/// The first clause of [`check_certificate`] a certificate violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum CertificateViolation {
    Sizes { m: usize, n: usize, host: usize },
    MinorWitness { detail: String },
    ExactCover { uncovered: usize },
    FiberDisconnected,
    FiberMismatch { set: usize },
    Valency { expected: usize, found: Option<usize> },
    QuotientNotTransitive,
    QuotientConnectivity,
    FiberHamConnectivity { x: usize, y: usize },
    FiberHamConnectivityUndecided { x: usize, y: usize },
    NeighborReplication { x0: usize, x1: usize, x2: usize, v: usize },
}

impl fmt::Display for CertificateViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CertificateViolation::*;
        match self {
            Sizes { m, n, host } => write!(f, "sizes: need m, n > 1 with m*n = |X|, got m = {m}, n = {n}, |X| = {host}"),
            MinorWitness { detail } => write!(f, "minor witness: {detail}"),
            ExactCover { uncovered } => write!(f, "exact cover: vertex {uncovered} lies in no branch set"),
            FiberDisconnected => write!(f, "fiber: X'' is not connected"),
            FiberMismatch { set } => write!(f, "fiber: branch set {set} does not induce a copy of X''"),
            Valency { expected, found: Some(d) } => write!(f, "valency: certificate says {expected}, host has {d}"),
            Valency { expected, found: None } => write!(f, "valency: certificate says {expected}, host is not regular"),
            QuotientNotTransitive => write!(f, "quotient: X' is not vertex-transitive"),
            QuotientConnectivity => write!(
                f,
                "quotient: X' must be connected when X is, and edgeless when X is not"
            ),
            FiberHamConnectivity { x, y } => {
                write!(f, "fiber paths: no Hamiltonian path in X'' between low-degree vertices {x} and {y}")
            }
            FiberHamConnectivityUndecided { x, y } => {
                write!(f, "fiber paths: search between {x} and {y} ran out of time")
            }
            NeighborReplication { x0, x1, x2, v } => write!(
                f,
                "neighbour replication: vertex {v} of set {x0} reaches set {x1}, but no other vertex of set {x0} reaches set {x2}"
            ),
        }
    }
}

/// Checks every condition on a decomposition, in a fixed order, and reports
/// the first one that fails.
pub fn check_certificate(cert: &DecompositionCertificate) -> Result<(), CertificateViolation> {
    let host = &cert.host;
    let (m, n) = (cert.quotient.order(), cert.fiber.order());
    if m <= 1 || n <= 1 || m * n != host.order() {
        return Err(CertificateViolation::Sizes { m, n, host: host.order() });
    }
    verify_minor_witness(host, &cert.quotient, &cert.decomposition)
        .map_err(|v| CertificateViolation::MinorWitness { detail: v.to_string() })?;
    let sets = cert.decomposition.sets();
    if let Some(v) = host.vertices().difference(cert.decomposition.covered()).first() {
        return Err(CertificateViolation::ExactCover { uncovered: v });
    }
    if !cert.fiber.is_connected() {
        return Err(CertificateViolation::FiberDisconnected);
    }
    for (i, &s) in sets.iter().enumerate() {
        let (induced, _) = host.induced_subgraph(s).expect("witness sets are in range");
        if are_isomorphic(&induced, &cert.fiber).is_none() {
            return Err(CertificateViolation::FiberMismatch { set: i });
        }
    }
    match host.valency() {
        Ok(d) if d == cert.d => {}
        found => {
            return Err(CertificateViolation::Valency {
                expected: cert.d,
                found: found.ok(),
            })
        }
    }
    if !is_vertex_transitive(&cert.quotient).0 {
        return Err(CertificateViolation::QuotientNotTransitive);
    }
    let quotient_ok = if host.is_connected() {
        cert.quotient.is_connected()
    } else {
        cert.quotient.edge_count() == 0
    };
    if !quotient_ok {
        return Err(CertificateViolation::QuotientConnectivity);
    }
    match low_degree_ham_connected(&cert.fiber, cert.d).expect("d > 0 for a graph with edges") {
        LowDegreeHamConnectivity::Holds => {}
        LowDegreeHamConnectivity::Fails { x, y } => return Err(CertificateViolation::FiberHamConnectivity { x, y }),
        LowDegreeHamConnectivity::Undecided { x, y } => {
            return Err(CertificateViolation::FiberHamConnectivityUndecided { x, y })
        }
    }
    check_neighbor_replication(host, &cert.quotient, sets)
}

fn check_neighbor_replication(host: &Graph, quotient: &Graph, sets: &[VertexSet]) -> Result<(), CertificateViolation> {
    for x0 in 0..quotient.order() {
        let nbrs = quotient.neighbors(x0);
        for x1 in nbrs {
            for x2 in nbrs {
                if x1 == x2 {
                    continue;
                }
                for v in sets[x0] {
                    if host.neighbors(v).is_disjoint(sets[x1]) {
                        continue;
                    }
                    let mut others = sets[x0];
                    others.remove(v);
                    if !host.sets_adjacent(others, sets[x2]) {
                        return Err(CertificateViolation::NeighborReplication { x0, x1, x2, v });
                    }
                }
            }
        }
    }
    Ok(())
}

impl DecompositionCertificate {
    /// Text form without the host:
    ///
    /// ```text
    /// decomposition d <d>
    /// quotient
    /// <graph>
    /// fiber
    /// <graph>
    /// witness
    /// <branch sets>
    /// ```
    pub fn to_text(&self) -> String {
        format!(
            "decomposition d {}\nquotient\n{}fiber\n{}witness\n{}",
            self.d, self.quotient, self.fiber, self.decomposition
        )
    }

    /// Parses [`DecompositionCertificate::to_text`] output for the given host.
    pub fn parse(host: &Graph, text: &str) -> Result<Self, ConjectureError> {
        let lines: Vec<&str> = text.lines().collect();
        let err = |line: usize, message: String| ConjectureError::Parse { line, message };
        let d = match lines.first().map(|l| l.split(' ').collect::<Vec<_>>()) {
            Some(t) if t.len() == 3 && t[0] == "decomposition" && t[1] == "d" => {
                t[2].parse::<usize>().map_err(|_| err(1, format!("invalid valency `{}`", t[2])))?
            }
            _ => return Err(err(1, "expected `decomposition d <valency>`".into())),
        };
        let find = |name: &str, from: usize| {
            lines[from..]
                .iter()
                .position(|l| *l == name)
                .map(|i| i + from)
                .ok_or_else(|| err(lines.len().max(1), format!("missing `{name}` section")))
        };
        let q = find("quotient", 1)?;
        if q != 1 {
            return Err(err(2, "expected `quotient`".into()));
        }
        let f = find("fiber", q + 1)?;
        let w = find("witness", f + 1)?;
        let section = |from: usize, to: usize| -> Result<Graph, ConjectureError> {
            let body = lines[from..to].join("\n");
            Graph::parse(&body).map_err(|e| match e {
                crate::error::GraphError::Parse { line, column, message } => {
                    err(from + line, format!("column {column}: {message}"))
                }
                other => err(from + 1, other.to_string()),
            })
        };
        let quotient = section(q + 1, f)?;
        let fiber = section(f + 1, w)?;
        let decomposition = BranchDecomposition::parse(&lines[w + 1..].join("\n"))
            .map_err(|e| err(w + 1 + e.line, format!("column {}: {}", e.column, e.message)))?;
        Ok(DecompositionCertificate {
            host: host.clone(),
            quotient,
            fiber,
            decomposition,
            d,
        })
    }
}

/// What [`find_decomposition`] found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecompositionEvidence {
    /// `(C_m, C_n)` is a homogeneous minor of the host.
    CyclePair { m: usize, n: usize, witness: BranchDecomposition },
    Decomposition { certificate: DecompositionCertificate },
}

impl DecompositionEvidence {
    pub fn sizes(&self) -> (usize, usize) {
        match self {
            DecompositionEvidence::CyclePair { m, n, .. } => (*m, *n),
            DecompositionEvidence::Decomposition { certificate } => {
                (certificate.quotient.order(), certificate.fiber.order())
            }
        }
    }

    pub fn witness(&self) -> &BranchDecomposition {
        match self {
            DecompositionEvidence::CyclePair { witness, .. } => witness,
            DecompositionEvidence::Decomposition { certificate } => &certificate.decomposition,
        }
    }
}

fn check_composite_vt(x: &Graph) -> Result<(), ConjectureError> {
    let n = x.order();
    if n <= 1 {
        return Err(ConjectureError::TrivialOrder(n));
    }
    if is_prime(n) {
        return Err(ConjectureError::PrimeOrder(n));
    }
    if !is_vertex_transitive(x).0 {
        return Err(ConjectureError::NotVertexTransitive);
    }
    Ok(())
}

/// Searches divisor pairs `(m, n)` by ascending `m`. Within a pair the
/// cycle-pair minor is tried first, then certificates built from every fiber
/// shape, every exact cover by copies of it, and every vertex-transitive
/// quotient fitting the cover (sparsest first).
pub fn find_decomposition(x: &Graph) -> Result<Option<DecompositionEvidence>, ConjectureError> {
    Ok(find_decomposition_within(x, &Deadline::never())?.into_option())
}

pub fn find_decomposition_within(
    x: &Graph,
    deadline: &Deadline,
) -> Result<Search<DecompositionEvidence>, ConjectureError> {
    check_composite_vt(x)?;
    let total = x.order();
    let mut undecided = false;
    for m in (2..total).filter(|m| total.is_multiple_of(*m)) {
        let n = total / m;
        if m >= 3 && n >= 3 {
            match cycle_pair_minor_within(x, m, n, deadline).expect("cycle lengths are at least 3") {
                Search::Found(witness) => return Ok(Search::Found(DecompositionEvidence::CyclePair { m, n, witness })),
                Search::Absent => {}
                Search::Undecided => undecided = true,
            }
        }
        match decompose_with_sizes(x, m, n, deadline) {
            Ok(Some(certificate)) => return Ok(Search::Found(DecompositionEvidence::Decomposition { certificate })),
            Ok(None) => {}
            Err(TimedOut) => undecided = true,
        }
        if deadline.expired() {
            return Ok(Search::Undecided);
        }
    }
    Ok(if undecided { Search::Undecided } else { Search::Absent })
}

/// Connected `n`-vertex induced subgraphs of `x`, one per isomorphism class,
/// in order of first appearance.
fn fiber_shapes(x: &Graph, n: usize, deadline: &Deadline) -> Result<Vec<Graph>, TimedOut> {
    let mut shapes: Vec<Graph> = Vec::new();
    for s in connected_subsets(x, n, n) {
        deadline.tick()?;
        let (induced, _) = x.induced_subgraph(s).expect("subset of host");
        if !shapes.iter().any(|t| are_isomorphic(t, &induced).is_some()) {
            shapes.push(induced);
        }
    }
    Ok(shapes)
}

fn quotient_shapes(m: usize) -> Arc<Vec<Graph>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Graph>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().expect("cache lock").get(&m) {
        return s.clone();
    }
    let mut shapes: Vec<Graph> = if m <= MAX_BUILTIN_ORDER {
        connected_vt_catalog(m)
            .expect("order within catalog range")
            .into_iter()
            .map(|e| e.graph)
            .filter(|g| g.order() == m)
            .collect()
    } else {
        vec![cycle(m).expect("m > 16"), complete(m).expect("m <= 64")]
    };
    shapes.sort_by_key(Graph::edge_count);
    let shapes = Arc::new(shapes);
    cache.lock().expect("cache lock").insert(m, shapes.clone());
    shapes
}

fn decompose_with_sizes(
    x: &Graph,
    m: usize,
    n: usize,
    deadline: &Deadline,
) -> Result<Option<DecompositionCertificate>, TimedOut> {
    let d = x.valency().expect("vertex-transitive graphs are regular");
    let connected = x.is_connected();
    let edgeless_m = edgeless(m).expect("m <= 64");
    let quotients: Arc<Vec<Graph>> = if connected {
        quotient_shapes(m)
    } else {
        Arc::new(vec![edgeless_m])
    };
    for fiber in fiber_shapes(x, n, deadline)? {
        match low_degree_ham_connected(&fiber, d) {
            Ok(LowDegreeHamConnectivity::Holds) => {}
            _ => continue,
        }
        let candidates = homogeneous_candidates(x, &fiber);
        let mut by_min: Vec<Vec<VertexSet>> = vec![Vec::new(); x.order()];
        for c in candidates {
            by_min[c.first().expect("non-empty")].push(c);
        }
        let mut found = None;
        let mut chosen = Vec::with_capacity(m);
        let flow = for_each_exact_cover(x, &by_min, VertexSet::EMPTY, &mut chosen, deadline, &mut |sets| {
            match certificate_for_cover(x, sets, &fiber, d, &quotients, deadline)? {
                Some(c) => {
                    found = Some(c);
                    Ok(ControlFlow::Break(()))
                }
                None => Ok(ControlFlow::Continue(())),
            }
        })?;
        if flow.is_break() {
            return Ok(found);
        }
    }
    Ok(None)
}

type CoverVisitor<'a> = dyn FnMut(&[VertexSet]) -> Result<ControlFlow<()>, TimedOut> + 'a;

fn for_each_exact_cover(
    x: &Graph,
    by_min: &[Vec<VertexSet>],
    used: VertexSet,
    chosen: &mut Vec<VertexSet>,
    deadline: &Deadline,
    visit: &mut CoverVisitor<'_>,
) -> Result<ControlFlow<()>, TimedOut> {
    deadline.tick()?;
    let Some(u) = x.vertices().difference(used).first() else {
        return visit(chosen);
    };
    for &c in &by_min[u] {
        if !c.is_disjoint(used) {
            continue;
        }
        chosen.push(c);
        let flow = for_each_exact_cover(x, by_min, used.union(c), chosen, deadline, visit)?;
        chosen.pop();
        if flow.is_break() {
            return Ok(flow);
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// Tries each quotient shape as a spanning subgraph of the contraction of `sets`.
fn certificate_for_cover(
    x: &Graph,
    sets: &[VertexSet],
    fiber: &Graph,
    d: usize,
    quotients: &[Graph],
    deadline: &Deadline,
) -> Result<Option<DecompositionCertificate>, TimedOut> {
    let m = sets.len();
    let contraction: Vec<u64> = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| j != i && x.sets_adjacent(sets[i], sets[j]))
                .fold(0u64, |acc, j| acc | 1 << j)
        })
        .collect();
    let decomposition = BranchDecomposition::new(sets.to_vec());
    for shape in quotients {
        if shape.edge_count() > contraction.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2 {
            continue;
        }
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut result = None;
        let mut image = vec![usize::MAX; m];
        let flow = embed_spanning(shape, &contraction, 0, 0, &mut image, deadline, &mut |image| {
            let mut rows = vec![0u64; m];
            for (a, b) in shape.edges() {
                rows[image[a]] |= 1 << image[b];
                rows[image[b]] |= 1 << image[a];
            }
            if !seen.insert(rows.clone()) {
                return ControlFlow::Continue(());
            }
            let cert = DecompositionCertificate {
                host: x.clone(),
                quotient: Graph::from_rows(rows),
                fiber: fiber.clone(),
                decomposition: decomposition.clone(),
                d,
            };
            if check_neighbor_replication(x, &cert.quotient, sets).is_ok() && check_certificate(&cert).is_ok() {
                result = Some(cert);
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        })?;
        if flow.is_break() {
            return Ok(result);
        }
    }
    Ok(None)
}

/// Injective maps of `shape` into `target` rows that send edges to edges.
fn embed_spanning(
    shape: &Graph,
    target: &[u64],
    a: usize,
    used: u64,
    image: &mut [usize],
    deadline: &Deadline,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<ControlFlow<()>, TimedOut> {
    deadline.tick()?;
    if a == shape.order() {
        return Ok(visit(image));
    }
    for t in 0..target.len() {
        if used >> t & 1 == 1 {
            continue;
        }
        if shape.neighbors(a).iter().filter(|&b| b < a).any(|b| target[t] >> image[b] & 1 == 0) {
            continue;
        }
        image[a] = t;
        if embed_spanning(shape, target, a + 1, used | 1 << t, image, deadline, visit)?.is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    image[a] = usize::MAX;
    Ok(ControlFlow::Continue(()))
}

/// Builds a Hamiltonian path of the host from a valid certificate with a
/// connected quotient: a quotient Hamiltonian path `x_1 ... x_m`,
/// vertex-disjoint connector edges between consecutive branch sets, and a
/// fiber path inside every set. The outer endpoints must have a neighbour
/// outside their set. Every quotient path and every connector choice is tried
/// before failure is reported.
pub fn compose_hamiltonian_path(cert: &DecompositionCertificate) -> Result<HamCertificate, ConjectureError> {
    match compose_hamiltonian_path_within(cert, &Deadline::never()) {
        Err(ConjectureError::Undecided) => unreachable!("unbounded composition cannot time out"),
        r => r,
    }
}

pub fn compose_hamiltonian_path_within(
    cert: &DecompositionCertificate,
    deadline: &Deadline,
) -> Result<HamCertificate, ConjectureError> {
    check_certificate(cert).map_err(|v| ConjectureError::InvalidCertificate(v.to_string()))?;
    if !cert.quotient.is_connected() {
        return Err(ConjectureError::DisconnectedQuotient);
    }
    let mut composer = Composer {
        host: &cert.host,
        sets: cert.decomposition.sets(),
        d: cert.d,
        deadline,
        memo: HashMap::new(),
    };
    let mut result = None;
    let flow = for_each_ham_path(&cert.quotient, deadline, &mut |order| {
        if let Some(seq) = composer.along(order)? {
            result = Some(seq);
            return Ok(ControlFlow::Break(()));
        }
        Ok(ControlFlow::Continue(()))
    });
    match flow {
        Err(TimedOut) => Err(ConjectureError::Undecided),
        Ok(_) => {
            let sequence = result.ok_or(ConjectureError::CompositionFailed)?;
            let ham = HamCertificate { sequence, closed: false };
            ham.verify(&cert.host)?;
            Ok(ham)
        }
    }
}

type PathVisitor<'a> = dyn FnMut(&[usize]) -> Result<ControlFlow<()>, TimedOut> + 'a;

/// Every Hamiltonian path of `g` (each direction separately), by start vertex
/// and then ascending extension.
fn for_each_ham_path(g: &Graph, deadline: &Deadline, visit: &mut PathVisitor<'_>) -> Result<ControlFlow<()>, TimedOut> {
    fn rec(
        g: &Graph,
        path: &mut Vec<usize>,
        used: VertexSet,
        deadline: &Deadline,
        visit: &mut PathVisitor<'_>,
    ) -> Result<ControlFlow<()>, TimedOut> {
        deadline.tick()?;
        if path.len() == g.order() {
            return visit(path);
        }
        let cur = *path.last().expect("non-empty");
        for v in g.neighbors(cur).difference(used) {
            path.push(v);
            let mut u = used;
            u.insert(v);
            let flow = rec(g, path, u, deadline, visit)?;
            path.pop();
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
    for s in 0..g.order() {
        let flow = rec(g, &mut vec![s], VertexSet::singleton(s), deadline, visit)?;
        if flow.is_break() {
            return Ok(flow);
        }
    }
    Ok(ControlFlow::Continue(()))
}

struct Composer<'a> {
    host: &'a Graph,
    sets: &'a [VertexSet],
    d: usize,
    deadline: &'a Deadline,
    memo: HashMap<(usize, usize, usize), Option<Vec<usize>>>,
}

impl Composer<'_> {
    fn internal_degree(&self, set: usize, v: usize) -> usize {
        self.host.neighbors(v).intersection(self.sets[set]).len()
    }

    /// Hamiltonian path of `host[sets[set]]` from `a` to `b`, in host labels.
    fn inner(&mut self, set: usize, a: usize, b: usize) -> Result<Option<Vec<usize>>, TimedOut> {
        if let Some(p) = self.memo.get(&(set, a, b)) {
            return Ok(p.clone());
        }
        let (sub, map) = self.host.induced_subgraph(self.sets[set]).expect("sets in range");
        let pos = |v: usize| map.iter().position(|&w| w == v).expect("vertex in set");
        let r = match hamiltonian_path_between_within(&sub, pos(a), pos(b), self.deadline).expect("distinct endpoints") {
            Search::Found(c) => Some(c.sequence.into_iter().map(|i| map[i]).collect()),
            Search::Absent => None,
            Search::Undecided => return Err(TimedOut),
        };
        self.memo.insert((set, a, b), r.clone());
        Ok(r)
    }

    fn along(&mut self, order: &[usize]) -> Result<Option<Vec<usize>>, TimedOut> {
        let first = self.sets[order[0]];
        for start in first {
            if self.internal_degree(order[0], start) >= self.d {
                continue;
            }
            let mut out = Vec::with_capacity(self.host.order());
            if self.step(order, 0, start, &mut out)? {
                return Ok(Some(out));
            }
        }
        Ok(None)
    }

    /// Enters set `order[i]` at `entry` and completes the path from there.
    fn step(&mut self, order: &[usize], i: usize, entry: usize, out: &mut Vec<usize>) -> Result<bool, TimedOut> {
        self.deadline.tick()?;
        let set = order[i];
        let len = out.len();
        if i + 1 == order.len() {
            for exit in self.sets[set] {
                if exit == entry || self.internal_degree(set, exit) >= self.d {
                    continue;
                }
                if let Some(p) = self.inner(set, entry, exit)? {
                    out.extend(p);
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        let next = self.sets[order[i + 1]];
        for exit in self.sets[set] {
            if exit == entry {
                continue;
            }
            let targets = self.host.neighbors(exit).intersection(next);
            if targets.is_empty() {
                continue;
            }
            let Some(p) = self.inner(set, entry, exit)? else { continue };
            out.extend(p);
            for t in targets {
                if self.step(order, i + 1, t, out)? {
                    return Ok(true);
                }
            }
            out.truncate(len);
        }
        Ok(false)
    }
}

/// Which argument produced a classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    Trivial,
    PrimeOrder,
    CyclePair,
    Decomposition,
    Unresolved,
}

impl Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Case::Trivial => "trivial",
            Case::PrimeOrder => "prime-order",
            Case::CyclePair => "cycle-pair",
            Case::Decomposition => "decomposition",
            Case::Unresolved => "unresolved",
        }
    }

    /// Whether the case yields a Hamiltonian path by its own argument.
    pub fn is_resolved(self) -> bool {
        self != Case::Unresolved
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What happened to the Hamiltonian path of a classified graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Built by the case's construction and verified.
    Verified,
    /// Found by direct search and verified.
    VerifiedBySearch,
    /// Exhaustive search shows there is none (the graph is disconnected).
    NoPath,
    /// A valid certificate whose composition failed; see [`ConjectureError::CompositionFailed`].
    CompositionFailed,
    /// The time budget ran out.
    Undecided,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::VerifiedBySearch => "verified-by-search",
            Status::NoPath => "no-path",
            Status::CompositionFailed => "composition-failed",
            Status::Undecided => "undecided",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    None,
    Circulant { form: CirculantForm, cycle: HamCertificate },
    CyclePair { m: usize, n: usize, witness: BranchDecomposition },
    Decomposition { certificate: DecompositionCertificate },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub graph_id: String,
    pub case: Case,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub evidence: Evidence,
    pub ham: Option<HamCertificate>,
    pub status: Status,
}

impl ClassificationReport {
    /// Text form, one field per line in the order `graph_id`, `case`, `m`,
    /// `n`, `certificate`, `ham`, `status`. The `certificate` line gives the
    /// number of witness lines that follow it.
    pub fn to_text(&self) -> String {
        let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        let certificate = match &self.evidence {
            Evidence::None => String::new(),
            Evidence::Circulant { form, .. } => {
                let labels: Vec<String> = form.relabeling.images().iter().map(ToString::to_string).collect();
                format!("circulant p {} connection {} relabeling {}\n", form.p, form.connection, labels.join(" "))
            }
            Evidence::CyclePair { witness, .. } => witness.to_text(),
            Evidence::Decomposition { certificate } => certificate.decomposition.to_text(),
        };
        format!(
            "graph_id {}\ncase {}\nm {}\nn {}\ncertificate {}\n{}{}\nstatus {}\n",
            self.graph_id,
            self.case,
            opt(self.m),
            opt(self.n),
            certificate.lines().count(),
            certificate,
            self.ham.as_ref().map_or("ham -".to_string(), ToString::to_string),
            self.status
        )
    }
}

fn direct_path(x: &Graph, deadline: &Deadline) -> (Option<HamCertificate>, Status) {
    match hamiltonian_path_within(x, deadline) {
        Search::Found(h) => {
            h.verify(x).expect("search returns valid paths");
            (Some(h), Status::VerifiedBySearch)
        }
        Search::Absent => (None, Status::NoPath),
        Search::Undecided => (None, Status::Undecided),
    }
}

/// Classifies a vertex-transitive graph by the argument that gives it a
/// Hamiltonian path, and produces that path.
pub fn classify(graph_id: &str, x: &Graph) -> Result<ClassificationReport, ConjectureError> {
    classify_within(graph_id, x, &Deadline::never())
}

pub fn classify_within(graph_id: &str, x: &Graph, deadline: &Deadline) -> Result<ClassificationReport, ConjectureError> {
    if !is_vertex_transitive(x).0 {
        return Err(ConjectureError::NotVertexTransitive);
    }
    let order = x.order();
    let mut report = ClassificationReport {
        graph_id: graph_id.to_string(),
        case: Case::Trivial,
        m: None,
        n: None,
        evidence: Evidence::None,
        ham: None,
        status: Status::Verified,
    };
    if order <= 1 {
        report.ham = Some(HamCertificate {
            sequence: (0..order).collect(),
            closed: false,
        });
        return Ok(report);
    }
    if is_prime(order) {
        report.case = Case::PrimeOrder;
        if x.edge_count() == 0 {
            report.status = Status::NoPath;
            return Ok(report);
        }
        let (form, cycle) = prime_pipeline(x)?;
        report.ham = Some(cycle.opened());
        report.evidence = Evidence::Circulant { form, cycle };
        return Ok(report);
    }
    match find_decomposition_within(x, deadline)? {
        Search::Found(DecompositionEvidence::CyclePair { m, n, witness }) => {
            report.case = Case::CyclePair;
            (report.m, report.n) = (Some(m), Some(n));
            report.evidence = Evidence::CyclePair { m, n, witness };
            (report.ham, report.status) = direct_path(x, deadline);
        }
        Search::Found(DecompositionEvidence::Decomposition { certificate }) => {
            report.case = Case::Decomposition;
            (report.m, report.n) = (Some(certificate.quotient.order()), Some(certificate.fiber.order()));
            if certificate.quotient.is_connected() {
                match compose_hamiltonian_path_within(&certificate, deadline) {
                    Ok(h) => report.ham = Some(h),
                    Err(ConjectureError::CompositionFailed) => {
                        log::warn!("{graph_id}: composition failed for a valid certificate");
                        report.status = Status::CompositionFailed;
                    }
                    Err(ConjectureError::Undecided) => report.status = Status::Undecided,
                    Err(e) => return Err(e),
                }
            } else {
                report.status = Status::NoPath;
            }
            report.evidence = Evidence::Decomposition { certificate };
        }
        Search::Absent => {
            report.case = Case::Unresolved;
            (report.ham, report.status) = direct_path(x, deadline);
        }
        Search::Undecided => {
            report.case = Case::Unresolved;
            report.status = Status::Undecided;
        }
    }
    Ok(report)
}

/// A graph `survey` could not classify.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyFailure {
    pub graph_id: String,
    pub error: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub entries: Vec<Result<ClassificationReport, SurveyFailure>>,
    /// Number of reports per case, in case order.
    pub counts: Vec<(Case, usize)>,
    pub errors: usize,
}

impl SurveyReport {
    pub fn reports(&self) -> impl Iterator<Item = &ClassificationReport> {
        self.entries.iter().filter_map(|e| e.as_ref().ok())
    }

    pub fn resolved(&self) -> usize {
        self.reports().filter(|r| r.case.is_resolved()).count()
    }
}

/// Classifies each graph with its own time budget. With `jobs > 1` graphs are
/// classified in parallel; entries always follow the input order.
pub fn survey(graphs: &[(String, Graph)], budget: Option<Duration>, jobs: usize) -> SurveyReport {
    use rayon::prelude::*;
    let one = |(id, g): &(String, Graph)| {
        let deadline = Deadline::from_limit(budget);
        classify_within(id, g, &deadline).map_err(|e| SurveyFailure {
            graph_id: id.clone(),
            error: e.to_string(),
        })
    };
    let entries: Vec<_> = if jobs > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| graphs.par_iter().map(one).collect()),
            Err(e) => {
                log::warn!("falling back to one thread: {e}");
                graphs.iter().map(one).collect()
            }
        }
    } else {
        graphs.iter().map(one).collect()
    };
    let mut counts: Vec<(Case, usize)> = Vec::new();
    for r in entries.iter().flatten() {
        match counts.iter_mut().find(|(c, _)| *c == r.case) {
            Some((_, k)) => *k += 1,
            None => counts.push((r.case, 1)),
        }
    }
    counts.sort();
    let errors = entries.iter().filter(|e| e.is_err()).count();
    SurveyReport { entries, counts, errors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{hypercube, path, petersen, prism, rook};

    fn sets(list: &[&[usize]]) -> BranchDecomposition {
        BranchDecomposition::new(list.iter().map(|s| s.iter().copied().collect()).collect())
    }

    fn prism_cert() -> DecompositionCertificate {
        DecompositionCertificate {
            host: prism(3).unwrap(),
            quotient: complete(2).unwrap(),
            fiber: cycle(3).unwrap(),
            // Prism vertex (i, j) is 2i + j; the triangles are j = 0 and j = 1.
            decomposition: sets(&[&[0, 2, 4], &[1, 3, 5]]),
            d: 3,
        }
    }

    fn c9_cert() -> DecompositionCertificate {
        DecompositionCertificate {
            host: cycle(9).unwrap(),
            quotient: cycle(3).unwrap(),
            fiber: path(3).unwrap(),
            decomposition: sets(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 8]]),
            d: 2,
        }
    }

    #[test]
    fn certificates_check() {
        assert_eq!(check_certificate(&prism_cert()), Ok(()));
        assert_eq!(check_certificate(&c9_cert()), Ok(()));
        let mut bad = c9_cert();
        bad.d = 3;
        assert!(matches!(check_certificate(&bad), Err(CertificateViolation::Valency { .. })));
        let mut bad = c9_cert();
        bad.quotient = path(3).unwrap();
        assert_eq!(check_certificate(&bad), Err(CertificateViolation::QuotientNotTransitive));
    }

    #[test]
    fn swapped_prism_is_valid() {
        // Quotient C_3 over three rungs: rung i is {2i, 2i+1}.
        let cert = DecompositionCertificate {
            host: prism(3).unwrap(),
            quotient: cycle(3).unwrap(),
            fiber: complete(2).unwrap(),
            decomposition: sets(&[&[0, 1], &[2, 3], &[4, 5]]),
            d: 3,
        };
        // Each rung vertex reaching one neighbouring rung has a partner reaching the other.
        assert_eq!(check_certificate(&cert), Ok(()));
    }

    #[test]
    fn replication_needs_a_second_vertex() {
        // Vertex 2 reaches both outer sets; its partner 3 reaches neither.
        let host = Graph::from_edges(6, [(0, 1), (2, 3), (4, 5), (1, 2), (2, 4)]).unwrap();
        let quotient = path(3).unwrap();
        let s = sets(&[&[0, 1], &[2, 3], &[4, 5]]);
        assert_eq!(
            check_neighbor_replication(&host, &quotient, s.sets()),
            Err(CertificateViolation::NeighborReplication { x0: 1, x1: 0, x2: 2, v: 2 })
        );
    }

    #[test]
    fn certificate_text_round_trip() {
        let cert = c9_cert();
        let text = cert.to_text();
        assert_eq!(DecompositionCertificate::parse(&cert.host, &text).unwrap(), cert);
        assert!(matches!(
            DecompositionCertificate::parse(&cert.host, "decomposition d x\n"),
            Err(ConjectureError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn searches() {
        let c9 = cycle(9).unwrap();
        match find_decomposition(&c9).unwrap().unwrap() {
            DecompositionEvidence::Decomposition { certificate } => {
                assert_eq!((certificate.quotient.order(), certificate.fiber.order()), (3, 3));
                assert_eq!(check_certificate(&certificate), Ok(()));
            }
            other => panic!("expected a decomposition, got {other:?}"),
        }
        let r = rook(3, 3).unwrap();
        assert!(matches!(
            find_decomposition(&r).unwrap(),
            Some(DecompositionEvidence::CyclePair { m: 3, n: 3, .. })
        ));
        match find_decomposition(&complete(4).unwrap()).unwrap().unwrap() {
            DecompositionEvidence::Decomposition { certificate } => assert_eq!(check_certificate(&certificate), Ok(())),
            other => panic!("expected a decomposition, got {other:?}"),
        }
        assert_eq!(find_decomposition(&cycle(7).unwrap()), Err(ConjectureError::PrimeOrder(7)));
        assert_eq!(find_decomposition(&path(4).unwrap()), Err(ConjectureError::NotVertexTransitive));
    }

    #[test]
    fn compositions() {
        for cert in [prism_cert(), c9_cert()] {
            let h = compose_hamiltonian_path(&cert).unwrap();
            h.verify(&cert.host).unwrap();
        }
        let q3 = DecompositionCertificate {
            host: hypercube(3).unwrap(),
            quotient: cycle(4).unwrap(),
            fiber: complete(2).unwrap(),
            // Edges along bit 0, arranged around the square of bits 1 and 2.
            decomposition: sets(&[&[0, 1], &[2, 3], &[6, 7], &[4, 5]]),
            d: 3,
        };
        assert_eq!(check_certificate(&q3), Ok(()));
        compose_hamiltonian_path(&q3).unwrap().verify(&q3.host).unwrap();
    }

    #[test]
    fn classifications() {
        let r = classify("c7", &cycle(7).unwrap()).unwrap();
        assert_eq!((r.case, r.status), (Case::PrimeOrder, Status::Verified));
        let r = classify("c9", &cycle(9).unwrap()).unwrap();
        assert_eq!((r.case, r.status), (Case::Decomposition, Status::Verified));
        r.ham.unwrap().verify(&cycle(9).unwrap()).unwrap();
        let r = classify("e4", &edgeless(4).unwrap()).unwrap();
        assert_eq!(r.status, Status::NoPath);
        assert!(r.ham.is_none());
        let r = classify("petersen", &petersen()).unwrap();
        if let Some(h) = &r.ham {
            h.verify(&petersen()).unwrap();
        }
        assert_eq!(classify("p3", &path(3).unwrap()), Err(ConjectureError::NotVertexTransitive));
    }

    #[test]
    fn survey_keeps_order_and_collects_errors() {
        let graphs = vec![
            ("c5".to_string(), cycle(5).unwrap()),
            ("p3".to_string(), path(3).unwrap()),
            ("k4".to_string(), complete(4).unwrap()),
        ];
        let report = survey(&graphs, None, 2);
        assert_eq!(report.entries.len(), 3);
        assert_eq!(report.errors, 1);
        assert_eq!(report.entries[1].as_ref().unwrap_err().graph_id, "p3");
        assert_eq!(report.entries[2].as_ref().unwrap().graph_id, "k4");
        assert!(survey(&[], None, 1).entries.is_empty());
    }
}
