//! Hamiltonian paths and cycles by pruned backtracking, and the circulant
//! construction for vertex-transitive graphs of prime order.
//!
//! The search extends a path from a fixed start in ascending vertex order.
//! Before each extension it checks that the unvisited vertices stay connected
//! to the current end, and that at most one unvisited vertex is left with a
//! single usable neighbour (such a vertex can only be the final one).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::budget::{Deadline, Search, TimedOut};
use crate::cayley::{cayley_graph, ConnectionSet};
use crate::error::HamiltonError;
use crate::graph::{Graph, VertexSet};
use crate::group::FiniteGroup;
use crate::iso::{is_vertex_transitive, VertexMapping};
use crate::minor::is_prime;

/// A Hamiltonian path (`closed == false`) or cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HamCertificate {
    pub sequence: Vec<usize>,
    pub closed: bool,
}

impl HamCertificate {
    /// Checks coverage, adjacency of consecutive vertices and the closing edge.
    pub fn verify(&self, g: &Graph) -> Result<(), HamiltonError> {
        let bad = |m: String| Err(HamiltonError::InvalidCertificate(m));
        if self.sequence.len() != g.order() {
            return bad(format!("sequence has {} vertices, graph has {}", self.sequence.len(), g.order()));
        }
        let mut seen = VertexSet::EMPTY;
        for &v in &self.sequence {
            if v >= g.order() {
                return bad(format!("vertex {v} is not in the graph"));
            }
            if seen.contains(v) {
                return bad(format!("vertex {v} is visited twice"));
            }
            seen.insert(v);
        }
        if let Some(w) = self.sequence.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
            return bad(format!("consecutive vertices {} and {} are not adjacent", w[0], w[1]));
        }
        if self.closed {
            if self.sequence.len() < 3 {
                return bad("a cycle needs at least 3 vertices".into());
            }
            let (first, last) = (self.sequence[0], self.sequence[self.sequence.len() - 1]);
            if !g.has_edge(last, first) {
                return bad(format!("closing vertices {last} and {first} are not adjacent"));
            }
        }
        Ok(())
    }

    /// The path obtained by dropping the closing edge.
    pub fn opened(&self) -> HamCertificate {
        HamCertificate {
            sequence: self.sequence.clone(),
            closed: false,
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.sequence.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.sequence.last().copied()
    }
}

impl fmt::Display for HamCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ham {}", if self.closed { "closed" } else { "open" })?;
        for v in &self.sequence {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

impl FromStr for HamCertificate {
    type Err = HamiltonError;

    /// Parses `ham <open|closed> v0 v1 ...` on a single line.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let line = s.strip_suffix('\n').unwrap_or(s);
        let err = |column: usize, message: &str| HamiltonError::Parse {
            column,
            message: message.to_string(),
        };
        if line.contains('\n') {
            return Err(err(1, "certificate must be a single line"));
        }
        let mut column = 1;
        let mut toks = line.split(' ');
        if toks.next() != Some("ham") {
            return Err(err(column, "expected `ham`"));
        }
        column += 4;
        let closed = match toks.next() {
            Some("open") => false,
            Some("closed") => true,
            _ => return Err(err(column, "expected `open` or `closed`")),
        };
        column += if closed { 7 } else { 5 };
        let mut sequence = Vec::new();
        for tok in toks {
            sequence.push(tok.parse().map_err(|_| err(column, "invalid vertex"))?);
            column += tok.len() + 1;
        }
        Ok(HamCertificate { sequence, closed })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum EndRule {
    Any,
    Exactly(usize),
    AdjacentTo(usize),
}

struct PathSearch<'a> {
    g: &'a Graph,
    rule: EndRule,
    deadline: &'a Deadline,
    path: Vec<usize>,
}

impl PathSearch<'_> {
    fn extend(&mut self, visited: VertexSet) -> Result<bool, TimedOut> {
        self.deadline.tick()?;
        let g = self.g;
        let cur = *self.path.last().expect("path starts non-empty");
        let free = g.vertices().difference(visited);
        if free.is_empty() {
            return Ok(match self.rule {
                EndRule::Any => true,
                EndRule::Exactly(y) => cur == y,
                EndRule::AdjacentTo(s) => g.has_edge(cur, s),
            });
        }
        let mut within = free;
        within.insert(cur);
        if g.reach_within(VertexSet::singleton(cur), within) != within {
            return Ok(false);
        }

        let mut usable = within;
        let (need, fixed_end) = match self.rule {
            EndRule::Any => (1, None),
            EndRule::Exactly(y) => (1, Some(y)),
            EndRule::AdjacentTo(s) => {
                usable.insert(s);
                (2, None)
            }
        };
        // Vertices that can only be the last one on the path.
        let mut forced_end = fixed_end;
        for v in free {
            let avail = g.neighbors(v).intersection(usable).len();
            if avail < need {
                return Ok(false);
            }
            if need == 1 && avail == 1 {
                match forced_end {
                    Some(e) if e != v => return Ok(false),
                    _ => forced_end = Some(v),
                }
            }
        }

        let last_step = free.len() == 1;
        for next in g.neighbors(cur).intersection(free) {
            if !last_step && forced_end == Some(next) {
                continue;
            }
            self.path.push(next);
            let mut v2 = visited;
            v2.insert(next);
            if self.extend(v2)? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}

fn search_from(g: &Graph, start: usize, rule: EndRule, deadline: &Deadline) -> Result<Option<Vec<usize>>, TimedOut> {
    let mut s = PathSearch {
        g,
        rule,
        deadline,
        path: vec![start],
    };
    Ok(s.extend(VertexSet::singleton(start))?.then_some(s.path))
}

fn check_vertex(g: &Graph, v: usize) -> Result<(), HamiltonError> {
    if v >= g.order() {
        return Err(HamiltonError::VertexOutOfRange { vertex: v, n: g.order() });
    }
    Ok(())
}

/// An open Hamiltonian path, or `None` after exhaustive search.
pub fn hamiltonian_path(g: &Graph) -> Option<HamCertificate> {
    hamiltonian_path_within(g, &Deadline::never()).into_option()
}

pub fn hamiltonian_path_within(g: &Graph, deadline: &Deadline) -> Search<HamCertificate> {
    let n = g.order();
    if n <= 1 {
        return Search::Found(HamCertificate {
            sequence: (0..n).collect(),
            closed: false,
        });
    }
    if !g.is_connected() {
        return Search::Absent;
    }
    let leaves: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 1).collect();
    if leaves.len() > 2 {
        return Search::Absent;
    }
    // A degree-1 vertex must be an endpoint, so it is enough to start there.
    let starts: Vec<usize> = match leaves.first() {
        Some(&v) => vec![v],
        None => (0..n).collect(),
    };
    let run = || -> Result<Option<HamCertificate>, TimedOut> {
        for s in starts {
            if let Some(sequence) = search_from(g, s, EndRule::Any, deadline)? {
                return Ok(Some(HamCertificate { sequence, closed: false }));
            }
        }
        Ok(None)
    };
    run().into()
}

/// A Hamiltonian cycle starting at vertex 0. Needs at least 3 vertices.
pub fn hamiltonian_cycle(g: &Graph) -> Result<Option<HamCertificate>, HamiltonError> {
    Ok(hamiltonian_cycle_within(g, &Deadline::never())?.into_option())
}

pub fn hamiltonian_cycle_within(g: &Graph, deadline: &Deadline) -> Result<Search<HamCertificate>, HamiltonError> {
    if g.order() < 3 {
        return Err(HamiltonError::TooSmallForCycle(g.order()));
    }
    if g.min_degree() < 2 {
        return Ok(Search::Absent);
    }
    let r = search_from(g, 0, EndRule::AdjacentTo(0), deadline)
        .map(|p| p.map(|sequence| HamCertificate { sequence, closed: true }));
    Ok(r.into())
}

/// An open Hamiltonian path from `x` to `y`.
pub fn hamiltonian_path_between(g: &Graph, x: usize, y: usize) -> Result<Option<HamCertificate>, HamiltonError> {
    Ok(hamiltonian_path_between_within(g, x, y, &Deadline::never())?.into_option())
}

pub fn hamiltonian_path_between_within(
    g: &Graph,
    x: usize,
    y: usize,
    deadline: &Deadline,
) -> Result<Search<HamCertificate>, HamiltonError> {
    check_vertex(g, x)?;
    check_vertex(g, y)?;
    if x == y {
        return Err(HamiltonError::SameEndpoints(x));
    }
    let r = search_from(g, x, EndRule::Exactly(y), deadline)
        .map(|p| p.map(|sequence| HamCertificate { sequence, closed: false }));
    Ok(r.into())
}

/// Outcome of the low-degree Hamiltonian-connectedness test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LowDegreeHamConnectivity {
    Holds,
    /// The first pair (ascending) with no Hamiltonian path between them.
    Fails { x: usize, y: usize },
    /// The budget ran out while testing this pair.
    Undecided { x: usize, y: usize },
}

impl LowDegreeHamConnectivity {
    pub fn holds(&self) -> bool {
        matches!(self, LowDegreeHamConnectivity::Holds)
    }
}

/// Vertices of degree below `d`.
pub fn low_degree_vertices(g: &Graph, d: usize) -> Vec<usize> {
    (0..g.order()).filter(|&v| g.degree(v) < d).collect()
}

/// Every two distinct vertices of degree `< d` are joined by a Hamiltonian
/// path. Vacuously true with fewer than two such vertices.
pub fn low_degree_ham_connected(g: &Graph, d: usize) -> Result<LowDegreeHamConnectivity, HamiltonError> {
    low_degree_ham_connected_within(g, d, &Deadline::never())
}

pub fn low_degree_ham_connected_within(
    g: &Graph,
    d: usize,
    deadline: &Deadline,
) -> Result<LowDegreeHamConnectivity, HamiltonError> {
    if d == 0 {
        return Err(HamiltonError::ZeroValency);
    }
    let low = low_degree_vertices(g, d);
    for (i, &x) in low.iter().enumerate() {
        for &y in &low[i + 1..] {
            match hamiltonian_path_between_within(g, x, y, deadline)? {
                Search::Found(_) => {}
                Search::Absent => return Ok(LowDegreeHamConnectivity::Fails { x, y }),
                Search::Undecided => return Ok(LowDegreeHamConnectivity::Undecided { x, y }),
            }
        }
    }
    Ok(LowDegreeHamConnectivity::Holds)
}

/// A prime-order graph written as a circulant `Cay(Z_p, connection)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CirculantForm {
    pub p: usize,
    pub connection: ConnectionSet,
    /// Sends each input vertex to its element of `Z_p`.
    pub relabeling: VertexMapping,
}

impl CirculantForm {
    /// Whether the relabeling maps `x` exactly onto the circulant.
    pub fn verify(&self, x: &Graph) -> bool {
        let z = FiniteGroup::cyclic(self.p).expect("p is positive");
        self.relabeling.is_isomorphism(x, &cayley_graph(&z, &self.connection))
    }
}

/// Finds an automorphism of `x` that cycles through all `p` vertices, and
/// reads off the circulant it induces.
///
/// The search fixes `c_0 = 0` and picks `c_1, c_2, ...` so that adjacency
/// between `c_j` and `c_i` depends only on `i - j`; the resulting map
/// `c_i -> c_(i+1)` is an automorphism of order `p`, and `c_i -> i` is the
/// relabeling.
pub fn circulant_representation(x: &Graph) -> Result<CirculantForm, HamiltonError> {
    let p = x.order();
    if !is_prime(p) {
        return Err(HamiltonError::NotPrimeOrder(p));
    }
    if !is_vertex_transitive(x).0 {
        return Err(HamiltonError::NotVertexTransitive);
    }

    fn rec(x: &Graph, seq: &mut Vec<usize>, jumps: &mut Vec<bool>, used: VertexSet) -> bool {
        let p = x.order();
        let i = seq.len();
        if i == p {
            return true;
        }
        for c in x.vertices().difference(used) {
            let s_i = x.has_edge(seq[0], c);
            if i > p - i && s_i != jumps[p - i] {
                continue;
            }
            if !(1..i).all(|j| x.has_edge(seq[j], c) == jumps[i - j]) {
                continue;
            }
            seq.push(c);
            jumps.push(s_i);
            let mut u = used;
            u.insert(c);
            if rec(x, seq, jumps, u) {
                return true;
            }
            seq.pop();
            jumps.pop();
        }
        false
    }

    let mut seq = vec![0];
    let mut jumps = vec![false];
    let found = rec(x, &mut seq, &mut jumps, VertexSet::singleton(0));
    assert!(found, "a vertex-transitive graph of prime order is a circulant");
    let mut images = vec![0; p];
    for (i, &c) in seq.iter().enumerate() {
        images[c] = i;
    }
    let z = FiniteGroup::cyclic(p).expect("p is positive");
    let members = (1..p).filter(|&k| jumps[k]);
    let form = CirculantForm {
        p,
        connection: ConnectionSet::new(&z, members).expect("jump set is symmetric and identity-free"),
        relabeling: VertexMapping::new(images).expect("sequence is a permutation"),
    };
    debug_assert!(form.verify(x));
    Ok(form)
}

/// The cycle `0, k, 2k, ..., (p-1)k` of `Z_p` for the smallest `k` in the
/// connection set, pulled back to the input labels. For `p = 2` this is an
/// open path.
pub fn arithmetic_ham_cycle(form: &CirculantForm) -> Result<HamCertificate, HamiltonError> {
    let &k = form.connection.members().first().ok_or(HamiltonError::EmptyConnection)?;
    let back = form.relabeling.inverse();
    let sequence = (0..form.p).map(|i| back.image(i * k % form.p)).collect();
    Ok(HamCertificate {
        sequence,
        closed: form.p > 2,
    })
}

/// Circulant form, arithmetic cycle and its verification in one step.
pub fn prime_pipeline(x: &Graph) -> Result<(CirculantForm, HamCertificate), HamiltonError> {
    let form = circulant_representation(x)?;
    let cert = arithmetic_ham_cycle(&form)?;
    cert.verify(x)?;
    Ok((form, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{circulant, complete, cycle, path, petersen};

    #[test]
    fn small_paths() {
        let k2 = complete(2).unwrap();
        assert_eq!(hamiltonian_path(&k2).unwrap().sequence, vec![0, 1]);
        let p = petersen();
        hamiltonian_path(&p).unwrap().verify(&p).unwrap();
        let two = cycle(3).unwrap().disjoint_union(&cycle(3).unwrap()).unwrap();
        assert!(hamiltonian_path(&two).is_none());
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(hamiltonian_path(&star).is_none());
    }

    #[test]
    fn cycles() {
        assert_eq!(hamiltonian_cycle(&cycle(6).unwrap()).unwrap().unwrap().sequence, vec![0, 1, 2, 3, 4, 5]);
        assert!(hamiltonian_cycle(&petersen()).unwrap().is_none());
        let k4 = complete(4).unwrap();
        hamiltonian_cycle(&k4).unwrap().unwrap().verify(&k4).unwrap();
        assert_eq!(hamiltonian_cycle(&complete(2).unwrap()), Err(HamiltonError::TooSmallForCycle(2)));
    }

    #[test]
    fn between() {
        assert_eq!(hamiltonian_path_between(&path(3).unwrap(), 0, 2).unwrap().unwrap().sequence, vec![0, 1, 2]);
        let c4 = cycle(4).unwrap();
        assert_eq!(hamiltonian_path_between(&c4, 0, 1).unwrap().unwrap().sequence, vec![0, 3, 2, 1]);
        assert!(hamiltonian_path_between(&c4, 0, 2).unwrap().is_none());
        assert_eq!(hamiltonian_path_between(&c4, 1, 1), Err(HamiltonError::SameEndpoints(1)));
        assert!(matches!(hamiltonian_path_between(&c4, 0, 9), Err(HamiltonError::VertexOutOfRange { .. })));
    }

    #[test]
    fn low_degree() {
        assert!(low_degree_ham_connected(&path(3).unwrap(), 2).unwrap().holds());
        assert!(low_degree_ham_connected(&cycle(3).unwrap(), 3).unwrap().holds());
        let k2k2 = complete(2).unwrap().disjoint_union(&complete(2).unwrap()).unwrap();
        assert_eq!(low_degree_ham_connected(&k2k2, 2).unwrap(), LowDegreeHamConnectivity::Fails { x: 0, y: 1 });
        assert!(low_degree_ham_connected(&cycle(5).unwrap(), 2).unwrap().holds());
        assert_eq!(
            low_degree_ham_connected(&cycle(4).unwrap(), 3).unwrap(),
            LowDegreeHamConnectivity::Fails { x: 0, y: 2 }
        );
        assert_eq!(low_degree_ham_connected(&cycle(4).unwrap(), 0), Err(HamiltonError::ZeroValency));
    }

    #[test]
    fn certificate_text() {
        let c: HamCertificate = "ham closed 0 2 4 6 1 3 5".parse().unwrap();
        assert!(c.closed);
        assert_eq!(c.to_string(), "ham closed 0 2 4 6 1 3 5");
        assert!(matches!("ham shut 0".parse::<HamCertificate>(), Err(HamiltonError::Parse { column: 5, .. })));
        assert!(matches!("ham open 0 x".parse::<HamCertificate>(), Err(HamiltonError::Parse { column: 12, .. })));
    }

    #[test]
    fn verify_reports_each_clause() {
        let c4 = cycle(4).unwrap();
        let cert = |s: &[usize], closed| HamCertificate { sequence: s.to_vec(), closed };
        assert!(cert(&[0, 1, 2], false).verify(&c4).is_err());
        assert!(cert(&[0, 1, 1, 2], false).verify(&c4).is_err());
        assert!(cert(&[0, 2, 1, 3], false).verify(&c4).is_err());
        assert!(cert(&[0, 1, 2, 3], true).verify(&c4).is_ok());
        let p4 = path(4).unwrap();
        assert!(cert(&[0, 1, 2, 3], true).verify(&p4).is_err());
    }

    #[test]
    fn circulants() {
        let c7 = cycle(7).unwrap();
        let form = circulant_representation(&c7).unwrap();
        assert_eq!(form.connection.members(), &[1, 6]);
        assert!(form.verify(&c7));
        let z7 = FiniteGroup::cyclic(7).unwrap();
        let form = CirculantForm {
            p: 7,
            connection: ConnectionSet::new(&z7, [2, 5]).unwrap(),
            relabeling: VertexMapping::identity(7),
        };
        assert_eq!(arithmetic_ham_cycle(&form).unwrap().sequence, vec![0, 2, 4, 6, 1, 3, 5]);
        assert_eq!(circulant_representation(&petersen()), Err(HamiltonError::NotPrimeOrder(10)));
        let path5 = path(5).unwrap();
        assert_eq!(circulant_representation(&path5), Err(HamiltonError::NotVertexTransitive));

        let scrambled = circulant(11, &[1, 3]).unwrap().relabel(&[3, 7, 0, 10, 5, 1, 9, 2, 8, 4, 6]).unwrap();
        let form = circulant_representation(&scrambled).unwrap();
        assert_eq!(form.connection.len(), 4);
        assert!(form.verify(&scrambled));
        arithmetic_ham_cycle(&form).unwrap().verify(&scrambled).unwrap();
    }

    #[test]
    fn order_two() {
        let (_, cert) = prime_pipeline(&complete(2).unwrap()).unwrap();
        assert!(!cert.closed);
        let z5 = FiniteGroup::cyclic(5).unwrap();
        let empty = CirculantForm {
            p: 5,
            connection: ConnectionSet::new(&z5, []).unwrap(),
            relabeling: VertexMapping::identity(5),
        };
        assert_eq!(arithmetic_ham_cycle(&empty), Err(HamiltonError::EmptyConnection));
    }
}
