//! Named graph families and the small vertex-transitive catalog.

use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use crate::cayley::{cayley_graph, connection_sets};
use crate::error::CatalogError;
use crate::graph::Graph;
use crate::group::{builtin_groups, MAX_BUILTIN_ORDER};
use crate::iso::{are_isomorphic, is_vertex_transitive, transitive_invariant};

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub graph: Graph,
    pub provenance: String,
}

fn invalid(family: &str, message: impl Into<String>) -> CatalogError {
    CatalogError::InvalidParameters {
        family: family.to_string(),
        message: message.into(),
    }
}

pub fn cycle(n: usize) -> Result<Graph, CatalogError> {
    if n < 3 {
        return Err(invalid("cycle", "n must be at least 3"));
    }
    Ok(Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?)
}

pub fn path(n: usize) -> Result<Graph, CatalogError> {
    if n == 0 {
        return Err(invalid("path", "n must be at least 1"));
    }
    Ok(Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?)
}

pub fn complete(n: usize) -> Result<Graph, CatalogError> {
    Ok(Graph::from_edges(n, (0..n).tuple_combinations())?)
}

pub fn edgeless(n: usize) -> Result<Graph, CatalogError> {
    Ok(Graph::empty(n)?)
}

/// Kneser graph `K(n, k)`: `k`-subsets of `0..n` in lexicographic order,
/// adjacent when disjoint.
pub fn kneser(n: usize, k: usize) -> Result<Graph, CatalogError> {
    if k == 0 || k > n {
        return Err(invalid("kneser", "need 1 <= k <= n"));
    }
    let subsets: Vec<u64> = (0..n)
        .combinations(k)
        .map(|c| c.into_iter().fold(0u64, |m, i| m | 1 << i))
        .collect();
    let edges = (0..subsets.len())
        .tuple_combinations()
        .filter(|&(a, b)| subsets[a] & subsets[b] == 0);
    Ok(Graph::from_edges(subsets.len(), edges)?)
}

/// The Petersen graph as `K(5, 2)`.
pub fn petersen() -> Graph {
    kneser(5, 2).expect("K(5,2) fits")
}

pub fn hypercube(d: usize) -> Result<Graph, CatalogError> {
    if d > 6 {
        return Err(invalid("hypercube", "dimension at most 6"));
    }
    let n = 1usize << d;
    let edges = (0..n).flat_map(|v| (0..d).map(move |b| (v, v ^ 1 << b))).filter(|(u, v)| u < v);
    Ok(Graph::from_edges(n, edges)?)
}

/// `i ~ j` iff `j - i` or `i - j` is in `jumps` (mod `n`).
pub fn circulant(n: usize, jumps: &[usize]) -> Result<Graph, CatalogError> {
    if n == 0 {
        return Err(invalid("circulant", "n must be positive"));
    }
    if jumps.iter().any(|&s| s % n == 0) {
        return Err(invalid("circulant", "jumps must be non-zero mod n"));
    }
    if n > crate::graph::MAX_VERTICES {
        return Err(crate::error::GraphError::TooManyVertices(n).into());
    }
    let mut rows = vec![0u64; n];
    for i in 0..n {
        for &s in jumps {
            let j = (i + s) % n;
            rows[i] |= 1 << j;
            rows[j] |= 1 << i;
        }
    }
    Ok(Graph::from_rows(rows))
}

/// `C_n x K_2`.
pub fn prism(n: usize) -> Result<Graph, CatalogError> {
    Ok(cycle(n)?.cartesian_product(&complete(2)?)?)
}

/// Rook graph `K_a x K_b`; vertex `(r, c)` is `r * b + c`.
pub fn rook(a: usize, b: usize) -> Result<Graph, CatalogError> {
    Ok(complete(a)?.cartesian_product(&complete(b)?)?)
}

fn expect_params(family: &str, params: &[usize], count: usize) -> Result<(), CatalogError> {
    if params.len() != count {
        return Err(invalid(family, format!("expected {count} parameter(s), got {}", params.len())));
    }
    Ok(())
}

/// Builds a named family. `circulant` takes `n` followed by its jumps.
pub fn family(name: &str, params: &[usize]) -> Result<Graph, CatalogError> {
    match name {
        "cycle" => expect_params(name, params, 1).and_then(|_| cycle(params[0])),
        "path" => expect_params(name, params, 1).and_then(|_| path(params[0])),
        "complete" => expect_params(name, params, 1).and_then(|_| complete(params[0])),
        "edgeless" => expect_params(name, params, 1).and_then(|_| edgeless(params[0])),
        "petersen" => expect_params(name, params, 0).map(|_| petersen()),
        "kneser" => expect_params(name, params, 2).and_then(|_| kneser(params[0], params[1])),
        "hypercube" => expect_params(name, params, 1).and_then(|_| hypercube(params[0])),
        "prism" => expect_params(name, params, 1).and_then(|_| prism(params[0])),
        "rook" => expect_params(name, params, 2).and_then(|_| rook(params[0], params[1])),
        "circulant" => match params.split_first() {
            Some((&n, jumps)) => circulant(n, jumps),
            None => Err(invalid(name, "expected n and jumps")),
        },
        _ => Err(CatalogError::UnknownFamily(name.to_string())),
    }
}

/// Parses `name[:p1[:p2...]]`, where each parameter may be a comma list
/// (`circulant:6:2,3`, `rook:3:3`, `petersen`).
pub fn parse_family(spec: &str) -> Result<Graph, CatalogError> {
    let mut parts = spec.split(':');
    let name = parts.next().unwrap_or_default();
    let mut params = Vec::new();
    for part in parts {
        for tok in part.split(',').filter(|t| !t.is_empty()) {
            params.push(tok.parse::<usize>().map_err(|_| invalid(name, format!("`{tok}` is not a non-negative integer")))?);
        }
    }
    family(name, &params)
}

/// All Cayley graphs of the built-in groups of order at most `max_n`, over
/// every connection set, plus the Petersen graph and its complement, with
/// isomorphic duplicates removed. This is every vertex-transitive graph on at
/// most 14 vertices; orders 15 and 16 lack their non-Cayley graphs (4 and 8 of
/// them respectively). Entries are ordered by vertex count, then group, then connection
/// set; the first representative of each class is kept.
pub fn vt_catalog(max_n: usize) -> Result<Vec<CatalogEntry>, CatalogError> {
    if max_n > MAX_BUILTIN_ORDER {
        return Err(CatalogError::TooLarge(max_n));
    }
    let groups = builtin_groups(max_n);
    let mut entries = Vec::new();
    for n in 1..=max_n {
        let mut buckets: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
        let start = entries.len();
        let mut push = |entries: &mut Vec<CatalogEntry>, entry: CatalogEntry| {
            let key = transitive_invariant(&entry.graph);
            let bucket = buckets.entry(key).or_default();
            if bucket.iter().any(|&i| are_isomorphic(&entries[start + i].graph, &entry.graph).is_some()) {
                return;
            }
            bucket.push(entries.len() - start);
            entries.push(entry);
        };
        for group in groups.iter().filter(|g| g.order() == n) {
            for c in connection_sets(group) {
                let graph = cayley_graph(group, &c);
                let entry = CatalogEntry {
                    name: format!("cay:{}:{}", group.name(), c),
                    provenance: format!("Cayley graph of {} with connection set {:?}", group.name(), c),
                    graph,
                };
                push(&mut entries, entry);
            }
        }
        if n == 10 {
            push(
                &mut entries,
                CatalogEntry {
                    name: "petersen".into(),
                    graph: petersen(),
                    provenance: "Kneser graph K(5,2)".into(),
                },
            );
            push(
                &mut entries,
                CatalogEntry {
                    name: "petersen-complement".into(),
                    graph: petersen().complement(),
                    provenance: "complement of K(5,2), the line graph of K_5".into(),
                },
            );
        }
    }
    for e in &entries {
        assert!(is_vertex_transitive(&e.graph).0, "catalog entry {} is not vertex-transitive", e.name);
    }
    Ok(entries)
}

/// Connected entries of [`vt_catalog`].
pub fn connected_vt_catalog(max_n: usize) -> Result<Vec<CatalogEntry>, CatalogError> {
    Ok(vt_catalog(max_n)?.into_iter().filter(|e| e.graph.is_connected()).collect())
}

/// Looks up a catalog entry or a family spec by name.
pub fn lookup(name: &str, max_n: usize) -> Result<CatalogEntry, CatalogError> {
    if let Ok(graph) = parse_family(name) {
        return Ok(CatalogEntry {
            name: name.to_string(),
            graph,
            provenance: "named family".into(),
        });
    }
    vt_catalog(max_n)?
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CatalogError::UnknownEntry(name.to_string()))
}
