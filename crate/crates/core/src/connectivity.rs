//! Vertex connectivity by cut enumeration, and the transitivity lower bound
//! `kappa >= 2(k+1)/3` for connected vertex-transitive graphs of valency `k`.

use itertools::Itertools;
use serde::Serialize;

use crate::error::GraphError;
use crate::graph::{Graph, VertexSet};
use crate::iso::is_vertex_transitive;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub kappa: usize,
    /// A minimum separating set. `None` for complete graphs (no cut exists);
    /// empty for graphs that are already disconnected.
    pub cut: Option<VertexSet>,
}

/// Minimum vertex cut, found by trying cut sizes `1..=min_degree` in
/// lexicographic order. Complete graphs `K_n` get `n - 1` by convention.
pub fn vertex_connectivity(g: &Graph) -> Connectivity {
    let n = g.order();
    if !g.is_connected() {
        return Connectivity {
            kappa: 0,
            cut: Some(VertexSet::EMPTY),
        };
    }
    if g.is_complete() {
        return Connectivity {
            kappa: n.saturating_sub(1),
            cut: None,
        };
    }
    // A non-complete connected graph has a cut of size at most the minimum
    // degree: the neighbourhood of a minimum-degree vertex.
    for k in 1..=g.min_degree() {
        for cut in (0..n).combinations(k) {
            let cut: VertexSet = cut.into_iter().collect();
            if !g.is_connected_within(g.vertices().difference(cut)) {
                return Connectivity { kappa: k, cut: Some(cut) };
            }
        }
    }
    unreachable!("neighbourhood of a minimum-degree vertex separates a non-complete graph")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityBound {
    pub valency: usize,
    /// `ceil(2(k+1)/3)`: cuts are whole vertices.
    pub bound: usize,
    pub kappa: usize,
    /// Whether some vertex set separates the graph; complete graphs have none.
    pub separable: bool,
    pub holds: bool,
}

pub fn connectivity_lower_bound(valency: usize) -> usize {
    (2 * (valency + 1)).div_ceil(3)
}

/// Checks the connectivity lower bound on a connected vertex-transitive graph.
/// Inputs violating the precondition are rejected, not passed. The bound
/// speaks about separating sets, so complete graphs satisfy it vacuously.
pub fn check_connectivity_bound(g: &Graph) -> Result<ConnectivityBound, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let valency = g.valency()?;
    if !is_vertex_transitive(g).0 {
        return Err(GraphError::NotVertexTransitive);
    }
    let Connectivity { kappa, cut } = vertex_connectivity(g);
    let bound = connectivity_lower_bound(valency);
    Ok(ConnectivityBound {
        valency,
        bound,
        kappa,
        separable: cut.is_some(),
        holds: cut.is_none() || kappa >= bound,
    })
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

    #[test]
    fn cycle_and_complete() {
        let c = vertex_connectivity(&cycle(5));
        assert_eq!(c.kappa, 2);
        assert_eq!(c.cut.unwrap().to_vec(), vec![0, 2]);
        assert_eq!(vertex_connectivity(&complete(4)), Connectivity { kappa: 3, cut: None });
    }

    #[test]
    fn disconnected_is_zero() {
        let g = cycle(3).disjoint_union(&cycle(3)).unwrap();
        assert_eq!(vertex_connectivity(&g).kappa, 0);
        assert_eq!(vertex_connectivity(&g).cut, Some(VertexSet::EMPTY));
    }

    #[test]
    fn bound_values() {
        assert_eq!(connectivity_lower_bound(2), 2);
        assert_eq!(connectivity_lower_bound(3), 3);
        assert_eq!(connectivity_lower_bound(4), 4);
        assert_eq!(connectivity_lower_bound(5), 4);
        let b = check_connectivity_bound(&cycle(7)).unwrap();
        assert!(b.holds && b.kappa == 2 && b.bound == 2);
        let k5 = check_connectivity_bound(&complete(5)).unwrap();
        assert!(k5.holds && k5.kappa == 4 && k5.bound == 4);
        let k4 = check_connectivity_bound(&complete(4)).unwrap();
        assert!(k4.holds && !k4.separable && k4.kappa == 3 && k4.bound == 3);
        // K2 has kappa 1 below its bound 2; only the absence of a cut saves it.
        let k2 = check_connectivity_bound(&complete(2)).unwrap();
        assert!(k2.holds && !k2.separable && k2.kappa < k2.bound);
    }

    #[test]
    fn bound_rejects_bad_input() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(check_connectivity_bound(&path), Err(GraphError::NotRegular { .. })));
        let g = cycle(3).disjoint_union(&cycle(3)).unwrap();
        assert_eq!(check_connectivity_bound(&g), Err(GraphError::Disconnected));
        // Cubic but not transitive: two copies of K_4 minus an edge, joined at
        // their degree-2 vertices.
        let glued = Graph::from_edges(
            8,
            [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7), (0, 4), (1, 5)],
        )
        .unwrap();
        assert_eq!(check_connectivity_bound(&glued), Err(GraphError::NotVertexTransitive));
        let mixed = cycle(3).disjoint_union(&cycle(4)).unwrap();
        assert_eq!(check_connectivity_bound(&mixed), Err(GraphError::Disconnected));
    }
}
