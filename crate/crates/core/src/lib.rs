//! Homogeneous graph minors, Cayley graphs and Hamiltonian paths in small
//! vertex-transitive graphs.
//!
//! Graphs have at most 64 vertices and use bitset adjacency. Every search is
//! exhaustive and deterministic, and every positive answer carries a
//! certificate that can be checked independently of the search that found it.

pub mod budget;
pub mod catalog;
pub mod cayley;
pub mod conjecture;
pub mod connectivity;
pub mod error;
pub mod graph;
pub mod group;
pub mod hamilton;
pub mod iso;
pub mod minor;

pub use budget::{Deadline, Search};
pub use cayley::{cayley_graph, is_cayley, right_translation, transitive_witness, ConnectionSet};
pub use connectivity::{check_connectivity_bound, vertex_connectivity, Connectivity, ConnectivityBound};
pub use error::{CatalogError, ConjectureError, GraphError, GroupError, HamiltonError, MinorError};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
pub use group::{builtin_groups, groups_of_order, FiniteGroup};
pub use iso::{are_isomorphic, automorphism_generators, is_vertex_transitive, OrbitPartition, VertexMapping};
pub use minor::{cycle_pair_minor, is_homogeneous_minor, is_minor, verify_minor_witness, wqo_antichain_check, BranchDecomposition};
pub use hamilton::{
    arithmetic_ham_cycle, circulant_representation, hamiltonian_cycle, hamiltonian_path, hamiltonian_path_between,
    low_degree_ham_connected, prime_pipeline, CirculantForm, HamCertificate, LowDegreeHamConnectivity,
};
pub use conjecture::{
    check_certificate, classify, compose_hamiltonian_path, find_decomposition, survey, Case, ClassificationReport,
    DecompositionCertificate, DecompositionEvidence, Status,
};
