//! Circuit-preserving edge maps between finite simple graphs.
//!
//! Given a one-to-one edge map `f` from a graph `G` onto a graph `G'`, this
//! crate checks whether `f` sends circuits to circuits (with a checkable
//! witness when it does not), recovers the vertex isomorphism inducing `f`
//! when `G` is 3-connected, and builds the theta-graph family of circuit
//! injections from 2-connected sources that no vertex map induces.
//!
//! ```
//! use circmap::edge_maps::{is_circuit_injection, reconstruct_vertex_isomorphism, Mode};
//! use circmap::generators::{named_graph, permuted_edge_map, random_permutation, NamedGraph};
//!
//! let g = named_graph(&NamedGraph::Prism).unwrap();
//! let perm = random_permutation(&g, 7);
//! let f = permuted_edge_map(&g, &perm).unwrap();
//! assert!(is_circuit_injection(&f, Mode::exhaustive()).unwrap().is_pass());
//! assert_eq!(reconstruct_vertex_isomorphism(&f).unwrap().images(), &perm[..]);
//! ```

pub mod circuits;
pub mod cli;
pub mod connectivity;
pub mod edge_maps;
pub mod generators;
pub mod graph;
pub mod rng;

pub use circuits::{Circuit, CircuitError};
pub use edge_maps::{EdgeMap, MapError};
pub use graph::{EdgeId, EdgeSet, Graph, GraphError, Path, VertexId};
