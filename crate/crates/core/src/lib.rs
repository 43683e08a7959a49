//! Exact spanning-tree edge densities and dependences of multigraphs, and
//! constructions realizing a prescribed rational as a density or dependence.

pub mod closed_forms;
pub mod constructions;
pub mod graph;
pub mod kirchhoff;
pub mod modular;
pub mod rational;
pub mod search;
pub mod verify;

pub use graph::{parse_graph, serialize_graph, EdgeRecord, EdgeRef, GraphError, Multigraph, VertexId};
pub use kirchhoff::{density, density_report, resistance, tau, tau_edge, thicket_count, DensityReport, TreeCount};
pub use rational::ExactRational;
