//! Tools for the graph reconstruction problem on small graphs.
//!
//! * [`graph`]: simple graphs, rooted graphs, distances and radius.
//! * [`canon`]: canonical certificates, automorphism groups and orbits.
//! * [`count`]: subgraph / induced-subgraph counts, plain and rooted.
//! * [`deck`]: vertex and edge decks, counting from a deck, pseudo-similarity.
//! * [`profile`]: distance balls, ball profiles, and their reconstruction from
//!   a deck by a triangular solve.
//! * [`identities`]: rooted graphs on at most four vertices and the linear
//!   identities between their counts.
//! * [`catalog`]: graph6, exhaustive small-graph catalogs, witness search.
//!
//! ```
//! use recon_core::{deck::deck, graph::Graph, profile::{reconstruct_s_profile, s_profile}};
//!
//! let p5 = Graph::path(5).unwrap();
//! let (profile, _trace) = reconstruct_s_profile(&deck(&p5), 1).unwrap();
//! assert_eq!(profile, s_profile(&p5, 1));
//! ```

pub mod canon;
pub mod catalog;
pub mod count;
pub mod deck;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod identities;
pub mod par;
pub mod profile;

pub use canon::{CanonKey, Canonical};
pub use count::Mode;
pub use error::{Error, Result};
pub use graph::{Distance, Edge, EdgeRootedGraph, Graph, VertexRootedGraph};
pub use par::Exec;
