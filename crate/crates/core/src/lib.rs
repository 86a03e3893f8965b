//! Dirac operators, Hodge Laplacians and their spectral identities on the clique
//! complex of a finite simple graph.

pub mod canon;
pub mod cochain;
pub mod complex;
pub mod dynamics;
pub mod eigen;
pub mod error;
pub mod exact;
pub mod export;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod hodge;
pub mod homotopy;
pub mod operators;
pub mod spectral;

pub use complex::{build_complex, euler_characteristic, Simplex, SimplicialComplex};
pub use error::{Error, Result};
pub use graph::{Graph, Subgraph};
