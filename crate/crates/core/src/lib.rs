//! Modularity clustering toolkit.
//!
//! Vertices are `0..n`. A loop of weight `ℓ` at vertex `i` adds `2ℓ` to the
//! degree of `i` and `ℓ` to the total weight `M`; see [`graph`].

pub mod baselines;
pub mod error;
pub mod graph;
pub mod harness;
pub mod hardgen;
pub mod io;
pub mod methods;
pub mod oracle;
pub mod sdp;
pub mod seed;
pub mod transforms;

pub use error::{Error, Result};
pub use graph::{modularity, Clustering, Graph, GraphBuilder, ModularityMatrix};
pub use methods::{Method, MethodOptions, MethodOutcome};
