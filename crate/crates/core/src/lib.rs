//! Extremal-graph toolkit: forbidden-subgraph detection, exhaustive Zarankiewicz and
//! Turán search, certificate-producing expansion / reachability / bipartization
//! routines, an odd-cycle construction pipeline, and generators for the classical
//! extremal graphs.
//!
//! All randomness flows from a single `u64` seed through ChaCha8 (see [`rng`]), so every
//! result is reproducible across platforms.

pub mod bitset;
pub mod cert;
pub mod constructor;
mod error;
pub mod extremal;
pub mod forbidden;
pub mod generators;
pub mod graph;
pub mod lemmas;
pub mod par;
pub mod rng;
pub mod suites;

pub use error::{Error, Result};
pub use graph::{Extent, Graph};
