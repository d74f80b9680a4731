//! Thurston–Bennequin symmetry of finite simple graphs.
//!
//! Decides whether a graph is (almost-)(r,s)-TB-symmetrical from how its
//! r- and s-cycles pass through edges, corners and non-adjacent edge pairs,
//! with exact proportionality constants ρ. Also covers s-arc transitivity,
//! abstract Legendrian front data, and censuses of small graphs.

pub mod automorphism;
pub mod census;
pub mod cli;
pub mod cycles;
pub mod error;
pub mod fit;
pub mod generate;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod legendrian;
pub mod named;
pub mod ops;
pub mod rational;
pub mod symmetry;

pub use error::{Error, Result};
pub use graph::{Edge, Graph};
pub use named::NamedGraph;
pub use rational::Rational;
