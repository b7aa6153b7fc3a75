//! Floquet XXZ dynamics on heavy-hex lattices: statevector and MPS
//! simulation, noise emulation with reference-circuit mitigation, and
//! Kuramoto-style synchronization analysis.

pub mod analysis;
pub mod circuit;
pub mod config;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod mitigation;
pub mod mps;
pub mod record;
pub mod runner;
pub mod snapshot;
pub mod statevector;

pub use error::{Error, Result};
pub use lattice::{build_heavy_hex, LatticeGraph, SizeClass};
pub use record::TrajectoryRecord;
