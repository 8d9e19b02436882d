//! Semi-supervised community detection with absorbing random walks.
//!
//! A handful of seed nodes per community carry known affinity vectors. Every
//! other node receives the expected seed affinity of the random walk started
//! at it, absorbed at the first seed it reaches. Those absorption
//! probabilities never need to be formed explicitly: for each community the
//! affinities of the non-seed nodes solve one symmetric diagonally dominant
//! system built from the graph Laplacian restricted to the non-seed nodes.
//!
//! The crate is organised along the experiment pipeline:
//!
//! - [`graph`]: immutable CSR graph, edge-list ingestion, connectivity.
//! - [`benchmark`]: LFR-style planted-community generator and LFR file reader.
//! - [`seeding`]: degree-proportional seed sampling from ground truth.
//! - [`solver`]: Jacobi-preconditioned conjugate gradient for SDD systems.
//! - [`affinity`]: absorbing-walk systems and per-community affinity solves.
//! - [`classify`]: disjoint / overlapping assignment and seed expansion.
//! - [`metrics`]: entropy, partition NMI and the LFK cover NMI.

pub mod affinity;
pub mod benchmark;
pub mod classify;
pub mod dense;
mod error;
pub mod graph;
pub mod metrics;
pub mod seeding;
pub mod solver;

pub use affinity::{AbsorbingSystem, AffinityMatrix, SeedAssignment};
pub use benchmark::{BenchmarkConfig, GroundTruth};
pub use classify::{Assignment, Cover, Mode, Partition};
pub use error::{Error, Result, SolveFailure};
pub use graph::Graph;
pub use solver::{Preconditioner, SolveParams, SparseSymmetricMatrix};
