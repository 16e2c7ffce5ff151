//! Deciding bicircularity of small matroids.
//!
//! The crate stores matroids explicitly, decomposes them along 2-sums, tests
//! the 3-connected pieces for bicircular representations, and can express the
//! same decision as a monadic second-order sentence over set-systems.

pub mod bitset;
pub mod corpus;
pub mod decomposition;
pub mod error;
pub mod exec;
pub mod graph;
pub mod logic;
pub mod matroid;

pub use bitset::{ElementSet, Family};
pub use error::{Error, Result};
pub use exec::Exec;
pub use matroid::{check_matroid, two_sum, Matroid, Separation, SetSystem, TwoSumSpec};
pub use graph::{Bicycle, BicycleKind, Multigraph};
pub use decomposition::{canonical_tree, is_bicircular, Decision, DecompositionTree};
