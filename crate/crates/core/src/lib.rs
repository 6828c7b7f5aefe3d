//! Guided greedy algorithms for non-monotone submodular maximization under
//! size and matroid constraints.
//!
//! The crate is organised bottom-up:
//!
//! * [`oracle`]: objective instances (max cut, log-det DPP, modular), the
//!   query-counting [`oracle::CountedOracle`] wrapper and seeded random-graph
//!   generators.
//! * [`constraint`]: size constraints, uniform and partition matroids, the
//!   dummy-element extension, max-gain bases and exchange bijections.
//! * [`localsearch`]: the swap local search that produces guidance sets, its
//!   two-pass variant and the `prune` subroutine.
//! * [`greedy`]: standard greedy, random greedy and guided random greedy.
//! * [`interlace`]: guided interlaced greedy subroutines (size and matroid) and
//!   the threshold-accelerated variant.
//! * [`pipeline`]: the end-to-end randomized, derandomized and nearly-linear
//!   deterministic algorithms.
//! * [`bench`]: brute-force optima, experiment configuration, CSV reporting and
//!   the property suites behind `guided certify`.

pub mod bench;
pub mod constraint;
pub mod element;
pub mod error;
pub mod greedy;
pub mod interlace;
pub mod localsearch;
pub mod oracle;
pub mod pipeline;
pub mod rng;

pub use element::{ElementId, ElementSet};
pub use error::{Error, Result};

/// Relative tolerance used for every value comparison inside the algorithms.
pub const VALUE_TOL: f64 = 1e-9;

/// Tolerance scaled to the magnitude of the compared values.
#[inline]
pub fn tol(a: f64, b: f64) -> f64 {
    VALUE_TOL * 1f64.max(a.abs()).max(b.abs())
}
