//! Exact q-series toolkit for the Kanade-Russell partition classes.
//!
//! Everything works over unbounded integers: truncated bivariate series in
//! `q` and `t`, partition predicates and brute-force counters, seed
//! expansion, the backward/forward move bijection for partitions whose parts
//! appear at most twice, the base-partition polynomials `P(m1, m2, m3, s; q)`
//! and the generating functions assembled from them.

pub mod appendix;
pub mod cli;
mod error;
pub mod genfun;
pub mod moves;
pub mod partitions;
pub mod ppoly;
pub mod qseries;
pub mod seedgen;
pub mod worked;

pub use error::{Error, Result};
pub use partitions::{KrVariant, Partition};
pub use qseries::{BiSeries, QPoly};
