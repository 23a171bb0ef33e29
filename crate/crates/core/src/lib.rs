//! Max-Cut bounds for sparse random graphs.
//!
//! [`first_moment`] and [`second_moment`] compute the constants `x_u` and
//! `x_l` bracketing `(MaxCut/n - c/2)/√c`; [`gauss`] holds the special
//! functions and wedge integrals they use. [`oracles`] evaluates the
//! underlying finite-`n` combinatorics exactly and by simulation, and
//! [`graph`] provides the random-graph and cut machinery.

// `!(x > 0.0)` deliberately rejects NaN along with non-positive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod first_moment;
pub mod gauss;
pub mod graph;
pub mod oracles;
pub mod report;
pub mod roots;
pub mod second_moment;

pub use error::{Error, Result};
