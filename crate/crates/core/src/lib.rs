//! Evaluation, certification and search of oblivious algorithms for
//! Max DICUT and Max 2-AND.
//!
//! An oblivious algorithm puts each vertex on the selected side of a
//! directed cut independently, with a probability that depends only on the
//! vertex bias `out / (out + in)`. This crate computes the exact worst-case
//! approximation ratio of step selection functions through a
//! factor-revealing linear program, certifies the value in exact rational
//! arithmetic, and extracts worst-case witness graphs.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and
//! parallel search live in the companion `oblivious-dicut` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algorithms;
pub mod bounds;
pub mod error;
pub mod graph;
pub mod lp;
pub mod rational;
pub mod search;
pub mod selection;
pub mod twoand;

pub use error::{Error, Result};
pub use graph::{Cut, WeightedDigraph};
pub use lp::{approximation_ratio, RatioCertificate};
pub use rational::Rational;
pub use selection::StepFunction;
pub use twoand::TwoAndInstance;
