//! Exact magnitude, magnitude homology and combinatorial models of magnitude
//! homotopy types for finite metric spaces.

#![allow(clippy::needless_range_loop)]

pub mod causal;
pub mod chain;
pub mod checks;
pub mod cli;
pub mod complex;
pub mod error;
pub mod frame;
pub mod gluing;
pub mod io;
pub mod metric;
pub mod morse;
pub mod mv;
pub mod projecting;
pub mod random;
pub mod rational;
pub mod sequence;
pub mod series;
pub mod snf;
pub mod sycamore;

pub use error::{Error, Result};
pub use metric::MetricSpace;
pub use rational::Rational;
pub use sequence::PointSequence;
