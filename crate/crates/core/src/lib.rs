//! The n-queens problem on `d`-dimensional boards.

mod bitset;
pub mod construct;
pub mod error;
pub mod geometry;
pub mod ipmodel;
pub mod scalar;
pub mod analysis;
pub mod bounds;
pub mod solver;

pub use error::{Error, Result};
pub use geometry::{BoardSpec, Direction, Placement, Square};
pub use scalar::{Rational, Scalar};
pub use solver::{SearchOptions, SolveResult, Status};
