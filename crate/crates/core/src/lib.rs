//! Scalability analysis for finite frames in `R^n`.

pub mod analysis;
pub mod corpus;
pub mod filters;
pub mod graph;
pub mod scaler;
pub mod linalg;
pub mod scalar;

pub use scalar::{Exact, Scalar};
