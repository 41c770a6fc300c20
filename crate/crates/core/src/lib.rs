//! Shadow boundaries, general parameter spheres and Minkowski bisectors of
//! centrally symmetric convex polytopes, computed with exact rationals.

pub mod bisector;
pub mod body;
pub mod error;
pub mod kernel;
pub mod report;
pub mod shadow;
pub mod spheres;
pub mod topology;
pub mod verify;

pub use error::{Error, Result};
