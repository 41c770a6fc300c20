//! Exact arithmetic, hulls, gauges and line clipping.

pub mod approx;
pub mod hull;
pub mod point;
pub mod predicates;
pub mod rational;

pub use hull::{hull_and_lattice, Edge, FaceId, FaceLattice, Facet, HalfSpace};
pub use point::Point;
pub use predicates::{gauge, line_body_intersection, project_along, Interval};
pub use rational::Rational;
