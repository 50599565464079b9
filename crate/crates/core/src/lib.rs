//! Rectangular duals drawn as simultaneous duals: every rectangle gets a
//! point inside it so that each adjacency is a straight segment crossing
//! exactly the shared side of the two rectangles.

pub mod construct;
pub mod drawing;
pub mod generate;
pub mod geometry;
pub mod io;
pub mod scalar;
pub mod stgraph;
pub mod subdivision;
pub mod verify;

pub use scalar::Scalar;

/// Exact rational scalar used by default.
pub type Rat = num_rational::BigRational;
pub type RatPt = geometry::Pt<Rat>;
pub type RatRect = geometry::Rect<Rat>;
pub type RatSubdivision = subdivision::Subdivision<Rat>;
