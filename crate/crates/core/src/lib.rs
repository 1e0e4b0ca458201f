//! Convexity points of planar convex bodies.
//!
//! A point `z` is a convexity point of `K` when `K ∪ (2z − K)` is convex.
//! Polygons are handled in exact rational arithmetic; smooth bodies given by
//! trigonometric support functions are handled in floating point.

pub mod campaign;
pub mod convexity;
pub mod decompose;
pub mod error;
pub mod format;
pub mod generate;
pub mod geom;
pub mod middle;
pub mod smooth;
pub mod tolerance;

pub use convexity::{
    is_convexity_point_char, is_convexity_point_direct, middle_intercept_profile, theorem_points,
    witness_nonconvexity, ConvexityCertificate, Method,
};
pub use decompose::{decompose, extract_parallel_summand, verify_decomposition, Decomposition};
pub use error::{GeomError, Result};
pub use geom::{Body, BodyKind, Direction, Face, Line, Point, Rat};
pub use middle::{a_body, antipodal_events, middle_set, MiddleStructure};
pub use tolerance::TOLERANCES;
