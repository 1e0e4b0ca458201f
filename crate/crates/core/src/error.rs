use thiserror::Error;

use crate::geom::{Direction, Point};

pub type Result<T, E = GeomError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("empty point list")]
    Empty,
    #[error("zero direction")]
    ZeroDirection,
    #[error("vertices do not form a strictly convex polygon: {0}")]
    NotConvex(String),
    #[error("operation requires a body of dimension {required}, got dimension {found}")]
    Dimension { required: usize, found: usize },
    #[error("operation requires a polygon")]
    NotPolygon,
    #[error("polygon has a parallel edge pair with normals ±{0}; decompose it first")]
    ParallelEdges(Direction),
    #[error("{0} is not an exposed point of the middle-set body")]
    NotExposed(Point),
    #[error("support function fails h + h'' > {margin}: value {value} at phi = {phi}")]
    NotStrictlyConvex { phi: f64, value: f64, margin: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
