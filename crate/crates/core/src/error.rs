use thiserror::Error;

/// Failures of geometric validation and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("polygon needs at least 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("edge {index} is neither horizontal nor vertical (or has zero length)")]
    NonOrthogonalEdge { index: usize },
    #[error("edges {index} and {next} do not alternate orientation")]
    NonAlternatingEdges { index: usize, next: usize },
    #[error("edges {first} and {second} intersect")]
    SelfIntersection { first: usize, second: usize },
    #[error("vertices are listed clockwise")]
    ClockwiseInput,
    #[error("reflex vertices {vertices:?} are collinear")]
    GeneralPositionViolation { vertices: Vec<usize> },
    #[error("boundary points belong to different polygons")]
    PointsFromDifferentPolygons,
    #[error("guard segment is degenerate or not axis-parallel")]
    DegenerateSegment,
    #[error("guard segment is not contained in the polygon")]
    SegmentOutsidePolygon,
    #[error("point is not on the polygon boundary")]
    NotOnBoundary,
    #[error("vertex {0} is not reflex")]
    NotReflex(usize),
}
