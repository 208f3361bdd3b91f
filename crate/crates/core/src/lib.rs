//! Sliding-robot pursuit-evasion in simple orthogonal polygons.
//!
//! Robots slide along axis-parallel guard segments and see along
//! perpendicular chords. The crate provides exact lattice geometry, the
//! clearing protocol engine that coordinates the robots, and an independent
//! contamination verifier that replays engine traces against an
//! arbitrarily fast evader.

pub mod boundary;
pub mod engine;
pub mod error;
pub mod io;
pub mod kernel;
pub mod oracle;
pub mod scalar;
pub mod visibility;

pub use error::GeometryError;
pub use scalar::Scalar;

/// Lattice coordinate used by the engine, the verifier and the file formats.
pub type Coord = i64;
pub type Point = kernel::Point<Coord>;
pub type Polygon = kernel::OrthoPolygon<Coord>;
pub type Segment = kernel::Segment<Coord>;
pub type BoundaryPoint = kernel::BoundaryPoint<Coord>;
pub type Region = boundary::BoundaryRegion<Coord>;
