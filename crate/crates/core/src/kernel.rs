//! Simple orthogonal polygons on the integer lattice.
//!
//! Holds the polygon type itself, reflex vertices, windows (inward edge
//! extensions at reflex vertices), the sub-polygons a window induces, the
//! rectangle partition formed by all windows, and maximal axis-parallel chords.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::boundary::Arc;
use crate::error::GeometryError;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    /// Coordinate along the given axis direction.
    pub fn along(&self, axis: Axis) -> T {
        match axis {
            Axis::Horizontal => self.x,
            Axis::Vertical => self.y,
        }
    }

    /// Coordinate across the given axis direction.
    pub fn across(&self, axis: Axis) -> T {
        match axis {
            Axis::Horizontal => self.y,
            Axis::Vertical => self.x,
        }
    }

    /// Builds a point from (along, across) coordinates for `axis`.
    pub fn from_axis(axis: Axis, along: T, across: T) -> Self {
        match axis {
            Axis::Horizontal => Point::new(along, across),
            Axis::Vertical => Point::new(across, along),
        }
    }

    pub fn scaled(&self, k: T) -> Self {
        Point::new(self.x * k, self.y * k)
    }
}

/// Orientation of an axis-parallel segment or line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl Axis {
    pub fn perpendicular(self) -> Axis {
        match self {
            Axis::Horizontal => Axis::Vertical,
            Axis::Vertical => Axis::Horizontal,
        }
    }
}

/// Closed axis-parallel segment with `a <= b` along its axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Segment<T> {
    pub a: Point<T>,
    pub b: Point<T>,
}

impl<T: Scalar> Segment<T> {
    /// Normalizes endpoint order. Returns `None` unless the segment is
    /// axis-parallel (zero length is allowed).
    pub fn new(p: Point<T>, q: Point<T>) -> Option<Self> {
        if p.x != q.x && p.y != q.y {
            return None;
        }
        let (a, b) = if p <= q { (p, q) } else { (q, p) };
        Some(Segment { a, b })
    }

    pub fn axis(&self) -> Axis {
        if self.a.y == self.b.y && self.a.x != self.b.x {
            Axis::Horizontal
        } else {
            Axis::Vertical
        }
    }

    pub fn len(&self) -> T {
        (self.b.x - self.a.x) + (self.b.y - self.a.y)
    }

    pub fn is_empty(&self) -> bool {
        self.a == self.b
    }

    pub fn contains(&self, p: &Point<T>) -> bool {
        p.x >= self.a.x && p.x <= self.b.x && p.y >= self.a.y && p.y <= self.b.y
    }

    /// Overlap of two collinear segments, if any (may be a single point).
    pub fn collinear_overlap(&self, other: &Segment<T>) -> Option<Segment<T>> {
        let ax = self.axis();
        if self.a.across(ax) != other.a.across(ax) || other.a.across(ax) != other.b.across(ax) {
            return None;
        }
        let lo = self.a.along(ax).max(other.a.along(ax));
        let hi = self.b.along(ax).min(other.b.along(ax));
        if lo > hi {
            return None;
        }
        let c = self.a.across(ax);
        Some(Segment { a: Point::from_axis(ax, lo, c), b: Point::from_axis(ax, hi, c) })
    }
}

/// Closed axis-aligned rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rect<T> {
    pub min: Point<T>,
    pub max: Point<T>,
}

impl<T: Scalar> Rect<T> {
    pub fn new(min: Point<T>, max: Point<T>) -> Self {
        Rect { min, max }
    }

    pub fn area(&self) -> T {
        (self.max.x - self.min.x) * (self.max.y - self.min.y)
    }

    pub fn contains(&self, p: &Point<T>) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    /// Whether the open interiors intersect.
    pub fn interiors_overlap(&self, other: &Rect<T>) -> bool {
        self.min.x < other.max.x && other.min.x < self.max.x && self.min.y < other.max.y && other.min.y < self.max.y
    }
}

/// Where a point lies relative to a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// A point on the polygon boundary in canonical form: `offset` is measured
/// from the start vertex of edge `edge` and is strictly less than the edge
/// length, so each vertex lives on its outgoing edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryPoint<T: Scalar> {
    pub edge: usize,
    pub offset: Ratio<T>,
}

/// Which incident edge of a reflex vertex a window extends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    /// Extends the edge arriving from the previous vertex: endpoint `x_j`.
    Prev,
    /// Extends the edge departing to the next vertex: endpoint `y_j`.
    Next,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window<T: Scalar> {
    pub vertex: usize,
    pub side: Side,
    pub hit: BoundaryPoint<T>,
    pub segment: Segment<T>,
    pub hit_point: Point<T>,
}

/// The four sub-polygons associated with a reflex vertex, in flag order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubPolygonKind {
    /// Cut by the `Prev` window, contains the next vertex: arc `(v_j, x_j)`.
    NearPrev,
    /// Cut by the `Next` window, contains the previous vertex: arc `(y_j, v_j)`.
    NearNext,
    /// Complement of `NearPrev`: arc `(x_j, v_j)`.
    FarPrev,
    /// Complement of `NearNext`: arc `(v_j, y_j)`.
    FarNext,
}

impl SubPolygonKind {
    pub const ALL: [SubPolygonKind; 4] =
        [SubPolygonKind::NearPrev, SubPolygonKind::NearNext, SubPolygonKind::FarPrev, SubPolygonKind::FarNext];

    /// Zero-based position in the per-vertex flag array.
    pub fn flag_index(self) -> usize {
        match self {
            SubPolygonKind::NearPrev => 0,
            SubPolygonKind::NearNext => 1,
            SubPolygonKind::FarPrev => 2,
            SubPolygonKind::FarNext => 3,
        }
    }

    pub fn side(self) -> Side {
        match self {
            SubPolygonKind::NearPrev | SubPolygonKind::FarPrev => Side::Prev,
            SubPolygonKind::NearNext | SubPolygonKind::FarNext => Side::Next,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubPolygonRef<T: Scalar> {
    pub window: Window<T>,
    pub which: SubPolygonKind,
    pub arc: Arc<T>,
}

/// A separating edge between two partition cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellAdjacency {
    pub a: usize,
    pub b: usize,
    /// Window (reflex vertex, side) on which the shared edge lies, if any.
    pub window: Option<(usize, Side)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDecomposition<T> {
    pub cells: Vec<Rect<T>>,
    pub adjacency: Vec<CellAdjacency>,
}

/// A simple orthogonal polygon with counterclockwise lattice vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrthoPolygon<T> {
    vertices: Vec<Point<T>>,
}

impl<T: Scalar> OrthoPolygon<T> {
    /// Validates a vertex list. The first vertex is kept as `v_1`.
    pub fn validate(points: Vec<Point<T>>) -> Result<Self, GeometryError> {
        let poly = Self::validate_shape(points)?;
        let collinear = poly.collinear_reflex_groups(4);
        if let Some(group) = collinear.into_iter().next() {
            return Err(GeometryError::GeneralPositionViolation { vertices: group });
        }
        Ok(poly)
    }

    /// Validation without the general-position requirement. Used for derived
    /// sub-polygons whose reflex vertices are inherited from a valid parent.
    pub fn validate_shape(points: Vec<Point<T>>) -> Result<Self, GeometryError> {
        let n = points.len();
        if n < 4 {
            return Err(GeometryError::TooFewVertices(n));
        }
        let poly = OrthoPolygon { vertices: points };
        for i in 0..n {
            let (p, q) = poly.edge_points(i);
            if (p.x != q.x && p.y != q.y) || p == q {
                return Err(GeometryError::NonOrthogonalEdge { index: i });
            }
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if poly.edge_axis(i) == poly.edge_axis(j) {
                return Err(GeometryError::NonAlternatingEdges { index: i, next: j });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let (si, sj) = (poly.edge(i), poly.edge(j));
                if adjacent {
                    // adjacent edges share exactly their common vertex; being
                    // perpendicular they cannot overlap further
                    continue;
                }
                if segments_touch(&si, &sj) {
                    return Err(GeometryError::SelfIntersection { first: i, second: j });
                }
            }
        }
        if poly.area2() <= T::zero() {
            return Err(GeometryError::ClockwiseInput);
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point<T> {
        self.vertices[i % self.len()]
    }

    pub fn prev_index(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    pub fn next_index(&self, i: usize) -> usize {
        (i + 1) % self.len()
    }

    /// Endpoints of edge `i`, from `v_i` to `v_{i+1}`.
    pub fn edge_points(&self, i: usize) -> (Point<T>, Point<T>) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn edge(&self, i: usize) -> Segment<T> {
        let (p, q) = self.edge_points(i);
        Segment::new(p, q).expect("polygon edges are axis-parallel")
    }

    pub fn edge_axis(&self, i: usize) -> Axis {
        let (p, q) = self.edge_points(i);
        if p.y == q.y {
            Axis::Horizontal
        } else {
            Axis::Vertical
        }
    }

    pub fn edge_len(&self, i: usize) -> T {
        self.edge(i).len()
    }

    pub fn perimeter(&self) -> T {
        (0..self.len()).fold(T::zero(), |acc, i| acc + self.edge_len(i))
    }

    /// Twice the signed area (shoelace).
    pub fn area2(&self) -> T {
        let n = self.len();
        (0..n).fold(T::zero(), |acc, i| {
            let (p, q) = self.edge_points(i);
            acc + (p.x * q.y - q.x * p.y)
        })
    }

    pub fn area(&self) -> T {
        self.area2() / T::two()
    }

    /// Unit direction of edge `i` as (dx, dy) in {-1,0,1}.
    fn edge_dir(&self, i: usize) -> (T, T) {
        let (p, q) = self.edge_points(i);
        ((q.x - p.x).signum(), (q.y - p.y).signum())
    }

    pub fn is_reflex(&self, i: usize) -> bool {
        let (ax, ay) = self.edge_dir(self.prev_index(i));
        let (bx, by) = self.edge_dir(i);
        ax * by - ay * bx < T::zero()
    }

    /// Indices of all reflex vertices, in counterclockwise order.
    pub fn reflex_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_reflex(i)).collect()
    }

    /// Groups of at least `min` reflex vertices sharing a horizontal or
    /// vertical line.
    pub fn collinear_reflex_groups(&self, min: usize) -> Vec<Vec<usize>> {
        let reflex = self.reflex_vertices();
        let mut groups = Vec::new();
        for axis in [Axis::Horizontal, Axis::Vertical] {
            let levels: BTreeSet<T> = reflex.iter().map(|&i| self.vertex(i).across(axis)).collect();
            for level in levels {
                let group: Vec<usize> =
                    reflex.iter().copied().filter(|&i| self.vertex(i).across(axis) == level).collect();
                if group.len() >= min {
                    groups.push(group);
                }
            }
        }
        groups
    }

    pub fn bounding_box(&self) -> Rect<T> {
        let xs = self.vertices.iter().map(|p| p.x);
        let ys = self.vertices.iter().map(|p| p.y);
        Rect::new(
            Point::new(xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            Point::new(xs.max().unwrap(), ys.max().unwrap()),
        )
    }

    pub fn scaled(&self, k: T) -> Self {
        OrthoPolygon { vertices: self.vertices.iter().map(|p| p.scaled(k)).collect() }
    }

    pub fn locate(&self, p: &Point<T>) -> Location {
        if (0..self.len()).any(|i| self.edge(i).contains(p)) {
            return Location::Boundary;
        }
        // ray towards +x; vertical edges counted on half-open y-spans
        let mut inside = false;
        for i in 0..self.len() {
            let e = self.edge(i);
            if e.axis() == Axis::Vertical && e.a.x > p.x && e.a.y <= p.y && p.y < e.b.y {
                inside = !inside;
            }
        }
        if inside {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    /// Locates the point `(x2 / 2, y2 / 2)` without leaving integer arithmetic.
    pub fn locate_doubled(&self, x2: T, y2: T) -> Location {
        self.scaled(T::two()).locate(&Point::new(x2, y2))
    }

    pub fn contains_closed(&self, p: &Point<T>) -> bool {
        self.locate(p) != Location::Outside
    }

    /// Whether an axis-parallel segment lies in the closed polygon.
    pub fn contains_segment(&self, s: &Segment<T>) -> bool {
        if s.is_empty() {
            return self.contains_closed(&s.a);
        }
        let axis = s.axis();
        let across = s.a.across(axis);
        self.cross_section(axis, across).iter().any(|&(lo, hi)| lo <= s.a.along(axis) && s.b.along(axis) <= hi)
    }

    /// Closed intervals of the line `{across = level}` (a line parallel to
    /// `axis`) that lie in the closed polygon, merged and sorted.
    pub fn cross_section(&self, axis: Axis, level: T) -> Vec<(T, T)> {
        let mut above = Vec::new();
        let mut below = Vec::new();
        for i in 0..self.len() {
            let e = self.edge(i);
            if e.axis() == axis {
                continue;
            }
            let (lo, hi) = (e.a.across(axis), e.b.across(axis));
            let pos = e.a.along(axis);
            if lo <= level && level < hi {
                above.push(pos);
            }
            if lo < level && level <= hi {
                below.push(pos);
            }
        }
        let mut intervals: Vec<(T, T)> = Vec::new();
        for mut xs in [above, below] {
            xs.sort();
            intervals.extend(xs.chunks(2).filter(|c| c.len() == 2).map(|c| (c[0], c[1])));
        }
        // edges lying on the line belong to the closed polygon as well
        for i in 0..self.len() {
            let e = self.edge(i);
            if e.axis() == axis && e.a.across(axis) == level {
                intervals.push((e.a.along(axis), e.b.along(axis)));
            }
        }
        merge_intervals(intervals)
    }

    /// The maximal segment parallel to `axis` through `p` inside the closed
    /// polygon, or `None` when `p` is outside.
    pub fn maximal_chord(&self, p: &Point<T>, axis: Axis) -> Option<Segment<T>> {
        let level = p.across(axis);
        let t = p.along(axis);
        self.cross_section(axis, level)
            .into_iter()
            .find(|&(lo, hi)| lo <= t && t <= hi)
            .map(|(lo, hi)| Segment { a: Point::from_axis(axis, lo, level), b: Point::from_axis(axis, hi, level) })
    }

    /// Canonical boundary location of a lattice point.
    pub fn boundary_point(&self, p: &Point<T>) -> Option<BoundaryPoint<T>> {
        (0..self.len()).find_map(|i| {
            let (start, end) = self.edge_points(i);
            if p == &end || !self.edge(i).contains(p) {
                return None;
            }
            let off = (p.x - start.x).abs() + (p.y - start.y).abs();
            Some(BoundaryPoint { edge: i, offset: Ratio::from_integer(off) })
        })
    }

    /// Perimeter parameter of each edge start.
    pub fn edge_starts(&self) -> Vec<T> {
        let mut acc = T::zero();
        (0..self.len())
            .map(|i| {
                let s = acc;
                acc = acc + self.edge_len(i);
                s
            })
            .collect()
    }

    /// Perimeter parameter (distance from `v_1`, counterclockwise).
    pub fn param_of(&self, bp: &BoundaryPoint<T>) -> Ratio<T> {
        Ratio::from_integer(self.edge_starts()[bp.edge]) + bp.offset
    }

    /// Inverse of [`param_of`](Self::param_of) for `param` in `[0, perimeter)`.
    pub fn point_at_param(&self, param: &Ratio<T>) -> BoundaryPoint<T> {
        let starts = self.edge_starts();
        let edge = (0..self.len()).rev().find(|&i| Ratio::from_integer(starts[i]) <= *param).unwrap_or(0);
        BoundaryPoint { edge, offset: param - Ratio::from_integer(starts[edge]) }
    }

    /// Coordinates of a boundary point; `None` if the offset is fractional.
    pub fn lattice_point(&self, bp: &BoundaryPoint<T>) -> Option<Point<T>> {
        if !bp.offset.is_integer() {
            return None;
        }
        let off = bp.offset.to_integer();
        let (p, _) = self.edge_points(bp.edge);
        let (dx, dy) = self.edge_dir(bp.edge);
        Some(Point::new(p.x + dx * off, p.y + dy * off))
    }

    /// Perimeter span `[start, end)` covered by a sub-segment of edge `i`.
    pub fn edge_span(&self, i: usize, part: &Segment<T>) -> (T, T) {
        let (from, _) = self.edge_points(i);
        let d0 = (part.a.x - from.x).abs() + (part.a.y - from.y).abs();
        let d1 = (part.b.x - from.x).abs() + (part.b.y - from.y).abs();
        let base = self.edge_starts()[i];
        (base + d0.min(d1), base + d0.max(d1))
    }

    /// Vertex index at a lattice point, if any.
    pub fn vertex_at(&self, p: &Point<T>) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }

    /// Open pieces of a chord lying in the interior, separated by the points
    /// and edges where the chord touches the boundary.
    pub fn chord_portions(&self, chord: &Segment<T>) -> Vec<Segment<T>> {
        let ax = chord.axis();
        let level = chord.a.across(ax);
        let (lo, hi) = (chord.a.along(ax), chord.b.along(ax));
        let mut blocked: Vec<(T, T)> = vec![(lo, lo), (hi, hi)];
        for i in 0..self.len() {
            let e = self.edge(i);
            if e.axis() == ax || e.is_empty() {
                if e.a.across(ax) == level {
                    let (a, b) = (e.a.along(ax).max(lo), e.b.along(ax).min(hi));
                    if a <= b {
                        blocked.push((a, b));
                    }
                }
            } else {
                let pos = e.a.along(ax);
                if e.a.across(ax) <= level && level <= e.b.across(ax) && lo <= pos && pos <= hi {
                    blocked.push((pos, pos));
                }
            }
        }
        let blocked = merge_intervals(blocked);
        blocked
            .windows(2)
            .filter(|w| w[0].1 < w[1].0)
            .map(|w| Segment { a: Point::from_axis(ax, w[0].1, level), b: Point::from_axis(ax, w[1].0, level) })
            .collect()
    }

    /// Window of reflex vertex `j`: the inward extension of the edge arriving
    /// from `v_{j-1}` (`Side::Prev`) or departing to `v_{j+1}` (`Side::Next`).
    pub fn window(&self, j: usize, side: Side) -> Result<Window<T>, GeometryError> {
        if !self.is_reflex(j) {
            return Err(GeometryError::NotReflex(j));
        }
        let v = self.vertex(j);
        let (dx, dy) = match side {
            Side::Prev => self.edge_dir(self.prev_index(j)),
            Side::Next => {
                let (dx, dy) = self.edge_dir(j);
                (-dx, -dy)
            }
        };
        let axis = if dy == T::zero() { Axis::Horizontal } else { Axis::Vertical };
        let dir = if axis == Axis::Horizontal { dx } else { dy };
        let hit = self.first_hit(&v, axis, dir).expect("reflex windows always reach the boundary");
        Ok(Window {
            vertex: j,
            side,
            hit: self.boundary_point(&hit).expect("hit lies on the boundary"),
            segment: Segment::new(v, hit).unwrap(),
            hit_point: hit,
        })
    }

    /// First boundary point strictly beyond `from` along `axis` in direction
    /// `dir` (+1 or -1).
    pub fn first_hit(&self, from: &Point<T>, axis: Axis, dir: T) -> Option<Point<T>> {
        let level = from.across(axis);
        let start = from.along(axis);
        let mut best: Option<T> = None;
        for i in 0..self.len() {
            let e = self.edge(i);
            let candidates: Vec<T> = if e.axis() == axis {
                if e.a.across(axis) == level {
                    vec![e.a.along(axis), e.b.along(axis)]
                } else {
                    vec![]
                }
            } else if e.a.across(axis) <= level && level <= e.b.across(axis) {
                vec![e.a.along(axis)]
            } else {
                vec![]
            };
            for c in candidates {
                let dist = (c - start) * dir;
                if dist > T::zero() && best.is_none_or(|b| dist < b) {
                    best = Some(dist);
                }
            }
        }
        best.map(|d| Point::from_axis(axis, start + d * dir, level))
    }

    /// One of the four sub-polygons of reflex vertex `j`.
    pub fn subpolygon(&self, j: usize, which: SubPolygonKind) -> Result<SubPolygonRef<T>, GeometryError> {
        let window = self.window(j, which.side())?;
        let v = self.boundary_point(&self.vertex(j)).unwrap();
        let hit = window.hit.clone();
        let (from, to) = match which {
            SubPolygonKind::NearPrev => (v, hit),
            SubPolygonKind::FarPrev => (hit, v),
            SubPolygonKind::NearNext => (hit, v),
            SubPolygonKind::FarNext => (v, hit),
        };
        let arc = Arc::new(self, from, to);
        Ok(SubPolygonRef { window, which, arc })
    }

    /// The polygon bounded by the counterclockwise boundary walk from `from`
    /// to `to`, closed by the straight segment from `to` back to `from`.
    pub fn sub_polygon(&self, from: &Point<T>, to: &Point<T>) -> Result<OrthoPolygon<T>, GeometryError> {
        let a = self.boundary_point(from).ok_or(GeometryError::NotOnBoundary)?;
        let b = self.boundary_point(to).ok_or(GeometryError::NotOnBoundary)?;
        let n = self.len();
        let mut pts = vec![*from];
        let mut e = a.edge;
        let same_edge_forward = a.edge == b.edge && a.offset < b.offset;
        if !same_edge_forward {
            loop {
                e = (e + 1) % n;
                pts.push(self.vertex(e));
                if e == b.edge {
                    break;
                }
            }
        }
        pts.push(*to);
        OrthoPolygon::validate_shape(simplify(pts))
    }

    /// Splits the polygon along a chord whose endpoints lie on the boundary
    /// and whose relative interior lies inside. Returns the piece bounded by
    /// the walk `a -> b` and the piece bounded by the walk `b -> a`.
    pub fn split(&self, chord: &Segment<T>) -> Result<(OrthoPolygon<T>, OrthoPolygon<T>), GeometryError> {
        Ok((self.sub_polygon(&chord.a, &chord.b)?, self.sub_polygon(&chord.b, &chord.a)?))
    }

    /// All windows of the polygon keyed by (vertex, side).
    pub fn windows(&self) -> Vec<Window<T>> {
        self.reflex_vertices()
            .into_iter()
            .flat_map(|j| [Side::Prev, Side::Next].map(|s| self.window(j, s).unwrap()))
            .collect()
    }

    /// Distinct x and y coordinates of the vertices.
    pub fn grid_lines(&self) -> (Vec<T>, Vec<T>) {
        let xs: BTreeSet<T> = self.vertices.iter().map(|p| p.x).collect();
        let ys: BTreeSet<T> = self.vertices.iter().map(|p| p.y).collect();
        (xs.into_iter().collect(), ys.into_iter().collect())
    }

    /// Rectangles cut out by all windows.
    pub fn window_partition(&self) -> CellDecomposition<T> {
        let (xs, ys) = self.grid_lines();
        let windows = self.windows();
        let (nx, ny) = (xs.len() - 1, ys.len() - 1);
        let idx = |i: usize, j: usize| i * ny + j;
        let inside: Vec<bool> = (0..nx * ny)
            .map(|k| {
                let (i, j) = (k / ny, k % ny);
                self.locate_doubled(xs[i] + xs[i + 1], ys[j] + ys[j + 1]) == Location::Inside
            })
            .collect();
        let on_window = |s: &Segment<T>| -> Option<(usize, Side)> {
            windows
                .iter()
                .find(|w| w.segment.axis() == s.axis() && w.segment.contains(&s.a) && w.segment.contains(&s.b))
                .map(|w| (w.vertex, w.side))
        };
        let mut parent: Vec<usize> = (0..nx * ny).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let nxt = p[c];
                p[c] = r;
                c = nxt;
            }
            r
        }
        // shared grid edges: (cell, cell, segment)
        let mut shared = Vec::new();
        for i in 0..nx {
            for j in 0..ny {
                if !inside[idx(i, j)] {
                    continue;
                }
                if i + 1 < nx && inside[idx(i + 1, j)] {
                    let s = Segment::new(Point::new(xs[i + 1], ys[j]), Point::new(xs[i + 1], ys[j + 1])).unwrap();
                    shared.push((idx(i, j), idx(i + 1, j), s));
                }
                if j + 1 < ny && inside[idx(i, j + 1)] {
                    let s = Segment::new(Point::new(xs[i], ys[j + 1]), Point::new(xs[i + 1], ys[j + 1])).unwrap();
                    shared.push((idx(i, j), idx(i, j + 1), s));
                }
            }
        }
        for (a, b, s) in &shared {
            if on_window(s).is_none() {
                let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
                parent[ra] = rb;
            }
        }
        let mut roots: Vec<usize> = Vec::new();
        let mut cell_of = vec![usize::MAX; nx * ny];
        let mut bounds: Vec<Rect<T>> = Vec::new();
        for k in 0..nx * ny {
            if !inside[k] {
                continue;
            }
            let r = find(&mut parent, k);
            let (i, j) = (k / ny, k % ny);
            let rect = Rect::new(Point::new(xs[i], ys[j]), Point::new(xs[i + 1], ys[j + 1]));
            let c = match roots.iter().position(|&x| x == r) {
                Some(c) => c,
                None => {
                    roots.push(r);
                    bounds.push(rect);
                    roots.len() - 1
                }
            };
            cell_of[k] = c;
            let b = &mut bounds[c];
            b.min = Point::new(b.min.x.min(rect.min.x), b.min.y.min(rect.min.y));
            b.max = Point::new(b.max.x.max(rect.max.x), b.max.y.max(rect.max.y));
        }
        let mut adjacency: Vec<CellAdjacency> = Vec::new();
        for (a, b, s) in &shared {
            let (ca, cb) = (cell_of[*a], cell_of[*b]);
            if ca == cb {
                continue;
            }
            let (lo, hi) = if ca < cb { (ca, cb) } else { (cb, ca) };
            if !adjacency.iter().any(|adj| adj.a == lo && adj.b == hi) {
                adjacency.push(CellAdjacency { a: lo, b: hi, window: on_window(s) });
            }
        }
        adjacency.sort_by_key(|adj| (adj.a, adj.b));
        CellDecomposition { cells: bounds, adjacency }
    }
}

/// Closed-segment intersection test for axis-parallel segments.
fn segments_touch<T: Scalar>(s: &Segment<T>, t: &Segment<T>) -> bool {
    s.a.x <= t.b.x && t.a.x <= s.b.x && s.a.y <= t.b.y && t.a.y <= s.b.y
}

fn merge_intervals<T: Scalar>(mut v: Vec<(T, T)>) -> Vec<(T, T)> {
    v.sort();
    let mut out: Vec<(T, T)> = Vec::new();
    for (lo, hi) in v {
        match out.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// Drops repeated and collinear vertices from a closed orthogonal walk.
pub(crate) fn simplify<T: Scalar>(mut pts: Vec<Point<T>>) -> Vec<Point<T>> {
    loop {
        let n = pts.len();
        if n < 3 {
            return pts;
        }
        let mut removed = false;
        for i in 0..n {
            let p = pts[(i + n - 1) % n];
            let q = pts[i];
            let r = pts[(i + 1) % n];
            let collinear = (p.x == q.x && q.x == r.x) || (p.y == q.y && q.y == r.y) || p == q;
            if collinear {
                pts.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            return pts;
        }
    }
}

impl<T: Scalar> PartialOrd for OrthoPolygon<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.vertices.cmp(&other.vertices))
    }
}
