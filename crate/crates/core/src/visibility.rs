//! Sliding visibility: what a robot on an axis-parallel guard segment can see
//! along perpendicular chords.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::boundary::BoundaryRegion;
use crate::error::GeometryError;
use crate::kernel::{Axis, Location, OrthoPolygon, Point, Rect, Segment};
use crate::scalar::Scalar;

/// An axis-parallel segment of positive length along which one robot slides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GuardSegment<T> {
    segment: Segment<T>,
}

impl<T: Scalar> GuardSegment<T> {
    pub fn new(p: Point<T>, q: Point<T>) -> Result<Self, GeometryError> {
        let segment = Segment::new(p, q).ok_or(GeometryError::DegenerateSegment)?;
        if segment.is_empty() {
            return Err(GeometryError::DegenerateSegment);
        }
        Ok(GuardSegment { segment })
    }

    /// Checks containment in the closed polygon.
    pub fn in_polygon(self, poly: &OrthoPolygon<T>) -> Result<Self, GeometryError> {
        if poly.contains_segment(&self.segment) {
            Ok(self)
        } else {
            Err(GeometryError::SegmentOutsidePolygon)
        }
    }

    pub fn segment(&self) -> Segment<T> {
        self.segment
    }

    pub fn orientation(&self) -> Axis {
        self.segment.axis()
    }

    /// Orientation of the robot's chords.
    pub fn beam_axis(&self) -> Axis {
        self.orientation().perpendicular()
    }

    /// Lower and upper parameter along the segment.
    pub fn range(&self) -> (T, T) {
        let ax = self.orientation();
        (self.segment.a.along(ax), self.segment.b.along(ax))
    }

    /// Fixed coordinate of the segment's supporting line.
    pub fn level(&self) -> T {
        self.segment.a.across(self.orientation())
    }

    pub fn point_at(&self, t: T) -> Point<T> {
        Point::from_axis(self.orientation(), t, self.level())
    }

    pub fn param_of(&self, p: &Point<T>) -> T {
        p.along(self.orientation())
    }

    pub fn contains(&self, p: &Point<T>) -> bool {
        self.segment.contains(p)
    }

    /// The sub-segment between parameters `lo <= hi`.
    pub fn sub(&self, lo: T, hi: T) -> Segment<T> {
        Segment::new(self.point_at(lo), self.point_at(hi)).unwrap()
    }

    pub fn scaled(&self, k: T) -> Self {
        GuardSegment { segment: Segment::new(self.segment.a.scaled(k), self.segment.b.scaled(k)).unwrap() }
    }
}

/// Union of closed axis-aligned rectangles with disjoint interiors. Zero-width
/// rectangles record chords at vertex levels, which can reach further than the
/// neighbouring slabs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisibilityRegion<T> {
    pub rects: Vec<Rect<T>>,
}

impl<T: Scalar> VisibilityRegion<T> {
    pub fn contains(&self, p: &Point<T>) -> bool {
        self.rects.iter().any(|r| r.contains(p))
    }

    pub fn area(&self) -> T {
        self.rects.iter().fold(T::zero(), |a, r| a + r.area())
    }
}

/// A robot position together with its current field of view.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Beam<T> {
    pub position: Point<T>,
    pub chord: Segment<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EventKind {
    Endpoint,
    ReflexVertex(usize),
    WaitingRobot(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CriticalPosition<T> {
    pub at: T,
    pub kind: EventKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coverage<T: Scalar> {
    Complete,
    /// An interior point seen by no segment.
    Witness(Point<Ratio<T>>),
}

/// Chord intervals on an open slab `lo < across < hi` that contains no vertex level.
fn slab_section<T: Scalar>(poly: &OrthoPolygon<T>, axis: Axis, lo: T, hi: T) -> Vec<(T, T)> {
    let mut xs: Vec<T> = (0..poly.len())
        .map(|i| poly.edge(i))
        .filter(|e| e.axis() != axis && e.a.across(axis) <= lo && hi <= e.b.across(axis))
        .map(|e| e.a.along(axis))
        .collect();
    xs.sort();
    xs.chunks(2).filter(|c| c.len() == 2).map(|c| (c[0], c[1])).collect()
}

fn rect_from_axis<T: Scalar>(axis: Axis, along: (T, T), across: (T, T)) -> Rect<T> {
    let p = Point::from_axis(axis, along.0, across.0);
    let q = Point::from_axis(axis, along.1, across.1);
    Rect::new(Point::new(p.x.min(q.x), p.y.min(q.y)), Point::new(p.x.max(q.x), p.y.max(q.y)))
}

/// Exact sliding visibility polygon of `s`.
pub fn visibility_region<T: Scalar>(
    poly: &OrthoPolygon<T>,
    s: &GuardSegment<T>,
) -> Result<VisibilityRegion<T>, GeometryError> {
    s.in_polygon(poly)?;
    Ok(visibility_between(poly, s, s.range().0, s.range().1))
}

/// Region seen while the robot occupies parameters `lo..=hi` of `s`.
pub fn visibility_between<T: Scalar>(poly: &OrthoPolygon<T>, s: &GuardSegment<T>, lo: T, hi: T) -> VisibilityRegion<T> {
    let beam = s.beam_axis();
    let c = s.level();
    let mut levels: BTreeSet<T> =
        poly.vertices().iter().map(|p| p.across(beam)).filter(|&u| lo <= u && u <= hi).collect();
    levels.insert(lo);
    levels.insert(hi);
    let levels: Vec<T> = levels.into_iter().collect();
    let mut rects = Vec::new();
    for &u in &levels {
        if let Some(ch) = poly.maximal_chord(&Point::from_axis(beam, c, u), beam) {
            rects.push(rect_from_axis(beam, (ch.a.along(beam), ch.b.along(beam)), (u, u)));
        }
    }
    for w in levels.windows(2) {
        if let Some(&(a, b)) = slab_section(poly, beam, w[0], w[1]).iter().find(|&&(a, b)| a <= c && c <= b) {
            rects.push(rect_from_axis(beam, (a, b), (w[0], w[1])));
        }
    }
    VisibilityRegion { rects }
}

/// Whether `p` is seen from some point of `s` along a perpendicular inside the polygon.
pub fn covers_point<T: Scalar>(poly: &OrthoPolygon<T>, s: &GuardSegment<T>, p: &Point<T>) -> bool {
    let (lo, hi) = s.range();
    let u = p.along(s.orientation());
    if u < lo || u > hi {
        return false;
    }
    let beam = s.beam_axis();
    match poly.maximal_chord(p, beam) {
        Some(ch) => ch.contains(&s.point_at(u)),
        None => false,
    }
}

/// Lattice lines that refine the polygon so that every cell is either fully
/// seen or fully unseen by each segment.
fn refined_grid<T: Scalar>(poly: &OrthoPolygon<T>, segs: &[GuardSegment<T>]) -> (Vec<T>, Vec<T>) {
    let (xs, ys) = poly.grid_lines();
    let mut xs: BTreeSet<T> = xs.into_iter().collect();
    let mut ys: BTreeSet<T> = ys.into_iter().collect();
    for s in segs {
        let seg = s.segment();
        xs.extend([seg.a.x, seg.b.x]);
        ys.extend([seg.a.y, seg.b.y]);
    }
    (xs.into_iter().collect(), ys.into_iter().collect())
}

/// Exact coverage test over the grid refined by polygon and segment lines.
pub fn coverage_complete<T: Scalar>(poly: &OrthoPolygon<T>, segs: &[GuardSegment<T>]) -> Coverage<T> {
    let (xs, ys) = refined_grid(poly, segs);
    let two = T::two();
    let doubled = poly.scaled(two);
    let dsegs: Vec<GuardSegment<T>> = segs.iter().map(|s| s.scaled(two)).collect();
    for i in 0..xs.len() - 1 {
        for j in 0..ys.len() - 1 {
            let centre = Point::new(xs[i] + xs[i + 1], ys[j] + ys[j + 1]);
            if doubled.locate(&centre) != Location::Inside {
                continue;
            }
            if !dsegs.iter().any(|s| covers_point(&doubled, s, &centre)) {
                return Coverage::Witness(Point { x: Ratio::new(centre.x, two), y: Ratio::new(centre.y, two) });
            }
        }
    }
    Coverage::Complete
}

pub fn beam_at<T: Scalar>(poly: &OrthoPolygon<T>, s: &GuardSegment<T>, t: T) -> Option<Beam<T>> {
    let position = s.point_at(t);
    poly.maximal_chord(&position, s.beam_axis()).map(|chord| Beam { position, chord })
}

/// Positions on `s` where the beam meets a reflex vertex or one of the given
/// robot points, plus both endpoints, sorted along `s`.
pub fn critical_positions<T: Scalar>(
    poly: &OrthoPolygon<T>,
    s: &GuardSegment<T>,
    others: &[(usize, Point<T>)],
) -> Vec<CriticalPosition<T>> {
    let (lo, hi) = s.range();
    let beam = s.beam_axis();
    let mut out = vec![
        CriticalPosition { at: lo, kind: EventKind::Endpoint },
        CriticalPosition { at: hi, kind: EventKind::Endpoint },
    ];
    let mut seen = |u: T, p: &Point<T>, kind: EventKind| {
        if u < lo || u > hi {
            return;
        }
        if let Some(b) = beam_at(poly, s, u) {
            if b.chord.contains(p) {
                out.push(CriticalPosition { at: u, kind });
            }
        }
    };
    for v in poly.reflex_vertices() {
        let p = poly.vertex(v);
        seen(p.across(beam), &p, EventKind::ReflexVertex(v));
    }
    for (id, p) in others {
        seen(p.across(beam), p, EventKind::WaitingRobot(*id));
    }
    out.sort();
    out.dedup();
    out
}

/// Boundary of `target` lying in the closed region, as perimeter spans of `target`.
pub fn boundary_in_region<T: Scalar>(target: &OrthoPolygon<T>, region: &VisibilityRegion<T>) -> BoundaryRegion<T> {
    let mut spans = Vec::new();
    for i in 0..target.len() {
        let e = target.edge(i);
        let ax = e.axis();
        let level = e.a.across(ax);
        for r in &region.rects {
            if level < r.min.across(ax) || level > r.max.across(ax) {
                continue;
            }
            let lo = e.a.along(ax).max(r.min.along(ax));
            let hi = e.b.along(ax).min(r.max.along(ax));
            if lo >= hi {
                continue;
            }
            let part = Segment { a: Point::from_axis(ax, lo, level), b: Point::from_axis(ax, hi, level) };
            let (a, b) = target.edge_span(i, &part);
            spans.push((Ratio::from_integer(a), Ratio::from_integer(b)));
        }
    }
    BoundaryRegion::from_params(target, &spans)
}

/// Boundary of `parent` that is also boundary of `child`, a sub-polygon of it.
pub fn shared_boundary<T: Scalar>(parent: &OrthoPolygon<T>, child: &OrthoPolygon<T>) -> BoundaryRegion<T> {
    let mut spans = Vec::new();
    for j in 0..child.len() {
        let ce = child.edge(j);
        for i in 0..parent.len() {
            if parent.edge_axis(i) != ce.axis() {
                continue;
            }
            if let Some(o) = parent.edge(i).collinear_overlap(&ce) {
                if !o.is_empty() {
                    let (a, b) = parent.edge_span(i, &o);
                    spans.push((Ratio::from_integer(a), Ratio::from_integer(b)));
                }
            }
        }
    }
    BoundaryRegion::from_params(parent, &spans)
}
