//! Sets of counterclockwise boundary arcs.
//!
//! A region is stored as sorted, disjoint, non-abutting half-open spans
//! `[start, end)` of the perimeter parameter in `[0, perimeter)`. An arc that
//! crosses `v_1` is stored as two spans and reassembled by [`BoundaryRegion::arcs`].

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc as Shared;

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::GeometryError;
use crate::kernel::{BoundaryPoint, OrthoPolygon};
use crate::scalar::Scalar;

/// Perimeter parameterization shared by all regions of one polygon.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Frame<T: Scalar> {
    key: u64,
    starts: Vec<T>,
    perimeter: T,
}

impl<T: Scalar> Frame<T> {
    fn of(poly: &OrthoPolygon<T>) -> Shared<Frame<T>> {
        let mut h = DefaultHasher::new();
        poly.vertices().hash(&mut h);
        Shared::new(Frame { key: h.finish(), starts: poly.edge_starts(), perimeter: poly.perimeter() })
    }

    fn param(&self, bp: &BoundaryPoint<T>) -> Ratio<T> {
        Ratio::from_integer(self.starts[bp.edge]) + bp.offset
    }

    fn point(&self, param: &Ratio<T>) -> BoundaryPoint<T> {
        let edge = (0..self.starts.len()).rev().find(|&i| Ratio::from_integer(self.starts[i]) <= *param).unwrap_or(0);
        BoundaryPoint { edge, offset: param - Ratio::from_integer(self.starts[edge]) }
    }

    fn len(&self) -> Ratio<T> {
        Ratio::from_integer(self.perimeter)
    }
}

/// Counterclockwise boundary arc from `from` to `to`. `from == to` is the
/// empty arc; the whole boundary is a separate value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc<T: Scalar> {
    pub from: BoundaryPoint<T>,
    pub to: BoundaryPoint<T>,
    pub full: bool,
    frame: Shared<Frame<T>>,
}

impl<T: Scalar> Arc<T> {
    pub fn new(poly: &OrthoPolygon<T>, from: BoundaryPoint<T>, to: BoundaryPoint<T>) -> Self {
        Arc { from, to, full: false, frame: Frame::of(poly) }
    }

    pub fn full(poly: &OrthoPolygon<T>) -> Self {
        let origin = BoundaryPoint { edge: 0, offset: Ratio::zero() };
        Arc { from: origin.clone(), to: origin, full: true, frame: Frame::of(poly) }
    }

    pub fn is_empty(&self) -> bool {
        !self.full && self.from == self.to
    }

    pub fn region(&self) -> BoundaryRegion<T> {
        let f = &self.frame;
        let mut r = BoundaryRegion { frame: f.clone(), spans: Vec::new() };
        if self.full {
            r.spans.push((Ratio::zero(), f.len()));
            return r;
        }
        let (a, b) = (f.param(&self.from), f.param(&self.to));
        if a < b {
            r.spans.push((a, b));
        } else if a > b {
            r.spans.push((a, f.len()));
            r.spans.push((Ratio::zero(), b));
        }
        r.canonicalize();
        r
    }
}

/// Finite union of counterclockwise boundary arcs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoundaryRegion<T: Scalar> {
    frame: Shared<Frame<T>>,
    spans: Vec<(Ratio<T>, Ratio<T>)>,
}

impl<T: Scalar> fmt::Debug for BoundaryRegion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.spans.iter().map(|(a, b)| format!("[{a}, {b})"))).finish()
    }
}

impl<T: Scalar> BoundaryRegion<T> {
    pub fn empty(poly: &OrthoPolygon<T>) -> Self {
        BoundaryRegion { frame: Frame::of(poly), spans: Vec::new() }
    }

    pub fn full(poly: &OrthoPolygon<T>) -> Self {
        Arc::full(poly).region()
    }

    /// Region from raw perimeter spans; spans may wrap (`start > end`).
    pub fn from_params(poly: &OrthoPolygon<T>, spans: &[(Ratio<T>, Ratio<T>)]) -> Self {
        let frame = Frame::of(poly);
        let len = frame.len();
        let mut r = BoundaryRegion { frame, spans: Vec::new() };
        for (a, b) in spans {
            if a < b {
                r.spans.push((*a, *b));
            } else if a > b {
                r.spans.push((*a, len));
                r.spans.push((Ratio::zero(), *b));
            }
        }
        r.canonicalize();
        r
    }

    fn check(&self, other: &Self) -> Result<(), GeometryError> {
        if self.frame.key != other.frame.key {
            return Err(GeometryError::PointsFromDifferentPolygons);
        }
        Ok(())
    }

    fn canonicalize(&mut self) {
        self.spans.retain(|(a, b)| a < b);
        self.spans.sort();
        let mut out: Vec<(Ratio<T>, Ratio<T>)> = Vec::with_capacity(self.spans.len());
        for (a, b) in self.spans.drain(..) {
            match out.last_mut() {
                Some(last) if a <= last.1 => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => out.push((a, b)),
            }
        }
        self.spans = out;
    }

    pub fn spans(&self) -> &[(Ratio<T>, Ratio<T>)] {
        &self.spans
    }

    pub fn perimeter(&self) -> T {
        self.frame.perimeter
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.spans.len() == 1 && self.spans[0].0.is_zero() && self.spans[0].1 == self.frame.len()
    }

    /// Total boundary length covered.
    pub fn measure(&self) -> Ratio<T> {
        self.spans.iter().fold(Ratio::zero(), |acc, (a, b)| acc + (b - a))
    }

    pub fn union(&self, other: &Self) -> Result<Self, GeometryError> {
        self.check(other)?;
        let mut r = self.clone();
        r.spans.extend(other.spans.iter().cloned());
        r.canonicalize();
        Ok(r)
    }

    pub fn subtract(&self, other: &Self) -> Result<Self, GeometryError> {
        self.check(other)?;
        let mut out = Vec::new();
        for (a, b) in &self.spans {
            let mut pieces = vec![(*a, *b)];
            for (c, d) in &other.spans {
                let mut next = Vec::new();
                for (x, y) in pieces {
                    if *d <= x || *c >= y {
                        next.push((x, y));
                        continue;
                    }
                    if x < *c {
                        next.push((x, *c));
                    }
                    if *d < y {
                        next.push((*d, y));
                    }
                }
                pieces = next;
            }
            out.extend(pieces);
        }
        let mut r = BoundaryRegion { frame: self.frame.clone(), spans: out };
        r.canonicalize();
        Ok(r)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, GeometryError> {
        let outside = BoundaryRegion::full_like(self).subtract(other)?;
        self.subtract(&outside)
    }

    fn full_like(r: &Self) -> Self {
        BoundaryRegion { frame: r.frame.clone(), spans: vec![(Ratio::zero(), r.frame.len())] }
    }

    pub fn complement(&self) -> Self {
        BoundaryRegion::full_like(self).subtract(self).expect("same frame")
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool, GeometryError> {
        Ok(self.subtract(other)?.is_empty())
    }

    pub fn contains(&self, p: &BoundaryPoint<T>) -> bool {
        self.contains_param(&self.frame.param(p))
    }

    pub fn contains_param(&self, t: &Ratio<T>) -> bool {
        self.spans.iter().any(|(a, b)| a <= t && t < b)
    }

    /// Maximal arcs, with a span ending at the perimeter joined to one
    /// starting at zero.
    pub fn arcs(&self) -> Vec<Arc<T>> {
        if self.is_full() {
            let origin = BoundaryPoint { edge: 0, offset: Ratio::zero() };
            return vec![Arc { from: origin.clone(), to: origin, full: true, frame: self.frame.clone() }];
        }
        let mut spans = self.spans.clone();
        let len = self.frame.len();
        if spans.len() >= 2 && spans[0].0.is_zero() && spans[spans.len() - 1].1 == len {
            let first = spans.remove(0);
            spans.last_mut().unwrap().1 = first.1;
        }
        spans
            .iter()
            .map(|(a, b)| Arc {
                from: self.frame.point(a),
                to: self.frame.point(&if *b == len { Ratio::zero() } else { *b }),
                full: false,
                frame: self.frame.clone(),
            })
            .collect()
    }
}
