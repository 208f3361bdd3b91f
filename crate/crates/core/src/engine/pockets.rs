//! Sub-polygons a robot must see cleared before it leaves its current chord.
//!
//! The beam chord through the robot splits into open pieces wherever it
//! touches the boundary of the robot's region. Each piece cuts the region in
//! two. A piece the robot's segment crosses is its own; every other piece
//! cuts off the side away from the segment, and at an endpoint the own piece
//! also cuts off the side the segment does not continue into. Those sides
//! are the pockets. Only outermost pockets are reported.

use crate::error::GeometryError;
use crate::kernel::{Location, Side, SubPolygonKind};
use crate::visibility::shared_boundary;
use crate::{Coord, Point, Polygon, Region, Segment};

use super::{Assignment, EngineError, Guard, Phase};

#[derive(Debug, Clone)]
pub struct Pocket {
    /// Open chord piece separating the pocket from the robot.
    pub portion: Segment,
    pub polygon: Polygon,
    /// Boundary of the whole polygon that the pocket contains.
    pub region: Region,
    /// Flag slot of the window sub-polygon this pocket coincides with.
    pub flag: Option<(usize, SubPolygonKind)>,
    /// Whether the robot stands on this piece.
    pub own: bool,
}

fn inside_doubled(poly: &Polygon, p: Point) -> bool {
    poly.locate_doubled(p.x, p.y) != Location::Outside
}

/// Reference points, in doubled coordinates, half a unit along the segment
/// from the robot in the directions it has to keep contaminant-free.
fn references(a: &Assignment, at: Point) -> Vec<Point> {
    let ax = a.clip.orientation();
    let dir: Coord = if a.end > a.start { 1 } else { -1 };
    let p2 = at.scaled(2);
    let step = |d: Coord| Point::from_axis(ax, p2.along(ax) + d, p2.across(ax));
    match a.phase {
        Phase::Start => vec![step(dir)],
        Phase::End => vec![step(-dir)],
        _ => vec![step(dir), step(-dir)],
    }
}

/// Pockets required at the robot's current position, ordered along the chord.
pub fn required(poly: &Polygon, a: &Assignment, at: Point) -> Result<Vec<Pocket>, GeometryError> {
    let q = &a.region;
    let Some(chord) = q.maximal_chord(&at, a.clip.beam_axis()) else {
        return Ok(vec![]);
    };
    let refs = references(a, at);
    let mut sides = Vec::new();
    for portion in q.chord_portions(&chord) {
        let (s1, s2) = q.split(&portion)?;
        let in1 = refs.iter().filter(|&&r| inside_doubled(&s1, r)).count();
        let side = if in1 == refs.len() {
            s2
        } else if in1 == 0 {
            s1
        } else {
            continue;
        };
        sides.push((portion, side));
    }
    let outer: Vec<bool> = (0..sides.len())
        .map(|j| {
            let mid = Point::new(sides[j].0.a.x + sides[j].0.b.x, sides[j].0.a.y + sides[j].0.b.y);
            !(0..sides.len()).any(|i| i != j && inside_doubled(&sides[i].1, mid))
        })
        .collect();
    Ok(sides
        .into_iter()
        .zip(outer)
        .filter(|(_, keep)| *keep)
        .map(|((portion, polygon), _)| {
            let region = shared_boundary(poly, &polygon);
            let flag = window_flag(poly, &portion, &region);
            let own = portion.contains(&at);
            Pocket { portion, polygon, region, flag, own }
        })
        .collect())
}

/// The flag slot of the reflex-vertex sub-polygon whose window is `portion`
/// and whose boundary arc is `region`.
fn window_flag(poly: &Polygon, portion: &Segment, region: &Region) -> Option<(usize, SubPolygonKind)> {
    for end in [portion.a, portion.b] {
        let Some(v) = poly.vertex_at(&end).filter(|&v| poly.is_reflex(v)) else { continue };
        for side in [Side::Prev, Side::Next] {
            match poly.window(v, side) {
                Ok(w) if w.segment == *portion => {}
                _ => continue,
            }
            for which in SubPolygonKind::ALL.into_iter().filter(|k| k.side() == side) {
                if poly.subpolygon(v, which).map(|s| s.arc.region() == *region).unwrap_or(false) {
                    return Some((v, which));
                }
            }
        }
    }
    None
}

/// Trace label naming the decision case that produced a pocket.
pub fn case_label(poly: &Polygon, a: &Assignment, at: Point, pocket: &Pocket) -> String {
    if !matches!(a.phase, Phase::Start | Phase::End) {
        return "2b.pair".into();
    }
    match poly.locate(&at) {
        Location::Boundary => {
            let e = poly.boundary_point(&at).map(|b| b.edge).unwrap_or(0);
            let touches = |p: Point| pocket.portion.a == p || pocket.portion.b == p;
            if touches(poly.vertex(e)) {
                "1a.vk".into()
            } else if touches(poly.vertex(poly.next_index(e))) {
                "1a.vk1".into()
            } else {
                "1a.pair".into()
            }
        }
        _ if pocket.own && pocket.flag.is_some() => "1b.single".into(),
        _ if pocket.own => "1c.open".into(),
        _ => "1b.pair".into(),
    }
}

/// Counterclockwise start of the first arc of a region, as a lattice point.
pub fn anchor(poly: &Polygon, region: &Region) -> Result<Point, EngineError> {
    region
        .arcs()
        .first()
        .and_then(|arc| poly.lattice_point(&arc.from))
        .ok_or_else(|| EngineError::UnsatisfiedCondition("signal target is empty".into()))
}

/// The part of a guard segment inside the closed region, if it has positive
/// length. The first such piece along the segment is used.
pub fn clip_to(seg: &Guard, region: &Polygon) -> Option<Guard> {
    let ax = seg.orientation();
    let (lo, hi) = seg.range();
    region
        .cross_section(ax, seg.level())
        .into_iter()
        .map(|(a, b)| (a.max(lo), b.min(hi)))
        .find(|(a, b)| a < b)
        .and_then(|(a, b)| Guard::new(seg.point_at(a), seg.point_at(b)).ok())
}

/// Starting parameter for a responder: the clipped endpoint on the line of
/// the chord piece it enters through, or its low endpoint otherwise.
pub fn entry_param(clip: &Guard, portion: &Segment) -> Coord {
    let (lo, hi) = clip.range();
    let beam = clip.beam_axis();
    let line = portion.a.across(beam);
    if clip.orientation() != portion.axis() && hi == line {
        hi
    } else {
        lo
    }
}
