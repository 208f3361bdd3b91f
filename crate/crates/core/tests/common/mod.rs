//! Independent oracles shared by the integration tests. They work on plain
//! integer tuples and share no code with the library's geometry.

#![allow(dead_code)]

use num_rational::Ratio;
use rand::Rng;
use slidepursuit::boundary::Arc;
use slidepursuit::engine::Guard;
use slidepursuit::io::fixtures::{corpus, fixtures};
use slidepursuit::io::gen::gen_guard_cover;
use slidepursuit::io::instance::InstanceFile;
use slidepursuit::kernel::{Axis, Location, Side, SubPolygonKind};
use slidepursuit::visibility::{coverage_complete, covers_point, visibility_region, Coverage};
use slidepursuit::{Point, Polygon, Region};

pub type P = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Loc {
    In,
    On,
    Out,
}

pub fn pts(poly: &Polygon) -> Vec<P> {
    poly.vertices().iter().map(|v| (v.x, v.y)).collect()
}

pub fn scale(ps: &[P], k: i64) -> Vec<P> {
    ps.iter().map(|&(x, y)| (x * k, y * k)).collect()
}

/// Twice the signed area by the shoelace formula.
pub fn shoelace2(ps: &[P]) -> i128 {
    let n = ps.len();
    (0..n)
        .map(|i| {
            let (a, b) = (ps[i], ps[(i + 1) % n]);
            a.0 as i128 * b.1 as i128 - b.0 as i128 * a.1 as i128
        })
        .sum()
}

fn on_edge(a: P, b: P, p: P) -> bool {
    p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

/// Ray cast upward (+y), counting crossings of horizontal edges over the
/// half-open x span `[min, max)`.
pub fn locate(ps: &[P], p: P) -> Loc {
    let n = ps.len();
    let mut crossings = 0;
    for i in 0..n {
        let (a, b) = (ps[i], ps[(i + 1) % n]);
        if on_edge(a, b, p) {
            return Loc::On;
        }
        if a.1 == b.1 && a.1 > p.1 && a.0.min(b.0) <= p.0 && p.0 < a.0.max(b.0) {
            crossings += 1;
        }
    }
    if crossings % 2 == 1 {
        Loc::In
    } else {
        Loc::Out
    }
}

/// Walks from `p` in unit steps along `dir` while the next point and the
/// midpoint before it stay in the closed polygon; returns the last point.
/// Uses the polygon doubled so midpoints are lattice points.
pub fn march(ps: &[P], p: P, dir: P) -> P {
    let d2 = scale(ps, 2);
    let mut cur = p;
    loop {
        let next = (cur.0 + dir.0, cur.1 + dir.1);
        let mid = (2 * cur.0 + dir.0, 2 * cur.1 + dir.1);
        if locate(ps, next) == Loc::Out || locate(&d2, mid) == Loc::Out {
            return cur;
        }
        cur = next;
    }
}

/// Maximal chord through `p` along the axis of `dir` (a unit vector).
pub fn chord(ps: &[P], p: P, dir: P) -> (P, P) {
    let a = march(ps, p, (-dir.0, -dir.1));
    let b = march(ps, p, dir);
    (a, b)
}

/// First boundary point hit by a ray from vertex `v` along `dir`, at positive
/// distance. Steps in half units so that every hit is found.
pub fn ray_hit(ps: &[P], v: P, dir: P) -> P {
    let d2 = scale(ps, 2);
    let mut k = 1;
    loop {
        let q = (2 * v.0 + dir.0 * k, 2 * v.1 + dir.1 * k);
        match locate(&d2, q) {
            Loc::On => return (q.0 / 2, q.1 / 2),
            Loc::Out => panic!("ray left the polygon without touching its boundary"),
            Loc::In => k += 1,
        }
    }
}

/// Cells seen by an axis-parallel guard segment, on the polygon doubled: for
/// every odd-odd point `c` inside, whether some point of the segment sees `c`
/// along a perpendicular inside the polygon. Each perpendicular line through
/// the segment is marched once in both directions.
pub fn seen_cells(ps: &[P], seg: (P, P)) -> Vec<(P, bool)> {
    let d2 = scale(ps, 2);
    let (a, b) = ((seg.0 .0 * 2, seg.0 .1 * 2), (seg.1 .0 * 2, seg.1 .1 * 2));
    let vertical = a.0 == b.0;
    let (xmin, xmax) = (d2.iter().map(|p| p.0).min().unwrap(), d2.iter().map(|p| p.0).max().unwrap());
    let (ymin, ymax) = (d2.iter().map(|p| p.1).min().unwrap(), d2.iter().map(|p| p.1).max().unwrap());
    let mut out = Vec::new();
    let (outer, inner) = if vertical { ((ymin, ymax), (xmin, xmax)) } else { ((xmin, xmax), (ymin, ymax)) };
    for u in (outer.0 + 1..outer.1).step_by(2) {
        let pt = |v: i64| if vertical { (v, u) } else { (u, v) };
        let (lo, hi) = if vertical { (a.1.min(b.1), a.1.max(b.1)) } else { (a.0.min(b.0), a.0.max(b.0)) };
        let reach = (lo <= u && u <= hi).then(|| {
            let foot = if vertical { (a.0, u) } else { (u, a.1) };
            let dir = if vertical { (1, 0) } else { (0, 1) };
            let (l, r) = chord(&d2, foot, dir);
            if vertical {
                (l.0, r.0)
            } else {
                (l.1, r.1)
            }
        });
        for v in (inner.0 + 1..inner.1).step_by(2) {
            let c = pt(v);
            if locate(&d2, c) != Loc::In {
                continue;
            }
            out.push((c, reach.is_some_and(|(l, r)| l <= v && v <= r)));
        }
    }
    out
}

/// Fixtures with their own covers, fixtures with generated covers, then the
/// 50 generated staircases.
pub fn instances() -> Vec<(String, InstanceFile)> {
    let mut v = Vec::new();
    for (name, f) in fixtures() {
        let generated = gen_guard_cover(&f.polygon, 0);
        v.push((format!("{name}/generated"), InstanceFile { polygon: f.polygon.clone(), segments: generated }));
        v.push((name, f));
    }
    v.extend(corpus());
    v
}

/// Vertices met walking the boundary counterclockwise from boundary point
/// `a` to boundary point `b`, both included.
pub fn walk(ps: &[P], a: P, b: P) -> Vec<P> {
    let n = ps.len();
    let edge_of = |p: P| (0..n).find(|&i| on_edge(ps[i], ps[(i + 1) % n], p) && p != ps[(i + 1) % n]).unwrap();
    let (ea, eb) = (edge_of(a), edge_of(b));
    let dist = |p: P| (p.0 - ps[ea].0).abs() + (p.1 - ps[ea].1).abs();
    let mut out = vec![a];
    if !(ea == eb && dist(a) < dist(b)) {
        let mut e = ea;
        loop {
            e = (e + 1) % n;
            out.push(ps[e]);
            if e == eb {
                break;
            }
        }
    }
    if out.last() != Some(&b) {
        out.push(b);
    }
    out
}

/// Compares the kernel and visibility code against the oracles above on one
/// instance. Returns a description of every disagreement.
pub fn geometry_mismatches(poly: &Polygon, segs: &[Guard]) -> Vec<String> {
    let ps = pts(poly);
    let d2 = scale(&ps, 2);
    let mut bad = Vec::new();

    if poly.area2() as i128 != shoelace2(&ps) {
        bad.push(format!("area2 {} vs shoelace {}", poly.area2(), shoelace2(&ps)));
    }

    let bb = poly.bounding_box();
    for x in bb.min.x - 1..=bb.max.x + 1 {
        for y in bb.min.y - 1..=bb.max.y + 1 {
            let p = Point::new(x, y);
            let want = locate(&ps, (x, y));
            if loc(poly.locate(&p)) != want {
                bad.push(format!("locate ({x},{y})"));
            }
            for axis in [Axis::Horizontal, Axis::Vertical] {
                let got = poly.maximal_chord(&p, axis).map(|s| ((s.a.x, s.a.y), (s.b.x, s.b.y)));
                let dir = if axis == Axis::Horizontal { (1, 0) } else { (0, 1) };
                let want = (want != Loc::Out).then(|| chord(&ps, (x, y), dir));
                if got != want {
                    bad.push(format!("maximal_chord ({x},{y}) {axis:?}: {got:?} vs {want:?}"));
                }
            }
        }
    }
    for x in 2 * bb.min.x - 1..=2 * bb.max.x + 1 {
        for y in 2 * bb.min.y - 1..=2 * bb.max.y + 1 {
            if loc(poly.locate_doubled(x, y)) != locate(&d2, (x, y)) {
                bad.push(format!("locate_doubled ({x},{y})"));
            }
        }
    }

    let n = ps.len();
    for j in poly.reflex_vertices() {
        let (prev, v, next) = (ps[(j + n - 1) % n], ps[j], ps[(j + 1) % n]);
        let unit = |a: P, b: P| ((b.0 - a.0).signum(), (b.1 - a.1).signum());
        for (side, dir) in [(Side::Prev, unit(prev, v)), (Side::Next, unit(next, v))] {
            let got = poly.window(j, side).map(|w| (w.hit_point.x, w.hit_point.y));
            let want = ray_hit(&ps, v, dir);
            if got.as_ref().ok() != Some(&want) {
                bad.push(format!("window {j} {side:?}: {got:?} vs {want:?}"));
            }
        }
    }

    let reflex: Vec<usize> = (0..n)
        .filter(|&i| {
            let (a, b, c) = (ps[(i + n - 1) % n], ps[i], ps[(i + 1) % n]);
            (b.0 - a.0) * (c.1 - b.1) - (b.1 - a.1) * (c.0 - b.0) < 0
        })
        .collect();
    if poly.reflex_vertices() != reflex || reflex.len() != (n - 4) / 2 {
        bad.push(format!("reflex vertices {:?} vs {reflex:?}", poly.reflex_vertices()));
    }
    for &j in &reflex {
        for which in SubPolygonKind::ALL {
            let Ok(sp) = poly.subpolygon(j, which) else { continue };
            let from = poly.lattice_point(&sp.arc.from).unwrap();
            let to = poly.lattice_point(&sp.arc.to).unwrap();
            let (from, to) = ((from.x, from.y), (to.x, to.y));
            let here = shoelace2(&walk(&ps, from, to));
            let there = shoelace2(&walk(&ps, to, from));
            if here + there != shoelace2(&ps) || here <= 0 || there <= 0 {
                bad.push(format!("subpolygon {j} {which:?}: areas {here} + {there}"));
            }
            let lib = poly.sub_polygon(&Point::new(from.0, from.1), &Point::new(to.0, to.1)).map(|q| q.area2() as i128);
            if lib.as_ref().ok() != Some(&here) {
                bad.push(format!("sub_polygon {j} {which:?}: {lib:?} vs {here}"));
            }
        }
    }
    let cells = poly.window_partition().cells;
    let cell_sum: i128 = cells.iter().map(|c| 2 * c.area() as i128).sum();
    let disjoint = (0..cells.len()).all(|i| (i + 1..cells.len()).all(|k| !cells[i].interiors_overlap(&cells[k])));
    if cell_sum != shoelace2(&ps) || !disjoint {
        bad.push(format!("window partition: area {cell_sum}, disjoint {disjoint}"));
    }

    let p2 = poly.scaled(2);
    for (k, s) in segs.iter().enumerate() {
        let s2 = s.scaled(2);
        let region = match visibility_region(&p2, &s2) {
            Ok(r) => r,
            Err(e) => {
                bad.push(format!("visibility_region segment {k}: {e}"));
                continue;
            }
        };
        let seg = ((s.segment().a.x, s.segment().a.y), (s.segment().b.x, s.segment().b.y));
        for (c, seen) in seen_cells(&ps, seg) {
            let q = Point::new(c.0, c.1);
            if region.contains(&q) != seen || covers_point(&p2, &s2, &q) != seen {
                bad.push(format!("visibility segment {k} at doubled ({},{}) oracle={seen}", c.0, c.1));
            }
        }
    }

    let oracle_complete = {
        let seen: Vec<Vec<(P, bool)>> = segs
            .iter()
            .map(|s| seen_cells(&ps, ((s.segment().a.x, s.segment().a.y), (s.segment().b.x, s.segment().b.y))))
            .collect();
        seen.first().is_some_and(|first| (0..first.len()).all(|i| seen.iter().any(|v| v[i].1)))
    };
    if matches!(coverage_complete(poly, segs), Coverage::Complete) != oracle_complete {
        bad.push(format!("coverage_complete disagrees (oracle complete={oracle_complete})"));
    }
    bad
}

fn loc(l: Location) -> Loc {
    match l {
        Location::Inside => Loc::In,
        Location::Boundary => Loc::On,
        Location::Outside => Loc::Out,
    }
}

/// Dense-sampling model of a boundary region: membership of the parameters
/// `(2k+1)/8`, four samples per unit of perimeter. Exact for regions whose
/// endpoints are multiples of 1/4.
pub type Samples = Vec<bool>;

pub const SAMPLES_PER_UNIT: i64 = 4;

fn sample_param(k: usize) -> Ratio<i64> {
    Ratio::new(2 * k as i64 + 1, 2 * SAMPLES_PER_UNIT)
}

/// Region made of counterclockwise arcs with endpoints at half-unit
/// parameters `a/2 .. b/2` (`a == b` is empty), or the full boundary.
pub fn region_from(poly: &Polygon, arcs: &[(i64, i64)], full: bool) -> (Region, Samples) {
    let per = poly.perimeter();
    let n = (SAMPLES_PER_UNIT * per) as usize;
    let mut region = Region::empty(poly);
    let mut bits = vec![full; n];
    if full {
        region = Arc::full(poly).region();
    }
    for &(a, b) in arcs {
        let (a, b) = (a.rem_euclid(2 * per), b.rem_euclid(2 * per));
        let (pa, pb) = (Ratio::new(a, 2), Ratio::new(b, 2));
        let arc = Arc::new(poly, poly.point_at_param(&pa), poly.point_at_param(&pb));
        region = region.union(&arc.region()).expect("same polygon");
        for (k, bit) in bits.iter_mut().enumerate() {
            let t = sample_param(k);
            let inside = if pa < pb {
                pa <= t && t < pb
            } else if pa > pb {
                t >= pa || t < pb
            } else {
                false
            };
            *bit |= inside;
        }
    }
    (region, bits)
}

#[derive(Debug, Clone, Copy)]
pub enum Op {
    Union,
    Subtract,
    Intersect,
    Complement,
}

pub const OPS: [Op; 4] = [Op::Union, Op::Subtract, Op::Intersect, Op::Complement];

/// Applies `op` to both the library regions and their samples, then checks
/// membership, measure, emptiness, fullness, subset and arc decomposition
/// against the samples.
pub fn check_op(poly: &Polygon, op: Op, a: &(Region, Samples), b: &(Region, Samples)) -> Result<(), String> {
    let (r, s): (Region, Samples) = match op {
        Op::Union => (a.0.union(&b.0).unwrap(), a.1.iter().zip(&b.1).map(|(x, y)| *x || *y).collect()),
        Op::Subtract => (a.0.subtract(&b.0).unwrap(), a.1.iter().zip(&b.1).map(|(x, y)| *x && !*y).collect()),
        Op::Intersect => (a.0.intersect(&b.0).unwrap(), a.1.iter().zip(&b.1).map(|(x, y)| *x && *y).collect()),
        Op::Complement => (a.0.complement(), a.1.iter().map(|x| !x).collect()),
    };
    check_region(poly, &r, &s).map_err(|e| format!("{op:?} of {:?} and {:?}: {e}", a.0, b.0))?;
    let subset = a.1.iter().zip(&b.1).all(|(x, y)| !*x || *y);
    if a.0.is_subset(&b.0).unwrap() != subset {
        return Err(format!("is_subset({:?}, {:?}) should be {subset}", a.0, b.0));
    }
    Ok(())
}

pub fn check_region(poly: &Polygon, r: &Region, s: &Samples) -> Result<(), String> {
    for (k, &bit) in s.iter().enumerate() {
        let t = sample_param(k);
        if r.contains_param(&t) != bit {
            return Err(format!("membership at {t}: expected {bit}"));
        }
        if r.contains(&poly.point_at_param(&t)) != bit {
            return Err(format!("point membership at {t}: expected {bit}"));
        }
    }
    let count = s.iter().filter(|&&b| b).count() as i64;
    if r.measure() != Ratio::new(count, SAMPLES_PER_UNIT) {
        return Err(format!("measure {} vs {count}/{SAMPLES_PER_UNIT}", r.measure()));
    }
    if r.is_empty() != (count == 0) || r.is_full() != (count as usize == s.len()) {
        return Err("emptiness or fullness".into());
    }
    let mut rebuilt = Region::empty(poly);
    for arc in r.arcs() {
        rebuilt = rebuilt.union(&arc.region()).unwrap();
    }
    if rebuilt != *r {
        return Err(format!("arcs do not rebuild the region: {rebuilt:?}"));
    }
    Ok(())
}

/// Random region with up to three arcs at half-unit endpoints.
pub fn random_region(poly: &Polygon, rng: &mut impl Rng) -> (Region, Samples) {
    let per = poly.perimeter();
    let full = rng.gen_ratio(1, 12);
    let arcs: Vec<(i64, i64)> =
        (0..rng.gen_range(0..=3)).map(|_| (rng.gen_range(0..2 * per), rng.gen_range(0..2 * per))).collect();
    region_from(poly, &arcs, full)
}
