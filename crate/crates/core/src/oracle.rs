//! Independent contamination verifier.
//!
//! Replays a trace on a unit-cell grid laid over the polygon scaled by
//! `scale` and tracks which cells an arbitrarily fast evader could occupy.
//! Robots advance in sub-steps of `1 / (2 * scale)` original units, so beams
//! alternate between running through cell interiors (covering the cells)
//! and along grid lines (blocking the edges they lie on). The evader moves
//! between cells sharing an edge; it cannot pass a covered cell or a blocked
//! edge. Beams are computed here by marching over the grid, not taken from
//! the engine. Only robots whose last status is moving, moving back or
//! waiting are on the field.

use std::collections::{BTreeSet, VecDeque};

use num_rational::Ratio;
use thiserror::Error;

use crate::engine::{Guard, RecordKind, Span, Status, Trace};
use crate::io::instance::instance_hash;
use crate::kernel::{Axis, Location};
use crate::{Coord, Point, Polygon};

/// Grids above this many cells are refused.
pub const MAX_CELLS: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("malformed trace at record {step}: {reason}")]
    MalformedTrace { step: usize, reason: String },
    #[error("trace was recorded for instance {found}, not {expected}")]
    InstanceMismatch { expected: String, found: String },
    #[error("grid of {0} cells is too large to replay")]
    GridTooLarge(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Cleared,
    /// Centres of some still contaminated cells and the total count.
    Contaminated {
        witnesses: Vec<Point2>,
        count: usize,
    },
    /// The first record after which a boundary piece some robot lists as
    /// cleared touches a contaminated cell.
    ProtocolViolation {
        step: usize,
        at: Point2,
    },
}

/// A point with rational coordinates in original units.
pub type Point2 = crate::kernel::Point<Ratio<Coord>>;

/// Unit cells of the scaled polygon over its bounding box.
#[derive(Debug, Clone)]
pub struct Grid {
    pub scale: Coord,
    origin: Point,
    pub width: usize,
    pub height: usize,
    inside: Vec<bool>,
    count: usize,
}

impl Grid {
    pub fn discretize(poly: &Polygon, scale: Coord) -> Result<Grid, OracleError> {
        let bb = poly.bounding_box();
        let w = (bb.max.x - bb.min.x) as u64 * scale as u64;
        let h = (bb.max.y - bb.min.y) as u64 * scale as u64;
        if w * h > MAX_CELLS {
            return Err(OracleError::GridTooLarge(w * h));
        }
        let (width, height) = (w as usize, h as usize);
        // Cell centres are odd points of the polygon scaled by 2 * scale.
        let fine = poly.scaled(2 * scale);
        let origin = bb.min;
        let o2 = origin.scaled(2 * scale);
        let mut inside = vec![false; width * height];
        for j in 0..height {
            for i in 0..width {
                let c = Point::new(o2.x + 2 * i as Coord + 1, o2.y + 2 * j as Coord + 1);
                inside[j * width + i] = fine.locate(&c) == Location::Inside;
            }
        }
        let count = inside.iter().filter(|&&b| b).count();
        Ok(Grid { scale, origin, width, height, inside, count })
    }

    pub fn cell_count(&self) -> usize {
        self.count
    }

    pub fn is_inside(&self, c: usize) -> bool {
        self.inside[c]
    }

    /// Cell at column `i`, row `j`, if it lies in the polygon.
    pub fn cell(&self, i: i64, j: i64) -> Option<usize> {
        if i < 0 || j < 0 || i >= self.width as i64 || j >= self.height as i64 {
            return None;
        }
        let c = j as usize * self.width + i as usize;
        self.inside[c].then_some(c)
    }

    fn coords(&self, c: usize) -> (i64, i64) {
        ((c % self.width) as i64, (c / self.width) as i64)
    }

    /// Inside neighbours sharing an edge.
    pub fn neighbours(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        let (i, j) = self.coords(c);
        [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)].into_iter().filter_map(move |(a, b)| self.cell(a, b))
    }

    /// Centre of a cell in original units.
    pub fn centre(&self, c: usize) -> Point2 {
        let (i, j) = self.coords(c);
        let d = 2 * self.scale;
        Point2 { x: Ratio::new(self.origin.x * d + 2 * i + 1, d), y: Ratio::new(self.origin.y * d + 2 * j + 1, d) }
    }

    /// A point in half-cell units relative to the grid origin.
    fn fine(&self, p: Point) -> (i64, i64) {
        let d = 2 * self.scale;
        ((p.x - self.origin.x) * d, (p.y - self.origin.y) * d)
    }

    /// Whether the closed strip of column `i` along the grid line `y = line`
    /// (in cell units) belongs to the closed polygon.
    fn line_open(&self, axis: Axis, k: i64, line: i64) -> bool {
        let at = |a: i64, b: i64| match axis {
            Axis::Horizontal => self.cell(a, b),
            Axis::Vertical => self.cell(b, a),
        };
        at(k, line - 1).is_some() || at(k, line).is_some()
    }

    /// Cells covered and edges blocked by a beam along `axis` through the
    /// point `(u, v)` given in half-cell units (`u` along the beam).
    fn beam(&self, axis: Axis, u: i64, v: i64, out: &mut Beam) {
        let at = |a: i64, b: i64| match axis {
            Axis::Horizontal => self.cell(a, b),
            Axis::Vertical => self.cell(b, a),
        };
        let starts: Vec<i64> = if u % 2 != 0 { vec![(u - 1) / 2] } else { vec![u / 2 - 1, u / 2] };
        if v % 2 != 0 {
            let row = (v - 1) / 2;
            let mut run = |k0: i64, dk: i64| {
                let mut k = k0;
                while let Some(c) = at(k, row) {
                    out.covered.push(c);
                    k += dk;
                }
            };
            run(starts[0], -1);
            run(*starts.last().unwrap(), 1);
        } else {
            let line = v / 2;
            let mut run = |k0: i64, dk: i64| {
                let mut k = k0;
                while self.line_open(axis, k, line) {
                    if let (Some(a), Some(b)) = (at(k, line - 1), at(k, line)) {
                        out.blocked.push((a.min(b), a.max(b)));
                    }
                    out.held.push(match axis {
                        Axis::Horizontal => (2 * k + 1, 2 * line),
                        Axis::Vertical => (2 * line, 2 * k + 1),
                    });
                    k += dk;
                }
            };
            run(starts[0], -1);
            run(*starts.last().unwrap(), 1);
        }
    }
}

#[derive(Debug, Default)]
struct Beam {
    covered: Vec<usize>,
    blocked: Vec<(usize, usize)>,
    /// Midpoints, in half-cell units, of the unit pieces of grid lines the
    /// beams run along.
    held: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContaminationState {
    pub contaminated: Vec<bool>,
    pub step: usize,
}

impl ContaminationState {
    /// Every cell of the polygon contaminated.
    pub fn initial(grid: &Grid) -> Self {
        ContaminationState { contaminated: grid.inside.clone(), step: 0 }
    }

    pub fn count(&self) -> usize {
        self.contaminated.iter().filter(|&&b| b).count()
    }
}

/// Full closure: contamination flows through every edge that is not blocked
/// into every cell that is not covered; covered cells are then cleaned.
pub fn spread(
    grid: &Grid,
    state: &ContaminationState,
    covered: &[bool],
    blocked: &BTreeSet<(usize, usize)>,
) -> ContaminationState {
    let mut out = state.contaminated.clone();
    let mut queue: VecDeque<usize> = (0..out.len()).filter(|&c| out[c] && !covered[c]).collect();
    while let Some(c) = queue.pop_front() {
        for n in grid.neighbours(c) {
            if !out[n] && !covered[n] && !blocked.contains(&(c.min(n), c.max(n))) {
                out[n] = true;
                queue.push_back(n);
            }
        }
    }
    for (c, cov) in covered.iter().enumerate() {
        if *cov {
            out[c] = false;
        }
    }
    ContaminationState { contaminated: out, step: state.step + 1 }
}

/// Replay engine with incremental spreading: from a closed state only cells
/// that stop being covered and edges that stop being blocked can let the
/// evader through.
struct Replay<'a> {
    grid: &'a Grid,
    axes: Vec<Axis>,
    state: ContaminationState,
    covered: Vec<bool>,
    blocked: BTreeSet<(usize, usize)>,
    held: BTreeSet<(i64, i64)>,
    full: bool,
}

impl Replay<'_> {
    fn apply(&mut self, beams: &[(Axis, (i64, i64))]) {
        let mut b = Beam::default();
        for &(axis, (x, y)) in beams {
            let (u, v) = match axis {
                Axis::Horizontal => (x, y),
                Axis::Vertical => (y, x),
            };
            self.grid.beam(axis, u, v, &mut b);
        }
        let mut covered = vec![false; self.covered.len()];
        for &c in &b.covered {
            covered[c] = true;
        }
        let blocked: BTreeSet<(usize, usize)> = b.blocked.into_iter().collect();
        if self.full {
            self.state = spread(self.grid, &self.state, &covered, &blocked);
        } else {
            let cont = &mut self.state.contaminated;
            for &c in &b.covered {
                cont[c] = false;
            }
            let mut queue = VecDeque::new();
            let infect = |c: usize, cont: &mut Vec<bool>, queue: &mut VecDeque<usize>| {
                if !cont[c] && !covered[c] {
                    cont[c] = true;
                    queue.push_back(c);
                }
            };
            for c in (0..covered.len()).filter(|&c| self.covered[c] && !covered[c]) {
                if self.grid.neighbours(c).any(|n| cont[n] && !blocked.contains(&(c.min(n), c.max(n)))) {
                    infect(c, cont, &mut queue);
                }
            }
            for &(a, b) in self.blocked.difference(&blocked) {
                if cont[a] {
                    infect(b, cont, &mut queue);
                }
                if cont[b] {
                    infect(a, cont, &mut queue);
                }
            }
            while let Some(c) = queue.pop_front() {
                for n in self.grid.neighbours(c) {
                    if !blocked.contains(&(c.min(n), c.max(n))) {
                        infect(n, cont, &mut queue);
                    }
                }
            }
            self.state.step += 1;
        }
        self.covered = covered;
        self.blocked = blocked;
        self.held = b.held.into_iter().collect();
    }
}

fn malformed(step: usize, reason: impl Into<String>) -> OracleError {
    OracleError::MalformedTrace { step, reason: reason.into() }
}

struct Piece {
    /// Perimeter parameter of the midpoint.
    param: Ratio<Coord>,
    /// Adjacent inside cell.
    cell: usize,
    /// Midpoint in half-cell units.
    mid: (i64, i64),
    at: Point2,
}

/// Boundary pieces one grid unit long.
fn boundary_pieces(poly: &Polygon, grid: &Grid) -> Vec<Piece> {
    let starts = poly.edge_starts();
    let s = grid.scale;
    let mut out = Vec::new();
    for (e, start) in starts.iter().enumerate() {
        let (a, b) = poly.edge_points(e);
        let (fa, fb) = (grid.fine(a), grid.fine(b));
        let len = poly.edge_len(e) * s;
        let (dx, dy) = ((fb.0 - fa.0).signum(), (fb.1 - fa.1).signum());
        for k in 0..len {
            // Midpoint of the piece in half-cell units; the interior lies to the left.
            let (mx, my) = (fa.0 + dx * (2 * k + 1), fa.1 + dy * (2 * k + 1));
            let (cx, cy) = (mx - dy, my + dx);
            let Some(cell) = grid.cell((cx - 1) / 2, (cy - 1) / 2) else { continue };
            let param = Ratio::from_integer(*start) + Ratio::new(2 * k + 1, 2 * s);
            let d = 2 * s;
            let at = Point2 { x: Ratio::new(grid.origin.x * d + mx, d), y: Ratio::new(grid.origin.y * d + my, d) };
            out.push(Piece { param, cell, mid: (mx, my), at });
        }
    }
    out
}

/// Replays a trace. `scale` is the number of grid cells per original unit.
pub fn replay(trace: &Trace, poly: &Polygon, segs: &[Guard], scale: Coord) -> Result<OracleVerdict, OracleError> {
    replay_with(trace, poly, segs, scale, false).map(|(v, _, _)| v)
}

/// The grid and contamination after replaying the whole trace.
pub fn replay_state(
    trace: &Trace,
    poly: &Polygon,
    segs: &[Guard],
    scale: Coord,
) -> Result<(Grid, ContaminationState), OracleError> {
    replay_with(trace, poly, segs, scale, false).map(|(_, g, s)| (g, s))
}

/// As [`replay`], recomputing the full closure at every sub-step instead of
/// spreading incrementally. Slow; used to cross-check the fast path.
pub fn replay_full(trace: &Trace, poly: &Polygon, segs: &[Guard], scale: Coord) -> Result<OracleVerdict, OracleError> {
    replay_with(trace, poly, segs, scale, true).map(|(v, _, _)| v)
}

fn replay_with(
    trace: &Trace,
    poly: &Polygon,
    segs: &[Guard],
    scale: Coord,
    full: bool,
) -> Result<(OracleVerdict, Grid, ContaminationState), OracleError> {
    let expected = instance_hash(poly, segs);
    if trace.header.instance != expected {
        return Err(OracleError::InstanceMismatch { expected, found: trace.header.instance.clone() });
    }
    if trace.header.robots != segs.len() {
        return Err(malformed(0, "robot count differs from the instance"));
    }
    let grid = Grid::discretize(poly, scale)?;
    let pieces = boundary_pieces(poly, &grid);
    let mut rp = Replay {
        grid: &grid,
        axes: segs.iter().map(|s| s.beam_axis()).collect(),
        state: ContaminationState::initial(&grid),
        covered: vec![false; grid.inside.len()],
        blocked: BTreeSet::new(),
        held: BTreeSet::new(),
        full,
    };
    let n = segs.len();
    let mut status = vec![Status::Unstarted; n];
    let mut pos: Vec<Option<(i64, i64)>> = vec![None; n];
    let mut d1: Vec<Vec<Span>> = vec![Vec::new(); n];
    for (k, rec) in trace.records.iter().enumerate() {
        if rec.step != k {
            return Err(malformed(k, format!("step index {} out of sequence", rec.step)));
        }
        let id = rec.robot;
        if id >= n {
            return Err(malformed(k, format!("robot {id} does not exist")));
        }
        let seg = segs[id];
        if !seg.contains(&rec.from) || !seg.contains(&rec.to) {
            return Err(malformed(k, "motion leaves the robot's segment"));
        }
        let (from, to) = (grid.fine(rec.from), grid.fine(rec.to));
        match pos[id] {
            Some(p) if p != from && rec.kind != RecordKind::Start => {
                return Err(malformed(k, "motion does not start where the robot is"));
            }
            None if rec.kind != RecordKind::Start => {
                return Err(malformed(k, "robot acts before it starts"));
            }
            _ => {}
        }
        for spans in [&rec.d1, &rec.d2, &rec.d3] {
            if spans.iter().any(|s| s.from >= s.to || s.from < Ratio::from_integer(0)) {
                return Err(malformed(k, "invalid span"));
            }
        }
        status[id] = rec.status;
        d1[id] = rec.d1.clone();
        let steps = (to.0 - from.0).abs() + (to.1 - from.1).abs();
        let dir = ((to.0 - from.0).signum(), (to.1 - from.1).signum());
        for t in (if steps == 0 { 0 } else { 1 })..=steps {
            pos[id] = Some((from.0 + dir.0 * t, from.1 + dir.1 * t));
            let beams: Vec<(Axis, (i64, i64))> =
                (0..n).filter(|&r| status[r].is_present()).filter_map(|r| pos[r].map(|p| (rp.axes[r], p))).collect();
            rp.apply(&beams);
        }
        let cleared = Span::to_region(&d1.concat(), poly);
        for p in &pieces {
            if rp.state.contaminated[p.cell] && !rp.held.contains(&p.mid) && cleared.contains_param(&p.param) {
                let v = OracleVerdict::ProtocolViolation { step: k, at: p.at };
                let state = rp.state;
                return Ok((v, grid, state));
            }
        }
    }
    let bad: Vec<usize> = (0..rp.state.contaminated.len()).filter(|&c| rp.state.contaminated[c]).collect();
    let v = if bad.is_empty() {
        OracleVerdict::Cleared
    } else {
        OracleVerdict::Contaminated {
            witnesses: bad.iter().take(5).map(|&c| grid.centre(c)).collect(),
            count: bad.len(),
        }
    };
    let state = rp.state;
    Ok((v, grid, state))
}

#[cfg(test)]
#[path = "oracle_tests.rs"]
mod tests;
