//! The clearing protocol.
//!
//! Robots take turns: exactly one robot moves at a time while the others are
//! idle, finished, or holding a chord while they wait for a sub-polygon to be
//! cleared. The active robot stops at every event point of its segment and
//! decides whether the pieces of its beam chord cut off sub-polygons that
//! must be cleared before it may leave the chord. Cleared pieces are absorbed
//! through the reflex-vertex flags or the robot's own cleared storage; the
//! rest are handed to another robot by a signal, which recursively clears the
//! sub-polygon inside that region and then releases the waiter.

mod pockets;
pub mod trace;

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::GeometryError;
use crate::kernel::{Location, SubPolygonKind};
use crate::visibility::{
    boundary_in_region, coverage_complete, covers_point, critical_positions, visibility_between, Coverage, GuardSegment,
};
use crate::{Coord, Point, Polygon, Region};

pub use pockets::Pocket;
pub use trace::{FlagWrite, RecordKind, SignalRecord, Span, Trace, TraceHeader, TraceRecord};

pub type Guard = GuardSegment<Coord>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("robot {0} does not exist")]
    InvalidRobotId(usize),
    #[error("robot {0} has already started")]
    AlreadyStarted(usize),
    #[error("robot {0} is not at an event point")]
    NotAtEventPoint(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no robot can clear the region signalled by robot {sender}")]
    NoResponder { sender: usize },
    #[error("waiting graph would contain a cycle through {0:?}")]
    DeadlockDetected(Vec<usize>),
    #[error("robot {0} is not waiting")]
    WaiterNotWaiting(usize),
    #[error("unsatisfied condition: {0}")]
    UnsatisfiedCondition(String),
    #[error("guard segments do not cover the polygon; ({0}, {1}) is unseen")]
    CoverageIncomplete(Ratio<Coord>, Ratio<Coord>),
    #[error("step budget of {0} records exceeded")]
    StepBudgetExceeded(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Unstarted,
    Moving,
    MovingBack,
    Waiting,
    Done,
}

impl Status {
    /// Whether the robot is physically on its segment holding a beam.
    pub fn is_present(self) -> bool {
        matches!(self, Status::Moving | Status::MovingBack | Status::Waiting)
    }
}

/// Direction of travel along the segment parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Heading {
    Forward,
    Backward,
    None,
}

/// Which endpoint of its segment the first robot starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndChoice {
    Low,
    High,
}

/// Progress of a robot through its current assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Start,
    Sweep,
    End,
    Back,
    Finished,
}

/// The sub-polygon a robot is currently clearing and its route through it.
#[derive(Debug, Clone)]
pub struct Assignment {
    pub region: Polygon,
    /// The robot's segment clipped to the closed region.
    pub clip: Guard,
    pub start: Coord,
    pub end: Coord,
    /// Robot waiting for this assignment, if it answers a signal.
    pub serving: Option<usize>,
    /// Event parameters in travel order, `start` first and `end` last.
    pub stops: Vec<Coord>,
    pub cursor: usize,
    pub phase: Phase,
}

#[derive(Debug, Clone)]
pub struct RobotState {
    pub id: usize,
    pub segment: Guard,
    pub position: Point,
    pub heading: Heading,
    pub status: Status,
    pub d1: Region,
    pub d2: Region,
    pub d3: Region,
    pub assignment: Option<Assignment>,
    resume: Status,
}

/// The four flags of every reflex vertex, in sub-polygon kind order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReflexFlags {
    flags: BTreeMap<usize, [bool; 4]>,
}

impl ReflexFlags {
    pub fn new(poly: &Polygon) -> Self {
        ReflexFlags { flags: poly.reflex_vertices().into_iter().map(|v| (v, [false; 4])).collect() }
    }

    pub fn get(&self, vertex: usize, which: SubPolygonKind) -> bool {
        self.flags.get(&vertex).is_some_and(|f| f[which.flag_index()])
    }

    /// Raises a flag; returns whether it was newly raised.
    pub fn set(&mut self, vertex: usize, which: SubPolygonKind) -> bool {
        match self.flags.get_mut(&vertex) {
            Some(f) if !f[which.flag_index()] => {
                f[which.flag_index()] = true;
                true
            }
            _ => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, [bool; 4])> + '_ {
        self.flags.iter().map(|(&v, &f)| (v, f))
    }
}

#[derive(Debug, Clone)]
pub struct Signal {
    pub sender: usize,
    pub target: Region,
    pub anchor: Point,
    /// The sub-polygon to clear and the chord piece bounding it.
    pub pocket: Pocket,
}

#[derive(Debug, Clone)]
pub enum Action {
    Continue,
    MoveBack,
    WaitAndSignal { pocket: Pocket, case: String },
    AbsorbAndContinue { pocket: Pocket, case: String },
    Finish,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Verdict {
    Cleared,
    Stalled { reason: String },
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub trace: Trace,
    pub verdict: Verdict,
    pub world: World,
}

impl RunReport {
    pub fn robots_used(&self) -> usize {
        self.world.robots.iter().filter(|r| r.status != Status::Unstarted).count()
    }

    pub fn events(&self) -> usize {
        self.trace.records.len()
    }
}

#[derive(Debug, Clone)]
pub struct World {
    pub polygon: Polygon,
    pub robots: Vec<RobotState>,
    pub flags: ReflexFlags,
    pub pending: Option<Signal>,
    pub records: Vec<TraceRecord>,
    pub budget: usize,
    /// Free-form remarks copied into the trace header.
    pub notes: BTreeSet<String>,
}

/// Trace note for a robot that found several contaminated pockets at once and
/// signals for them one after another.
pub const SERIALIZED_NOTE: &str = "several contaminated pockets at one event point were signalled in turn";

/// Default record budget: 64 records per segment per vertex.
pub fn default_budget(poly: &Polygon, segments: usize) -> usize {
    64 * segments.max(1) * poly.len()
}

impl World {
    pub fn new(polygon: Polygon, segments: &[Guard]) -> Result<World, EngineError> {
        let robots = segments
            .iter()
            .enumerate()
            .map(|(id, s)| {
                let segment = s.in_polygon(&polygon)?;
                Ok(RobotState {
                    id,
                    segment,
                    position: segment.point_at(segment.range().0),
                    heading: Heading::None,
                    status: Status::Unstarted,
                    d1: Region::empty(&polygon),
                    d2: Region::empty(&polygon),
                    d3: Region::empty(&polygon),
                    assignment: None,
                    resume: Status::Moving,
                })
            })
            .collect::<Result<Vec<_>, GeometryError>>()?;
        Ok(World {
            flags: ReflexFlags::new(&polygon),
            budget: default_budget(&polygon, segments.len()),
            polygon,
            robots,
            pending: None,
            records: Vec::new(),
            notes: BTreeSet::new(),
        })
    }

    pub fn robot(&self, id: usize) -> Result<&RobotState, EngineError> {
        self.robots.get(id).ok_or(EngineError::InvalidRobotId(id))
    }

    fn assignment(&self, id: usize) -> Result<&Assignment, EngineError> {
        self.robot(id)?
            .assignment
            .as_ref()
            .ok_or_else(|| EngineError::PreconditionViolated(format!("robot {id} has no assignment")))
    }

    /// Edges `waiter -> clearer` of the current waiting chain.
    pub fn waiting_graph(&self) -> BTreeSet<(usize, usize)> {
        self.robots
            .iter()
            .filter(|r| r.status.is_present())
            .filter_map(|r| {
                let w = r.assignment.as_ref()?.serving?;
                (self.robots[w].status == Status::Waiting).then_some((w, r.id))
            })
            .collect()
    }

    /// All storages settled and the cleared arcs cover the whole boundary.
    pub fn terminated(&self) -> bool {
        let mut union = Region::empty(&self.polygon);
        for r in &self.robots {
            if !r.d2.is_empty() || !r.d3.is_empty() {
                return false;
            }
            union = union.union(&r.d1).expect("same polygon");
        }
        union.is_full()
    }

    /// Boundary of the whole polygon seen while the robot sweeps `lo..hi` of
    /// its clipped segment inside its region.
    fn seen(&self, a: &Assignment, lo: Coord, hi: Coord) -> Region {
        let vis = visibility_between(&a.region, &a.clip, lo.min(hi), lo.max(hi));
        boundary_in_region(&self.polygon, &vis)
    }

    /// Makes `id` responsible for clearing `region` along `clip`, starting at
    /// parameter `start`.
    fn activate(
        &mut self,
        id: usize,
        region: Polygon,
        clip: Guard,
        start: Coord,
        serving: Option<usize>,
        target: &Region,
    ) -> Result<(), EngineError> {
        let (lo, hi) = clip.range();
        let end = if start == lo { hi } else { lo };
        let waiting: Vec<(usize, Point)> =
            self.robots.iter().filter(|r| r.status == Status::Waiting).map(|r| (r.id, r.position)).collect();
        let mut stops: Vec<Coord> = critical_positions(&region, &clip, &waiting).iter().map(|c| c.at).collect();
        stops.dedup();
        if start > end {
            stops.reverse();
        }
        let a = Assignment { region, clip, start, end, serving, stops, cursor: 0, phase: Phase::Start };
        let seen = self.seen(&a, start, start);
        let r = &mut self.robots[id];
        r.position = clip.point_at(start);
        r.heading = if start < end { Heading::Forward } else { Heading::Backward };
        r.status = Status::Moving;
        r.d1 = r.d1.union(&seen)?;
        r.d2 = target.subtract(&r.d1)?;
        r.d3 = Region::empty(&self.polygon);
        r.assignment = Some(a);
        let case = self.start_case(id);
        let p = self.robots[id].position;
        self.emit(id, RecordKind::Start, p, p, case, vec![], vec![])
    }

    fn start_case(&self, id: usize) -> String {
        let p = self.robots[id].position;
        match self.polygon.locate(&p) {
            Location::Inside | Location::Outside => "start.interior".into(),
            Location::Boundary => {
                let e = self.polygon.boundary_point(&p).map(|b| b.edge).unwrap_or(0);
                let ends = [e, self.polygon.next_index(e)];
                let reflex = ends.iter().any(|&v| self.polygon.is_reflex(v))
                    || self.polygon.vertex_at(&p).is_some_and(|v| self.polygon.is_reflex(v));
                if reflex { "start.reflex" } else { "start.convex" }.into()
            }
        }
    }

    /// Start step for the first robot: it is placed at the chosen endpoint
    /// with nothing to clear on anyone's behalf, and its first decision is
    /// applied. A resulting signal is left in `pending`.
    pub fn start_step(&mut self, id: usize, end: EndChoice) -> Result<(), EngineError> {
        let r = self.robot(id)?;
        if r.status != Status::Unstarted {
            return Err(EngineError::AlreadyStarted(id));
        }
        let seg = r.segment;
        let (lo, hi) = seg.range();
        let start = if end == EndChoice::Low { lo } else { hi };
        let empty = Region::empty(&self.polygon);
        self.activate(id, self.polygon.clone(), seg, start, None, &empty)?;
        self.pending = self.apply_decisions(id)?;
        Ok(())
    }

    /// Decides what the robot does at its current event point.
    pub fn decision_step(&self, id: usize) -> Result<Action, EngineError> {
        let r = self.robot(id)?;
        let a = self.assignment(id)?;
        if a.stops.get(a.cursor).map(|&u| a.clip.point_at(u)) != Some(r.position) {
            return Err(EngineError::NotAtEventPoint(id));
        }
        if matches!(a.phase, Phase::Back | Phase::Finished) {
            return Ok(Action::Finish);
        }
        let pockets = pockets::required(&self.polygon, a, r.position)?;
        for pocket in pockets {
            if pocket.region.is_subset(&r.d1)? {
                continue;
            }
            let case = pockets::case_label(&self.polygon, a, r.position, &pocket);
            if let Some((v, which)) = pocket.flag {
                if self.flags.get(v, which) {
                    return Ok(Action::AbsorbAndContinue { pocket, case: format!("{case}:absorb") });
                }
            }
            return Ok(Action::WaitAndSignal { pocket, case: format!("{case}:signal") });
        }
        Ok(if a.phase == Phase::End { Action::MoveBack } else { Action::Continue })
    }

    /// Pockets at the robot's position that are neither cleared nor flagged.
    fn open_pockets(&self, id: usize) -> Result<usize, EngineError> {
        let r = &self.robots[id];
        let mut n = 0;
        for pocket in pockets::required(&self.polygon, self.assignment(id)?, r.position)? {
            let flagged = pocket.flag.is_some_and(|(v, which)| self.flags.get(v, which));
            if !flagged && !pocket.region.is_subset(&r.d1)? {
                n += 1;
            }
        }
        Ok(n)
    }

    /// Applies decisions at the current event point until the robot may move
    /// on or has to wait. Returns the signal if it waits.
    fn apply_decisions(&mut self, id: usize) -> Result<Option<Signal>, EngineError> {
        loop {
            match self.decision_step(id)? {
                Action::AbsorbAndContinue { pocket, case } => {
                    let r = &mut self.robots[id];
                    r.d1 = r.d1.union(&pocket.region)?;
                    r.d2 = r.d2.subtract(&pocket.region)?;
                    let p = r.position;
                    self.emit(id, RecordKind::Absorb, p, p, case, vec![], vec![])?;
                }
                Action::WaitAndSignal { pocket, case } => {
                    let anchor = pockets::anchor(&self.polygon, &pocket.region)?;
                    if self.open_pockets(id)? > 1 {
                        self.notes.insert(SERIALIZED_NOTE.into());
                    }
                    let r = &mut self.robots[id];
                    r.resume = r.status;
                    r.status = Status::Waiting;
                    r.d3 = pocket.region.clone();
                    let p = r.position;
                    let sig = Signal { sender: id, target: pocket.region.clone(), anchor, pocket };
                    let rec = SignalRecord { from: id, to: None, anchor };
                    self.emit(id, RecordKind::Signal, p, p, case, vec![], vec![rec])?;
                    return Ok(Some(sig));
                }
                Action::Continue | Action::MoveBack | Action::Finish => return Ok(None),
            }
        }
    }

    /// Picks and activates the responder for a signal. Among idle robots
    /// whose clipped segment sees the anchor the lowest id wins; if none sees
    /// it, the lowest idle robot whose segment reaches into the region.
    pub fn handle_signal(&mut self, sig: &Signal) -> Result<usize, EngineError> {
        if let Some(r) = self.robots.iter().find(|r| matches!(r.status, Status::Moving | Status::MovingBack)) {
            return Err(EngineError::PreconditionViolated(format!("robot {} is still clearing", r.id)));
        }
        let region = &sig.pocket.polygon;
        let mut fallback = None;
        let mut chosen = None;
        for r in &self.robots {
            if r.id == sig.sender || r.status == Status::Waiting {
                continue;
            }
            let Some(clip) = pockets::clip_to(&r.segment, region) else { continue };
            fallback.get_or_insert((r.id, clip));
            if covers_point(region, &clip, &sig.anchor) {
                chosen = Some((r.id, clip));
                break;
            }
        }
        let (id, clip) = match (chosen, fallback) {
            (Some(c), _) => c,
            (None, Some(f)) => {
                self.notes.insert("responder fallback: no idle segment saw the anchor".into());
                f
            }
            (None, None) => return Err(EngineError::NoResponder { sender: sig.sender }),
        };
        let start = pockets::entry_param(&clip, &sig.pocket.portion);
        self.activate(id, region.clone(), clip, start, Some(sig.sender), &sig.target)?;
        if let Some(cycle) = find_cycle(&self.waiting_graph()) {
            return Err(EngineError::DeadlockDetected(cycle));
        }
        self.pending = None;
        Ok(id)
    }

    /// Advances the robot to its next stop, collecting the boundary it sees.
    fn advance(&mut self, id: usize) -> Result<(), EngineError> {
        let a = self.assignment(id)?.clone();
        let (from_u, to_u) = (a.stops[a.cursor], a.stops[a.cursor + 1]);
        let seen = self.seen(&a, from_u, to_u);
        let r = &mut self.robots[id];
        let from = r.position;
        r.position = a.clip.point_at(to_u);
        r.d1 = r.d1.union(&seen)?;
        r.d2 = r.d2.subtract(&r.d1)?;
        let asg = r.assignment.as_mut().unwrap();
        asg.cursor += 1;
        asg.phase = if asg.cursor + 1 == asg.stops.len() { Phase::End } else { Phase::Sweep };
        let to = r.position;
        let case = match self.decision_step(id)? {
            Action::Continue => "2a.continue",
            Action::MoveBack => "end",
            _ => "event",
        };
        self.emit(id, RecordKind::Move, from, to, case.into(), vec![], vec![])
    }

    /// Raises every flag whose sub-polygon arc is inside the robot's cleared
    /// storage, for the reflex vertices on its current beam.
    fn update_flags(&mut self, id: usize) -> Result<Vec<FlagWrite>, EngineError> {
        let r = &self.robots[id];
        let Some(chord) = self.polygon.maximal_chord(&r.position, r.segment.beam_axis()) else {
            return Ok(vec![]);
        };
        let mut writes = Vec::new();
        for v in self.polygon.reflex_vertices() {
            if !chord.contains(&self.polygon.vertex(v)) {
                continue;
            }
            for which in SubPolygonKind::ALL {
                if self.flags.get(v, which) {
                    continue;
                }
                let arc = self.polygon.subpolygon(v, which)?.arc.region();
                if arc.is_subset(&self.robots[id].d1)? && self.flags.set(v, which) {
                    writes.push(FlagWrite { vertex: v, index: which.flag_index() });
                }
            }
        }
        Ok(writes)
    }

    /// Walks back toward the start of the assignment, raising flags at every
    /// stop, until the waiter's position is on the beam or the start is
    /// reached. Releases the waiter, or finishes if there is none.
    pub fn move_back_update(&mut self, id: usize) -> Result<(), EngineError> {
        let r = self.robot(id)?;
        if !r.d2.is_empty() || r.d1.is_empty() || r.status != Status::Moving {
            return Err(EngineError::PreconditionViolated(format!("robot {id} cannot move back yet")));
        }
        let a = self.assignment(id)?.clone();
        let waiter = a.serving.map(|w| self.robots[w].position);
        {
            let r = &mut self.robots[id];
            r.status = Status::MovingBack;
            r.heading = if r.heading == Heading::Forward { Heading::Backward } else { Heading::Forward };
            r.assignment.as_mut().unwrap().phase = Phase::Back;
        }
        let mut cursor = a.cursor;
        let mut from = self.robots[id].position;
        loop {
            let writes = self.update_flags(id)?;
            let here = self.robots[id].position;
            if here != from || !writes.is_empty() {
                self.emit(id, RecordKind::MoveBack, from, here, "back".into(), writes, vec![])?;
            }
            let sees_waiter = match (waiter, self.polygon.maximal_chord(&here, a.clip.beam_axis())) {
                (Some(w), Some(chord)) => chord.contains(&w),
                _ => false,
            };
            if sees_waiter || cursor == 0 {
                break;
            }
            cursor -= 1;
            from = here;
            let r = &mut self.robots[id];
            r.position = a.clip.point_at(a.stops[cursor]);
            r.assignment.as_mut().unwrap().cursor = cursor;
        }
        match a.serving {
            Some(w) => self.release_waiter(id, w),
            None => self.finish(id),
        }
    }

    fn finish(&mut self, id: usize) -> Result<(), EngineError> {
        let r = &mut self.robots[id];
        r.status = Status::Done;
        r.heading = Heading::None;
        if let Some(a) = r.assignment.as_mut() {
            a.phase = Phase::Finished;
            a.serving = None;
        }
        let p = r.position;
        self.emit(id, RecordKind::Finish, p, p, "done".into(), vec![], vec![])
    }

    /// Hands the finisher's cleared storage to the robot it served.
    pub fn release_waiter(&mut self, finisher: usize, waiter: usize) -> Result<(), EngineError> {
        self.robot(finisher)?;
        if self.robot(waiter)?.status != Status::Waiting {
            return Err(EngineError::WaiterNotWaiting(waiter));
        }
        let d1 = self.robots[finisher].d1.clone();
        if !self.robots[waiter].d3.is_subset(&d1)? {
            return Err(EngineError::UnsatisfiedCondition(format!(
                "robot {finisher} did not clear what robot {waiter} awaits"
            )));
        }
        if !self.robots[finisher].d2.is_empty() {
            return Err(EngineError::UnsatisfiedCondition(format!("robot {finisher} still has arcs to clear")));
        }
        self.finish(finisher)?;
        let w = &mut self.robots[waiter];
        w.d3 = Region::empty(&self.polygon);
        w.d1 = w.d1.union(&d1)?;
        w.d2 = w.d2.subtract(&d1)?;
        w.status = w.resume;
        let p = w.position;
        let rec = SignalRecord { from: finisher, to: Some(waiter), anchor: self.robots[finisher].position };
        self.emit(waiter, RecordKind::Release, p, p, "release".into(), vec![], vec![rec])
    }

    /// Resolves the robot's current event point, serving any signal it sends.
    fn settle(&mut self, id: usize) -> Result<(), EngineError> {
        loop {
            let sig = match self.pending.take() {
                Some(s) => Some(s),
                None => self.apply_decisions(id)?,
            };
            let Some(sig) = sig else { return Ok(()) };
            let responder = self.handle_signal(&sig)?;
            self.drive(responder)?;
        }
    }

    /// Runs an activated robot through its whole assignment.
    fn drive(&mut self, id: usize) -> Result<(), EngineError> {
        self.settle(id)?;
        while self.assignment(id)?.phase != Phase::End {
            self.advance(id)?;
            self.settle(id)?;
        }
        if !self.robots[id].d2.is_empty() {
            return Err(EngineError::UnsatisfiedCondition(format!(
                "robot {id} reached the end with arcs still to clear: {:?}",
                self.robots[id].d2
            )));
        }
        self.move_back_update(id)
    }

    #[allow(clippy::too_many_arguments)]
    fn emit(
        &mut self,
        robot: usize,
        kind: RecordKind,
        from: Point,
        to: Point,
        case: String,
        flags: Vec<FlagWrite>,
        signals: Vec<SignalRecord>,
    ) -> Result<(), EngineError> {
        self.check_invariants()?;
        let r = &self.robots[robot];
        self.records.push(TraceRecord {
            step: self.records.len(),
            robot,
            kind,
            from,
            to,
            case,
            status: r.status,
            flags,
            d1: Span::of(&r.d1),
            d2: Span::of(&r.d2),
            d3: Span::of(&r.d3),
            signals,
            wait_edges: self.waiting_graph().into_iter().collect(),
        });
        // Stop only after recording, so the trace always ends at the
        // engine's current state.
        if self.records.len() >= self.budget {
            return Err(EngineError::StepBudgetExceeded(self.budget));
        }
        Ok(())
    }

    fn check_invariants(&self) -> Result<(), EngineError> {
        let active = self.robots.iter().filter(|r| matches!(r.status, Status::Moving | Status::MovingBack)).count();
        if active > 1 {
            return Err(EngineError::UnsatisfiedCondition(format!("{active} robots clearing at once")));
        }
        if let Some(r) = self.robots.iter().find(|r| (r.status == Status::Waiting) == r.d3.is_empty()) {
            return Err(EngineError::UnsatisfiedCondition(format!("robot {} waiting state disagrees with D3", r.id)));
        }
        if let Some(cycle) = find_cycle(&self.waiting_graph()) {
            return Err(EngineError::DeadlockDetected(cycle));
        }
        Ok(())
    }
}

/// A cycle in a directed graph given by its edges, if one exists.
pub fn find_cycle(edges: &BTreeSet<(usize, usize)>) -> Option<Vec<usize>> {
    let succ: BTreeMap<usize, Vec<usize>> = edges.iter().fold(BTreeMap::new(), |mut m, &(a, b)| {
        m.entry(a).or_insert_with(Vec::new).push(b);
        m
    });
    // Colour 1: on the current path, 2: finished.
    fn visit(
        v: usize,
        succ: &BTreeMap<usize, Vec<usize>>,
        colour: &mut BTreeMap<usize, u8>,
        path: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        colour.insert(v, 1);
        path.push(v);
        for &w in succ.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            match colour.get(&w) {
                Some(1) => {
                    let at = path.iter().position(|&x| x == w).unwrap();
                    return Some(path[at..].to_vec());
                }
                Some(_) => {}
                None => {
                    if let Some(c) = visit(w, succ, colour, path) {
                        return Some(c);
                    }
                }
            }
        }
        path.pop();
        colour.insert(v, 2);
        None
    }
    let mut colour = BTreeMap::new();
    for &v in succ.keys() {
        if !colour.contains_key(&v) {
            if let Some(c) = visit(v, &succ, &mut colour, &mut Vec::new()) {
                return Some(c);
            }
        }
    }
    None
}

fn is_stall(e: &EngineError) -> bool {
    matches!(e, EngineError::StepBudgetExceeded(_) | EngineError::NoResponder { .. } | EngineError::DeadlockDetected(_))
}

/// Clears the polygon starting with robot `start` at the chosen endpoint.
///
/// Budget exhaustion, a missing responder and a detected deadlock end the run
/// with a `Stalled` verdict unless the termination predicate already holds;
/// every other failure is an error.
pub fn run(
    polygon: &Polygon,
    segments: &[Guard],
    start: usize,
    end: EndChoice,
    budget: Option<usize>,
) -> Result<RunReport, EngineError> {
    if let Coverage::Witness(w) = coverage_complete(polygon, segments) {
        return Err(EngineError::CoverageIncomplete(w.x, w.y));
    }
    let mut world = World::new(polygon.clone(), segments)?;
    if let Some(b) = budget {
        world.budget = b;
    }
    world.robot(start)?;
    let outcome = world.start_step(start, end).and_then(|_| world.drive(start));
    // The paper terminates once the predicate holds; later records only
    // return robots to their start.
    let verdict = match outcome {
        _ if world.terminated() && outcome.as_ref().map_or_else(is_stall, |_| true) => Verdict::Cleared,
        Ok(()) => Verdict::Stalled { reason: "termination predicate does not hold".into() },
        Err(e) if is_stall(&e) => Verdict::Stalled { reason: e.to_string() },
        Err(e) => return Err(e),
    };
    let header = TraceHeader::new(polygon, segments, start, end, &world.notes);
    let trace = Trace { header, records: world.records.clone() };
    Ok(RunReport { trace, verdict, world })
}
