//! Trace records emitted by the engine.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::io::instance::instance_hash;
use crate::{Coord, Point, Polygon, Region};

use super::{EndChoice, Guard, Status};

pub const TRACE_FORMAT: &str = "slidepursuit-trace";
pub const TRACE_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordKind {
    /// Robot placed at the start of an assignment.
    Start,
    /// Sweep to the next event point.
    Move,
    /// Pocket accepted as already cleared.
    Absorb,
    /// Robot stops and asks for a pocket to be cleared.
    Signal,
    /// Return motion toward the start, possibly raising flags.
    MoveBack,
    /// Waiter receives the finisher's cleared storage and resumes.
    Release,
    /// Robot leaves the field.
    Finish,
}

/// Half-open perimeter span `[from, to)`, serialized as a pair of rational
/// strings such as `["3", "7/2"]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub from: Ratio<Coord>,
    pub to: Ratio<Coord>,
}

impl Span {
    pub fn of(region: &Region) -> Vec<Span> {
        region.spans().iter().map(|&(from, to)| Span { from, to }).collect()
    }

    pub fn to_region(spans: &[Span], poly: &Polygon) -> Region {
        let raw: Vec<_> = spans.iter().map(|s| (s.from, s.to)).collect();
        Region::from_params(poly, &raw)
    }
}

impl Serialize for Span {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.from.to_string(), self.to.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Span {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        let parse = |t: &str| Ratio::<Coord>::from_str(t).map_err(|e| D::Error::custom(format!("{t}: {e}")));
        Ok(Span { from: parse(&a)?, to: parse(&b)? })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagWrite {
    pub vertex: usize,
    /// Zero-based flag slot.
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignalRecord {
    pub from: usize,
    /// Receiver, known for releases; `None` for a broadcast request.
    pub to: Option<usize>,
    pub anchor: Point,
}

/// One engine step. D-storages hold the robot's full state after the step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step: usize,
    pub robot: usize,
    pub kind: RecordKind,
    pub from: Point,
    pub to: Point,
    pub case: String,
    pub status: Status,
    pub flags: Vec<FlagWrite>,
    pub d1: Vec<Span>,
    pub d2: Vec<Span>,
    pub d3: Vec<Span>,
    pub signals: Vec<SignalRecord>,
    pub wait_edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceHeader {
    pub format: String,
    pub version: u32,
    /// SHA-256 of the canonical instance text.
    pub instance: String,
    pub robots: usize,
    pub start_robot: usize,
    pub start_end: EndChoice,
    pub notes: Vec<String>,
}

impl TraceHeader {
    pub fn new(poly: &Polygon, segs: &[Guard], start: usize, end: EndChoice, notes: &BTreeSet<String>) -> Self {
        let mut notes: Vec<String> = notes.iter().cloned().collect();
        notes.insert(0, "first robot starts with an empty to-clear storage".into());
        TraceHeader {
            format: TRACE_FORMAT.into(),
            version: TRACE_VERSION,
            instance: instance_hash(poly, segs),
            robots: segs.len(),
            start_robot: start,
            start_end: end,
            notes,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub header: TraceHeader,
    pub records: Vec<TraceRecord>,
}

impl fmt::Display for RecordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        f.write_str(&s)
    }
}
