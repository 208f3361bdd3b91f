//! Plain-text instance files.
//!
//! ```text
//! ORTHO 1
//! P 4
//! 0 0
//! 4 0
//! 4 4
//! 0 4
//! S 1
//! 2 0 2 4
//! ```
//!
//! `#` starts a comment; blank lines are ignored.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::engine::Guard;
use crate::error::GeometryError;
use crate::{Coord, Point, Polygon};

/// Largest accepted coordinate magnitude.
pub const COORD_LIMIT: Coord = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid instance: {0}")]
    Validation(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub polygon: Polygon,
    pub segments: Vec<Guard>,
}

struct Lines<'a> {
    inner: Box<dyn Iterator<Item = (usize, Vec<&'a str>)> + 'a>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let inner = text.lines().enumerate().filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("");
            let toks: Vec<&str> = l.split_whitespace().collect();
            (!toks.is_empty()).then_some((i + 1, toks))
        });
        Lines { inner: Box::new(inner), last: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), InstanceError> {
        match self.inner.next() {
            Some((n, t)) => {
                self.last = n;
                Ok((n, t))
            }
            None => Err(InstanceError::Parse { line: self.last + 1, message: format!("expected {what}") }),
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> InstanceError {
    InstanceError::Parse { line, message: message.into() }
}

fn numbers(line: usize, toks: &[&str], count: usize) -> Result<Vec<Coord>, InstanceError> {
    if toks.len() != count {
        return Err(err(line, format!("expected {count} integers, found {} fields", toks.len())));
    }
    toks.iter()
        .map(|t| {
            let v: Coord = t.parse().map_err(|_| err(line, format!("not an integer: {t}")))?;
            if v.abs() > COORD_LIMIT {
                return Err(err(line, format!("coordinate {v} exceeds {COORD_LIMIT}")));
            }
            Ok(v)
        })
        .collect()
}

fn header(lines: &mut Lines, key: &str) -> Result<usize, InstanceError> {
    let (n, t) = lines.next(&format!("`{key} <count>`"))?;
    if t.len() != 2 || t[0] != key {
        return Err(err(n, format!("expected `{key} <count>`")));
    }
    t[1].parse().map_err(|_| err(n, format!("bad count: {}", t[1])))
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<InstanceFile, InstanceError> {
    let mut lines = Lines::new(text);
    let (n, t) = lines.next("`ORTHO 1`")?;
    if t != ["ORTHO", "1"] {
        return Err(err(n, "expected `ORTHO 1`"));
    }
    let nv = header(&mut lines, "P")?;
    let mut pts = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (n, t) = lines.next("a vertex")?;
        let v = numbers(n, &t, 2)?;
        pts.push(Point::new(v[0], v[1]));
    }
    let polygon = Polygon::validate(pts)?;
    let ns = header(&mut lines, "S")?;
    let mut segments = Vec::with_capacity(ns);
    for _ in 0..ns {
        let (n, t) = lines.next("a segment")?;
        let v = numbers(n, &t, 4)?;
        segments.push(Guard::new(Point::new(v[0], v[1]), Point::new(v[2], v[3]))?.in_polygon(&polygon)?);
    }
    if let Some((n, _)) = lines.inner.next() {
        return Err(err(n, "unexpected content after the segment list"));
    }
    Ok(InstanceFile { polygon, segments })
}

/// Canonical text of an instance; `parse_instance` inverts it.
pub fn write_instance(polygon: &Polygon, segments: &[Guard]) -> String {
    let mut s = String::from("ORTHO 1\n");
    let _ = writeln!(s, "P {}", polygon.len());
    for v in polygon.vertices() {
        let _ = writeln!(s, "{} {}", v.x, v.y);
    }
    let _ = writeln!(s, "S {}", segments.len());
    for g in segments {
        let seg = g.segment();
        let _ = writeln!(s, "{} {} {} {}", seg.a.x, seg.a.y, seg.b.x, seg.b.y);
    }
    s
}

/// Hex SHA-256 of the canonical instance text.
pub fn instance_hash(polygon: &Polygon, segments: &[Guard]) -> String {
    hex::encode(Sha256::digest(write_instance(polygon, segments).as_bytes()))
}

impl InstanceFile {
    pub fn hash(&self) -> String {
        instance_hash(&self.polygon, &self.segments)
    }

    pub fn to_text(&self) -> String {
        write_instance(&self.polygon, &self.segments)
    }
}
