//! Deterministic SVG stills of an instance, optionally at a trace frame.
//!
//! Only `path`, `line`, `rect` and `circle` elements are emitted.

use std::fmt::Write as _;

use thiserror::Error;

use crate::engine::{Guard, Status, Trace};
use crate::oracle::{replay_state, OracleError};
use crate::{Coord, Point, Polygon};

/// Pixels per polygon unit.
const UNIT: Coord = 40;
const MARGIN: Coord = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("frame {frame} is past the end of a {len}-record trace")]
    FrameOutOfRange { frame: usize, len: usize },
    #[error(transparent)]
    Replay(#[from] OracleError),
}

struct View {
    min: Point,
    max_y: Coord,
}

impl View {
    /// Pixel coordinates, doubled inputs allowed through `den`.
    fn px(&self, x: Coord, y: Coord, den: Coord) -> (Coord, Coord) {
        (MARGIN + (x - self.min.x * den) * UNIT / den, MARGIN + (self.max_y * den - y) * UNIT / den)
    }
}

/// Renders the polygon and segments. With a frame, also draws the state after
/// record `frame`: cleared cells, robot positions and their beams.
pub fn render_svg(poly: &Polygon, segs: &[Guard], frame: Option<(&Trace, usize)>) -> Result<String, RenderError> {
    let bb = poly.bounding_box();
    let view = View { min: bb.min, max_y: bb.max.y };
    let w = (bb.max.x - bb.min.x) * UNIT + 2 * MARGIN;
    let h = (bb.max.y - bb.min.y) * UNIT + 2 * MARGIN;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>"##);
    let mut d = String::new();
    for (i, v) in poly.vertices().iter().enumerate() {
        let (x, y) = view.px(v.x, v.y, 1);
        let _ = write!(d, "{}{x} {y} ", if i == 0 { "M" } else { "L" });
    }
    d.push('Z');
    let _ = writeln!(s, r##"<path d="{d}" fill="#f4f1e8" stroke="#222222" stroke-width="2"/>"##);

    if let Some((trace, k)) = frame {
        if k >= trace.records.len() {
            return Err(RenderError::FrameOutOfRange { frame: k, len: trace.records.len() });
        }
        let prefix = Trace { header: trace.header.clone(), records: trace.records[..=k].to_vec() };
        let (grid, state) = replay_state(&prefix, poly, segs, 2)?;
        for c in 0..state.contaminated.len() {
            if grid.is_inside(c) && !state.contaminated[c] {
                let centre = grid.centre(c);
                // Cell corners are a quarter unit away from the centre.
                let (cx, cy) = (*centre.x.numer() * 4 / *centre.x.denom(), *centre.y.numer() * 4 / *centre.y.denom());
                let (x, y) = view.px(cx - 1, cy + 1, 4);
                let side = UNIT / 2;
                let _ = writeln!(s, r##"<rect x="{x}" y="{y}" width="{side}" height="{side}" fill="#b9e3c6"/>"##);
            }
        }
        let mut pos = vec![None; segs.len()];
        for r in &prefix.records {
            pos[r.robot] = Some((r.to, r.status));
        }
        for (id, p) in pos.iter().enumerate() {
            let Some((p, status)) = *p else { continue };
            if !status.is_present() {
                continue;
            }
            if let Some(chord) = poly.maximal_chord(&p, segs[id].beam_axis()) {
                let (x1, y1) = view.px(chord.a.x, chord.a.y, 1);
                let (x2, y2) = view.px(chord.b.x, chord.b.y, 1);
                let _ = writeln!(
                    s,
                    r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#d6452b" stroke-width="2"/>"##
                );
            }
            let (x, y) = view.px(p.x, p.y, 1);
            let fill = if status == Status::Waiting { "#e0a100" } else { "#d6452b" };
            let _ = writeln!(s, r##"<circle cx="{x}" cy="{y}" r="6" fill="{fill}"/>"##);
        }
    }

    for g in segs {
        let seg = g.segment();
        let (x1, y1) = view.px(seg.a.x, seg.a.y, 1);
        let (x2, y2) = view.px(seg.b.x, seg.b.y, 1);
        let _ = writeln!(s, r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#2b5fd6" stroke-width="3"/>"##);
    }
    s.push_str("</svg>\n");
    Ok(s)
}
