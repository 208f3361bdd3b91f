//! Line-delimited JSON traces: a header object, then one record per line.

use thiserror::Error;

use crate::engine::trace::{TRACE_FORMAT, TRACE_VERSION};
use crate::engine::{Trace, TraceHeader, TraceRecord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceFileError {
    #[error("trace line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("trace is empty")]
    Empty,
    #[error("unsupported trace format {format} version {version}")]
    Unsupported { format: String, version: u32 },
}

pub fn write_trace(trace: &Trace) -> String {
    let mut out = serde_json::to_string(&trace.header).expect("header serializes");
    out.push('\n');
    for r in &trace.records {
        out.push_str(&serde_json::to_string(r).expect("record serializes"));
        out.push('\n');
    }
    out
}

pub fn read_trace(text: &str) -> Result<Trace, TraceFileError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines.next().ok_or(TraceFileError::Empty)?;
    let header: TraceHeader =
        serde_json::from_str(first).map_err(|e| TraceFileError::Line { line: 1, message: e.to_string() })?;
    if header.format != TRACE_FORMAT || header.version != TRACE_VERSION {
        return Err(TraceFileError::Unsupported { format: header.format, version: header.version });
    }
    let records = lines
        .map(|(i, l)| {
            serde_json::from_str::<TraceRecord>(l)
                .map_err(|e| TraceFileError::Line { line: i + 1, message: e.to_string() })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Trace { header, records })
}
