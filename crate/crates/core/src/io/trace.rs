use std::fs::File;
use std::io::Read;
use std::path::Path;

use serde::Serialize;

use super::{csv_error, csv_reader, parse_field, IoError};

/// One EEG sample: time, abscissa and amplitude.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceRecord {
    pub t: f64,
    pub x: f64,
    pub z: f64,
}

/// Reads a `t,x,z` CSV. Line numbers in errors count the header as line 1.
pub fn load_trace_csv(path: &Path) -> Result<Vec<TraceRecord>, IoError> {
    let file = File::open(path).map_err(|e| IoError::file(path, e))?;
    parse_trace_csv(file)
}

pub fn parse_trace_csv(input: impl Read) -> Result<Vec<TraceRecord>, IoError> {
    let mut rdr = csv_reader(input);
    let header: Vec<String> = rdr
        .headers()
        .map_err(csv_error)?
        .iter()
        .map(str::to_string)
        .collect();
    if header != ["t", "x", "z"] {
        return Err(IoError::Header {
            expected: "t,x,z".into(),
            found: header.join(","),
        });
    }
    let mut out: Vec<TraceRecord> = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_error)?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != 3 {
            return Err(IoError::Malformed {
                line,
                message: format!("expected 3 fields, found {}", rec.len()),
            });
        }
        let r = TraceRecord {
            t: parse_field(&rec[0], line)?,
            x: parse_field(&rec[1], line)?,
            z: parse_field(&rec[2], line)?,
        };
        if out.last().is_some_and(|prev| r.t <= prev.t) {
            return Err(IoError::NonMonotone { line });
        }
        out.push(r);
    }
    Ok(out)
}
