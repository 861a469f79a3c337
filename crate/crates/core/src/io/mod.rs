//! CSV ingestion, OBJ and CSV export, and JSON report documents.

mod obj;
mod points;
mod report;
mod trace;

pub use obj::{export_mesh, format_g9, write_obj};
pub use points::{load_points_csv, parse_points_csv, write_curve_csv, PointTable};
pub use report::{file_digest, ReportDocument, SCHEMA_VERSION};
pub use trace::{load_trace_csv, parse_trace_csv, TraceRecord};

use std::path::Path;

use thiserror::Error;

use crate::geometry::GeometryError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IoError {
    #[error("{path}: {message}")]
    File { path: String, message: String },
    #[error("expected header `{expected}`, found `{found}`")]
    Header { expected: String, found: String },
    #[error("line {line}: {message}")]
    Malformed { line: u64, message: String },
    #[error("line {line}: timestamp does not increase")]
    NonMonotone { line: u64 },
    #[error("line {line}: value is not finite")]
    NonFinite { line: u64 },
    #[error("nothing to export: mesh is empty")]
    EmptyMesh,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl IoError {
    pub(crate) fn file(path: &Path, e: impl std::fmt::Display) -> Self {
        IoError::File {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }
}

pub(crate) fn parse_field(field: &str, line: u64) -> Result<f64, IoError> {
    let v: f64 = field.trim().parse().map_err(|_| IoError::Malformed {
        line,
        message: format!("`{field}` is not a number"),
    })?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(IoError::NonFinite { line })
    }
}

pub(crate) fn csv_reader<R: std::io::Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input)
}

pub(crate) fn csv_error(e: csv::Error) -> IoError {
    let line = e.position().map_or(0, |p| p.line());
    IoError::Malformed {
        line,
        message: e.to_string(),
    }
}
