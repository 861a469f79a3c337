//! Antipodal matching searches, the corner-region descriptor, fixed-point
//! search on the unit ball, and the wired-friend shape pipeline.

mod corner;
mod descriptor;
mod fixed_point;
mod search;
mod wired;

pub use corner::{antipodal_cell, corner_region_descriptor};
pub use descriptor::{DescriptorConfig, Reducer, RegionDescriptor};
pub use fixed_point::{fixed_point_search, FixedPoint, GRID_POINTS};
pub use search::{
    antipodal_string_family, but_search, but_search_bounded, ButObjects, ButPair, ButResult,
};
pub use wired::{shape_descriptor, wired_friend_pipeline, BallCheck, WiredFriend};

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::proximity::ProximityError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("no objects to search")]
    EmptyObjects,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Proximity(#[from] ProximityError),
    #[error("the shape reducer needs strings, not {0}")]
    ShapeNeedsString(&'static str),
    #[error("descriptor tolerance must be finite and non-negative, got {0}")]
    BadTolerance(f64),
    #[error("grid must be at least 2x2, got {width}x{height}")]
    GridTooSmall { width: usize, height: usize },
    #[error("cell ({i}, {j}) is outside the {width}x{height} grid")]
    CellOutOfRange {
        width: usize,
        height: usize,
        i: usize,
        j: usize,
    },
    #[error("fixed-point search supports dimensions 1..=3, got {0}")]
    BadDimension(usize),
    #[error("map leaves the unit ball: |f({point:?})| = {image_norm}")]
    RangeViolation { point: Vec<f64>, image_norm: f64 },
    #[error("map returned {found} coordinates, expected {expected}")]
    MapArity { expected: usize, found: usize },
    #[error("no fixed point within tolerance after {refinements} refinements (best residual {residual:e})")]
    BudgetExhausted { refinements: usize, residual: f64 },
    #[error("need at least 2 vertices per string, got {0}")]
    StringLength(usize),
}
