//! Points, hyperplanes, strings, worldsheets, sphere samples and the spatial
//! antipodality predicates.

mod antipodes;
mod point;
mod region;
mod sphere;
mod string;

pub use antipodes::{antipodal_point_witness, petty_antipodal_set, strings_antipodal, Hyperplane};
pub use point::{canonical_points, Point, POINT_TOL};
pub use region::Region;
pub use sphere::{sphere_sample, SphereGrid};
pub use string::{
    strings_disjoint, worldsheet_cover_check, worldsheets_antipodal, CoverReport, StringPath,
    Worldsheet,
};

pub(crate) use point::norm;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("a point needs at least one coordinate")]
    ZeroDimension,
    #[error("coordinate {index} is not finite")]
    NonFinite { index: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("a region must contain at least one point")]
    EmptyRegion,
    #[error("{points} points but {flags} interior flags")]
    FlagCount { points: usize, flags: usize },
    #[error("need at least {needed} vertices, found {found}")]
    TooFewVertices { needed: usize, found: usize },
    #[error("need at least {needed} distinct points, found {found}")]
    TooFewPoints { needed: usize, found: usize },
    #[error("all string vertices coincide")]
    DegenerateString,
    #[error("vertex {index} repeats its predecessor")]
    RepeatedVertex { index: usize },
    #[error("hyperplane normal has norm {0}, expected 1")]
    NotUnitNormal(f64),
    #[error("cover tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("{count} sheet points are not covered by any string")]
    Uncovered { count: usize },
    #[error("sphere samples are supported for n in 1..=3, got {0}")]
    UnsupportedSphere(usize),
    #[error("sphere density must be at least 2, got {0}")]
    BadDensity(usize),
    #[error("sample has norm {0}, not on the unit sphere")]
    OffSphere(f64),
    #[error("samples {first} and {second} coincide")]
    DuplicateSample { first: usize, second: usize },
}
