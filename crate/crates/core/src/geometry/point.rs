use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::GeometryError;

/// Absolute tolerance under which two points are considered the same point.
pub const POINT_TOL: f64 = 1e-9;

/// A point in `R^n` with finite coordinates and `n >= 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self, GeometryError> {
        if coords.is_empty() {
            return Err(GeometryError::ZeroDimension);
        }
        if let Some(bad) = coords.iter().position(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinite { index: bad });
        }
        Ok(Self { coords })
    }

    /// Shorthand for tests and examples where the coordinates are literals.
    ///
    /// Panics if the coordinates are empty or non-finite.
    pub fn from_slice(coords: &[f64]) -> Self {
        Self::new(coords.to_vec()).expect("literal point must be finite and non-empty")
    }

    pub fn origin(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        Self {
            coords: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub(crate) fn check_dim(&self, other: &Point) -> Result<(), GeometryError> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }

    pub fn dot(&self, v: &[f64]) -> f64 {
        dot(&self.coords, v)
    }

    /// `self - other` as a raw vector.
    pub fn sub(&self, other: &Point) -> Vec<f64> {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect()
    }

    pub fn norm(&self) -> f64 {
        norm(&self.coords)
    }

    pub fn distance(&self, other: &Point) -> f64 {
        norm(&self.sub(other))
    }

    pub fn neg(&self) -> Point {
        Point {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Same point up to [`POINT_TOL`] in every coordinate.
    pub fn approx_eq(&self, other: &Point) -> bool {
        self.dim() == other.dim()
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(a, b)| (a - b).abs() <= POINT_TOL)
    }

    /// Lexicographic order on coordinates; the canonical order for every list
    /// of points this crate returns.
    pub fn lex_cmp(&self, other: &Point) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.total_cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.dim().cmp(&other.dim())
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = GeometryError;

    fn try_from(coords: Vec<f64>) -> Result<Self, Self::Error> {
        Point::new(coords)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.coords
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Sorts points lexicographically and drops later duplicates (within [`POINT_TOL`]).
pub fn canonical_points(mut points: Vec<Point>) -> Vec<Point> {
    points.sort_by(Point::lex_cmp);
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| q.approx_eq(&p)) {
            out.push(p);
        }
    }
    out
}
