use serde::{Deserialize, Serialize};

use super::{GeometryError, Point};

/// A finite labeled point cloud standing in for a spatial region.
///
/// Each point carries a flag marking membership in the region's interior.
/// Interior membership is supplied by the caller; nothing here derives it
/// from a topology. Points equal within [`super::POINT_TOL`] are merged on
/// construction, and a merged point is interior if any copy was.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Region {
    points: Vec<Point>,
    interior: Vec<bool>,
}

impl Region {
    pub fn new(points: Vec<Point>, interior: Vec<bool>) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::EmptyRegion);
        }
        if points.len() != interior.len() {
            return Err(GeometryError::FlagCount {
                points: points.len(),
                flags: interior.len(),
            });
        }
        let first = &points[0];
        for p in &points[1..] {
            first.check_dim(p)?;
        }
        Ok(Self::merged(points, interior))
    }

    /// Every point is interior.
    pub fn open(points: Vec<Point>) -> Result<Self, GeometryError> {
        let n = points.len();
        Self::new(points, vec![true; n])
    }

    /// No point is interior.
    pub fn boundary(points: Vec<Point>) -> Result<Self, GeometryError> {
        let n = points.len();
        Self::new(points, vec![false; n])
    }

    pub fn singleton(p: Point, interior: bool) -> Self {
        Self {
            points: vec![p],
            interior: vec![interior],
        }
    }

    /// The empty set.
    ///
    /// Regions are nonempty everywhere else in the crate; the empty set exists
    /// only because the proximity axioms quantify over it (`∅` is far from
    /// every set).
    pub fn empty() -> Self {
        Self {
            points: Vec::new(),
            interior: Vec::new(),
        }
    }

    fn merged(points: Vec<Point>, interior: Vec<bool>) -> Self {
        let mut out = Self::empty();
        for (p, int) in points.into_iter().zip(interior) {
            out.insert(p, int);
        }
        out
    }

    fn insert(&mut self, p: Point, int: bool) {
        match self.position(&p) {
            Some(i) => self.interior[i] |= int,
            None => {
                self.points.push(p);
                self.interior.push(int);
            }
        }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn interior_flags(&self) -> &[bool] {
        &self.interior
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.points.len() == 1
    }

    pub fn dim(&self) -> Option<usize> {
        self.points.first().map(Point::dim)
    }

    pub fn position(&self, p: &Point) -> Option<usize> {
        self.points.iter().position(|q| q.approx_eq(p))
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.position(p).is_some()
    }

    pub fn is_interior(&self, p: &Point) -> bool {
        self.position(p).is_some_and(|i| self.interior[i])
    }

    pub fn interior_points(&self) -> impl Iterator<Item = &Point> {
        self.points
            .iter()
            .zip(&self.interior)
            .filter_map(|(p, &int)| int.then_some(p))
    }

    pub fn has_interior(&self) -> bool {
        self.interior.iter().any(|&b| b)
    }

    /// The interior as its own region (possibly empty), every point flagged interior.
    pub fn interior(&self) -> Region {
        let pts: Vec<Point> = self.interior_points().cloned().collect();
        let n = pts.len();
        Self {
            points: pts,
            interior: vec![true; n],
        }
    }

    /// Set union; interior flags are OR-ed so `int(A) ∪ int(B) ⊆ int(A ∪ B)`.
    pub fn union(&self, other: &Region) -> Region {
        let mut out = self.clone();
        for (p, &int) in other.points.iter().zip(&other.interior) {
            out.insert(p.clone(), int);
        }
        out
    }

    pub fn intersects(&self, other: &Region) -> bool {
        self.points.iter().any(|p| other.contains(p))
    }

    /// Same underlying point set, ignoring interior flags.
    pub fn same_set(&self, other: &Region) -> bool {
        self.len() == other.len() && self.points.iter().all(|p| other.contains(p))
    }
}
