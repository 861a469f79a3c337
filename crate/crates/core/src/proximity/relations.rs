//! Descriptive intersection and the three nearness relations.
//!
//! Every relation here is defined on finite labeled regions:
//!
//! * `A δΦ B` (descriptive Lodato nearness) holds when some `a ∈ A` and
//!   `b ∈ B` have matching descriptions.
//! * `A sn B` (strong nearness) holds when the interiors overlap. A singleton
//!   `{x}` is strongly near `B` when `x ∈ int B`; two singletons only when
//!   they are the same point.
//! * `A snd B` (descriptive strong nearness) replaces the overlap of
//!   interiors by their descriptive intersection, and point identity by
//!   matching descriptions.
//!
//! The free functions know nothing about the ambient space. The methods on
//! [`DescriptiveSpace`] add the one clause that needs it: the whole space `X`
//! is strongly near every nonempty set.

use super::{FeatureMap, ProximityError};
use crate::geometry::{canonical_points, GeometryError, Point, Region};

/// `Φ(A)`: the descriptions of the points of `A`, sorted and deduplicated within `τ`.
pub fn describe_region(a: &Region, fm: &FeatureMap) -> Result<Vec<Vec<f64>>, ProximityError> {
    let mut all = fm.evaluate_all(a)?;
    all.sort_by(|x, y| {
        x.iter()
            .zip(y)
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or_else(|| x.len().cmp(&y.len()))
    });
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(all.len());
    for d in all {
        if !out.iter().any(|e| fm.matches(e, &d)) {
            out.push(d);
        }
    }
    Ok(out)
}

fn described(a: &Region, fm: &FeatureMap) -> Result<Vec<(Point, Vec<f64>)>, ProximityError> {
    a.points()
        .iter()
        .map(|p| Ok((p.clone(), fm.evaluate(p)?)))
        .collect()
}

fn intersect_described(
    da: &[(Point, Vec<f64>)],
    db: &[(Point, Vec<f64>)],
    fm: &FeatureMap,
) -> Vec<Point> {
    let in_image =
        |d: &[f64], image: &[(Point, Vec<f64>)]| image.iter().any(|(_, e)| fm.matches(e, d));
    let hits = da
        .iter()
        .chain(db)
        .filter(|(_, d)| in_image(d, da) && in_image(d, db))
        .map(|(p, _)| p.clone())
        .collect();
    canonical_points(hits)
}

/// `A ⩀ B`: the points of `A ∪ B` whose description lies in both `Φ(A)` and
/// `Φ(B)`, in lexicographic order.
///
/// Membership in `Φ(A)` is tested against every description of `A`, not
/// against the deduplicated representatives of [`describe_region`].
pub fn descriptive_intersection(
    a: &Region,
    b: &Region,
    fm: &FeatureMap,
) -> Result<Vec<Point>, ProximityError> {
    Ok(intersect_described(
        &described(a, fm)?,
        &described(b, fm)?,
        fm,
    ))
}

/// Descriptive Lodato nearness: `A ⩀ B ≠ ∅`.
pub fn dnear(a: &Region, b: &Region, fm: &FeatureMap) -> Result<bool, ProximityError> {
    let da = described(a, fm)?;
    let db = described(b, fm)?;
    Ok(da
        .iter()
        .any(|(_, x)| db.iter().any(|(_, y)| fm.matches(x, y))))
}

/// Strong nearness from interior labels alone.
pub fn sn(a: &Region, b: &Region) -> bool {
    if a.is_empty() || b.is_empty() {
        return false;
    }
    match (a.is_singleton(), b.is_singleton()) {
        (true, true) => a.points()[0].approx_eq(&b.points()[0]),
        (true, false) => b.is_interior(&a.points()[0]),
        (false, true) => a.is_interior(&b.points()[0]),
        (false, false) => a.interior_points().any(|p| b.is_interior(p)),
    }
}

/// Descriptive strong nearness from interior labels and descriptions.
pub fn snd(a: &Region, b: &Region, fm: &FeatureMap) -> Result<bool, ProximityError> {
    if a.is_empty() || b.is_empty() {
        return Ok(false);
    }
    let in_interior_image = |x: &Point, r: &Region| -> Result<bool, ProximityError> {
        let d = fm.evaluate(x)?;
        for p in r.interior_points() {
            if fm.matches(&d, &fm.evaluate(p)?) {
                return Ok(true);
            }
        }
        Ok(false)
    };
    match (a.is_singleton(), b.is_singleton()) {
        (true, true) => {
            Ok(fm.matches(&fm.evaluate(&a.points()[0])?, &fm.evaluate(&b.points()[0])?))
        }
        (true, false) => in_interior_image(&a.points()[0], b),
        (false, true) => in_interior_image(&b.points()[0], a),
        (false, false) => {
            let ia = described(&a.interior(), fm)?;
            let ib = described(&b.interior(), fm)?;
            Ok(!intersect_described(&ia, &ib, fm).is_empty())
        }
    }
}

/// A finite universe `X` with an interior labeling and a feature map.
///
/// Subsets drawn from the space take their interior flags from the labeling,
/// so `int A = A ∩ U` for a fixed labeled set `U`, except that `X` itself is
/// entirely interior.
#[derive(Clone, Debug)]
pub struct DescriptiveSpace {
    universe: Vec<Point>,
    interior: Vec<bool>,
    feature_map: FeatureMap,
    descriptions: Vec<Vec<f64>>,
}

impl DescriptiveSpace {
    pub fn new(
        universe: Vec<Point>,
        interior: Vec<bool>,
        feature_map: FeatureMap,
    ) -> Result<Self, ProximityError> {
        // Region::new checks emptiness, dimensions and flag count.
        let as_region = Region::new(universe.clone(), interior.clone())?;
        if as_region.len() != universe.len() {
            return Err(ProximityError::DuplicatePoint);
        }
        let descriptions = universe
            .iter()
            .map(|p| feature_map.evaluate(p))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            universe,
            interior,
            feature_map,
            descriptions,
        })
    }

    /// Every point labeled interior.
    pub fn open(universe: Vec<Point>, feature_map: FeatureMap) -> Result<Self, ProximityError> {
        let n = universe.len();
        Self::new(universe, vec![true; n], feature_map)
    }

    pub fn universe(&self) -> &[Point] {
        &self.universe
    }

    pub fn interior_labels(&self) -> &[bool] {
        &self.interior
    }

    pub fn feature_map(&self) -> &FeatureMap {
        &self.feature_map
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn description(&self, index: usize) -> &[f64] {
        &self.descriptions[index]
    }

    /// The subset at `indices`, labeled by the space. Empty indices give `∅`.
    pub fn subset(&self, indices: &[usize]) -> Region {
        if indices.is_empty() {
            return Region::empty();
        }
        let pts = indices.iter().map(|&i| self.universe[i].clone()).collect();
        let flags = indices.iter().map(|&i| self.interior[i]).collect();
        Region::new(pts, flags).expect("indices address points of a valid universe")
    }

    /// `{x}` for the point at `index`, labeled by the space.
    pub fn singleton(&self, index: usize) -> Region {
        Region::singleton(self.universe[index].clone(), self.interior[index])
    }

    /// `X`, entirely interior.
    pub fn whole(&self) -> Region {
        Region::open(self.universe.clone()).expect("universe is nonempty")
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.universe.iter().position(|q| q.approx_eq(p))
    }

    /// Relabels an arbitrary region of points of `X` with the space's labeling.
    pub fn relabel(&self, r: &Region) -> Result<Region, ProximityError> {
        let idx = r
            .points()
            .iter()
            .map(|p| {
                self.index_of(p)
                    .ok_or_else(|| ProximityError::OutsideUniverse(p.coords().to_vec()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.subset(&idx))
    }

    fn is_whole(&self, r: &Region) -> bool {
        r.len() == self.universe.len() && self.universe.iter().all(|p| r.contains(p))
    }

    pub fn dnear(&self, a: &Region, b: &Region) -> Result<bool, ProximityError> {
        dnear(a, b, &self.feature_map)
    }

    pub fn descriptive_intersection(
        &self,
        a: &Region,
        b: &Region,
    ) -> Result<Vec<Point>, ProximityError> {
        descriptive_intersection(a, b, &self.feature_map)
    }

    /// [`sn`] plus `X sn A` for every nonempty `A`.
    pub fn sn(&self, a: &Region, b: &Region) -> bool {
        if a.is_empty() || b.is_empty() {
            return false;
        }
        self.is_whole(a) || self.is_whole(b) || sn(a, b)
    }

    /// [`snd`] plus `X snd A` for every nonempty `A`.
    pub fn snd(&self, a: &Region, b: &Region) -> Result<bool, ProximityError> {
        if a.is_empty() || b.is_empty() {
            return Ok(false);
        }
        if self.is_whole(a) || self.is_whole(b) {
            return Ok(true);
        }
        snd(a, b, &self.feature_map)
    }
}

impl From<GeometryError> for ProximityError {
    fn from(e: GeometryError) -> Self {
        ProximityError::Geometry(e)
    }
}
