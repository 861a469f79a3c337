//! Antipodality predicates for points, point sets and strings.
//!
//! Three notions live here:
//!
//! * two distinct points are always separated by a pair of disjoint parallel
//!   hyperplanes, one through each point ([`antipodal_point_witness`]);
//! * a set is *Petty antipodal* when every pair of its points lies on two
//!   distinct parallel *supporting* hyperplanes of the set, i.e. the whole set
//!   sits in the closed slab between them ([`petty_antipodal_set`]);
//! * two strings are antipodal when their vertex sets differ, which is the
//!   symmetric-difference criterion ([`strings_antipodal`]).

use serde::{Deserialize, Serialize};

use super::point::{canonical_points, dot, norm};
use super::{GeometryError, Point, StringPath, POINT_TOL};

/// `{x : normal · x = offset}` with a unit normal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane {
    normal: Vec<f64>,
    offset: f64,
}

impl Hyperplane {
    pub const UNIT_TOL: f64 = 1e-12;

    pub fn new(normal: Vec<f64>, offset: f64) -> Result<Self, GeometryError> {
        let n = norm(&normal);
        if normal.is_empty() || (n - 1.0).abs() > Self::UNIT_TOL || !offset.is_finite() {
            return Err(GeometryError::NotUnitNormal(n));
        }
        Ok(Self { normal, offset })
    }

    /// The hyperplane with normal direction `dir` (normalized here) through `p`.
    pub fn through(dir: &[f64], p: &Point) -> Result<Self, GeometryError> {
        let n = norm(dir);
        if n.is_nan() || n <= 0.0 || dir.len() != p.dim() {
            return Err(GeometryError::NotUnitNormal(n));
        }
        let normal: Vec<f64> = dir.iter().map(|c| c / n).collect();
        let offset = p.dot(&normal);
        Ok(Self { normal, offset })
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn signed_distance(&self, p: &Point) -> f64 {
        p.dot(&self.normal) - self.offset
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.signed_distance(p).abs() <= POINT_TOL
    }

    /// Parallel (same normal up to sign) and not the same set.
    pub fn is_disjoint_parallel(&self, other: &Hyperplane) -> bool {
        let d = dot(&self.normal, &other.normal);
        if (d.abs() - 1.0).abs() > Self::UNIT_TOL {
            return false;
        }
        (self.offset - d.signum() * other.offset).abs() > POINT_TOL
    }
}

/// Disjoint parallel hyperplanes `(P, Q)` with `p ∈ P`, `q ∈ Q`, sharing the
/// normal `(q − p)/‖q − p‖`. `None` when the points coincide.
pub fn antipodal_point_witness(
    p: &Point,
    q: &Point,
) -> Result<Option<(Hyperplane, Hyperplane)>, GeometryError> {
    p.check_dim(q)?;
    if p.approx_eq(q) {
        return Ok(None);
    }
    let dir = q.sub(p);
    let planes_p = Hyperplane::through(&dir, p)?;
    let planes_q = Hyperplane::through(&dir, q)?;
    Ok(Some((planes_p, planes_q)))
}

/// Strict Petty antipodality: every pair `p ≠ q` of `points` admits a direction
/// `v` with `v·p = min v·x < max v·x = v·q` over the set.
///
/// The admissible directions for a pair form a polyhedral cone cut out by the
/// difference vectors of the set. A nonempty cone always contains one of its
/// extreme rays, and each extreme ray is orthogonal to `d − 1` independent
/// difference vectors inside the `d`-dimensional affine hull. Enumerating
/// those normals decides the question exactly.
pub fn petty_antipodal_set(points: &[Point]) -> Result<bool, GeometryError> {
    if let Some(first) = points.first() {
        for p in points {
            first.check_dim(p)?;
        }
    }
    let pts = canonical_points(points.to_vec());
    if pts.len() < 2 {
        return Err(GeometryError::TooFewPoints {
            needed: 2,
            found: pts.len(),
        });
    }
    let m = pts.len();
    let basis = affine_basis(&pts);
    let d = basis.len();
    let local: Vec<Vec<f64>> = pts
        .iter()
        .map(|x| {
            let rel = x.sub(&pts[0]);
            basis.iter().map(|b| dot(&rel, b)).collect()
        })
        .collect();
    let scale = 1.0
        + local
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, c| acc.max(c.abs()));
    let tol = POINT_TOL * scale;

    let mut diffs: Vec<Vec<f64>> = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            diffs.push(local[j].iter().zip(&local[i]).map(|(a, b)| a - b).collect());
        }
    }

    // certified[i][j]: some direction puts pts[i] at the minimum and pts[j] at the maximum
    let mut certified = vec![vec![false; m]; m];
    let mut remaining = m * (m - 1);
    let mut try_direction = |v: &[f64]| -> bool {
        let n = norm(v);
        if n <= f64::EPSILON {
            return remaining == 0;
        }
        let proj: Vec<f64> = local.iter().map(|x| dot(x, v) / n).collect();
        let lo = proj.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = proj.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if hi - lo > tol {
            for i in (0..m).filter(|&i| proj[i] - lo <= tol) {
                for j in (0..m).filter(|&j| hi - proj[j] <= tol) {
                    if !certified[i][j] {
                        certified[i][j] = true;
                        remaining -= 1;
                    }
                }
            }
        }
        remaining == 0
    };

    let mut chosen = Vec::with_capacity(d.saturating_sub(1));
    let all_certified = for_each_subset(diffs.len(), d - 1, &mut chosen, &mut |idx| {
        let rows: Vec<&[f64]> = idx.iter().map(|&k| diffs[k].as_slice()).collect();
        let v = generalized_cross(&rows, d);
        let neg: Vec<f64> = v.iter().map(|c| -c).collect();
        try_direction(&v) | try_direction(&neg)
    });
    Ok(all_certified)
}

/// Orthonormal basis of the span of `pts[i] - pts[0]`.
fn affine_basis(pts: &[Point]) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for x in &pts[1..] {
        let mut v = x.sub(&pts[0]);
        for b in &basis {
            let c = dot(&v, b);
            v.iter_mut().zip(b).for_each(|(vi, bi)| *vi -= c * bi);
        }
        let n = norm(&v);
        if n > POINT_TOL {
            basis.push(v.into_iter().map(|c| c / n).collect());
        }
    }
    basis
}

/// Visits every `k`-subset of `0..n` in lexicographic order until `f` returns true.
fn for_each_subset(
    n: usize,
    k: usize,
    chosen: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if chosen.len() == k {
        return f(chosen);
    }
    let start = chosen.last().map_or(0, |&i| i + 1);
    for i in start..n {
        if n - i < k - chosen.len() {
            break;
        }
        chosen.push(i);
        let done = for_each_subset(n, k, chosen, f);
        chosen.pop();
        if done {
            return true;
        }
    }
    false
}

/// Vector orthogonal to the `d - 1` rows (each of length `d`), by cofactor expansion.
/// Zero when the rows are dependent.
fn generalized_cross(rows: &[&[f64]], d: usize) -> Vec<f64> {
    if d == 1 {
        return vec![1.0];
    }
    (0..d)
        .map(|col| {
            let minor: Vec<Vec<f64>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter_map(|(j, &x)| (j != col).then_some(x))
                        .collect()
                })
                .collect();
            let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
            sign * determinant(minor)
        })
        .collect()
}

fn determinant(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for c in 0..n {
        let pivot = (c..n)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .unwrap();
        if a[pivot][c] == 0.0 {
            return 0.0;
        }
        if pivot != c {
            a.swap(pivot, c);
            det = -det;
        }
        det *= a[c][c];
        let (top, below) = a.split_at_mut(c + 1);
        let pivot_row = &top[c];
        for row in below {
            let factor = row[c] / pivot_row[c];
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= factor * p;
            }
        }
    }
    det
}

/// Strings are antipodal when their vertex sets (points identified within
/// [`POINT_TOL`]) have a nonempty symmetric difference. Only strings with the
/// same vertex set fail.
pub fn strings_antipodal(a: &StringPath, b: &StringPath) -> bool {
    let missing_from = |x: &StringPath, y: &StringPath| {
        x.vertices()
            .iter()
            .any(|v| !y.vertices().iter().any(|w| w.approx_eq(v)))
    };
    missing_from(a, b) || missing_from(b, a)
}
