use serde::{Deserialize, Serialize};

use super::point::{canonical_points, dot, norm};
use super::{GeometryError, Point, Region, POINT_TOL};

/// A bounded, zero-width path: an ordered polyline of at least two vertices.
///
/// A closed string has an implicit last segment back to its first vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StringPath {
    vertices: Vec<Point>,
    closed: bool,
}

impl StringPath {
    pub fn new(vertices: Vec<Point>, closed: bool) -> Result<Self, GeometryError> {
        if vertices.len() < 2 {
            return Err(GeometryError::TooFewVertices {
                needed: 2,
                found: vertices.len(),
            });
        }
        let first = &vertices[0];
        for v in &vertices[1..] {
            first.check_dim(v)?;
        }
        if vertices.iter().all(|v| v.approx_eq(first)) {
            return Err(GeometryError::DegenerateString);
        }
        for (i, w) in vertices.windows(2).enumerate() {
            if w[0].approx_eq(&w[1]) {
                return Err(GeometryError::RepeatedVertex { index: i + 1 });
            }
        }
        if closed && vertices[vertices.len() - 1].approx_eq(first) {
            return Err(GeometryError::RepeatedVertex {
                index: vertices.len() - 1,
            });
        }
        Ok(Self { vertices, closed })
    }

    pub fn open(vertices: Vec<Point>) -> Result<Self, GeometryError> {
        Self::new(vertices, false)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    /// Segments in traversal order, including the closing segment when closed.
    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> {
        let n = self.vertices.len();
        let count = if self.closed { n } else { n - 1 };
        (0..count).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn arc_length(&self) -> f64 {
        self.segments().map(|(a, b)| a.distance(b)).sum()
    }

    /// Euclidean distance from `p` to the nearest point of the polyline.
    pub fn distance_to(&self, p: &Point) -> f64 {
        self.segments()
            .map(|(a, b)| point_segment_distance(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Applies `f` to every vertex. Fails if the image breaks a string invariant.
    pub fn map_vertices(&self, f: impl Fn(&Point) -> Point) -> Result<Self, GeometryError> {
        Self::new(self.vertices.iter().map(f).collect(), self.closed)
    }

    /// The vertex set as a boundary region.
    pub fn to_region(&self) -> Region {
        Region::boundary(self.vertices.clone()).expect("a string has at least two vertices")
    }
}

/// True when the two polylines share no point (segment distance above [`POINT_TOL`]).
pub fn strings_disjoint(a: &StringPath, b: &StringPath) -> bool {
    a.dim() != b.dim()
        || a.segments().all(|(p0, p1)| {
            b.segments()
                .all(|(q0, q1)| segment_segment_distance(p0, p1, q0, q1) > POINT_TOL)
        })
}

pub(crate) fn point_segment_distance(p: &Point, a: &Point, b: &Point) -> f64 {
    let ab = b.sub(a);
    let ap = p.sub(a);
    let len2 = dot(&ab, &ab);
    let t = if len2 == 0.0 {
        0.0
    } else {
        (dot(&ap, &ab) / len2).clamp(0.0, 1.0)
    };
    let d: Vec<f64> = ap.iter().zip(&ab).map(|(x, y)| x - t * y).collect();
    norm(&d)
}

/// Closest distance between segments `[p0,p1]` and `[q0,q1]` in any dimension.
pub(crate) fn segment_segment_distance(p0: &Point, p1: &Point, q0: &Point, q1: &Point) -> f64 {
    let d1 = p1.sub(p0);
    let d2 = q1.sub(q0);
    let r = p0.sub(q0);
    let a = dot(&d1, &d1);
    let e = dot(&d2, &d2);
    let f = dot(&d2, &r);
    let (s, t);
    if a <= f64::EPSILON && e <= f64::EPSILON {
        return norm(&r);
    }
    if a <= f64::EPSILON {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = dot(&d1, &r);
        if e <= f64::EPSILON {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = dot(&d1, &d2);
            let denom = a * e - b * b;
            let mut s0 = if denom > 0.0 {
                ((b * f - c * e) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let mut t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t0 = 0.0;
                s0 = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t0 = 1.0;
                s0 = ((b - c) / a).clamp(0.0, 1.0);
            }
            s = s0;
            t = t0;
        }
    }
    let diff: Vec<f64> = (0..d1.len())
        .map(|i| (p0.coords()[i] + d1[i] * s) - (q0.coords()[i] + d2[i] * t))
        .collect();
    norm(&diff)
}

/// A region completely covered by strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Worldsheet {
    sheet: Region,
    strings: Vec<StringPath>,
    cover_tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverReport {
    pub covered: bool,
    pub uncovered: Vec<Point>,
}

impl Worldsheet {
    /// Builds a worldsheet, rejecting sheets the strings do not cover.
    pub fn new(
        sheet: Region,
        strings: Vec<StringPath>,
        cover_tolerance: f64,
    ) -> Result<Self, GeometryError> {
        let w = Self::unchecked(sheet, strings, cover_tolerance)?;
        let report = w.cover_check();
        if report.covered {
            Ok(w)
        } else {
            Err(GeometryError::Uncovered {
                count: report.uncovered.len(),
            })
        }
    }

    /// The sheet traced out by the strings' own vertices, which they cover trivially.
    pub fn from_strings(
        strings: Vec<StringPath>,
        cover_tolerance: f64,
    ) -> Result<Self, GeometryError> {
        let pts: Vec<Point> = strings
            .iter()
            .flat_map(|s| s.vertices().iter().cloned())
            .collect();
        let sheet = Region::boundary(pts)?;
        Self::new(sheet, strings, cover_tolerance)
    }

    /// Builds without the cover invariant, for inspecting partial covers.
    pub fn unchecked(
        sheet: Region,
        strings: Vec<StringPath>,
        cover_tolerance: f64,
    ) -> Result<Self, GeometryError> {
        if !(cover_tolerance > 0.0 && cover_tolerance.is_finite()) {
            return Err(GeometryError::BadTolerance(cover_tolerance));
        }
        if let Some(d) = sheet.dim() {
            if let Some(s) = strings.iter().find(|s| s.dim() != d) {
                return Err(GeometryError::DimensionMismatch {
                    expected: d,
                    found: s.dim(),
                });
            }
        }
        Ok(Self {
            sheet,
            strings,
            cover_tolerance,
        })
    }

    pub fn sheet(&self) -> &Region {
        &self.sheet
    }

    pub fn strings(&self) -> &[StringPath] {
        &self.strings
    }

    pub fn cover_tolerance(&self) -> f64 {
        self.cover_tolerance
    }

    pub fn with_string(mut self, s: StringPath) -> Self {
        self.strings.push(s);
        self
    }

    /// Checks that each sheet point lies within the cover tolerance of some
    /// string, listing offenders in lexicographic order.
    pub fn cover_check(&self) -> CoverReport {
        let uncovered: Vec<Point> = self
            .sheet
            .points()
            .iter()
            .filter(|p| {
                !self
                    .strings
                    .iter()
                    .any(|s| s.distance_to(p) <= self.cover_tolerance)
            })
            .cloned()
            .collect();
        let uncovered = canonical_points(uncovered);
        CoverReport {
            covered: uncovered.is_empty(),
            uncovered,
        }
    }
}

/// Free-function form of [`Worldsheet::cover_check`].
pub fn worldsheet_cover_check(w: &Worldsheet) -> CoverReport {
    w.cover_check()
}

/// Two worldsheets are antipodal when some member string of one is disjoint
/// from some member string of the other.
pub fn worldsheets_antipodal(a: &Worldsheet, b: &Worldsheet) -> bool {
    a.strings()
        .iter()
        .any(|s| b.strings().iter().any(|t| strings_disjoint(s, t)))
}
