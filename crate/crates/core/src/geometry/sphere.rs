use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use super::{GeometryError, Point};

/// An antipodally closed sample of the unit sphere `S^n ⊂ R^{n+1}`.
///
/// Samples are stored as a "positive" half followed by the exact negations of
/// that half, so `antipode(i) = (i + half) mod len` and the partner of every
/// sample is bit-for-bit its negation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SphereGrid {
    dimension: usize,
    samples: Vec<Point>,
    antipode_index: Vec<usize>,
}

impl SphereGrid {
    pub const UNIT_TOL: f64 = 1e-12;

    /// Closes `half` under negation. Fails if a sample is off the sphere or
    /// if two samples (including negations) coincide.
    pub fn from_half(dimension: usize, half: Vec<Point>) -> Result<Self, GeometryError> {
        for p in &half {
            if p.dim() != dimension + 1 {
                return Err(GeometryError::DimensionMismatch {
                    expected: dimension + 1,
                    found: p.dim(),
                });
            }
            if (p.norm() - 1.0).abs() > Self::UNIT_TOL {
                return Err(GeometryError::OffSphere(p.norm()));
            }
        }
        let h = half.len();
        let mut samples = half;
        let negs: Vec<Point> = samples.iter().map(Point::neg).collect();
        samples.extend(negs);
        for i in 0..samples.len() {
            for j in (i + 1)..samples.len() {
                if samples[i].approx_eq(&samples[j]) {
                    return Err(GeometryError::DuplicateSample {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        let antipode_index = (0..2 * h).map(|i| (i + h) % (2 * h)).collect();
        Ok(Self {
            dimension,
            samples,
            antipode_index,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn samples(&self) -> &[Point] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn antipode(&self, i: usize) -> usize {
        self.antipode_index[i]
    }

    pub fn antipode_index(&self) -> &[usize] {
        &self.antipode_index
    }

    /// Indices of the half whose members precede their partners.
    pub fn positive_half(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| i < self.antipode_index[i])
    }
}

/// Antipodally symmetric sample of `S^n` for `n ∈ {1, 2, 3}`.
///
/// * `n = 1`: `2·density` equally spaced points, angle `kπ/density`.
/// * `n = 2`: a Fibonacci lattice of `2·density²` points; its upper half
///   (`z > 0`) is kept and closed under negation.
/// * `n = 3`: Hopf coordinates `(cos η·e^{iξ₁}, sin η·e^{iξ₂})` on a
///   `density × 2·density × 2·density` grid, half kept and negated.
pub fn sphere_sample(n: usize, density: usize) -> Result<SphereGrid, GeometryError> {
    if density < 2 {
        return Err(GeometryError::BadDensity(density));
    }
    let half = match n {
        1 => (0..density)
            .map(|k| {
                let a = k as f64 * PI / density as f64;
                Point::from_slice(&[a.cos(), a.sin()])
            })
            .collect(),
        2 => fibonacci_upper_half(2 * density * density),
        3 => hopf_half(density),
        other => return Err(GeometryError::UnsupportedSphere(other)),
    };
    SphereGrid::from_half(n, half)
}

fn fibonacci_upper_half(total: usize) -> Vec<Point> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..total / 2)
        .map(|i| {
            let z = 1.0 - (2 * i + 1) as f64 / total as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            unit(vec![r * phi.cos(), r * phi.sin(), z])
        })
        .collect()
}

fn hopf_half(density: usize) -> Vec<Point> {
    let d = density as f64;
    let mut out = Vec::with_capacity(2 * density * density * density);
    for e in 0..density {
        let eta = (e as f64 + 0.5) * FRAC_PI_2 / d;
        let (s, c) = eta.sin_cos();
        for a in 0..density {
            let xi1 = a as f64 * PI / d;
            for b in 0..2 * density {
                let xi2 = b as f64 * PI / d;
                out.push(unit(vec![
                    c * xi1.cos(),
                    c * xi1.sin(),
                    s * xi2.cos(),
                    s * xi2.sin(),
                ]));
            }
        }
    }
    out
}

fn unit(v: Vec<f64>) -> Point {
    let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    Point::from_slice(&v.iter().map(|c| c / n).collect::<Vec<_>>())
}
