use serde::{Deserialize, Serialize};

use super::mesh::grid_faces;
use super::{
    cylinder_to_torus, roll_worldsheet, CylinderParams, MeshDocument, SurfaceError, TorusParams,
};
use crate::geometry::Point;

/// `twist(x, z) = a (1 − z cos(inner·x)) cos(outer·x)`.
///
/// The single-variable form `a (1 − cos(inner·t)) cos(outer·t)` is `twist(t, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistSpec {
    pub amplitude: f64,
    pub inner_freq: f64,
    pub outer_freq: f64,
}

impl Default for TwistSpec {
    fn default() -> Self {
        Self {
            amplitude: 1.2,
            inner_freq: 2.5,
            outer_freq: 5.0,
        }
    }
}

pub fn twist(x: f64, z: f64, spec: &TwistSpec) -> f64 {
    let outer = (spec.outer_freq * x).cos();
    let inner = (spec.inner_freq * x).cos();
    // Expanded so the small term z·cos(inner·x) is not absorbed into 1 before scaling.
    (-(spec.amplitude * z * inner)).mul_add(outer, spec.amplitude * outer)
}

/// Lifts a planar trace to `(x, z, twist(x, z))`, one vertex per sample.
///
/// The result is a vertex list rather than a [`StringPath`](crate::geometry::StringPath)
/// because recorded traces may repeat a sample.
pub fn eeg_twist_lift(trace: &[(f64, f64)], spec: &TwistSpec) -> Result<Vec<Point>, SurfaceError> {
    if trace.is_empty() {
        return Err(SurfaceError::ShortTrace {
            needed: 1,
            found: 0,
        });
    }
    if let Some(&v) = [spec.amplitude, spec.inner_freq, spec.outer_freq]
        .iter()
        .find(|v| !v.is_finite())
    {
        return Err(SurfaceError::BadTwist(v));
    }
    trace
        .iter()
        .enumerate()
        .map(|(index, &(x, z))| {
            let w = twist(x, z, spec);
            if !(x.is_finite() && z.is_finite() && w.is_finite()) {
                return Err(SurfaceError::NonFinite { index });
            }
            Ok(Point::from_slice(&[x, z, w]))
        })
        .collect()
}

/// Drops the twist coordinate.
pub fn project_xz(lifted: &[Point]) -> Vec<(f64, f64)> {
    lifted
        .iter()
        .map(|p| (p.coords()[0], p.coords()[1]))
        .collect()
}

/// Places `copies` translates of a trace on a torus.
///
/// The trace is read as a path on a flat sheet, `(x − x_min, z − z_min)`,
/// whose width and height are the spans of `x` and `z` (a zero span counts as
/// 1). Copy `k` is shifted by `k·h/copies` along the sheet height, wrapping
/// at `h`. The sheet is rolled into a cylinder and the cylinder bent into
/// the torus. Copies are joined by quads, wrapping from the last to the first.
pub fn eeg_torus_mesh(
    trace: &[(f64, f64)],
    params: &TorusParams,
    copies: usize,
) -> Result<MeshDocument, SurfaceError> {
    if trace.len() < 2 {
        return Err(SurfaceError::ShortTrace {
            needed: 2,
            found: trace.len(),
        });
    }
    if copies < 3 {
        return Err(SurfaceError::GridTooSmall(copies, trace.len()));
    }
    if let Some(index) = trace
        .iter()
        .position(|(x, z)| !(x.is_finite() && z.is_finite()))
    {
        return Err(SurfaceError::NonFinite { index });
    }
    let span = |f: fn(&(f64, f64)) -> f64| {
        let lo = trace.iter().map(f).fold(f64::INFINITY, f64::min);
        let hi = trace.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
        (lo, if hi > lo { hi - lo } else { 1.0 })
    };
    let (x0, w) = span(|s| s.0);
    let (z0, h) = span(|s| s.1);
    let cylinder = CylinderParams::from_sheet(w, h)?;

    let mut vertices = Vec::with_capacity(copies * trace.len());
    for k in 0..copies {
        let shift = k as f64 * h / copies as f64;
        for &(x, z) in trace {
            let u = (x - x0).clamp(0.0, w);
            let t = (z - z0 + shift).rem_euclid(h);
            let on_cylinder = roll_worldsheet(u, t, w, h)?;
            let p = cylinder_to_torus(&on_cylinder, &cylinder, params)?;
            vertices.push(p.coords().try_into().expect("torus points are 3-d"));
        }
    }
    MeshDocument::new(vertices, grid_faces(copies, trace.len(), true, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::torus_residual;
    use std::f64::consts::PI;

    #[test]
    fn twist_examples() {
        let spec = TwistSpec::default();
        assert_eq!(twist(0.0, 1.0, &spec), 0.0);
        for z in [-1.0, -0.25, 0.0, 0.5, 0.95, 1.0] {
            assert_eq!(twist(PI / 5.0, z, &spec), -1.2);
        }
        let flat = TwistSpec {
            amplitude: 0.0,
            ..spec
        };
        let lifted = eeg_twist_lift(&[(0.3, 2.0), (1.0, -1.0)], &flat).unwrap();
        assert!(lifted.iter().all(|p| p.coords()[2] == 0.0));
    }

    #[test]
    fn lift_round_trips_bitwise() {
        let trace: Vec<(f64, f64)> = (0..50)
            .map(|i| (i as f64 * 0.013, (i as f64 * 0.7).sin()))
            .collect();
        let lifted = eeg_twist_lift(&trace, &TwistSpec::default()).unwrap();
        assert_eq!(lifted.len(), trace.len());
        assert_eq!(project_xz(&lifted), trace);
    }

    #[test]
    fn lift_rejects_non_finite_and_empty() {
        let spec = TwistSpec::default();
        assert_eq!(
            eeg_twist_lift(&[(0.0, 1.0), (f64::NAN, 0.0)], &spec),
            Err(SurfaceError::NonFinite { index: 1 })
        );
        assert!(matches!(
            eeg_twist_lift(&[], &spec),
            Err(SurfaceError::ShortTrace { .. })
        ));
    }

    #[test]
    fn torus_mesh_from_trace() {
        let trace: Vec<(f64, f64)> = (0..20)
            .map(|i| (i as f64 * 0.05, (i as f64).cos()))
            .collect();
        let t = TorusParams::new(3.0, 1.0).unwrap();
        let m = eeg_torus_mesh(&trace, &t, 8).unwrap();
        assert_eq!(m.vertices().len(), 160);
        assert_eq!(m.faces().len(), 19 * 8);
        assert!(m.vertices().iter().all(|&v| torus_residual(v, &t) <= 1e-9));

        let flat: Vec<(f64, f64)> = (0..5).map(|i| (0.0, i as f64)).collect();
        assert!(eeg_torus_mesh(&flat, &t, 3).is_ok());
    }
}
