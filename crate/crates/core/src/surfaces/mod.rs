//! Flat worldsheet → cylinder → ring torus, torus measures, meshes and the
//! EEG twist lift.

mod eeg;
mod mesh;

pub use eeg::{eeg_torus_mesh, eeg_twist_lift, project_xz, twist, TwistSpec};
pub use mesh::{torus_mesh, MeshDocument};

use std::f64::consts::{PI, TAU};

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{GeometryError, Point};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error("ring torus requires c > r (got c = {c}, r = {r})")]
    NotRingTorus { c: f64, r: f64 },
    #[error("{name} must be finite and positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("{name} = {value} is outside [0, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        max: f64,
    },
    #[error("twist parameters must be finite, got {0}")]
    BadTwist(f64),
    #[error("sample {index} is not finite")]
    NonFinite { index: usize },
    #[error("mesh grid must be at least 3x3, got {0}x{1}")]
    GridTooSmall(usize, usize),
    #[error("mesh has no vertices or faces")]
    EmptyMesh,
    #[error("face {face} refers to vertex {index}, but the mesh has {vertices}")]
    FaceIndex {
        face: usize,
        index: usize,
        vertices: usize,
    },
    #[error("need at least {needed} trace samples, got {found}")]
    ShortTrace { needed: usize, found: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn positive(name: &'static str, value: f64) -> Result<f64, SurfaceError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(SurfaceError::NonPositive { name, value })
    }
}

/// Lateral surface of a cylinder of radius `r` and height `h`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CylinderParams {
    radius: f64,
    height: f64,
}

impl CylinderParams {
    pub fn new(radius: f64, height: f64) -> Result<Self, SurfaceError> {
        Ok(Self {
            radius: positive("radius", radius)?,
            height: positive("height", height)?,
        })
    }

    /// The cylinder obtained by rolling a `width × height` sheet: `r = w / 2π`.
    pub fn from_sheet(width: f64, height: f64) -> Result<Self, SurfaceError> {
        Self::new(positive("width", width)? / TAU, height)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn lateral_area(&self) -> f64 {
        TAU * self.radius * self.height
    }
}

/// Ring torus with center radius `c` and tube radius `r`, `c > r > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TorusParams {
    c: f64,
    r: f64,
}

impl TorusParams {
    pub fn new(c: f64, r: f64) -> Result<Self, SurfaceError> {
        positive("tube radius r", r)?;
        if !(c.is_finite() && c > r) {
            return Err(SurfaceError::NotRingTorus { c, r });
        }
        Ok(Self { c, r })
    }

    pub fn center_radius(&self) -> f64 {
        self.c
    }

    pub fn tube_radius(&self) -> f64 {
        self.r
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TorusMeasures {
    pub area: f64,
    pub volume: f64,
}

/// Rolls the sheet point `(u, t)` of a `width × height` sheet onto the cylinder
/// `(r cos θ, r sin θ, t)` with `r = w/2π`, `θ = 2πu/w`.
pub fn roll_worldsheet(u: f64, t: f64, width: f64, height: f64) -> Result<Point, SurfaceError> {
    let cyl = CylinderParams::from_sheet(width, height)?;
    if !(0.0..=width).contains(&u) {
        return Err(SurfaceError::OutOfRange {
            name: "u",
            value: u,
            max: width,
        });
    }
    if !(0.0..=height).contains(&t) {
        return Err(SurfaceError::OutOfRange {
            name: "t",
            value: t,
            max: height,
        });
    }
    let theta = TAU * u / width;
    Ok(Point::from_slice(&[
        cyl.radius * theta.cos(),
        cyl.radius * theta.sin(),
        t,
    ]))
}

/// `((c + r cos v) cos u, (c + r cos v) sin u, r sin v)`.
pub fn bend_to_torus(params: &TorusParams, u: f64, v: f64) -> Result<Point, SurfaceError> {
    if !u.is_finite() {
        return Err(SurfaceError::NonFinite { index: 0 });
    }
    if !v.is_finite() {
        return Err(SurfaceError::NonFinite { index: 1 });
    }
    let ring = params.c + params.r * v.cos();
    Ok(Point::from_slice(&[
        ring * u.cos(),
        ring * u.sin(),
        params.r * v.sin(),
    ]))
}

/// Bends a point of the cylinder onto the torus: the cylinder height becomes
/// the toroidal angle `u = 2πt/h` and the cylinder angle becomes `v`, so the
/// two ends of the cylinder meet.
pub fn cylinder_to_torus(
    p: &Point,
    cylinder: &CylinderParams,
    params: &TorusParams,
) -> Result<Point, SurfaceError> {
    let c = p.coords();
    if c.len() != 3 {
        return Err(GeometryError::DimensionMismatch {
            expected: 3,
            found: c.len(),
        }
        .into());
    }
    let theta = c[1].atan2(c[0]);
    bend_to_torus(params, TAU * c[2] / cylinder.height, theta)
}

/// Surface area `4π²cr` and enclosed volume `2π²cr²`.
pub fn torus_measures(params: &TorusParams) -> TorusMeasures {
    let (c, r) = (params.c, params.r);
    TorusMeasures {
        area: 4.0 * PI * PI * c * r,
        volume: 2.0 * PI * PI * c * r * r,
    }
}

/// `|(√(x² + y²) − c)² + z² − r²|`, zero exactly on the torus.
pub fn torus_residual(p: [f64; 3], params: &TorusParams) -> f64 {
    let [x, y, z] = p;
    let d = x.hypot(y) - params.c;
    (d * d + z * z - params.r * params.r).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn xyz(p: &Point) -> [f64; 3] {
        p.coords().try_into().unwrap()
    }

    #[test]
    fn roll_examples() {
        let p = roll_worldsheet(0.0, 0.0, TAU, 1.0).unwrap();
        assert_eq!(xyz(&p), [1.0, 0.0, 0.0]);
        let q = xyz(&roll_worldsheet(PI, 0.5, TAU, 1.0).unwrap());
        assert!((q[0] + 1.0).abs() < 1e-15 && q[1].abs() < 1e-15 && q[2] == 0.5);
        let seam = xyz(&roll_worldsheet(TAU, 0.0, TAU, 1.0).unwrap());
        assert!((seam[0] - 1.0).abs() < 1e-15 && seam[1].abs() < 1e-15);
        assert!(matches!(
            roll_worldsheet(7.0, 0.0, TAU, 1.0),
            Err(SurfaceError::OutOfRange { name: "u", .. })
        ));
        let cyl = CylinderParams::from_sheet(3.0, 2.0).unwrap();
        assert!((cyl.lateral_area() - 6.0).abs() < 1e-15);
    }

    #[test]
    fn bend_examples() {
        let t = TorusParams::new(2.0, 1.0).unwrap();
        assert_eq!(xyz(&bend_to_torus(&t, 0.0, 0.0).unwrap()), [3.0, 0.0, 0.0]);
        let p = xyz(&bend_to_torus(&t, FRAC_PI_2, PI).unwrap());
        assert!(p[0].abs() < 1e-15 && (p[1] - 1.0).abs() < 1e-15 && p[2].abs() < 1e-15);
    }

    #[test]
    fn measures_and_precondition() {
        let m = torus_measures(&TorusParams::new(2.0, 1.0).unwrap());
        assert!((m.area - 78.956_835_208_714_85).abs() < 1e-10);
        assert!((m.volume - 39.478_417_604_357_43).abs() < 1e-10);
        let d = torus_measures(&TorusParams::new(5.0, 2.0).unwrap());
        let s = torus_measures(&TorusParams::new(5.0, 1.0).unwrap());
        assert!((d.area / s.area - 2.0).abs() < 1e-15 && (d.volume / s.volume - 4.0).abs() < 1e-15);
        let err = TorusParams::new(1.0, 1.0).unwrap_err();
        assert!(err.to_string().contains("requires c > r"));
    }

    #[test]
    fn residual_examples() {
        let t = TorusParams::new(2.0, 1.0).unwrap();
        assert_eq!(torus_residual([0.0, 0.0, 0.0], &t), 3.0);
        assert_eq!(torus_residual([3.0, 0.0, 0.0], &t), 0.0);
    }

    #[test]
    fn sheet_to_torus_lands_on_the_torus() {
        let (w, h) = (3.0, 5.0);
        let cyl = CylinderParams::from_sheet(w, h).unwrap();
        let t = TorusParams::new(2.0, 0.5).unwrap();
        for i in 0..=10 {
            for j in 0..=10 {
                let p = roll_worldsheet(w * i as f64 / 10.0, h * j as f64 / 10.0, w, h).unwrap();
                let q = cylinder_to_torus(&p, &cyl, &t).unwrap();
                assert!(torus_residual(xyz(&q), &t) <= 1e-12);
            }
        }
    }
}
