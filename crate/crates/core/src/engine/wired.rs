use serde::Serialize;

use crate::geometry::{norm, StringPath};

/// Closed ball of radius `radius` about the origin of `R^k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BallCheck {
    pub radius: f64,
}

impl BallCheck {
    pub const UNIT: BallCheck = BallCheck { radius: 1.0 };

    pub fn contains(&self, v: &[f64]) -> bool {
        norm(v) <= self.radius
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WiredFriend {
    /// `(arc length, endpoint chord, vertex diameter, total absolute turning)`.
    pub shape: Vec<f64>,
    /// `shape / (1 + ‖shape‖)`.
    pub description: Vec<f64>,
    pub ball_ok: bool,
}

/// Shape of a string from quantities preserved by rigid motions.
///
/// The turning angle is summed over interior vertices, plus the two closing
/// vertices of a closed string. A closed string has zero chord.
pub fn shape_descriptor(s: &StringPath) -> Vec<f64> {
    let v = s.vertices();
    let chord = if s.is_closed() {
        0.0
    } else {
        v[0].distance(&v[v.len() - 1])
    };
    let mut diameter: f64 = 0.0;
    for (i, p) in v.iter().enumerate() {
        for q in &v[i + 1..] {
            diameter = diameter.max(p.distance(q));
        }
    }
    let dirs: Vec<Vec<f64>> = s.segments().map(|(a, b)| b.sub(a)).collect();
    let mut turning = 0.0;
    for w in dirs.windows(2) {
        turning += angle_between(&w[0], &w[1]);
    }
    if s.is_closed() {
        turning += angle_between(&dirs[dirs.len() - 1], &dirs[0]);
    }
    vec![s.arc_length(), chord, diameter, turning]
}

/// Angle between two nonzero vectors, accurate near 0 and π.
fn angle_between(u: &[f64], v: &[f64]) -> f64 {
    let (nu, nv) = (norm(u), norm(v));
    let diff: Vec<f64> = u.iter().zip(v).map(|(a, b)| a / nu - b / nv).collect();
    let sum: Vec<f64> = u.iter().zip(v).map(|(a, b)| a / nu + b / nv).collect();
    2.0 * norm(&diff).atan2(norm(&sum))
}

/// Shape descriptor, its projection into the open unit ball, and the ball check.
pub fn wired_friend_pipeline(s: &StringPath) -> WiredFriend {
    let shape = shape_descriptor(s);
    let scale = 1.0 + norm(&shape);
    let description: Vec<f64> = shape.iter().map(|c| c / scale).collect();
    let ball_ok = BallCheck::UNIT.contains(&description);
    WiredFriend {
        shape,
        description,
        ball_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn string(c: &[[f64; 2]], closed: bool) -> StringPath {
        StringPath::new(c.iter().map(|p| Point::from_slice(p)).collect(), closed).unwrap()
    }

    #[test]
    fn unit_segment() {
        let w = wired_friend_pipeline(&string(&[[0.0, 0.0], [1.0, 0.0]], false));
        assert_eq!(w.shape, vec![1.0, 1.0, 1.0, 0.0]);
        assert!(w.ball_ok && norm(&w.description) < 1.0);
        let r = wired_friend_pipeline(&string(&[[0.0, 0.0], [0.0, 1.0]], false));
        assert_eq!(r.shape, w.shape);
    }

    #[test]
    fn right_angle_and_square() {
        let l = shape_descriptor(&string(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]], false));
        assert_eq!(l[0], 2.0);
        assert!((l[1] - 2f64.sqrt()).abs() < 1e-15);
        assert!((l[3] - FRAC_PI_2).abs() < 1e-15);

        let sq = shape_descriptor(&string(
            &[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
            true,
        ));
        assert_eq!(sq[0], 4.0);
        assert_eq!(sq[1], 0.0);
        assert!((sq[3] - 2.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn reversal_is_pi() {
        let s = shape_descriptor(&string(&[[0.0, 0.0], [1.0, 0.0], [0.5, 0.0]], false));
        assert!((s[3] - PI).abs() < 1e-15);
        assert_eq!(s[2], 1.0);
    }
}
