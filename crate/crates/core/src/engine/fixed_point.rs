use serde::Serialize;

use super::EngineError;
use crate::geometry::norm;

/// Samples per axis at every refinement level.
pub const GRID_POINTS: usize = 101;

/// Slack allowed on `‖f(x)‖ ≤ 1` when checking that `f` maps the ball into itself.
const RANGE_SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixedPoint {
    pub point: Vec<f64>,
    /// `‖f(x) − x‖`.
    pub residual: f64,
    pub refinements: usize,
    pub evaluations: usize,
}

/// Searches the closed unit ball `B_n` for `x` with `‖f(x) − x‖ ≤ tol`.
///
/// Each level evaluates a `101^n` grid over a box, keeping samples inside the
/// ball, and moves the box to the best sample. The box shrinks tenfold when
/// the best sample is off the box faces (faces on the ball's bounding cube do
/// not count); otherwise it slides at the same width toward the fixed point.
/// Level 0 covers `[−1, 1]^n` and doubles as the check that `f(B_n) ⊆ B_n`.
pub fn fixed_point_search(
    f: impl Fn(&[f64]) -> Vec<f64>,
    n: usize,
    tol: f64,
    max_refinements: usize,
) -> Result<FixedPoint, EngineError> {
    if !(1..=3).contains(&n) {
        return Err(EngineError::BadDimension(n));
    }
    let steps = GRID_POINTS - 1;
    let mut center = vec![0.0; n];
    let mut half = 1.0;
    let mut evaluations = 0;
    let mut best: Option<(Vec<f64>, f64)> = None;

    for level in 0..=max_refinements {
        let mut level_best: Option<(Vec<f64>, f64, Vec<usize>)> = None;
        let mut idx = vec![0usize; n];
        loop {
            let x: Vec<f64> = idx
                .iter()
                .zip(&center)
                .map(|(&k, &c)| c + half * (2.0 * k as f64 / steps as f64 - 1.0))
                .collect();
            if norm(&x) <= 1.0 {
                let y = f(&x);
                evaluations += 1;
                if y.len() != n {
                    return Err(EngineError::MapArity {
                        expected: n,
                        found: y.len(),
                    });
                }
                let image_norm = norm(&y);
                if level == 0 && (image_norm.is_nan() || image_norm > 1.0 + RANGE_SLACK) {
                    return Err(EngineError::RangeViolation {
                        point: x,
                        image_norm,
                    });
                }
                let r = norm(&y.iter().zip(&x).map(|(a, b)| a - b).collect::<Vec<_>>());
                if level_best.as_ref().is_none_or(|(_, br, _)| r < *br) {
                    level_best = Some((x, r, idx.clone()));
                }
            }
            if !advance(&mut idx, steps) {
                break;
            }
        }
        // The grid center is always in the ball, so every level has a sample.
        let (x, r, at) = level_best.expect("grid center lies in the ball");
        if best.as_ref().is_none_or(|(_, br)| r < *br) {
            best = Some((x.clone(), r));
        }
        if r <= tol {
            return Ok(FixedPoint {
                point: x,
                residual: r,
                refinements: level,
                evaluations,
            });
        }
        let on_inner_face = at
            .iter()
            .zip(&center)
            .any(|(&k, &c)| (k == 0 && c - half > -1.0) || (k == steps && c + half < 1.0));
        if !on_inner_face {
            half /= 10.0;
        }
        center = x;
    }
    let residual = best.map_or(f64::INFINITY, |(_, r)| r);
    Err(EngineError::BudgetExhausted {
        refinements: max_refinements,
        residual,
    })
}

fn advance(idx: &mut [usize], steps: usize) -> bool {
    for k in idx.iter_mut() {
        if *k < steps {
            *k += 1;
            return true;
        }
        *k = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halving_map_fixes_the_origin() {
        let fp = fixed_point_search(|x| x.iter().map(|v| v / 2.0).collect(), 1, 1e-12, 20).unwrap();
        assert_eq!(fp.point, vec![0.0]);
        assert_eq!(fp.refinements, 0);
    }

    #[test]
    fn cosine_fixed_point() {
        let fp = fixed_point_search(|x| vec![x[0].cos()], 1, 1e-10, 40).unwrap();
        assert!((fp.point[0] - 0.739_085_133_215_160_6).abs() < 1e-9);
    }

    #[test]
    fn rotation_fixes_the_center() {
        let fp = fixed_point_search(|x| vec![-x[1], x[0]], 2, 1e-12, 20).unwrap();
        assert!(norm(&fp.point) <= 1e-12);
    }

    #[test]
    fn boundary_fixed_point() {
        // x ↦ (x + 1)/2 fixes 1, on the ball's boundary.
        let fp = fixed_point_search(|x| vec![(x[0] + 1.0) / 2.0], 1, 1e-9, 40).unwrap();
        assert!((fp.point[0] - 1.0).abs() <= 2e-9);
    }

    #[test]
    fn fixed_point_outside_the_first_shrunk_box() {
        // contraction factor 0.9 puts the best level-0 sample well away from x*
        let b = [0.05, -0.03];
        let f = |x: &[f64]| vec![0.9 * x[1] + b[0], -0.9 * x[0] + b[1]];
        let fp = fixed_point_search(f, 2, 1e-8, 60).unwrap();
        let y = f(&fp.point);
        assert!(norm(&[y[0] - fp.point[0], y[1] - fp.point[1]]) <= 1e-8);
    }

    #[test]
    fn range_violation_is_reported() {
        let err = fixed_point_search(|x| vec![2.0 * x[0]], 1, 1e-9, 5).unwrap_err();
        assert!(matches!(err, EngineError::RangeViolation { .. }));
    }

    #[test]
    fn budget_exhaustion() {
        let err = fixed_point_search(|x| vec![x[0].cos()], 1, 1e-12, 1).unwrap_err();
        assert!(matches!(
            err,
            EngineError::BudgetExhausted { refinements: 1, .. }
        ));
        assert_eq!(
            fixed_point_search(|x| x.to_vec(), 4, 1e-9, 1),
            Err(EngineError::BadDimension(4))
        );
    }
}
