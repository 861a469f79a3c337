use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ProximityError;
use crate::geometry::{Point, Region};

/// Built-in point evaluators, selectable by name from a JSON config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "params", rename_all = "kebab-case")]
pub enum Feature {
    /// `Φ(x) = x`.
    Coords,
    /// `Φ(x) = ‖x‖`.
    Norm,
    /// 4-neighbour count of the integer cell `x` in a `width × height` grid.
    AdjacencyCount { width: usize, height: usize },
    /// `Φ(x) = (|x₁|, …, |xₙ|)`, an even map: `Φ(x) = Φ(−x)`.
    EvenCoords,
    /// The same vector for every point.
    Constant { value: Vec<f64> },
}

impl Feature {
    fn evaluate(&self, p: &Point) -> Result<Vec<f64>, String> {
        match self {
            Feature::Coords => Ok(p.coords().to_vec()),
            Feature::Norm => Ok(vec![p.norm()]),
            Feature::EvenCoords => Ok(p.coords().iter().map(|c| c.abs()).collect()),
            Feature::Constant { value } => Ok(value.clone()),
            Feature::AdjacencyCount { width, height } => {
                let c = p.coords();
                if c.len() != 2 {
                    return Err(format!(
                        "adjacency-count needs a 2-d cell, got {} coordinates",
                        c.len()
                    ));
                }
                let cell = |v: f64, limit: usize| -> Option<usize> {
                    (v.fract() == 0.0 && v >= 0.0 && (v as usize) < limit).then_some(v as usize)
                };
                match (cell(c[0], *width), cell(c[1], *height)) {
                    (Some(i), Some(j)) => {
                        Ok(vec![grid_neighbour_count(*width, *height, i, j) as f64])
                    }
                    _ => Err(format!("{p} is not a cell of the {width}x{height} grid")),
                }
            }
        }
    }
}

/// Number of 4-adjacent cells of `(i, j)` inside a `width × height` grid.
pub(crate) fn grid_neighbour_count(width: usize, height: usize, i: usize, j: usize) -> usize {
    usize::from(i > 0)
        + usize::from(i + 1 < width)
        + usize::from(j > 0)
        + usize::from(j + 1 < height)
}

type CustomFn = Arc<dyn Fn(&Point) -> Option<Vec<f64>> + Send + Sync>;

#[derive(Clone)]
enum Evaluator {
    Builtin(Feature),
    Custom { label: String, f: CustomFn },
}

/// `x ↦ Φ(x) ∈ R^k` together with the component-wise match tolerance `τ`.
#[derive(Clone)]
pub struct FeatureMap {
    evaluator: Evaluator,
    tolerance: f64,
}

impl fmt::Debug for FeatureMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match &self.evaluator {
            Evaluator::Builtin(b) => format!("{b:?}"),
            Evaluator::Custom { label, .. } => format!("Custom({label})"),
        };
        f.debug_struct("FeatureMap")
            .field("evaluator", &name)
            .field("tolerance", &self.tolerance)
            .finish()
    }
}

/// The JSON form of a built-in feature map:
/// `{"name": "adjacency-count", "params": {"width": 3, "height": 3}, "tolerance": 0}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureConfig {
    #[serde(flatten)]
    pub feature: Feature,
    #[serde(default)]
    pub tolerance: f64,
}

impl FeatureMap {
    pub fn builtin(feature: Feature, tolerance: f64) -> Result<Self, ProximityError> {
        check_tolerance(tolerance)?;
        if let Feature::Constant { value } = &feature {
            if value.is_empty() || value.iter().any(|v| !v.is_finite()) {
                return Err(ProximityError::Config(
                    "constant feature needs a non-empty finite vector".into(),
                ));
            }
        }
        Ok(Self {
            evaluator: Evaluator::Builtin(feature),
            tolerance,
        })
    }

    /// Exact-match built-in.
    pub fn exact(feature: Feature) -> Self {
        Self::builtin(feature, 0.0).expect("zero tolerance is valid")
    }

    /// A caller-supplied evaluator; returning `None` marks the point as outside
    /// the evaluator's domain.
    pub fn custom(
        label: impl Into<String>,
        tolerance: f64,
        f: impl Fn(&Point) -> Option<Vec<f64>> + Send + Sync + 'static,
    ) -> Result<Self, ProximityError> {
        check_tolerance(tolerance)?;
        Ok(Self {
            evaluator: Evaluator::Custom {
                label: label.into(),
                f: Arc::new(f),
            },
            tolerance,
        })
    }

    pub fn from_config(config: &FeatureConfig) -> Result<Self, ProximityError> {
        Self::builtin(config.feature.clone(), config.tolerance)
    }

    pub fn from_json(text: &str) -> Result<Self, ProximityError> {
        let config: FeatureConfig =
            serde_json::from_str(text).map_err(|e| ProximityError::Config(e.to_string()))?;
        Self::from_config(&config)
    }

    /// The config this map was built from, if it is a built-in.
    pub fn config(&self) -> Option<FeatureConfig> {
        match &self.evaluator {
            Evaluator::Builtin(feature) => Some(FeatureConfig {
                feature: feature.clone(),
                tolerance: self.tolerance,
            }),
            Evaluator::Custom { .. } => None,
        }
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn evaluate(&self, p: &Point) -> Result<Vec<f64>, ProximityError> {
        let out = match &self.evaluator {
            Evaluator::Builtin(feature) => feature.evaluate(p),
            Evaluator::Custom { label, f } => {
                f(p).ok_or_else(|| format!("{p} is outside the domain of `{label}`"))
            }
        };
        match out {
            Ok(v) if !v.is_empty() && v.iter().all(|c| c.is_finite()) => Ok(v),
            Ok(_) => Err(ProximityError::Evaluator {
                point: p.coords().to_vec(),
                reason: "feature vector is empty or non-finite".into(),
            }),
            Err(reason) => Err(ProximityError::Evaluator {
                point: p.coords().to_vec(),
                reason,
            }),
        }
    }

    /// Component-wise match within `τ`. Vectors of different length never match.
    pub fn matches(&self, a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len()
            && a.iter()
                .zip(b)
                .all(|(x, y)| (x - y).abs() <= self.tolerance)
    }

    /// Evaluates every point of `region`, in region order.
    pub fn evaluate_all(&self, region: &Region) -> Result<Vec<Vec<f64>>, ProximityError> {
        region.points().iter().map(|p| self.evaluate(p)).collect()
    }
}

fn check_tolerance(t: f64) -> Result<(), ProximityError> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(ProximityError::Config(format!(
            "match tolerance must be finite and non-negative, got {t}"
        )))
    }
}
