use serde::{Deserialize, Serialize};

use super::{shape_descriptor, EngineError};
use crate::geometry::{Point, StringPath, Worldsheet};
use crate::proximity::{FeatureConfig, FeatureMap};

/// How point descriptions are combined into one description of a region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reducer {
    /// Component-wise mean of `Φ` over the points.
    Mean,
    /// Component-wise minima followed by component-wise maxima.
    MinMax,
    /// The wired-friend shape of a string; a worldsheet takes the mean shape of its strings.
    Shape,
}

/// JSON form: `{"feature": {"name": "even-coords"}, "reducer": "mean", "tolerance": 0}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DescriptorConfig {
    pub feature: FeatureConfig,
    pub reducer: Reducer,
    #[serde(default)]
    pub tolerance: f64,
}

/// Region-level description `f(A)`, matched by Chebyshev distance within `τ`.
#[derive(Clone, Debug)]
pub struct RegionDescriptor {
    feature: FeatureMap,
    reducer: Reducer,
    tolerance: f64,
}

impl RegionDescriptor {
    pub fn new(feature: FeatureMap, reducer: Reducer, tolerance: f64) -> Result<Self, EngineError> {
        if !(tolerance >= 0.0 && tolerance.is_finite()) {
            return Err(EngineError::BadTolerance(tolerance));
        }
        Ok(Self {
            feature,
            reducer,
            tolerance,
        })
    }

    pub fn from_config(config: &DescriptorConfig) -> Result<Self, EngineError> {
        Self::new(
            FeatureMap::from_config(&config.feature)?,
            config.reducer,
            config.tolerance,
        )
    }

    pub fn feature(&self) -> &FeatureMap {
        &self.feature
    }

    pub fn reducer(&self) -> Reducer {
        self.reducer
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Description of a single point: the reducer applied to `{x}`.
    pub fn describe_point(&self, p: &Point) -> Result<Vec<f64>, EngineError> {
        self.reduce(std::slice::from_ref(p), "points")
    }

    pub fn describe_string(&self, s: &StringPath) -> Result<Vec<f64>, EngineError> {
        match self.reducer {
            Reducer::Shape => Ok(shape_descriptor(s)),
            _ => self.reduce(s.vertices(), "strings"),
        }
    }

    pub fn describe_sheet(&self, w: &Worldsheet) -> Result<Vec<f64>, EngineError> {
        match self.reducer {
            Reducer::Shape => {
                let shapes: Vec<Vec<f64>> = w.strings().iter().map(shape_descriptor).collect();
                Ok(mean(&shapes))
            }
            _ => self.reduce(w.sheet().points(), "worldsheets"),
        }
    }

    fn reduce(&self, points: &[Point], kind: &'static str) -> Result<Vec<f64>, EngineError> {
        let values = points
            .iter()
            .map(|p| self.feature.evaluate(p))
            .collect::<Result<Vec<_>, _>>()?;
        match self.reducer {
            Reducer::Mean => Ok(mean(&values)),
            Reducer::MinMax => Ok(min_max(&values)),
            Reducer::Shape => Err(EngineError::ShapeNeedsString(kind)),
        }
    }

    /// Chebyshev distance; descriptions of different arity are infinitely far apart.
    pub fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        if a.len() != b.len() {
            return f64::INFINITY;
        }
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    pub fn matches(&self, a: &[f64], b: &[f64]) -> bool {
        self.distance(a, b) <= self.tolerance
    }
}

/// Component-wise mean, summed in sorted order so the result does not depend
/// on the order of the inputs.
fn mean(values: &[Vec<f64>]) -> Vec<f64> {
    let k = values[0].len();
    (0..k)
        .map(|c| {
            let mut col: Vec<f64> = values.iter().map(|v| v[c]).collect();
            col.sort_by(f64::total_cmp);
            col.iter().sum::<f64>() / col.len() as f64
        })
        .collect()
}

fn min_max(values: &[Vec<f64>]) -> Vec<f64> {
    let k = values[0].len();
    let lo = (0..k).map(|c| values.iter().map(|v| v[c]).fold(f64::INFINITY, f64::min));
    let hi = (0..k).map(|c| {
        values
            .iter()
            .map(|v| v[c])
            .fold(f64::NEG_INFINITY, f64::max)
    });
    lo.chain(hi).collect()
}
