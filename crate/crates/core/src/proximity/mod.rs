//! Feature maps, descriptive intersection, the three nearness relations and
//! a randomized checker for their axioms.

mod axioms;
mod feature;
mod relations;
mod spc;

pub use axioms::{check_axioms, check_axioms_with, Axiom, AxiomReport, Violation};
pub use feature::{Feature, FeatureConfig, FeatureMap};
pub use relations::{describe_region, descriptive_intersection, dnear, sn, snd, DescriptiveSpace};
pub use spc::{sample_region_pairs, spc_check, SpcCounterexample, SpcReport};

pub(crate) use feature::grid_neighbour_count;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{GeometryError, Region};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProximityError {
    #[error("feature config: {0}")]
    Config(String),
    #[error("cannot evaluate feature at {point:?}: {reason}")]
    Evaluator { point: Vec<f64>, reason: String },
    #[error(transparent)]
    Geometry(GeometryError),
    #[error("universe contains a repeated point")]
    DuplicatePoint,
    #[error("point {0:?} is not in the universe")]
    OutsideUniverse(Vec<f64>),
    #[error("unknown proximity family `{0}`")]
    UnknownFamily(String),
    #[error("at least one trial is required")]
    NoTrials,
}

/// The three relation families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Descriptive Lodato nearness `δΦ`.
    LodatoDescriptive,
    /// Strong nearness `sn`.
    Strong,
    /// Descriptive strong nearness `snd`.
    DescriptiveStrong,
}

impl Family {
    pub const ALL: [Family; 3] = [
        Family::LodatoDescriptive,
        Family::Strong,
        Family::DescriptiveStrong,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::LodatoDescriptive => "lodato-descriptive",
            Family::Strong => "strong",
            Family::DescriptiveStrong => "descriptive-strong",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ProximityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lodato-descriptive" | "lodato" | "descriptive" => Ok(Family::LodatoDescriptive),
            "strong" => Ok(Family::Strong),
            "descriptive-strong" => Ok(Family::DescriptiveStrong),
            other => Err(ProximityError::UnknownFamily(other.to_string())),
        }
    }
}

/// A nearness relation on the subsets of a [`DescriptiveSpace`].
///
/// [`Family`] implements it with the built-in relations; tests implement it
/// with deliberately broken ones to exercise the axiom checker.
pub trait Proximity: Sync {
    fn near(
        &self,
        space: &DescriptiveSpace,
        a: &Region,
        b: &Region,
    ) -> Result<bool, ProximityError>;
}

impl Proximity for Family {
    fn near(
        &self,
        space: &DescriptiveSpace,
        a: &Region,
        b: &Region,
    ) -> Result<bool, ProximityError> {
        match self {
            Family::LodatoDescriptive => space.dnear(a, b),
            Family::Strong => Ok(space.sn(a, b)),
            Family::DescriptiveStrong => space.snd(a, b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
            assert_eq!(serde_json::to_string(&f).unwrap(), format!("\"{f}\""));
        }
        assert_eq!(
            "nope".parse::<Family>(),
            Err(ProximityError::UnknownFamily("nope".into()))
        );
    }
}
