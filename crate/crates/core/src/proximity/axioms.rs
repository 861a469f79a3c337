//! Randomized and exhaustive checking of the proximity axioms.
//!
//! Each trial draws one instance per axiom from a seeded per-trial stream.
//! Universes of at most [`EXHAUSTIVE_LIMIT`] points are additionally checked
//! on every instance: all subsets, all pairs of subsets, all triples, and for
//! the union clause all families of two sets.

use std::fmt;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{descriptive_intersection, DescriptiveSpace, Family, Proximity, ProximityError};
use crate::geometry::Region;

/// Largest universe whose subsets are enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 6;

/// Exhaustive violations kept per axiom. Trial violations are never dropped.
const MAX_EXHAUSTIVE_WITNESSES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    DP0,
    DP1,
    DP2,
    DP3,
    DP4,
    DP5,
    SnN0,
    SnN1,
    SnN2,
    SnN3,
    SnN4,
    SnN5,
    SnN6,
    DsnP0,
    DsnP1,
    DsnP2,
    DsnP4,
    DsnP5,
    DsnP6,
}

impl Axiom {
    pub fn id(self) -> &'static str {
        use Axiom::*;
        match self {
            DP0 => "dP0",
            DP1 => "dP1",
            DP2 => "dP2",
            DP3 => "dP3",
            DP4 => "dP4",
            DP5 => "dP5",
            SnN0 => "snN0",
            SnN1 => "snN1",
            SnN2 => "snN2",
            SnN3 => "snN3",
            SnN4 => "snN4",
            SnN5 => "snN5",
            SnN6 => "snN6",
            DsnP0 => "dsnP0",
            DsnP1 => "dsnP1",
            DsnP2 => "dsnP2",
            DsnP4 => "dsnP4",
            DsnP5 => "dsnP5",
            DsnP6 => "dsnP6",
        }
    }

    /// The axioms of `family`. There is no `dsnP3`.
    pub fn of(family: Family) -> &'static [Axiom] {
        use Axiom::*;
        match family {
            Family::LodatoDescriptive => &[DP0, DP1, DP2, DP3, DP4, DP5],
            Family::Strong => &[SnN0, SnN1, SnN2, SnN3, SnN4, SnN5, SnN6],
            Family::DescriptiveStrong => &[DsnP0, DsnP1, DsnP2, DsnP4, DsnP5, DsnP6],
        }
    }

    /// Axioms whose universal quantifiers make sparse sampling pointless.
    fn exhaustive_only(self) -> bool {
        matches!(self, Axiom::DP4 | Axiom::DP5)
    }

    fn slots(self) -> &'static [Slot] {
        use Axiom::*;
        use Slot::*;
        match self {
            DP0 | SnN0 | DsnP0 => &[Set],
            DP1 | DP2 | SnN1 | SnN2 | SnN4 | DsnP1 | DsnP2 | DsnP4 => &[Set, Set],
            DP3 | DP4 | SnN3 => &[Set, Set, Set],
            DP5 | SnN6 | DsnP6 => &[Point, Point],
            SnN5 | DsnP5 => &[Point, Set],
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Serialize for Axiom {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

#[derive(Clone, Copy)]
enum Slot {
    Set,
    Point,
}

/// A failed axiom instance. `trial` is `None` for violations found by the
/// exhaustive pass.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub trial: Option<usize>,
    pub witnesses: Vec<Region>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub family: Family,
    pub trials: usize,
    pub seed: u64,
    pub universe_size: usize,
    /// Axioms that were actually checked.
    pub axioms: Vec<Axiom>,
    pub exhaustive: bool,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of(&self, axiom: Axiom) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.axiom == axiom)
    }
}

/// Checks the built-in relation of `family` on `space`.
pub fn check_axioms(
    space: &DescriptiveSpace,
    family: Family,
    trials: usize,
    seed: u64,
) -> Result<AxiomReport, ProximityError> {
    check_axioms_with(space, family, &family, trials, seed)
}

/// Checks the axioms of `family` against an arbitrary `relation`.
pub fn check_axioms_with(
    space: &DescriptiveSpace,
    family: Family,
    relation: &dyn Proximity,
    trials: usize,
    seed: u64,
) -> Result<AxiomReport, ProximityError> {
    if trials == 0 {
        return Err(ProximityError::NoTrials);
    }
    let n = space.len();
    let exhaustive = n <= EXHAUSTIVE_LIMIT;
    let axioms: Vec<Axiom> = Axiom::of(family)
        .iter()
        .copied()
        .filter(|a| exhaustive || !a.exhaustive_only())
        .collect();
    let sampled: Vec<Axiom> = axioms
        .iter()
        .copied()
        .filter(|a| !a.exhaustive_only())
        .collect();

    let direct = Ctx::new(space, relation, false)?;
    let per_trial = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let mut found = Vec::new();
            for &axiom in &sampled {
                let inst = sample_instance(axiom, &mut rng, n);
                let refs: Vec<&[usize]> = inst.iter().map(Vec::as_slice).collect();
                if !direct.holds(axiom, &refs)? {
                    found.push(direct.violation(axiom, Some(t), &refs));
                }
            }
            Ok(found)
        })
        .collect::<Result<Vec<_>, ProximityError>>()?;
    let mut violations: Vec<Violation> = per_trial.into_iter().flatten().collect();

    if exhaustive {
        let memo = Ctx::new(space, relation, true)?;
        for &axiom in &axioms {
            violations.extend(memo.exhaustive(axiom)?);
        }
    }

    Ok(AxiomReport {
        family,
        trials,
        seed,
        universe_size: n,
        axioms,
        exhaustive,
        violations,
    })
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let k = rng.random_range(0..=n);
    let mut v = index::sample(rng, n, k).into_vec();
    v.sort_unstable();
    v
}

fn sample_instance(axiom: Axiom, rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<usize>> {
    let mut inst: Vec<Vec<usize>> = axiom
        .slots()
        .iter()
        .map(|s| match s {
            Slot::Set => random_subset(rng, n),
            Slot::Point => vec![rng.random_range(0..n)],
        })
        .collect();
    match axiom {
        Axiom::SnN3 => {
            for _ in 0..rng.random_range(0..=2) {
                inst.push(random_subset(rng, n));
            }
        }
        Axiom::DP5 | Axiom::SnN6 | Axiom::DsnP6 => {
            if rng.random_bool(0.25) {
                inst[1] = inst[0].clone();
            }
        }
        Axiom::SnN5 | Axiom::DsnP5 if !inst[1].is_empty() && rng.random_bool(0.5) => {
            inst[0] = vec![inst[1][rng.random_range(0..inst[1].len())]];
        }
        _ => {}
    }
    inst
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    u.dedup();
    u
}

fn mask(s: &[usize]) -> usize {
    s.iter().fold(0, |m, &i| m | (1 << i))
}

fn unmask(m: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|i| m & (1 << i) != 0).collect()
}

/// Evaluation context: subsets are sorted index lists into the universe.
struct Ctx<'a> {
    space: &'a DescriptiveSpace,
    relation: &'a dyn Proximity,
    all: Vec<usize>,
    /// `memo[(mask(a) << n) | mask(b)]`, present only for small universes.
    memo: Option<Vec<bool>>,
}

impl<'a> Ctx<'a> {
    fn new(
        space: &'a DescriptiveSpace,
        relation: &'a dyn Proximity,
        memoize: bool,
    ) -> Result<Self, ProximityError> {
        let n = space.len();
        let memo = if memoize {
            let subsets: Vec<Region> = (0..1usize << n)
                .map(|m| space.subset(&unmask(m, n)))
                .collect();
            let table = (0..1usize << (2 * n))
                .into_par_iter()
                .map(|k| relation.near(space, &subsets[k >> n], &subsets[k & ((1 << n) - 1)]))
                .collect::<Result<Vec<bool>, _>>()?;
            Some(table)
        } else {
            None
        };
        Ok(Self {
            space,
            relation,
            all: (0..n).collect(),
            memo,
        })
    }

    fn near(&self, a: &[usize], b: &[usize]) -> Result<bool, ProximityError> {
        match &self.memo {
            Some(m) => Ok(m[(mask(a) << self.space.len()) | mask(b)]),
            None => self
                .relation
                .near(self.space, &self.space.subset(a), &self.space.subset(b)),
        }
    }

    fn interior_of(&self, a: &[usize]) -> Vec<usize> {
        let labels = self.space.interior_labels();
        a.iter().copied().filter(|&i| labels[i]).collect()
    }

    fn matches(&self, x: usize, y: usize) -> bool {
        self.space
            .feature_map()
            .matches(self.space.description(x), self.space.description(y))
    }

    fn dcap_nonempty(&self, a: &[usize], b: &[usize]) -> Result<bool, ProximityError> {
        let ra = self.space.subset(a);
        let rb = self.space.subset(b);
        Ok(!descriptive_intersection(&ra, &rb, self.space.feature_map())?.is_empty())
    }

    fn holds(&self, axiom: Axiom, sets: &[&[usize]]) -> Result<bool, ProximityError> {
        use Axiom::*;
        let empty: &[usize] = &[];
        let a = sets[0];
        let b = sets.get(1).copied().unwrap_or(empty);
        let c = sets.get(2).copied().unwrap_or(empty);
        let empty_far = |s: &[usize]| -> Result<bool, ProximityError> {
            Ok(!self.near(empty, s)? && !self.near(s, empty)?)
        };
        Ok(match axiom {
            DP0 => empty_far(a)?,
            SnN0 | DsnP0 => {
                empty_far(a)?
                    && (a.is_empty() || (self.near(&self.all, a)? && self.near(a, &self.all)?))
            }
            DP1 | SnN1 | DsnP1 => self.near(a, b)? == self.near(b, a)?,
            DP2 => !self.dcap_nonempty(a, b)? || self.near(a, b)?,
            DP3 => self.near(a, &union(b, c))? == (self.near(a, b)? || self.near(a, c)?),
            DP4 => {
                if b.is_empty() || !self.near(a, b)? {
                    return Ok(true);
                }
                for &x in b {
                    if !self.near(&[x], c)? {
                        return Ok(true);
                    }
                }
                self.near(a, c)?
            }
            DP5 => !self.near(a, b)? || self.matches(a[0], b[0]),
            SnN2 => !self.near(a, b)? || a.iter().any(|i| b.contains(i)),
            SnN3 => {
                let family = &sets[1..];
                let mut triggered = false;
                for bi in family {
                    if !self.interior_of(bi).is_empty() && self.near(a, bi)? {
                        triggered = true;
                        break;
                    }
                }
                let all = family.iter().fold(Vec::new(), |u, bi| union(&u, bi));
                !triggered || self.near(a, &all)?
            }
            SnN4 => {
                let ib = self.interior_of(b);
                !self.interior_of(a).iter().any(|i| ib.contains(i)) || self.near(a, b)?
            }
            SnN5 => !self.interior_of(b).contains(&a[0]) || self.near(a, b)?,
            SnN6 => self.near(a, b)? == (a[0] == b[0]),
            DsnP2 => !self.near(a, b)? || self.dcap_nonempty(a, b)?,
            DsnP4 => {
                !self.dcap_nonempty(&self.interior_of(a), &self.interior_of(b))?
                    || self.near(a, b)?
            }
            DsnP5 => {
                let hit = self.interior_of(b).iter().any(|&i| self.matches(a[0], i));
                !hit || self.near(a, b)?
            }
            DsnP6 => self.near(a, b)? == self.matches(a[0], b[0]),
        })
    }

    fn violation(&self, axiom: Axiom, trial: Option<usize>, sets: &[&[usize]]) -> Violation {
        Violation {
            axiom,
            trial,
            witnesses: sets.iter().map(|s| self.space.subset(s)).collect(),
        }
    }

    /// Every instance of `axiom` over the subsets of a small universe.
    fn exhaustive(&self, axiom: Axiom) -> Result<Vec<Violation>, ProximityError> {
        let n = self.space.len();
        let radix: Vec<usize> = axiom
            .slots()
            .iter()
            .map(|s| match s {
                Slot::Set => 1 << n,
                Slot::Point => n,
            })
            .collect();
        let total: usize = radix.iter().product();
        let subsets: Vec<Vec<usize>> = (0..1usize << n).map(|m| unmask(m, n)).collect();
        let points: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        let found = (0..total)
            .into_par_iter()
            .map(|mut k| {
                let inst: Vec<&[usize]> = axiom
                    .slots()
                    .iter()
                    .zip(&radix)
                    .map(|(s, &r)| {
                        let d = k % r;
                        k /= r;
                        match s {
                            Slot::Set => subsets[d].as_slice(),
                            Slot::Point => points[d].as_slice(),
                        }
                    })
                    .collect();
                Ok((!self.holds(axiom, &inst)?).then(|| self.violation(axiom, None, &inst)))
            })
            .collect::<Result<Vec<Option<Violation>>, ProximityError>>()?;
        Ok(found
            .into_iter()
            .flatten()
            .take(MAX_EXHAUSTIVE_WITNESSES)
            .collect())
    }
}
