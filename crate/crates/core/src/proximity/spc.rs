//! Proximal continuity of point maps between descriptive spaces.
//!
//! A map `f: X → Y` preserves a relation when `A near B` in `X` implies
//! `f(A) near f(B)` in `Y`. Image regions are labeled by the codomain, so a
//! map can carry interior points of `X` onto boundary points of `Y`.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{DescriptiveSpace, Family, Proximity, ProximityError};
use crate::geometry::{Point, Region};

#[derive(Clone, Debug, Serialize)]
pub struct SpcCounterexample {
    pub pair: usize,
    pub a: Region,
    pub b: Region,
    pub image_a: Region,
    pub image_b: Region,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpcReport {
    pub mode: Family,
    pub pairs_checked: usize,
    /// Pairs that were near in the domain, i.e. the ones that constrain `f`.
    pub near_pairs: usize,
    pub counterexamples: Vec<SpcCounterexample>,
}

impl SpcReport {
    pub fn continuous(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks `A near B ⇒ f(A) near f(B)` on every pair in `pairs`.
pub fn spc_check(
    domain: &DescriptiveSpace,
    codomain: &DescriptiveSpace,
    f: impl Fn(&Point) -> Point,
    pairs: &[(Region, Region)],
    mode: Family,
) -> Result<SpcReport, ProximityError> {
    let image_index: Vec<usize> = domain
        .universe()
        .iter()
        .map(|p| {
            let q = f(p);
            codomain
                .index_of(&q)
                .ok_or_else(|| ProximityError::OutsideUniverse(q.coords().to_vec()))
        })
        .collect::<Result<_, _>>()?;
    let image = |r: &Region| -> Result<Region, ProximityError> {
        let mut idx = Vec::with_capacity(r.len());
        for p in r.points() {
            let i = domain
                .index_of(p)
                .ok_or_else(|| ProximityError::OutsideUniverse(p.coords().to_vec()))?;
            idx.push(image_index[i]);
        }
        idx.sort_unstable();
        idx.dedup();
        Ok(codomain.subset(&idx))
    };

    let mut near_pairs = 0;
    let mut counterexamples = Vec::new();
    for (k, (a, b)) in pairs.iter().enumerate() {
        let (a, b) = (domain.relabel(a)?, domain.relabel(b)?);
        if !mode.near(domain, &a, &b)? {
            continue;
        }
        near_pairs += 1;
        let (fa, fb) = (image(&a)?, image(&b)?);
        if !mode.near(codomain, &fa, &fb)? {
            counterexamples.push(SpcCounterexample {
                pair: k,
                a,
                b,
                image_a: fa,
                image_b: fb,
            });
        }
    }
    Ok(SpcReport {
        mode,
        pairs_checked: pairs.len(),
        near_pairs,
        counterexamples,
    })
}

/// `count` seeded pairs of nonempty subsets of `space`.
pub fn sample_region_pairs(
    space: &DescriptiveSpace,
    count: usize,
    seed: u64,
) -> Vec<(Region, Region)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = space.len();
    let draw = |rng: &mut ChaCha8Rng| {
        let k = rng.random_range(1..=n);
        let mut idx = index::sample(rng, n, k).into_vec();
        idx.sort_unstable();
        space.subset(&idx)
    };
    (0..count)
        .map(|_| (draw(&mut rng), draw(&mut rng)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proximity::{Feature, FeatureMap};

    fn square(labels: Vec<bool>) -> DescriptiveSpace {
        let pts = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]
            .iter()
            .map(|c| Point::from_slice(c))
            .collect();
        DescriptiveSpace::new(pts, labels, FeatureMap::exact(Feature::Coords)).unwrap()
    }

    #[test]
    fn identity_and_constant_maps_are_continuous() {
        let x = square(vec![true, false, true, true]);
        let pairs = sample_region_pairs(&x, 200, 3);
        for mode in Family::ALL {
            let id = spc_check(&x, &x, |p| p.clone(), &pairs, mode).unwrap();
            assert!(id.continuous() && id.near_pairs > 0);
            let c = Point::from_slice(&[1.0, 1.0]);
            let constant = spc_check(&x, &x, |_| c.clone(), &pairs, mode).unwrap();
            assert!(constant.continuous());
        }
    }

    #[test]
    fn separating_overlapping_interiors_is_reported() {
        let x = square(vec![true; 4]);
        let y = square(vec![true, true, true, false]);
        let u = x.universe().to_vec();
        // 1 ↦ 3 lands on a boundary point of Y; 3 ↦ 1 keeps f a bijection.
        let f = |p: &Point| {
            let i = u.iter().position(|q| q == p).unwrap();
            u[[0, 3, 2, 1][i]].clone()
        };
        let pairs = vec![(x.subset(&[0, 1]), x.subset(&[1, 2]))];
        let report = spc_check(&x, &y, f, &pairs, Family::Strong).unwrap();
        assert_eq!(report.near_pairs, 1);
        let ce = &report.counterexamples[0];
        assert!(!ce.image_a.interior().intersects(&ce.image_b.interior()));
    }

    #[test]
    fn image_outside_codomain_is_an_error() {
        let x = square(vec![true; 4]);
        let pairs = sample_region_pairs(&x, 1, 0);
        let off = spc_check(
            &x,
            &x,
            |p| Point::from_slice(&[p.coords()[0] + 5.0, 0.0]),
            &pairs,
            Family::Strong,
        );
        assert!(matches!(off, Err(ProximityError::OutsideUniverse(_))));
    }
}
