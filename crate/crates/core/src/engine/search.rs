use rayon::prelude::*;
use serde::Serialize;

use super::{EngineError, RegionDescriptor};
use crate::geometry::{
    strings_antipodal, worldsheets_antipodal, SphereGrid, StringPath, Worldsheet,
};

/// The objects searched for matching antipodal pairs.
#[derive(Clone, Copy, Debug)]
pub enum ButObjects<'a> {
    /// Sphere samples paired with their grid antipodes.
    Points(&'a SphereGrid),
    /// Strings; two strings are antipodal when their vertex sets differ.
    Strings(&'a [StringPath]),
    /// Worldsheets; antipodal when some member strings are disjoint.
    Sheets(&'a [Worldsheet]),
}

impl ButObjects<'_> {
    pub fn len(&self) -> usize {
        match self {
            ButObjects::Points(g) => g.len(),
            ButObjects::Strings(s) => s.len(),
            ButObjects::Sheets(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ButObjects::Points(_) => "points",
            ButObjects::Strings(_) => "strings",
            ButObjects::Sheets(_) => "worldsheets",
        }
    }

    fn describe(&self, f: &RegionDescriptor) -> Result<Vec<Vec<f64>>, EngineError> {
        match self {
            ButObjects::Points(g) => g
                .samples()
                .par_iter()
                .map(|p| f.describe_point(p))
                .collect(),
            ButObjects::Strings(s) => s.par_iter().map(|x| f.describe_string(x)).collect(),
            ButObjects::Sheets(w) => w.par_iter().map(|x| f.describe_sheet(x)).collect(),
        }
    }

    fn antipodal(&self, i: usize, j: usize) -> bool {
        match self {
            ButObjects::Points(g) => g.antipode(i) == j,
            ButObjects::Strings(s) => strings_antipodal(&s[i], &s[j]),
            ButObjects::Sheets(w) => worldsheets_antipodal(&w[i], &w[j]),
        }
    }

    /// Candidate pairs `(i, j)` with `i < j`, in lexicographic order.
    fn candidates(&self) -> Vec<(usize, usize)> {
        match self {
            ButObjects::Points(g) => g.positive_half().map(|i| (i, g.antipode(i))).collect(),
            _ => {
                let n = self.len();
                (0..n)
                    .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                    .collect()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ButPair {
    pub a: usize,
    pub b: usize,
    /// `f(A)`.
    pub descriptor: Vec<f64>,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ButResult {
    pub kind: &'static str,
    pub objects: usize,
    /// Antipodal pairs examined.
    pub antipodal_pairs: usize,
    /// Antipodal pairs with matching descriptions, sorted by `(a, b)`.
    pub pairs: Vec<ButPair>,
    pub exhaustive: bool,
}

impl ButResult {
    /// Whether object `i` appears in some matching pair.
    pub fn has_partner(&self, i: usize) -> bool {
        self.pairs.iter().any(|p| p.a == i || p.b == i)
    }
}

/// Every antipodal pair whose descriptions lie within `τ`.
pub fn but_search(objects: ButObjects<'_>, f: &RegionDescriptor) -> Result<ButResult, EngineError> {
    but_search_bounded(objects, f, usize::MAX)
}

/// [`but_search`] over at most `max_candidates` candidate pairs, taken in
/// lexicographic order. The result is exhaustive only if none were skipped.
pub fn but_search_bounded(
    objects: ButObjects<'_>,
    f: &RegionDescriptor,
    max_candidates: usize,
) -> Result<ButResult, EngineError> {
    if objects.is_empty() {
        return Err(EngineError::EmptyObjects);
    }
    let descriptions = objects.describe(f)?;
    let candidates = objects.candidates();
    let exhaustive = candidates.len() <= max_candidates;
    let scanned = &candidates[..candidates.len().min(max_candidates)];
    let hits: Vec<(bool, Option<ButPair>)> = scanned
        .par_iter()
        .map(|&(i, j)| {
            if !objects.antipodal(i, j) {
                return (false, None);
            }
            let distance = f.distance(&descriptions[i], &descriptions[j]);
            let pair = (distance <= f.tolerance()).then(|| ButPair {
                a: i,
                b: j,
                descriptor: descriptions[i].clone(),
                distance,
            });
            (true, pair)
        })
        .collect();
    let antipodal_pairs = hits.iter().filter(|(a, _)| *a).count();
    let mut pairs: Vec<ButPair> = hits.into_iter().filter_map(|(_, p)| p).collect();
    pairs.sort_by_key(|p| (p.a, p.b));
    Ok(ButResult {
        kind: objects.kind(),
        objects: objects.len(),
        antipodal_pairs,
        pairs,
        exhaustive,
    })
}

/// Splits the positive half of `grid` into consecutive strings of
/// `vertices_per_string` samples and appends the negation of each, so string
/// `i` and string `i + m` are antipodal copies.
pub fn antipodal_string_family(
    grid: &SphereGrid,
    vertices_per_string: usize,
) -> Result<Vec<StringPath>, EngineError> {
    if vertices_per_string < 2 {
        return Err(EngineError::StringLength(vertices_per_string));
    }
    let half: Vec<usize> = grid.positive_half().collect();
    let positive = half
        .chunks(vertices_per_string)
        .filter(|c| c.len() >= 2)
        .map(|c| StringPath::open(c.iter().map(|&i| grid.samples()[i].clone()).collect()))
        .collect::<Result<Vec<_>, _>>()?;
    let negated = positive
        .iter()
        .map(|s| s.map_vertices(|p| p.neg()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(positive.into_iter().chain(negated).collect())
}
