//! Ordered store of found solutions with windowed near-duplicate lookup.
//!
//! Solutions are keyed by the real part of lambda in an ordered map; a
//! near-duplicate query scans the key window of width twice the tolerance
//! and filters by full infinity-norm distance, so it returns exactly what a
//! linear scan would.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::TrackerConfig;
use crate::polysys::CVec;

/// f64 ordered by total order so it can key a BTreeMap.
#[derive(Clone, Copy, Debug, PartialEq)]
struct TotalF64(f64);

impl Eq for TotalF64 {}

impl PartialOrd for TotalF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TotalF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

#[derive(Clone, Debug)]
pub struct StoredSolution {
    pub u: CVec,
    pub cond: f64,
    /// Caller-chosen tag, typically the index of the first path that
    /// produced this solution.
    pub tag: usize,
}

#[derive(Default)]
pub struct SolutionStore {
    points: Vec<StoredSolution>,
    index: BTreeMap<TotalF64, Vec<usize>>,
}

impl SolutionStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, id: usize) -> &StoredSolution {
        &self.points[id]
    }

    pub fn iter(&self) -> impl Iterator<Item = &StoredSolution> {
        self.points.iter()
    }

    pub fn insert(&mut self, u: CVec, cond: f64, tag: usize) -> usize {
        let key = TotalF64(u[0].re);
        let id = self.points.len();
        self.points.push(StoredSolution { u, cond, tag });
        self.index.entry(key).or_default().push(id);
        id
    }

    /// Ids of all stored points within `tol` of `u` in infinity norm,
    /// ascending by distance then id.
    pub fn query_within(&self, u: &[Complex64], tol: f64) -> Vec<usize> {
        let lo = TotalF64(u[0].re - tol);
        let hi = TotalF64(u[0].re + tol);
        let mut hits: Vec<(f64, usize)> = Vec::new();
        for (_, ids) in self.index.range(lo..=hi) {
            for &id in ids {
                let d = dist_inf(&self.points[id].u, u);
                if d <= tol {
                    hits.push((d, id));
                }
            }
        }
        hits.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        hits.into_iter().map(|(_, id)| id).collect()
    }
}

pub(crate) fn dist_inf(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DuplicateCheck {
    New,
    DuplicateOf(usize),
}

/// Looks up a converged endpoint in the store. Returns the duplicate id if
/// one lies within `duplicate_tol`, plus a curve-jump flag raised when both
/// the candidate and the stored solution have condition estimates above the
/// threshold (two ill-conditioned paths landing on one point).
pub fn check_duplicate(
    store: &SolutionStore,
    u: &[Complex64],
    cond: f64,
    cfg: &TrackerConfig,
) -> (DuplicateCheck, bool) {
    let hits = store.query_within(u, cfg.duplicate_tol);
    match hits.first() {
        None => (DuplicateCheck::New, false),
        Some(&id) => {
            let jump = cond > cfg.cond_threshold && store.get(id).cond > cfg.cond_threshold;
            (DuplicateCheck::DuplicateOf(id), jump)
        }
    }
}
