//! Shared complex solve pipeline and the teig/teneig/eeig front ends.
//!
//! A solve enumerates the start roots, tracks every path (in parallel when
//! the `parallel` feature is on), retraces flagged paths projectively,
//! deduplicates endpoints, clusters singular endpoints into multiple zeros,
//! and normalizes representatives per the mode conventions.

use num_complex::Complex64;

use crate::polysys::{build_eigen_system, build_start_system, CVec, LinearHomotopy};
use crate::tensor::DenseTensor;
use crate::tracker::{
    check_duplicate, finish_path, probe_rng, retrace_track, run_path, Classification,
    DuplicateCheck, PathStatus, SolutionStore, TrackedPath, TrackerConfig,
};
use crate::{linalg, Error, Result};

use super::{cmp_pairs, EigenPair, EquivalenceClass};

/// Bookkeeping for one solve; multiplicities of returned classes plus the
/// at-infinity and failed path counts always total `paths_tracked`.
#[derive(Clone, Debug)]
pub struct SolveMeta {
    pub m: usize,
    pub mprime: usize,
    pub n: usize,
    pub mode: usize,
    pub seed: u64,
    pub paths_tracked: usize,
    pub paths_at_infinity: usize,
    pub paths_failed: usize,
    pub curve_jump_warnings: usize,
}

impl SolveMeta {
    /// True when class multiplicities reconcile with the path counts.
    pub fn reconciles(&self, multiplicity_sum: usize) -> bool {
        multiplicity_sum + self.paths_at_infinity + self.paths_failed == self.paths_tracked
    }

    pub fn has_failures(&self) -> bool {
        self.paths_failed > 0
    }
}

#[derive(Clone, Debug)]
pub struct TeigResult {
    pub pairs: Vec<EigenPair>,
    pub meta: SolveMeta,
}

#[derive(Clone, Debug)]
pub struct TeneigResult {
    pub classes: Vec<EquivalenceClass>,
    pub meta: SolveMeta,
}

pub(crate) struct RawClass {
    pub u: CVec,
    pub multiplicity: usize,
    pub classification: Classification,
    pub residual: f64,
    pub first_path: usize,
}

pub(crate) struct RawSolve {
    pub classes: Vec<RawClass>,
    pub meta: SolveMeta,
}

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T: Send>(
    count: usize,
    threads: Option<usize>,
    f: impl Fn(usize) -> T + Sync,
) -> Vec<T> {
    use rayon::prelude::*;
    match threads {
        Some(1) => (0..count).map(f).collect(),
        Some(workers) => match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            Ok(pool) => pool.install(|| (0..count).into_par_iter().map(&f).collect()),
            Err(_) => (0..count).map(f).collect(),
        },
        None => (0..count).into_par_iter().map(&f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T: Send>(
    count: usize,
    _threads: Option<usize>,
    f: impl Fn(usize) -> T + Sync,
) -> Vec<T> {
    (0..count).map(f).collect()
}

/// Tracks all paths of the homotopy for `(A, B, k)` and reduces the
/// endpoints to distinct solution classes in raw hyperplane coordinates.
pub(crate) fn solve_complex(
    a: &DenseTensor,
    b: &DenseTensor,
    k: usize,
    seed: u64,
    cfg: &TrackerConfig,
) -> Result<RawSolve> {
    let n = a.dim();
    let sys = build_eigen_system(a, b, k, seed)?;
    let top_order = a.order().max(b.order());
    let q = build_start_system(n, top_order, seed)?;
    let h = LinearHomotopy::new(q, sys, seed);
    let starts = h.start.enumerate_solutions();
    let mut tracked: Vec<TrackedPath> = map_indexed(starts.len(), cfg.threads, |i| {
        run_path(&h, &starts[i], i, seed, cfg)
    });

    // Strategy 2: coincident endpoints suggest curve jumping (a legitimate
    // multiple zero shows up the same way); retrace both associated paths
    // projectively with tightened parameters and keep whichever outcome is
    // better for each.
    let mut suspects: Vec<usize> = Vec::new();
    {
        let mut store = SolutionStore::new();
        for (i, tp) in tracked.iter().enumerate() {
            if tp.result.status != PathStatus::Converged {
                continue;
            }
            let (check, _) =
                check_duplicate(&store, &tp.result.endpoint, tp.result.cond_estimate, cfg);
            match check {
                DuplicateCheck::New => {
                    store.insert(tp.result.endpoint.clone(), tp.result.cond_estimate, i);
                }
                DuplicateCheck::DuplicateOf(id) => {
                    let first = store.get(id).tag;
                    if !tracked[first].result.retraced_projective {
                        suspects.push(first);
                    }
                    if !tp.result.retraced_projective {
                        suspects.push(i);
                    }
                }
            }
        }
    }
    suspects.sort_unstable();
    suspects.dedup();
    if !suspects.is_empty() {
        let retraced: Vec<(usize, TrackedPath)> = map_indexed(suspects.len(), cfg.threads, |si| {
            let i = suspects[si];
            let (end, steps) = retrace_track(&h, &starts[i], cfg);
            let mut probe = probe_rng(seed, i);
            (i, finish_path(&h, end, steps, true, cfg, &mut probe))
        });
        for (i, tp) in retraced {
            // a failed retrace never overrides a converged affine result
            if tp.result.status != PathStatus::Failed
                || tracked[i].result.status == PathStatus::Failed
            {
                tracked[i] = tp;
            }
        }
    }

    // final dedup pass in path order
    let mut store = SolutionStore::new();
    let mut classes: Vec<RawClass> = Vec::new();
    let mut at_infinity = 0usize;
    let mut failed = 0usize;
    let mut warnings = 0usize;
    for (i, tp) in tracked.iter().enumerate() {
        match tp.result.status {
            PathStatus::AtInfinity => at_infinity += 1,
            PathStatus::Failed => failed += 1,
            PathStatus::Converged => {
                let (check, jump) =
                    check_duplicate(&store, &tp.result.endpoint, tp.result.cond_estimate, cfg);
                match check {
                    DuplicateCheck::New => {
                        store.insert(
                            tp.result.endpoint.clone(),
                            tp.result.cond_estimate,
                            classes.len(),
                        );
                        classes.push(RawClass {
                            u: tp.result.endpoint.clone(),
                            multiplicity: 1,
                            classification: tp.classification.unwrap_or(Classification::Regular),
                            residual: tp.result.residual,
                            first_path: i,
                        });
                    }
                    DuplicateCheck::DuplicateOf(id) => {
                        let cls = store.get(id).tag;
                        classes[cls].multiplicity += 1;
                        if jump {
                            // retraced and still coincident: report once,
                            // flag the merge
                            warnings += 1;
                        }
                        if tp.classification == Some(Classification::PositiveDimensional) {
                            classes[cls].classification = Classification::PositiveDimensional;
                        }
                    }
                }
            }
        }
    }

    let classes = cluster_singular(classes, cfg);
    Ok(RawSolve {
        classes,
        meta: SolveMeta {
            m: a.order(),
            mprime: b.order(),
            n,
            mode: k,
            seed,
            paths_tracked: starts.len(),
            paths_at_infinity: at_infinity,
            paths_failed: failed,
            curve_jump_warnings: warnings,
        },
    })
}

/// Groups non-regular endpoints lying within `singular_cluster_tol` into a
/// single class whose multiplicity is the path count of the cluster. A
/// multiple isolated zero scatters its endpoints over a radius set by a
/// fractional power of the residual tolerance, far beyond `duplicate_tol`.
fn cluster_singular(classes: Vec<RawClass>, cfg: &TrackerConfig) -> Vec<RawClass> {
    let ids: Vec<usize> = (0..classes.len())
        .filter(|&i| classes[i].classification != Classification::Regular)
        .collect();
    let mut parent: Vec<usize> = (0..classes.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for (a_pos, &i) in ids.iter().enumerate() {
        for &j in &ids[a_pos + 1..] {
            let d = classes[i]
                .u
                .iter()
                .zip(&classes[j].u)
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            if d <= cfg.singular_cluster_tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[rj.max(ri)] = rj.min(ri);
                }
            }
        }
    }
    let mut merged: std::collections::BTreeMap<usize, RawClass> = Default::default();
    for (i, cls) in classes.into_iter().enumerate() {
        let root = find(&mut parent, i);
        match merged.get_mut(&root) {
            None => {
                merged.insert(root, cls);
            }
            Some(existing) => {
                existing.multiplicity += cls.multiplicity;
                if cls.classification == Classification::PositiveDimensional {
                    existing.classification = Classification::PositiveDimensional;
                }
                // keep the best-refined endpoint as representative
                if cls.residual < existing.residual {
                    existing.u = cls.u;
                    existing.residual = cls.residual;
                    existing.first_path = existing.first_path.min(cls.first_path);
                }
            }
        }
    }
    merged.into_values().collect()
}

pub(crate) fn eigen_residual(
    a: &DenseTensor,
    b: &DenseTensor,
    k: usize,
    lambda: Complex64,
    x: &[Complex64],
) -> f64 {
    let va = a.mode_apply(k, x).expect("dims checked");
    let vb = b.mode_apply(1, x).expect("dims checked");
    va.iter()
        .zip(&vb)
        .map(|(p, q)| (p - lambda * q).norm())
        .fold(0.0, f64::max)
}

fn is_real_pair(lambda: Complex64, x: &[Complex64], tol: f64) -> bool {
    lambda.im.abs() <= tol && x.iter().all(|z| z.im.abs() <= tol)
}

/// Assigns shared component ids to positive-dimensional classes grouped by
/// eigenvalue. Expects the pair list to be sorted.
fn assign_component_ids(pairs: &mut [EigenPair], cfg: &TrackerConfig) {
    let tol = cfg.singular_cluster_tol.max(1e-6);
    let mut next_id = 0usize;
    let mut open: Vec<(Complex64, usize)> = Vec::new();
    for p in pairs.iter_mut() {
        if p.classification != Classification::PositiveDimensional {
            continue;
        }
        let found = open
            .iter()
            .find(|(lam, _)| (lam - p.lambda).norm() <= tol)
            .map(|&(_, id)| id);
        let id = match found {
            Some(id) => id,
            None => {
                let id = next_id;
                next_id += 1;
                open.push((p.lambda, id));
                id
            }
        };
        p.component_id = Some(id);
    }
}

/// Computes mode-k B-eigenpairs for tensors of equal order via the linear
/// homotopy, normalizing each representative by its largest coordinate.
pub fn teig(
    a: &DenseTensor,
    b: &DenseTensor,
    k: usize,
    seed: u64,
    cfg: &TrackerConfig,
) -> Result<TeigResult> {
    if a.order() != b.order() {
        return Err(Error::InvalidSystem(format!(
            "teig requires equal orders; got {} and {} (use teneig)",
            a.order(),
            b.order()
        )));
    }
    let raw = solve_complex(a, b, k, seed, cfg)?;
    let mut pairs: Vec<EigenPair> = raw
        .classes
        .iter()
        .map(|cls| {
            let lambda = cls.u[0];
            let x = &cls.u[1..];
            let mut i0 = 0;
            for (i, xi) in x.iter().enumerate() {
                if xi.norm() > x[i0].norm() {
                    i0 = i;
                }
            }
            let y: CVec = x.iter().map(|xi| xi / x[i0]).collect();
            let residual = eigen_residual(a, b, k, lambda, &y);
            EigenPair {
                lambda,
                x: y.clone(),
                multiplicity: cls.multiplicity,
                residual,
                classification: cls.classification,
                is_real: is_real_pair(lambda, &y, cfg.imag_tol),
                component_id: None,
            }
        })
        .collect();
    pairs.sort_by(|p, q| cmp_pairs(&(p.lambda, &p.x), &(q.lambda, &q.x)));
    assign_component_ids(&mut pairs, cfg);
    Ok(TeigResult {
        pairs,
        meta: raw.meta,
    })
}

/// Picks the class member (over `t^{m'} = 1`) that is real if any is, and
/// otherwise the largest under the deterministic ordering.
fn canonical_member(
    lambda: Complex64,
    x: &[Complex64],
    m: usize,
    mprime: usize,
    tol: f64,
) -> (Complex64, CVec, bool) {
    let shift = (m as i64 - mprime as i64).rem_euclid(mprime as i64) as u32;
    let mut best: Option<(Complex64, CVec, bool)> = None;
    for j in 0..mprime {
        let t = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / mprime as f64);
        let lam_j = lambda * t.powu(shift);
        let x_j: CVec = x.iter().map(|xi| xi * t).collect();
        let real = is_real_pair(lam_j, &x_j, tol);
        let better = match &best {
            None => true,
            Some((bl, bx, breal)) => {
                (real && !breal)
                    || (real == *breal
                        && cmp_pairs(&(lam_j, &x_j), &(*bl, bx)) == std::cmp::Ordering::Greater)
            }
        };
        if better {
            best = Some((lam_j, x_j, real));
        }
    }
    best.expect("mprime >= 1")
}

fn teneig_impl(
    a: &DenseTensor,
    b: &DenseTensor,
    k: usize,
    seed: u64,
    cfg: &TrackerConfig,
) -> Result<TeneigResult> {
    let raw = solve_complex(a, b, k, seed, cfg)?;
    let m = a.order();
    let mp = b.order();
    let mut classes: Vec<EquivalenceClass> = raw
        .classes
        .iter()
        .map(|cls| {
            let lambda = cls.u[0];
            let x = &cls.u[1..];
            let w = b.multilinear_form(x).expect("dims checked");
            let scale = linalg::inf_norm(x).powi(mp as i32).max(1.0);
            if w.norm() <= 1e-8 * scale {
                // cannot normalize on this class; report it raw
                let residual = eigen_residual(a, b, k, lambda, x);
                return EquivalenceClass {
                    representative: EigenPair {
                        lambda,
                        x: x.to_vec(),
                        multiplicity: cls.multiplicity,
                        residual,
                        classification: cls.classification,
                        is_real: is_real_pair(lambda, x, cfg.imag_tol),
                        component_id: None,
                    },
                    scaling_order: mp,
                    normalized: false,
                };
            }
            let lam_n = lambda / w.powf((m as f64 - mp as f64) / mp as f64);
            let root = w.powf(1.0 / mp as f64);
            let x_n: CVec = x.iter().map(|xi| xi / root).collect();
            let (lam_c, x_c, is_real) = canonical_member(lam_n, &x_n, m, mp, cfg.imag_tol);
            let residual = eigen_residual(a, b, k, lam_c, &x_c);
            EquivalenceClass {
                representative: EigenPair {
                    lambda: lam_c,
                    x: x_c,
                    multiplicity: cls.multiplicity,
                    residual,
                    classification: cls.classification,
                    is_real,
                    component_id: None,
                },
                scaling_order: mp,
                normalized: true,
            }
        })
        .collect();
    classes.sort_by(|p, q| {
        cmp_pairs(
            &(p.representative.lambda, &p.representative.x),
            &(q.representative.lambda, &q.representative.x),
        )
    });
    {
        let mut reps: Vec<EigenPair> = classes.iter().map(|c| c.representative.clone()).collect();
        assign_component_ids(&mut reps, cfg);
        for (c, r) in classes.iter_mut().zip(reps) {
            c.representative.component_id = r.component_id;
        }
    }
    Ok(TeneigResult {
        classes,
        meta: raw.meta,
    })
}

/// Computes mode-k B-eigenpair classes for tensors of different orders,
/// normalized to `B x^{m'} = 1` with principal roots.
pub fn teneig(
    a: &DenseTensor,
    b: &DenseTensor,
    k: usize,
    seed: u64,
    cfg: &TrackerConfig,
) -> Result<TeneigResult> {
    if a.order() == b.order() {
        return Err(Error::InvalidSystem(format!(
            "teneig requires different orders; got {} twice (use teig)",
            a.order()
        )));
    }
    teneig_impl(a, b, k, seed, cfg)
}

/// Mode-k E-eigenpairs: `teneig` against the identity matrix. Order-2
/// inputs reduce to the matrix eigenproblem and are handled by the same
/// machinery.
pub fn eeig(a: &DenseTensor, k: usize, seed: u64, cfg: &TrackerConfig) -> Result<TeneigResult> {
    let b = DenseTensor::identity_matrix(a.dim())?;
    teneig_impl(a, &b, k, seed, cfg)
}
