//! Predictor-corrector path tracking from the start system to the target,
//! with projective retracing, endpoint refinement and classification, and
//! duplicate detection across paths.

mod endgame;
mod path;
mod projective;
mod store;

pub use endgame::{endgame, Classification, EndgameOutcome};
pub use path::{track_path, warm_start};
pub(crate) use projective::retrace_track;
pub use store::{check_duplicate, DuplicateCheck, SolutionStore, StoredSolution};

use num_complex::Complex64;

use crate::linalg;
use crate::polysys::{CVec, LinearHomotopy};
use crate::rng;

/// Tracking tolerances and limits. `s0` is the starting log-time, by default
/// `-20 (n + 1)` for a system in `n + 1` unknowns.
#[derive(Clone, Debug)]
pub struct TrackerConfig {
    pub s0: f64,
    /// Residual tolerance for Newton correctors, relative to max(1, |u|).
    pub newton_tol: f64,
    /// Corrector iterations allowed before the step is cut.
    pub max_corrector_iters: usize,
    /// Infinity-norm distance under which two endpoints are one solution.
    pub duplicate_tol: f64,
    /// Jacobian condition number separating regular from singular endpoints.
    pub cond_threshold: f64,
    /// Iterate norm treated as divergence to infinity.
    pub blowup_norm: f64,
    pub min_step: f64,
    pub max_halvings_per_step: usize,
    /// Imaginary-part threshold (delta_0) for treating values as real.
    pub imag_tol: f64,
    /// Cluster width for grouping singular endpoints into one multiple zero;
    /// wider than `duplicate_tol` because multiple zeros are only locatable
    /// to a fractional power of machine precision.
    pub singular_cluster_tol: f64,
    /// Worker cap for path-level parallelism; `Some(1)` forces sequential.
    pub threads: Option<usize>,
}

impl TrackerConfig {
    /// Defaults for an eigen-system over `n` variables (n + 1 unknowns).
    pub fn for_dimension(n: usize) -> Self {
        Self {
            s0: -20.0 * (n + 1) as f64,
            newton_tol: 1e-10,
            max_corrector_iters: 3,
            duplicate_tol: 1e-6,
            cond_threshold: 1e10,
            blowup_norm: 1e8,
            min_step: 1e-10,
            max_halvings_per_step: 10,
            imag_tol: 1e-8,
            singular_cluster_tol: 5e-3,
            threads: None,
        }
    }
}

/// Terminal status of one tracked path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathStatus {
    Converged,
    AtInfinity,
    Failed,
}

/// Endpoint of one homotopy path.
#[derive(Clone, Debug)]
pub struct PathResult {
    /// `[lambda, x1, ..., xn]`; for paths at infinity this is informational.
    pub endpoint: CVec,
    pub status: PathStatus,
    pub residual: f64,
    pub cond_estimate: f64,
    pub steps_taken: usize,
    pub retraced_projective: bool,
}

/// Path endpoint together with its endgame classification.
#[derive(Clone, Debug)]
pub struct TrackedPath {
    pub result: PathResult,
    pub classification: Option<Classification>,
}

/// Stall point close enough to s = 0 to hand the iterate to the endgame.
pub(crate) const ENDGAME_RADIUS: f64 = 1e-2;
/// Affine tracking hands over to the endgame from here; the step cap makes
/// the approach to s = 0 geometric, so this saves a long tail of tiny steps.
pub(crate) const S_FINAL_AFFINE: f64 = 1e-6;
/// Treat s above this as having reached the target (projective retraces,
/// which must watch the homogenizing coordinates vanish, track this far).
pub(crate) const S_DONE: f64 = 1e-12;
/// Chart coordinate |x0| below which a projective endpoint is at infinity.
pub(crate) const X0_AT_INFINITY: f64 = 1e-8;
/// Affine endpoints larger than this get their fate decided projectively.
pub(crate) const SUSPICIOUS_NORM: f64 = 1e3;
/// Newton iteration cap for the start-point correction.
pub(crate) const WARM_START_ITERS: usize = 20;

pub(crate) enum TrackEnd {
    /// Reached s = 0 (or stalled within the endgame radius): refine on G.
    AtEnd {
        u: CVec,
    },
    AtInfinity {
        u: CVec,
    },
    Failed {
        u: CVec,
        residual: f64,
    },
}

/// Deterministic generator for the classification probes of one path.
pub(crate) fn probe_rng(seed: u64, path_index: usize) -> rand_chacha::ChaCha8Rng {
    rng::stream(
        seed,
        rng::STREAM_PROBE.wrapping_add((path_index as u64) << 8),
    )
}

/// Tracks one start root end to end: warm start, affine tracking, projective
/// retracing when the affine run blows up or fails, then endpoint refinement
/// and classification on the target system.
pub fn run_path(
    h: &LinearHomotopy,
    w0: &[Complex64],
    path_index: usize,
    seed: u64,
    cfg: &TrackerConfig,
) -> TrackedPath {
    let mut probe = probe_rng(seed, path_index);
    let Some(u0) = warm_start(h, w0, cfg) else {
        return TrackedPath {
            result: PathResult {
                endpoint: w0.to_vec(),
                status: PathStatus::Failed,
                residual: f64::INFINITY,
                cond_estimate: f64::NAN,
                steps_taken: 0,
                retraced_projective: false,
            },
            classification: None,
        };
    };
    let (end, steps) = path::track_affine(h, &u0, cfg, false);
    // Large finite-looking endpoints are treated like blowups: decide
    // their fate in projective coordinates where scale is not an issue.
    let suspicious = matches!(
        &end,
        TrackEnd::AtEnd { u } if linalg::inf_norm(u) > SUSPICIOUS_NORM
    );
    let mut affine_attempt = None;
    if let (TrackEnd::AtEnd { u }, false) = (&end, suspicious) {
        let tp = finish_path(
            h,
            TrackEnd::AtEnd { u: u.clone() },
            steps,
            false,
            cfg,
            &mut probe,
        );
        if tp.result.status != PathStatus::Failed {
            return tp;
        }
        affine_attempt = Some(tp);
    }
    let (end, psteps) = retrace_track(h, w0, cfg);
    let retraced = finish_path(h, end, steps + psteps, true, cfg, &mut probe);
    match affine_attempt {
        // keep the affine report when the retrace did not do better
        Some(tp) if retraced.result.status == PathStatus::Failed => tp,
        _ => retraced,
    }
}

/// Retraces one flagged path in projective space with tightened parameters
/// and refines the dehomogenized endpoint on the target system.
pub fn retrace_projective(h: &LinearHomotopy, w0: &[Complex64], cfg: &TrackerConfig) -> PathResult {
    let (end, steps) = retrace_track(h, w0, cfg);
    let mut probe = probe_rng(0, 0);
    finish_path(h, end, steps, true, cfg, &mut probe).result
}

pub(crate) fn finish_path(
    h: &LinearHomotopy,
    end: TrackEnd,
    steps: usize,
    retraced: bool,
    cfg: &TrackerConfig,
    probe_rng: &mut impl rand::Rng,
) -> TrackedPath {
    match end {
        TrackEnd::AtEnd { u } => {
            let out = endgame(&h.target, &u, cfg, probe_rng);
            let status = if out.converged {
                PathStatus::Converged
            } else {
                PathStatus::Failed
            };
            TrackedPath {
                result: PathResult {
                    endpoint: out.u.clone(),
                    status,
                    residual: out.residual,
                    cond_estimate: out.cond,
                    steps_taken: steps,
                    retraced_projective: retraced,
                },
                classification: if out.converged {
                    Some(out.classification)
                } else {
                    None
                },
            }
        }
        TrackEnd::AtInfinity { u } => TrackedPath {
            result: PathResult {
                endpoint: u,
                status: PathStatus::AtInfinity,
                residual: f64::INFINITY,
                cond_estimate: f64::NAN,
                steps_taken: steps,
                retraced_projective: retraced,
            },
            classification: None,
        },
        TrackEnd::Failed { u, residual } => TrackedPath {
            result: PathResult {
                endpoint: u,
                status: PathStatus::Failed,
                residual,
                cond_estimate: f64::NAN,
                steps_taken: steps,
                retraced_projective: retraced,
            },
            classification: None,
        },
    }
}

/// Natural magnitude of the system rows at `u = [lambda, x...]` for a
/// problem of x-degree `deg_x`: double-precision evaluations cannot beat
/// this times machine epsilon, so tolerances must scale with it.
pub(crate) fn residual_scale(u: &[Complex64], deg_x: usize) -> f64 {
    let lam = u[0].norm().max(1.0);
    let xn = linalg::inf_norm(&u[1..]).max(1.0);
    xn.powi(deg_x as i32) * lam
}

pub(crate) fn scaled_tol(tol: f64, u: &[Complex64], deg_x: usize) -> f64 {
    tol * residual_scale(u, deg_x)
}
