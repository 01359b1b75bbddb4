//! Affine predictor-corrector tracking of one homotopy path in log-time.

use num_complex::Complex64;

use super::{
    scaled_tol, TrackEnd, TrackerConfig, ENDGAME_RADIUS, S_FINAL_AFFINE, WARM_START_ITERS,
};
use crate::linalg;
use crate::polysys::{CVec, LinearHomotopy};

pub(crate) struct Corrected {
    pub converged: bool,
    pub residual: f64,
}

/// Newton iterations on `Hbar(., s)` at fixed `s`. Convergence is checked
/// before each step, so a point already on the path costs no solves.
pub(crate) fn correct(
    h: &LinearHomotopy,
    u: &mut CVec,
    s: f64,
    max_iters: usize,
    tol: f64,
) -> Corrected {
    let dim = u.len();
    let deg_x = h.target.order_a().max(h.target.order_b()) - 1;
    let mut residual = f64::INFINITY;
    for _ in 0..=max_iters {
        let r = h.eval(u, s);
        residual = linalg::inf_norm(&r);
        if !residual.is_finite() {
            return Corrected {
                converged: false,
                residual,
            };
        }
        if residual <= scaled_tol(tol, u, deg_x) {
            return Corrected {
                converged: true,
                residual,
            };
        }
        let jac = h.jacobian_u(u, s);
        let Some(lu) = linalg::lu_factor(&jac, dim) else {
            return Corrected {
                converged: false,
                residual,
            };
        };
        let delta = lu.solve(&r);
        for (ui, di) in u.iter_mut().zip(&delta) {
            *ui -= di;
        }
    }
    Corrected {
        converged: false,
        residual,
    }
}

/// Newton-corrects an exact start root onto the path at `s0`. Because
/// `e^{s0}` is negligible there, convergence normally takes at most two
/// iterations; roots that fail to converge within the cap are dropped.
pub fn warm_start(h: &LinearHomotopy, w0: &[Complex64], cfg: &TrackerConfig) -> Option<CVec> {
    let mut u = w0.to_vec();
    let out = correct(h, &mut u, cfg.s0, WARM_START_ITERS, cfg.newton_tol);
    out.converged.then_some(u)
}

/// Adaptive Euler/Newton tracking from `s0` to `0`. The step starts at
/// `-s0/3`, is halved whenever the corrector misses its iteration budget,
/// and is doubled after two consecutive uncut steps, capped at a third of
/// the remaining distance.
pub fn track_path(h: &LinearHomotopy, u0: &[Complex64], cfg: &TrackerConfig) -> super::PathResult {
    let (end, steps) = track_affine(h, u0, cfg, false);
    // Standalone entry: polish the endpoint on the target system but leave
    // classification to the endgame.
    match end {
        TrackEnd::AtEnd { u } => {
            let deg_x = h.target.order_a().max(h.target.order_b()) - 1;
            let (u, r) = super::endgame::refine(&h.target, &u, 10);
            let converged = r <= scaled_tol(cfg.newton_tol, &u, deg_x) * 10.0;
            super::PathResult {
                endpoint: u,
                status: if converged {
                    super::PathStatus::Converged
                } else {
                    super::PathStatus::Failed
                },
                residual: r,
                cond_estimate: f64::NAN,
                steps_taken: steps,
                retraced_projective: false,
            }
        }
        TrackEnd::AtInfinity { u } => super::PathResult {
            endpoint: u,
            status: super::PathStatus::AtInfinity,
            residual: f64::INFINITY,
            cond_estimate: f64::NAN,
            steps_taken: steps,
            retraced_projective: false,
        },
        TrackEnd::Failed { u, residual } => super::PathResult {
            endpoint: u,
            status: super::PathStatus::Failed,
            residual,
            cond_estimate: f64::NAN,
            steps_taken: steps,
            retraced_projective: false,
        },
    }
}

pub(crate) fn track_affine(
    h: &LinearHomotopy,
    u0: &[Complex64],
    cfg: &TrackerConfig,
    tight: bool,
) -> (TrackEnd, usize) {
    let dim = u0.len();
    let mut u = u0.to_vec();
    let mut s = cfg.s0;
    let ds_max = -cfg.s0 / 3.0;
    let mut ds = ds_max;
    if tight {
        ds /= 4.0;
    }
    let corr_iters = if tight { 2 } else { cfg.max_corrector_iters };
    let mut steps = 0usize;
    let mut uncut = 0usize;
    loop {
        if linalg::inf_norm(&u) > cfg.blowup_norm {
            return (TrackEnd::AtInfinity { u }, steps);
        }
        if -s <= S_FINAL_AFFINE {
            return (TrackEnd::AtEnd { u }, steps);
        }
        // tangent: Hbar_u du/ds = -Hbar_s
        let jac = h.jacobian_u(&u, s);
        let tangent = linalg::lu_factor(&jac, dim).map(|lu| {
            let mut rhs = h.jacobian_s(&u, s);
            rhs.iter_mut().for_each(|z| *z = -*z);
            lu.solve(&rhs)
        });
        let Some(tangent) = tangent else {
            // singular tangent solve: one retry with half step and no
            // prediction, then give up on this path
            let step = (ds / 2.0).min(-s / 3.0);
            let mut cand = u.clone();
            let out = correct(h, &mut cand, s + step, corr_iters, cfg.newton_tol);
            if out.converged {
                u = cand;
                s += step;
                steps += 1;
                uncut = 0;
                continue;
            }
            if -s <= ENDGAME_RADIUS {
                return (TrackEnd::AtEnd { u }, steps);
            }
            return (
                TrackEnd::Failed {
                    u,
                    residual: out.residual,
                },
                steps,
            );
        };
        let mut halvings = 0usize;
        loop {
            // never step past a third of the remaining distance: paths that
            // diverge must be seen blowing up, not leapt over
            let step = ds.min(-s / 3.0);
            let s_next = s + step;
            let mut cand: CVec = u
                .iter()
                .zip(&tangent)
                .map(|(ui, ti)| ui + Complex64::new(step, 0.0) * ti)
                .collect();
            let out = correct(h, &mut cand, s_next, corr_iters, cfg.newton_tol);
            if out.converged {
                u = cand;
                s = s_next;
                steps += 1;
                uncut += 1;
                if uncut >= 2 {
                    ds = (2.0 * ds).min(ds_max);
                    uncut = 0;
                }
                break;
            }
            halvings += 1;
            uncut = 0;
            ds /= 2.0;
            if ds < cfg.min_step || halvings > cfg.max_halvings_per_step {
                if -s <= ENDGAME_RADIUS {
                    return (TrackEnd::AtEnd { u }, steps);
                }
                return (
                    TrackEnd::Failed {
                        u,
                        residual: out.residual,
                    },
                    steps,
                );
            }
        }
    }
}
