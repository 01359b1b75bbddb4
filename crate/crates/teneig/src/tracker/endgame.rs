//! Endpoint refinement on the target system and classification of the
//! refined zero as regular, isolated singular, or lying on a
//! positive-dimensional solution component.

use num_complex::Complex64;
use rand::Rng;

use super::{scaled_tol, TrackerConfig};
use crate::linalg;
use crate::polysys::{CVec, EigenSystem};

/// Nature of a refined endpoint of the target system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Regular,
    SingularIsolated,
    PositiveDimensional,
}

#[derive(Clone, Debug)]
pub struct EndgameOutcome {
    pub u: CVec,
    pub residual: f64,
    pub cond: f64,
    pub converged: bool,
    pub classification: Classification,
}

const ENDGAME_NEWTON_ITERS: usize = 30;
/// Size of the null-direction perturbation used by the component probe.
/// Multiple isolated zeros are only locatable to a fractional power of
/// machine epsilon, so the probe must step well past that scatter.
const PROBE_STEP: f64 = 1e-2;

/// Guarded Newton on G: steps are accepted only when the residual drops,
/// with backtracking and a step clamp so nearly singular Jacobians cannot
/// throw the iterate away. Exactly singular factorizations get a tiny
/// ridge. Runs to diminishing returns rather than stopping at first
/// tolerance, which tightens singular endpoints.
pub(crate) fn refine(sys: &EigenSystem, u0: &[Complex64], iters: usize) -> (CVec, f64) {
    let dim = u0.len();
    let mut u = u0.to_vec();
    let mut res = linalg::inf_norm(&sys.eval(&u));
    for _ in 0..iters {
        if !res.is_finite() {
            break;
        }
        let jac = sys.jacobian(&u);
        let lu = match linalg::lu_factor(&jac, dim) {
            Some(lu) => lu,
            None => {
                let mut ridged = jac;
                let eps = 1e-14 * (1.0 + linalg::inf_norm_matrix(&ridged, dim, dim));
                for i in 0..dim {
                    ridged[i * dim + i] += Complex64::new(eps, 0.0);
                }
                match linalg::lu_factor(&ridged, dim) {
                    Some(lu) => lu,
                    None => break,
                }
            }
        };
        let r = sys.eval(&u);
        let delta = lu.solve(&r);
        // keep steps commensurate with the iterate near rank deficiencies
        let dnorm = linalg::inf_norm(&delta);
        let unorm = linalg::inf_norm(&u).max(1.0);
        let mut scale = if dnorm > 10.0 * unorm {
            10.0 * unorm / dnorm
        } else {
            1.0
        };
        let mut accepted = false;
        for _ in 0..6 {
            let cand: CVec = u
                .iter()
                .zip(&delta)
                .map(|(ui, di)| ui - Complex64::new(scale, 0.0) * di)
                .collect();
            let cand_res = linalg::inf_norm(&sys.eval(&cand));
            if cand_res < res {
                u = cand;
                res = cand_res;
                accepted = true;
                break;
            }
            scale /= 2.0;
        }
        if !accepted {
            break;
        }
    }
    (u, res)
}

/// One approximate right null direction of `jac`, from two rounds of
/// inverse iteration on a random vector.
fn null_direction<R: Rng>(jac: &[Complex64], dim: usize, rng: &mut R) -> Option<CVec> {
    let lu = linalg::lu_factor(jac, dim)?;
    let mut v: CVec = (0..dim)
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    for _ in 0..2 {
        v = lu.solve(&v);
        let norm = linalg::inf_norm(&v);
        if !(norm.is_finite() && norm > 0.0) {
            return None;
        }
        v.iter_mut().for_each(|z| *z /= norm);
    }
    Some(v)
}

/// Refines a path endpoint with Newton iterations on G, estimates the
/// Jacobian condition number, and classifies the zero. Singular endpoints
/// are probed by perturbing along approximate null directions and
/// re-correcting: a correction that settles far from the endpoint while
/// staying on the zero set indicates a positive-dimensional component.
pub fn endgame<R: Rng>(
    sys: &EigenSystem,
    u_near: &[Complex64],
    cfg: &TrackerConfig,
    rng: &mut R,
) -> EndgameOutcome {
    let dim = u_near.len();
    let deg_x = sys.order_a().max(sys.order_b()) - 1;
    let (u, residual) = refine(sys, u_near, ENDGAME_NEWTON_ITERS);
    let converged = residual <= scaled_tol(cfg.newton_tol, &u, deg_x);
    let jac = sys.jacobian(&u);
    let cond = linalg::cond_inf(&jac, dim);
    if !converged {
        return EndgameOutcome {
            u,
            residual,
            cond,
            converged,
            classification: Classification::Regular,
        };
    }
    if cond <= cfg.cond_threshold {
        return EndgameOutcome {
            u,
            residual,
            cond,
            converged,
            classification: Classification::Regular,
        };
    }
    // ridge the Jacobian if it is exactly singular so inverse iteration works
    let probe_jac = if linalg::lu_factor(&jac, dim).is_some() {
        jac
    } else {
        let mut ridged = jac;
        for i in 0..dim {
            ridged[i * dim + i] += Complex64::new(1e-14, 0.0);
        }
        ridged
    };
    let move_threshold = (10.0 * cfg.duplicate_tol).max(PROBE_STEP / 2.0);
    let mut classification = Classification::SingularIsolated;
    for _ in 0..3 {
        let Some(dir) = null_direction(&probe_jac, dim, rng) else {
            continue;
        };
        let perturbed: CVec = u
            .iter()
            .zip(&dir)
            .map(|(ui, di)| ui + Complex64::new(PROBE_STEP, 0.0) * di)
            .collect();
        let (u_c, res_c) = refine(sys, &perturbed, ENDGAME_NEWTON_ITERS);
        if res_c > scaled_tol(cfg.newton_tol, &u_c, deg_x) {
            continue;
        }
        let moved: f64 = u_c
            .iter()
            .zip(&u)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if moved >= move_threshold && moved <= 10.0 * PROBE_STEP {
            classification = Classification::PositiveDimensional;
            break;
        }
    }
    EndgameOutcome {
        u,
        residual,
        cond,
        converged,
        classification,
    }
}
