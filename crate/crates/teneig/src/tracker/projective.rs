//! Retracing of flagged paths in projective coordinates, where scale is a
//! gauge freedom and diverging paths end at honest zeros with a vanishing
//! homogenizing coordinate.
//!
//! Tracking runs on the doubly projective form `(lambda0 : lambda1) x
//! (x0 : x)`: both groups are rescaled to unit magnitude after every
//! accepted step and the two largest coordinates are held fixed during
//! Newton corrections. Endpoints dehomogenize through `lambda1/lambda0`
//! and `x/x0`; a vanishing `x0` or `lambda0` marks a path at infinity.

use num_complex::Complex64;

use super::{TrackEnd, TrackerConfig, ENDGAME_RADIUS, S_DONE, WARM_START_ITERS, X0_AT_INFINITY};
use crate::linalg;
use crate::polysys::{BiprojectiveHomotopy, CVec, LinearHomotopy};

/// Indices held fixed: one per projective group.
#[derive(Clone, Copy)]
struct Charts {
    lambda: usize,
    x: usize,
}

/// Rescales both groups so their largest coordinates are exactly one.
fn normalize_groups(v: &mut CVec) -> Charts {
    let lambda = if v[0].norm() >= v[1].norm() { 0 } else { 1 };
    let mut x = 2;
    for i in 3..v.len() {
        if v[i].norm() > v[x].norm() {
            x = i;
        }
    }
    let ls = v[lambda];
    let xs = v[x];
    for (i, z) in v.iter_mut().enumerate() {
        if i < 2 {
            *z /= ls;
        } else {
            *z /= xs;
        }
    }
    v[lambda] = Complex64::new(1.0, 0.0);
    v[x] = Complex64::new(1.0, 0.0);
    Charts { lambda, x }
}

/// Square Jacobian with the two chart columns removed.
fn square_without_charts(jac: &[Complex64], rows: usize, cols: usize, charts: Charts) -> CVec {
    let mut out = Vec::with_capacity(rows * (cols - 2));
    for r in 0..rows {
        for c in 0..cols {
            if c != charts.lambda && c != charts.x {
                out.push(jac[r * cols + c]);
            }
        }
    }
    out
}

fn apply_delta(v: &mut [Complex64], delta: &[Complex64], charts: Charts, scale: Complex64) {
    let mut w = 0;
    for (i, z) in v.iter_mut().enumerate() {
        if i == charts.lambda || i == charts.x {
            continue;
        }
        *z += scale * delta[w];
        w += 1;
    }
}

fn correct(
    p: &BiprojectiveHomotopy<'_>,
    v: &mut CVec,
    s: f64,
    charts: Charts,
    max_iters: usize,
    tol: f64,
) -> bool {
    let rows = p.n() + 1;
    let cols = p.n() + 3;
    for _ in 0..=max_iters {
        let r = p.eval(v, s);
        let res = linalg::inf_norm(&r);
        if !res.is_finite() {
            return false;
        }
        if res <= tol * linalg::inf_norm(v).max(1.0) {
            return true;
        }
        let jac = p.jacobian_v(v, s);
        let sq = square_without_charts(&jac, rows, cols, charts);
        let Some(lu) = linalg::lu_factor(&sq, rows) else {
            return false;
        };
        let delta = lu.solve(&r);
        apply_delta(v, &delta, charts, Complex64::new(-1.0, 0.0));
    }
    false
}

/// Retraces one path from its start root with the initial step quartered
/// and the corrector budget tightened to two iterations.
pub(crate) fn retrace_track(
    h: &LinearHomotopy,
    w0: &[Complex64],
    cfg: &TrackerConfig,
) -> (TrackEnd, usize) {
    let p = h.biprojective();
    let n = h.n();
    let rows = n + 1;
    let cols = n + 3;
    // embed the affine start root on the lambda0 = x0 = 1 charts
    let mut v: CVec = Vec::with_capacity(cols);
    v.push(Complex64::new(1.0, 0.0));
    v.push(w0[0]);
    v.push(Complex64::new(1.0, 0.0));
    v.extend_from_slice(&w0[1..]);
    let mut charts = normalize_groups(&mut v);
    if !correct(&p, &mut v, cfg.s0, charts, WARM_START_ITERS, cfg.newton_tol) {
        return (
            TrackEnd::Failed {
                u: w0.to_vec(),
                residual: f64::INFINITY,
            },
            0,
        );
    }
    charts = normalize_groups(&mut v);

    let mut s = cfg.s0;
    let ds_max = -cfg.s0 / 12.0; // quarter of the affine initial step
    let mut ds = ds_max;
    let mut steps = 0usize;
    let mut uncut = 0usize;
    let end = 'track: loop {
        if -s <= S_DONE {
            break finish(&v, cfg);
        }
        let jac = p.jacobian_v(&v, s);
        let sq = square_without_charts(&jac, rows, cols, charts);
        let tangent = linalg::lu_factor(&sq, rows).map(|lu| {
            let mut rhs = p.jacobian_s(&v, s);
            rhs.iter_mut().for_each(|z| *z = -*z);
            lu.solve(&rhs)
        });
        let Some(tangent) = tangent else {
            let step = (ds / 2.0).min(-s / 3.0);
            let mut cand = v.clone();
            if correct(&p, &mut cand, s + step, charts, 2, cfg.newton_tol) {
                v = cand;
                s += step;
                steps += 1;
                uncut = 0;
                charts = normalize_groups(&mut v);
                continue;
            }
            if -s <= ENDGAME_RADIUS {
                break finish(&v, cfg);
            }
            break TrackEnd::Failed {
                u: dehomogenize_lossy(&v),
                residual: f64::INFINITY,
            };
        };
        let mut halvings = 0usize;
        loop {
            let step = ds.min(-s / 3.0);
            let s_next = s + step;
            let mut cand = v.clone();
            apply_delta(&mut cand, &tangent, charts, Complex64::new(step, 0.0));
            if correct(&p, &mut cand, s_next, charts, 2, cfg.newton_tol) {
                v = cand;
                s = s_next;
                steps += 1;
                uncut += 1;
                charts = normalize_groups(&mut v);
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
                    break 'track finish(&v, cfg);
                }
                return (
                    TrackEnd::Failed {
                        u: dehomogenize_lossy(&v),
                        residual: f64::INFINITY,
                    },
                    steps,
                );
            }
        }
    };
    (end, steps)
}

/// Best-effort affine coordinates for failure reports.
fn dehomogenize_lossy(v: &[Complex64]) -> CVec {
    let tiny = 1e-300;
    let l0 = if v[0].norm() < tiny {
        Complex64::new(tiny, 0.0)
    } else {
        v[0]
    };
    let x0 = if v[2].norm() < tiny {
        Complex64::new(tiny, 0.0)
    } else {
        v[2]
    };
    let mut u = Vec::with_capacity(v.len() - 2);
    u.push(v[1] / l0);
    for z in &v[3..] {
        u.push(z / x0);
    }
    u
}

/// Dehomogenizes the endpoint. Both groups are scaled to unit magnitude,
/// so a chart coordinate below threshold means the path left every affine
/// chart: it diverged. A dehomogenized endpoint far beyond any plausible
/// solution scale is classified the same way.
fn finish(v: &[Complex64], cfg: &TrackerConfig) -> TrackEnd {
    if v[2].norm() <= X0_AT_INFINITY || v[0].norm() <= X0_AT_INFINITY {
        return TrackEnd::AtInfinity {
            u: dehomogenize_lossy(v),
        };
    }
    let mut u = Vec::with_capacity(v.len() - 2);
    u.push(v[1] / v[0]);
    for z in &v[3..] {
        u.push(z / v[2]);
    }
    if linalg::inf_norm(&u) > cfg.blowup_norm.sqrt() {
        return TrackEnd::AtInfinity { u };
    }
    TrackEnd::AtEnd { u }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::{build_eigen_system, build_start_system};
    use crate::tensor::DenseTensor;
    use crate::tracker::{track_path, warm_start, PathStatus};
    use rand::Rng;

    fn random_homotopy(n: usize, m: usize, seed: u64) -> LinearHomotopy {
        let mut r = crate::rng::stream(seed, 78);
        let total = n.pow(m as u32);
        let a = DenseTensor::new(
            m,
            n,
            (0..total)
                .map(|_| Complex64::new(r.gen::<f64>() - 0.5, r.gen::<f64>() - 0.5))
                .collect(),
        )
        .unwrap();
        let b = DenseTensor::identity(m, n).unwrap();
        let sys = build_eigen_system(&a, &b, 1, seed).unwrap();
        let q = build_start_system(n, m, seed).unwrap();
        LinearHomotopy::new(q, sys, seed)
    }

    #[test]
    fn projective_retrace_agrees_with_affine_tracking() {
        let h = random_homotopy(3, 3, 11);
        let cfg = TrackerConfig::for_dimension(3);
        for w0 in h.start.enumerate_solutions().iter().take(4) {
            let u0 = warm_start(&h, w0, &cfg).unwrap();
            let affine = track_path(&h, &u0, &cfg);
            assert_eq!(affine.status, PathStatus::Converged);
            let (end, _) = retrace_track(&h, w0, &cfg);
            let TrackEnd::AtEnd { u } = end else {
                panic!("projective retrace did not finish")
            };
            let d: f64 = u
                .iter()
                .zip(&affine.endpoint)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(
                d <= 1e-8 * linalg::inf_norm(&affine.endpoint).max(1.0),
                "distance {d}"
            );
        }
    }

    #[test]
    fn rescaling_keeps_coordinates_bounded() {
        let h = random_homotopy(2, 4, 13);
        let cfg = TrackerConfig::for_dimension(2);
        let w0 = &h.start.enumerate_solutions()[0];
        let (end, steps) = retrace_track(&h, w0, &cfg);
        assert!(steps > 0);
        match end {
            TrackEnd::AtEnd { .. } | TrackEnd::AtInfinity { .. } => {}
            TrackEnd::Failed { .. } => panic!("retrace failed"),
        }
    }
}
