//! Extraction of real eigenpairs from the complex solve output: the
//! real-part shortcut for isolated pairs, the real/imaginary-part heuristic
//! on positive-dimensional components, and a pseudo-arclength Newton
//! homotopy as the last resort. `zeig` and `heig` wire these into the
//! Z- and H-eigenpair pipelines.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::polysys::{CVec, NewtonHomotopySystem};
use crate::rng;
use crate::tensor::DenseTensor;
use crate::tracker::{Classification, TrackerConfig};
use crate::{linalg, Error, Result};

use super::solve::{eeig, eigen_residual, teig, SolveMeta};
use super::{cmp_pairs, residual_bound, EigenPair};

/// Output of `zeig`/`heig`: the real pairs plus the complex classes they
/// were extracted from.
#[derive(Clone, Debug)]
pub struct RealEigResult {
    pub pairs: Vec<EigenPair>,
    pub complex_pairs: Vec<EigenPair>,
    pub meta: SolveMeta,
}

/// How a real pair was obtained; direct extractions of a class outrank
/// Newton-homotopy hits that may wander onto another class's real point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Route {
    Homotopy,
    Heuristic,
    Direct,
}

/// Real eigenvalues of a computed spectrum: every lambda with imaginary
/// part below `delta0`, plus, when `m'/(m - m')` is a nonzero multiple of
/// four, the rotations of purely imaginary eigenvalues into real ones.
pub fn real_eigenvalues(
    pairs: &[EigenPair],
    m: usize,
    mprime: usize,
    delta0: f64,
) -> Vec<(f64, CVec)> {
    let mut out: Vec<(f64, CVec)> = Vec::new();
    for p in pairs {
        if p.lambda.im.abs() < delta0 {
            out.push((p.lambda.re, p.x.clone()));
        }
    }
    if m > mprime {
        let diff = m - mprime;
        if mprime.is_multiple_of(diff) && (mprime / diff).is_multiple_of(4) {
            for p in pairs {
                if p.lambda.re.abs() < delta0 && p.lambda.im.abs() >= delta0 {
                    let b = p.lambda.im;
                    let rot_neg =
                        Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_2 / diff as f64);
                    let rot_pos =
                        Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_2 / diff as f64);
                    out.push((b, p.x.iter().map(|z| z * rot_neg).collect()));
                    out.push((-b, p.x.iter().map(|z| z * rot_pos).collect()));
                }
            }
        }
    }
    out
}

fn real_root(value: f64, degree: usize) -> Option<f64> {
    if degree.is_multiple_of(2) {
        (value > 0.0).then(|| value.powf(1.0 / degree as f64))
    } else {
        Some(value.signum() * value.abs().powf(1.0 / degree as f64))
    }
}

fn residual_ok(a: &DenseTensor, b: &DenseTensor, k: usize, lambda: f64, x: &[f64]) -> bool {
    let xc: CVec = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let lam = Complex64::new(lambda, 0.0);
    eigen_residual(a, b, k, lam, &xc) <= residual_bound(a.order(), b.order(), lam, &xc)
}

/// Normalization closing the real eigen equations into a square system.
enum NormRow {
    /// `B x^{m'} = 1`.
    Form,
    /// Largest coordinate pinned at one.
    MaxCoordinate,
}

impl NormRow {
    fn pin_index(&self, x: &[f64]) -> Option<usize> {
        match self {
            NormRow::Form => None,
            NormRow::MaxCoordinate => {
                let mut i0 = 0;
                for (i, v) in x.iter().enumerate() {
                    if v.abs() > x[i0].abs() {
                        i0 = i;
                    }
                }
                Some(i0)
            }
        }
    }
}

/// Puts a raw real candidate onto the normalization manifold by acting
/// with a real scale. Fails when the scale does not exist over the reals.
fn normalize_candidate(
    b: &DenseTensor,
    m: usize,
    lam: f64,
    x: &[f64],
    norm: &NormRow,
) -> Option<(f64, Vec<f64>)> {
    match norm {
        NormRow::Form => {
            let mp = b.order();
            let xc: CVec = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
            let w = b.multilinear_form(&xc).expect("dims checked").re;
            if w.abs() < 1e-12 {
                return None;
            }
            let root = real_root(w, mp)?;
            let lam_n = lam / root.powi(m as i32 - mp as i32);
            Some((lam_n, x.iter().map(|v| v / root).collect()))
        }
        NormRow::MaxCoordinate => {
            let i0 = norm.pin_index(x).expect("max coordinate norm");
            if x[i0].abs() < 1e-10 {
                return None;
            }
            // equal orders: rescaling leaves lambda unchanged
            Some((lam, x.iter().map(|v| v / x[i0]).collect()))
        }
    }
}

fn eval_eigen_real(a: &DenseTensor, b: &DenseTensor, k: usize, lam: f64, x: &[f64]) -> Vec<f64> {
    let xc: CVec = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let va = a.mode_apply(k, &xc).expect("dims checked");
    let vb = b.mode_apply(1, &xc).expect("dims checked");
    va.iter().zip(&vb).map(|(p, q)| p.re - lam * q.re).collect()
}

/// Gradient of `x -> B x^{m'}` over the reals: the sum of all mode
/// contractions.
fn form_gradient(b: &DenseTensor, x: &[f64]) -> Vec<f64> {
    let xc: CVec = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut grad = vec![0.0; b.dim()];
    for q in 1..=b.order() {
        let vq = b.mode_apply(q, &xc).expect("dims checked");
        for (g, z) in grad.iter_mut().zip(&vq) {
            *g += z.re;
        }
    }
    grad
}

/// Guarded Newton on the square real system [eigen rows; normalization].
/// Extracted candidates inherit coordinate noise from singular complex
/// endpoints; this drives the residual to the floor the zero allows.
fn polish_real(
    a: &DenseTensor,
    b: &DenseTensor,
    k: usize,
    lam0: f64,
    x0: &[f64],
    norm: &NormRow,
) -> (f64, Vec<f64>) {
    let n = a.dim();
    let rows = n + 1;
    let eval = |lam: f64, x: &[f64]| -> Vec<f64> {
        let mut r = eval_eigen_real(a, b, k, lam, x);
        r.push(match norm {
            NormRow::Form => {
                let xc: CVec = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
                b.multilinear_form(&xc).expect("dims checked").re - 1.0
            }
            NormRow::MaxCoordinate => {
                let i = norm.pin_index(x0).expect("max coordinate norm");
                x[i] - 1.0
            }
        });
        r
    };
    let mut lam = lam0;
    let mut x = x0.to_vec();
    let mut res = linalg::inf_norm(&eval(lam, &x));
    for _ in 0..30 {
        if !res.is_finite() {
            break;
        }
        let xc: CVec = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let vb = b.mode_apply(1, &xc).expect("dims checked");
        let ja = a.mode_jacobian(k, &xc).expect("dims checked");
        let jb = b.mode_jacobian(1, &xc).expect("dims checked");
        let mut jac = vec![0.0f64; rows * rows];
        for j in 0..n {
            jac[j * rows] = -vb[j].re;
            for p in 0..n {
                jac[j * rows + 1 + p] = ja[j * n + p].re - lam * jb[j * n + p].re;
            }
        }
        match norm {
            NormRow::Form => {
                let grad = form_gradient(b, &x);
                for p in 0..n {
                    jac[n * rows + 1 + p] = grad[p];
                }
            }
            NormRow::MaxCoordinate => {
                let i = norm.pin_index(x0).expect("max coordinate norm");
                jac[n * rows + 1 + i] = 1.0;
            }
        }
        let Some(lu) = linalg::lu_factor(&jac, rows) else {
            break;
        };
        let r = eval(lam, &x);
        let delta = lu.solve(&r);
        let mut accepted = false;
        let mut scale = 1.0;
        for _ in 0..3 {
            let lam_c = lam - scale * delta[0];
            let x_c: Vec<f64> = x
                .iter()
                .zip(&delta[1..])
                .map(|(xi, di)| xi - scale * di)
                .collect();
            let res_c = linalg::inf_norm(&eval(lam_c, &x_c));
            if res_c < res {
                lam = lam_c;
                x = x_c;
                res = res_c;
                accepted = true;
                break;
            }
            scale /= 2.0;
        }
        if !accepted {
            break;
        }
    }
    (lam, x)
}

fn extract_with_route(
    pair: &EigenPair,
    a: &DenseTensor,
    b: &DenseTensor,
    k: usize,
    norm: &NormRow,
    cfg: &TrackerConfig,
    rng: &mut ChaCha8Rng,
) -> Option<(f64, Vec<f64>, Route)> {
    // multiple zeros are only located to a fractional power of machine
    // precision, so singular representatives get looser realness tests;
    // every candidate is polished on the normalized real system and must
    // pass the residual bound
    let non_regular = pair.classification != Classification::Regular;
    let lam_tol = if non_regular {
        cfg.imag_tol.max(1e-5)
    } else {
        cfg.imag_tol
    };
    if pair.lambda.im.abs() >= lam_tol {
        return None;
    }
    let lambda = pair.lambda.re;
    let m = a.order();
    let finish = |lam: f64, x: &[f64], route: Route| -> Option<(f64, Vec<f64>, Route)> {
        if linalg::inf_norm(x) < 1e-10 {
            return None;
        }
        let (lam_n, x_n) = normalize_candidate(b, m, lam, x, norm)?;
        let (lam_p, x_p) = polish_real(a, b, k, lam_n, &x_n, norm);
        residual_ok(a, b, k, lam_p, &x_p).then_some((lam_p, x_p, route))
    };
    let x_tol = if non_regular {
        cfg.imag_tol.max(cfg.singular_cluster_tol)
    } else {
        cfg.imag_tol
    };
    let im_norm2: f64 = pair.x.iter().map(|z| z.im * z.im).sum::<f64>().sqrt();
    if pair.classification != Classification::PositiveDimensional {
        if im_norm2 < x_tol {
            let y: Vec<f64> = pair.x.iter().map(|z| z.re).collect();
            if let Some(hit) = finish(lambda, &y, Route::Direct) {
                return Some(hit);
            }
        }
    } else {
        // real/imaginary-part heuristic on the component
        for part in 0..2 {
            let y: Vec<f64> = pair
                .x
                .iter()
                .map(|z| if part == 0 { z.re } else { z.im })
                .collect();
            if let Some(hit) = finish(lambda, &y, Route::Heuristic) {
                return Some(hit);
            }
        }
    }
    // Newton homotopy from the real part of the representative; a small
    // random offset keeps the curve generic when the anchor sits on a
    // singular slice of the component.
    let n = a.dim();
    let mut anchor: Vec<f64> = Vec::with_capacity(n + 1);
    anchor.push(lambda);
    anchor.extend(pair.x.iter().map(|z| z.re));
    if linalg::inf_norm(&anchor[1..]) < 1e-8 {
        return None;
    }
    for v in anchor.iter_mut() {
        *v += 1e-3 * (rng.gen::<f64>() - 0.5);
    }
    let nh = NewtonHomotopySystem::new(a, b, k, anchor, rng).ok()?;
    let u = track_newton_homotopy(&nh, cfg)?;
    finish(u[0], &u[1..], Route::Homotopy)
}

/// Algorithm-ordered real extraction: isolated real shortcut, component
/// heuristic, then the Newton homotopy. The returned pair satisfies the
/// `B x^{m'} = 1` normalization when the orders differ and max-coordinate
/// scaling otherwise.
pub fn extract_real_pair(
    pair: &EigenPair,
    a: &DenseTensor,
    b: &DenseTensor,
    k: usize,
    cfg: &TrackerConfig,
    rng: &mut ChaCha8Rng,
) -> Option<(f64, Vec<f64>)> {
    let norm = if a.order() == b.order() {
        NormRow::MaxCoordinate
    } else {
        NormRow::Form
    };
    extract_with_route(pair, a, b, k, &norm, cfg, rng).map(|(l, x, _)| (l, x))
}

// --- pseudo-arclength tracking of the Newton homotopy ---------------------

fn arclength_tangent(nh: &NewtonHomotopySystem, w: &[f64], prev: &[f64]) -> Option<Vec<f64>> {
    let n = nh.n();
    let rows = n + 1;
    let dim = n + 2;
    let ju = nh.jacobian_u(&w[..rows]);
    let jt = nh.jacobian_t();
    let mut mat = vec![0.0f64; dim * dim];
    for r in 0..rows {
        mat[r * dim..r * dim + rows].copy_from_slice(&ju[r * rows..(r + 1) * rows]);
        mat[r * dim + dim - 1] = jt[r];
    }
    mat[(dim - 1) * dim..dim * dim].copy_from_slice(prev);
    let mut rhs = vec![0.0f64; dim];
    rhs[dim - 1] = 1.0;
    let tau = linalg::solve(&mat, &rhs, dim)?;
    let norm: f64 = tau.iter().map(|v| v * v).sum::<f64>();
    let norm = norm.sqrt();
    if !(norm.is_finite() && norm > 0.0) {
        return None;
    }
    Some(tau.into_iter().map(|v| v / norm).collect())
}

fn arclength_correct(
    nh: &NewtonHomotopySystem,
    pred: &[f64],
    tau: &[f64],
    tol: f64,
) -> Option<Vec<f64>> {
    let n = nh.n();
    let rows = n + 1;
    let dim = n + 2;
    let mut v = pred.to_vec();
    for _ in 0..8 {
        let h = nh.eval(&v[..rows], v[dim - 1]);
        let res = linalg::inf_norm(&h);
        if !res.is_finite() {
            return None;
        }
        if res <= tol * linalg::inf_norm(&v).max(1.0) {
            return Some(v);
        }
        let ju = nh.jacobian_u(&v[..rows]);
        let jt = nh.jacobian_t();
        let mut mat = vec![0.0f64; dim * dim];
        for r in 0..rows {
            mat[r * dim..r * dim + rows].copy_from_slice(&ju[r * rows..(r + 1) * rows]);
            mat[r * dim + dim - 1] = jt[r];
        }
        mat[(dim - 1) * dim..dim * dim].copy_from_slice(tau);
        let mut rhs: Vec<f64> = h;
        let plane: f64 = tau
            .iter()
            .zip(v.iter().zip(pred))
            .map(|(t, (vi, pi))| t * (vi - pi))
            .sum();
        rhs.push(plane);
        let delta = linalg::solve(&mat, &rhs, dim)?;
        for (vi, di) in v.iter_mut().zip(&delta) {
            *vi -= di;
        }
    }
    None
}

fn newton_at_t1(nh: &NewtonHomotopySystem, u0: &[f64], cfg: &TrackerConfig) -> Option<Vec<f64>> {
    let rows = nh.n() + 1;
    let mut u = u0.to_vec();
    let mut res = linalg::inf_norm(&nh.eval_base(&u));
    for _ in 0..60 {
        let jac = nh.jacobian_u(&u);
        let Some(lu) = linalg::lu_factor(&jac, rows) else {
            break;
        };
        let r = nh.eval_base(&u);
        let delta = lu.solve(&r);
        let mut accepted = false;
        let mut scale = 1.0;
        for _ in 0..3 {
            let cand: Vec<f64> = u
                .iter()
                .zip(&delta)
                .map(|(ui, di)| ui - scale * di)
                .collect();
            let cand_res = linalg::inf_norm(&nh.eval_base(&cand));
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
    (res <= 1e-2 * cfg.newton_tol.sqrt() * linalg::inf_norm(&u).max(1.0)).then_some(u)
}

/// Follows the curve `H(u(s), t(s)) = 0` by arclength from `t = 0` toward
/// `t = 1`, then polishes the endpoint on the base system.
fn track_newton_homotopy(nh: &NewtonHomotopySystem, cfg: &TrackerConfig) -> Option<Vec<f64>> {
    let dim = nh.n() + 2;
    let mut w: Vec<f64> = nh.anchor().to_vec();
    w.push(0.0);
    let mut prev = vec![0.0f64; dim];
    prev[dim - 1] = 1.0;
    let mut h = 0.05f64;
    let mut arclen = 0.0f64;
    let mut successes = 0usize;
    for _ in 0..4000 {
        let tau = arclength_tangent(nh, &w, &prev)?;
        let mut stepped = false;
        while h >= 1e-8 {
            let predicted: Vec<f64> = w.iter().zip(&tau).map(|(wi, ti)| wi + h * ti).collect();
            if let Some(v) = arclength_correct(nh, &predicted, &tau, cfg.newton_tol) {
                w = v;
                prev = tau.clone();
                arclen += h;
                successes += 1;
                stepped = true;
                if successes >= 3 {
                    h = (h * 1.5).min(0.25);
                    successes = 0;
                }
                break;
            }
            h /= 2.0;
            successes = 0;
        }
        if !stepped {
            return None;
        }
        let t = w[dim - 1];
        if t >= 1.0 - 1e-12 {
            return newton_at_t1(nh, &w[..dim - 1], cfg);
        }
        if t < -0.5 || arclen > 150.0 || linalg::inf_norm(&w) > cfg.blowup_norm {
            return None;
        }
    }
    None
}

// --- zeig / heig -----------------------------------------------------------

/// Sign convention for real pairs: the first nonzero eigenvector component
/// is made positive by acting with t = -1, which flips lambda when the
/// order gap is odd.
fn canonical_sign(lambda: f64, x: Vec<f64>, m: usize, mprime: usize) -> (f64, Vec<f64>) {
    let flip = x.iter().find(|v| v.abs() > 1e-8).is_some_and(|&v| v < 0.0);
    if !flip {
        return (lambda, x);
    }
    let lam = if (m as i64 - mprime as i64).rem_euclid(2) == 1 {
        -lambda
    } else {
        lambda
    };
    (lam, x.into_iter().map(|v| -v).collect())
}

fn dist_real(a: &EigenPair, b: &EigenPair) -> f64 {
    let dl = (a.lambda - b.lambda).norm();
    a.x.iter()
        .zip(&b.x)
        .map(|(p, q)| (p - q).norm())
        .fold(dl, f64::max)
}

fn push_real_pair(
    found: &mut Vec<(EigenPair, Route)>,
    cand: EigenPair,
    route: Route,
    cfg: &TrackerConfig,
) {
    // real pairs inherit coordinate noise up to the singular cluster scale,
    // so presentation-level deduplication uses that width throughout
    let tol = cfg.singular_cluster_tol.max(cfg.duplicate_tol);
    for (existing, existing_route) in found.iter_mut() {
        if dist_real(existing, &cand) <= tol {
            let pos_dim = existing.classification == Classification::PositiveDimensional
                || cand.classification == Classification::PositiveDimensional;
            let component = existing.component_id.or(cand.component_id);
            if route > *existing_route {
                *existing = cand;
                *existing_route = route;
            }
            if pos_dim {
                existing.classification = Classification::PositiveDimensional;
                existing.component_id = component;
            }
            return;
        }
    }
    found.push((cand, route));
}

fn finish_real(
    mut found: Vec<(EigenPair, Route)>,
    complex_pairs: Vec<EigenPair>,
    meta: SolveMeta,
) -> RealEigResult {
    found.sort_by(|(p, _), (q, _)| cmp_pairs(&(p.lambda, &p.x), &(q.lambda, &q.x)));
    RealEigResult {
        pairs: found.into_iter().map(|(p, _)| p).collect(),
        complex_pairs,
        meta,
    }
}

/// Real Z-eigenpairs of a real tensor: E-eigenpair solve, real extraction,
/// unit-sphere normalization, and sign canonicalization.
pub fn zeig(a: &DenseTensor, k: usize, seed: u64, cfg: &TrackerConfig) -> Result<RealEigResult> {
    if !a.is_real() {
        return Err(Error::InvalidSystem("zeig requires a real tensor".into()));
    }
    let res = eeig(a, k, seed, cfg)?;
    let b = DenseTensor::identity_matrix(a.dim())?;
    let m = a.order();
    let mut found: Vec<(EigenPair, Route)> = Vec::new();
    for (ci, class) in res.classes.iter().enumerate() {
        let rep = &class.representative;
        let mut rr = rng::stream(seed.wrapping_add(ci as u64), rng::STREAM_REAL_PLANE);
        let Some((lam, x, route)) = extract_with_route(rep, a, &b, k, &NormRow::Form, cfg, &mut rr)
        else {
            continue;
        };
        let (lam_c, x_c) = canonical_sign(lam, x, m, 2);
        let xc: CVec = x_c.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let lambda = Complex64::new(lam_c, 0.0);
        let residual = eigen_residual(a, &b, k, lambda, &xc);
        push_real_pair(
            &mut found,
            EigenPair {
                lambda,
                x: xc,
                multiplicity: rep.multiplicity,
                residual,
                classification: rep.classification,
                is_real: true,
                component_id: rep.component_id,
            },
            route,
            cfg,
        );
    }
    let complex_pairs = res
        .classes
        .iter()
        .map(|c| c.representative.clone())
        .collect();
    Ok(finish_real(found, complex_pairs, res.meta))
}

/// Real H-eigenpairs of a real tensor: identity-tensor solve with `teig`,
/// real extraction, and max-magnitude normalization.
pub fn heig(a: &DenseTensor, k: usize, seed: u64, cfg: &TrackerConfig) -> Result<RealEigResult> {
    if !a.is_real() {
        return Err(Error::InvalidSystem("heig requires a real tensor".into()));
    }
    let b = DenseTensor::identity(a.order(), a.dim())?;
    let res = teig(a, &b, k, seed, cfg)?;
    let mut found: Vec<(EigenPair, Route)> = Vec::new();
    for (ci, rep) in res.pairs.iter().enumerate() {
        let mut rr = rng::stream(seed.wrapping_add(ci as u64), rng::STREAM_REAL_PLANE);
        let Some((lam, x, route)) =
            extract_with_route(rep, a, &b, k, &NormRow::MaxCoordinate, cfg, &mut rr)
        else {
            continue;
        };
        let xc: CVec = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let lambda = Complex64::new(lam, 0.0);
        let residual = eigen_residual(a, &b, k, lambda, &xc);
        push_real_pair(
            &mut found,
            EigenPair {
                lambda,
                x: xc,
                multiplicity: rep.multiplicity,
                residual,
                classification: rep.classification,
                is_real: true,
                component_id: rep.component_id,
            },
            route,
            cfg,
        );
    }
    Ok(finish_real(found, res.pairs.clone(), res.meta))
}
