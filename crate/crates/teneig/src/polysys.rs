//! The polynomial systems driving a solve: the augmented eigen-system G,
//! the product-form start system Q with closed-form roots, the log-time
//! linear homotopy between them, its projective homogenization, and the
//! Newton homotopy used for real-pair extraction.
//!
//! Points are flat complex vectors `u = [lambda, x1, ..., xn]`.

use num_complex::Complex64;
use rand::Rng;

use crate::rng::{self, unit_complex};
use crate::tensor::DenseTensor;
use crate::{Error, Result};

pub type CVec = Vec<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Minimum separation enforced between start eigenvalues.
const MU_SEPARATION: f64 = 1e-3;

/// Random affine hyperplane `a . x + b = 0` cutting one representative out
/// of each scaling orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct Hyperplane {
    pub a: CVec,
    pub b: Complex64,
}

impl Hyperplane {
    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.a
            .iter()
            .zip(x)
            .map(|(ai, xi)| ai * xi)
            .sum::<Complex64>()
            + self.b
    }

    fn eval_homogeneous(&self, x: &[Complex64], x0: Complex64) -> Complex64 {
        self.a
            .iter()
            .zip(x)
            .map(|(ai, xi)| ai * xi)
            .sum::<Complex64>()
            + self.b * x0
    }
}

/// The square target system `G(lambda, x)`: n eigen rows plus the hyperplane.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    a: DenseTensor,
    b: DenseTensor,
    k: usize,
    plane: Hyperplane,
}

/// Checks that `B x^{m'}` is not the zero polynomial by evaluating it at a
/// few fixed pseudo-random points.
fn form_not_identically_zero(b: &DenseTensor) -> bool {
    let mut probe = rng::stream(0xB0B, rng::STREAM_START);
    let scale: f64 = b.entries().iter().map(|z| z.norm()).sum::<f64>().max(1.0);
    (0..3).any(|_| {
        let x: CVec = (0..b.dim()).map(|_| unit_complex(&mut probe)).collect();
        b.multilinear_form(&x).unwrap().norm() > 1e-12 * scale
    })
}

/// Builds the eigen-system with a seeded unit-modulus hyperplane.
pub fn build_eigen_system(
    a: &DenseTensor,
    b: &DenseTensor,
    k: usize,
    seed: u64,
) -> Result<EigenSystem> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    if k < 1 || k > a.order() {
        return Err(Error::ModeOutOfRange {
            mode: k,
            order: a.order(),
        });
    }
    if !form_not_identically_zero(b) {
        return Err(Error::InvalidSystem("B x^m' is identically zero".into()));
    }
    let mut r = rng::stream(seed, rng::STREAM_HYPERPLANE);
    let plane = Hyperplane {
        a: (0..a.dim()).map(|_| unit_complex(&mut r)).collect(),
        b: unit_complex(&mut r),
    };
    Ok(EigenSystem {
        a: a.clone(),
        b: b.clone(),
        k,
        plane,
    })
}

impl EigenSystem {
    pub fn n(&self) -> usize {
        self.a.dim()
    }

    pub fn order_a(&self) -> usize {
        self.a.order()
    }

    pub fn order_b(&self) -> usize {
        self.b.order()
    }

    pub fn mode(&self) -> usize {
        self.k
    }

    pub fn tensor_a(&self) -> &DenseTensor {
        &self.a
    }

    pub fn tensor_b(&self) -> &DenseTensor {
        &self.b
    }

    pub fn plane(&self) -> &Hyperplane {
        &self.plane
    }

    /// `G(u)`: rows `A^(k) x^{m-1} - lambda B x^{m'-1}` and the hyperplane.
    pub fn eval(&self, u: &[Complex64]) -> CVec {
        let n = self.n();
        let lambda = u[0];
        let x = &u[1..];
        let va = self
            .a
            .mode_apply(self.k, x)
            .expect("shape checked at build");
        let vb = self.b.mode_apply(1, x).expect("shape checked at build");
        let mut out = Vec::with_capacity(n + 1);
        for j in 0..n {
            out.push(va[j] - lambda * vb[j]);
        }
        out.push(self.plane.eval(x));
        out
    }

    /// Analytic Jacobian of `G` with respect to `(lambda, x)`, row-major
    /// `(n+1) x (n+1)`. Column 0 is `-B x^{m'-1}` extended by zero; the last
    /// row is the constant hyperplane gradient.
    pub fn jacobian(&self, u: &[Complex64]) -> CVec {
        let n = self.n();
        let lambda = u[0];
        let x = &u[1..];
        let vb = self.b.mode_apply(1, x).expect("shape checked at build");
        let ja = self
            .a
            .mode_jacobian(self.k, x)
            .expect("shape checked at build");
        let jb = self.b.mode_jacobian(1, x).expect("shape checked at build");
        let cols = n + 1;
        let mut jac = vec![ZERO; cols * cols];
        for j in 0..n {
            jac[j * cols] = -vb[j];
            for p in 0..n {
                jac[j * cols + 1 + p] = ja[j * n + p] - lambda * jb[j * n + p];
            }
        }
        for p in 0..n {
            jac[n * cols + 1 + p] = self.plane.a[p];
        }
        jac
    }

    /// Residual of the eigen rows only (no hyperplane).
    pub fn eigen_residual(&self, lambda: Complex64, x: &[Complex64]) -> f64 {
        let va = self
            .a
            .mode_apply(self.k, x)
            .expect("shape checked at build");
        let vb = self.b.mode_apply(1, x).expect("shape checked at build");
        va.iter()
            .zip(&vb)
            .map(|(a, b)| (a - lambda * b).norm())
            .fold(0.0, f64::max)
    }
}

/// Product-form start system with `n e^(n-1)` closed-form nonsingular
/// roots, where `e` is the exponent of the x-binomials.
#[derive(Clone, Debug)]
pub struct StartSystem {
    mu: CVec,
    beta: CVec,
    c: CVec,
    d: Complex64,
    exponent: usize,
}

/// Draws unit-modulus parameters for the start system of x-degree
/// `order - 1`. Start eigenvalues are resampled until well separated.
pub fn build_start_system(n: usize, order: usize, seed: u64) -> Result<StartSystem> {
    if n < 1 || order < 2 {
        return Err(Error::InvalidSystem(format!(
            "start system needs n >= 1, order >= 2; got n={n}, order={order}"
        )));
    }
    let mut r = rng::stream(seed, rng::STREAM_START);
    let mut mu: CVec = Vec::with_capacity(n);
    for _ in 0..n {
        let mut candidate = unit_complex(&mut r);
        while mu.iter().any(|m| (m - candidate).norm() < MU_SEPARATION) {
            candidate = unit_complex(&mut r);
        }
        mu.push(candidate);
    }
    let beta: CVec = (0..n).map(|_| unit_complex(&mut r)).collect();
    let c: CVec = (0..n).map(|_| unit_complex(&mut r)).collect();
    let d = unit_complex(&mut r);
    Ok(StartSystem {
        mu,
        beta,
        c,
        d,
        exponent: order - 1,
    })
}

impl StartSystem {
    pub fn n(&self) -> usize {
        self.mu.len()
    }

    /// Degree of the x-binomials plus one.
    pub fn order(&self) -> usize {
        self.exponent + 1
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn mu(&self) -> &[Complex64] {
        &self.mu
    }

    pub fn beta(&self) -> &[Complex64] {
        &self.beta
    }

    pub fn c(&self) -> &[Complex64] {
        &self.c
    }

    pub fn d(&self) -> Complex64 {
        self.d
    }

    pub fn solution_count(&self) -> usize {
        self.n() * self.exponent.pow(self.n() as u32 - 1)
    }

    pub fn eval(&self, u: &[Complex64]) -> CVec {
        let n = self.n();
        let lambda = u[0];
        let x = &u[1..];
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..n {
            out.push((lambda - self.mu[i]) * (x[i].powu(self.exponent as u32) - self.beta[i]));
        }
        out.push(
            self.c
                .iter()
                .zip(x)
                .map(|(ci, xi)| ci * xi)
                .sum::<Complex64>()
                + self.d,
        );
        out
    }

    pub fn jacobian(&self, u: &[Complex64]) -> CVec {
        let n = self.n();
        let lambda = u[0];
        let x = &u[1..];
        let cols = n + 1;
        let e = self.exponent as u32;
        let mut jac = vec![ZERO; cols * cols];
        for i in 0..n {
            jac[i * cols] = x[i].powu(e) - self.beta[i];
            jac[i * cols + 1 + i] =
                (lambda - self.mu[i]) * Complex64::new(e as f64, 0.0) * x[i].powu(e - 1);
        }
        for p in 0..n {
            jac[n * cols + 1 + p] = self.c[p];
        }
        jac
    }

    /// All `n e^(n-1)` roots: for each i, `lambda = mu_i`, every other
    /// coordinate ranges over the e-th roots of its beta, and `x_i` is
    /// solved from the hyperplane row.
    pub fn enumerate_solutions(&self) -> Vec<CVec> {
        let n = self.n();
        let e = self.exponent;
        let omega = Complex64::from_polar(1.0, std::f64::consts::TAU / e as f64);
        // roots[j][t]: t-th e-th root of beta_j
        let roots: Vec<CVec> = (0..n)
            .map(|j| {
                let principal = self.beta[j].powf(1.0 / e as f64);
                (0..e).map(|t| principal * omega.powu(t as u32)).collect()
            })
            .collect();
        let mut out = Vec::with_capacity(self.solution_count());
        for i in 0..n {
            let free: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            let combos = e.pow(free.len() as u32);
            let mut digits = vec![0usize; free.len()];
            for _ in 0..combos {
                let mut u = vec![ZERO; n + 1];
                u[0] = self.mu[i];
                let mut partial = self.d;
                for (slot, &j) in free.iter().enumerate() {
                    let xj = roots[j][digits[slot]];
                    u[1 + j] = xj;
                    partial += self.c[j] * xj;
                }
                u[1 + i] = -partial / self.c[i];
                out.push(u);
                for slot in (0..digits.len()).rev() {
                    digits[slot] += 1;
                    if digits[slot] < e {
                        break;
                    }
                    digits[slot] = 0;
                }
            }
        }
        out
    }
}

/// `Hbar(u, s) = (1 - e^s) gamma Q(u) + e^s G(u)` on `s in (-inf, 0]`.
#[derive(Clone, Debug)]
pub struct LinearHomotopy {
    pub start: StartSystem,
    pub target: EigenSystem,
    pub gamma: Complex64,
}

impl LinearHomotopy {
    pub fn new(start: StartSystem, target: EigenSystem, seed: u64) -> Self {
        let gamma = unit_complex(&mut rng::stream(seed, rng::STREAM_GAMMA));
        Self {
            start,
            target,
            gamma,
        }
    }

    pub fn n(&self) -> usize {
        self.target.n()
    }

    pub fn eval(&self, u: &[Complex64], s: f64) -> CVec {
        let es = s.exp();
        let q = self.start.eval(u);
        let g = self.target.eval(u);
        let wq = self.gamma * (1.0 - es);
        q.iter().zip(&g).map(|(qi, gi)| wq * qi + es * gi).collect()
    }

    pub fn jacobian_u(&self, u: &[Complex64], s: f64) -> CVec {
        let es = s.exp();
        let jq = self.start.jacobian(u);
        let jg = self.target.jacobian(u);
        let wq = self.gamma * (1.0 - es);
        jq.iter()
            .zip(&jg)
            .map(|(qi, gi)| wq * qi + es * gi)
            .collect()
    }

    /// `dHbar/ds = e^s (G(u) - gamma Q(u))`.
    pub fn jacobian_s(&self, u: &[Complex64], s: f64) -> CVec {
        let es = s.exp();
        let q = self.start.eval(u);
        let g = self.target.eval(u);
        q.iter()
            .zip(&g)
            .map(|(qi, gi)| es * (gi - self.gamma * qi))
            .collect()
    }
}

/// A point of projective (lambda, x0, x)-space: nonzero up to rescaling by
/// any nonzero factor. `xhat` holds `[x0, x1, ..., xn]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectivePoint {
    pub lambda: Complex64,
    pub xhat: CVec,
}

impl ProjectivePoint {
    /// Embeds an affine point `[lambda, x...]` on the `x0 = 1` chart.
    pub fn from_affine(u: &[Complex64]) -> Self {
        let mut xhat = Vec::with_capacity(u.len());
        xhat.push(Complex64::new(1.0, 0.0));
        xhat.extend_from_slice(&u[1..]);
        Self { lambda: u[0], xhat }
    }

    /// Flat coordinates `[lambda, x0, x1, ..., xn]` as the projective
    /// evaluators expect them.
    pub fn coords(&self) -> CVec {
        let mut v = Vec::with_capacity(self.xhat.len() + 1);
        v.push(self.lambda);
        v.extend_from_slice(&self.xhat);
        v
    }

    /// Rescales so the largest coordinate has unit magnitude.
    pub fn normalize(&mut self) {
        let mut scale = self.lambda.norm();
        for z in &self.xhat {
            scale = scale.max(z.norm());
        }
        if scale > 0.0 {
            self.lambda /= scale;
            self.xhat.iter_mut().for_each(|z| *z /= scale);
        }
    }

    /// Affine coordinates `[lambda/x0, x/x0]`, or None when x0 vanishes.
    pub fn dehomogenize(&self, tol: f64) -> Option<CVec> {
        let x0 = self.xhat[0];
        if x0.norm() <= tol {
            return None;
        }
        let mut u = Vec::with_capacity(self.xhat.len());
        u.push(self.lambda / x0);
        for z in &self.xhat[1..] {
            u.push(z / x0);
        }
        Some(u)
    }
}

/// Homogenization of the linear homotopy in `(lambda, x)` with the extra
/// coordinate `x0`; every eigen row becomes homogeneous of degree
/// `max(m, m')` in `(lambda, x0, x)`, the hyperplane row of degree one.
/// Points are `v = [lambda, x0, x1, ..., xn]`, see [`ProjectivePoint`].
pub struct ProjectiveHomotopy<'a> {
    h: &'a LinearHomotopy,
    /// x0 powers completing the target rows to full degree.
    pow_a: u32,
    pow_b: u32,
}

/// Builds the projective evaluator for a linear homotopy.
pub fn homogenize(h: &LinearHomotopy) -> ProjectiveHomotopy<'_> {
    let m = h.target.order_a();
    let mp = h.target.order_b();
    let top = m.max(mp);
    ProjectiveHomotopy {
        h,
        pow_a: (top - (m - 1)) as u32,
        pow_b: (top - mp) as u32,
    }
}

impl ProjectiveHomotopy<'_> {
    pub fn n(&self) -> usize {
        self.h.n()
    }

    /// Total degree of the homogenized eigen rows.
    pub fn degree(&self) -> usize {
        self.h.target.order_a().max(self.h.target.order_b())
    }

    fn start_rows(&self, v: &[Complex64]) -> CVec {
        let n = self.n();
        let q = &self.h.start;
        let lambda = v[0];
        let x0 = v[1];
        let x = &v[2..];
        let e = q.exponent() as u32;
        let x0e = x0.powu(e);
        let mut rows = Vec::with_capacity(n + 1);
        for i in 0..n {
            rows.push((lambda - q.mu()[i] * x0) * (x[i].powu(e) - q.beta()[i] * x0e));
        }
        rows.push(
            q.c()
                .iter()
                .zip(x)
                .map(|(ci, xi)| ci * xi)
                .sum::<Complex64>()
                + q.d() * x0,
        );
        rows
    }

    fn target_rows(&self, v: &[Complex64]) -> CVec {
        let n = self.n();
        let g = &self.h.target;
        let lambda = v[0];
        let x0 = v[1];
        let x = &v[2..];
        let va = g.a.mode_apply(g.k, x).expect("shape checked at build");
        let vb = g.b.mode_apply(1, x).expect("shape checked at build");
        let xa = x0.powu(self.pow_a);
        let xb = x0.powu(self.pow_b);
        let mut rows = Vec::with_capacity(n + 1);
        for j in 0..n {
            rows.push(xa * va[j] - lambda * xb * vb[j]);
        }
        rows.push(g.plane.eval_homogeneous(x, x0));
        rows
    }

    pub fn eval(&self, v: &[Complex64], s: f64) -> CVec {
        let es = s.exp();
        let wq = self.h.gamma * (1.0 - es);
        let q = self.start_rows(v);
        let g = self.target_rows(v);
        q.iter().zip(&g).map(|(qi, gi)| wq * qi + es * gi).collect()
    }

    /// Row-major `(n+1) x (n+2)` Jacobian with respect to
    /// `(lambda, x0, x1, ..., xn)`.
    pub fn jacobian_v(&self, v: &[Complex64], s: f64) -> CVec {
        let n = self.n();
        let es = s.exp();
        let wq = self.h.gamma * (1.0 - es);
        let q = &self.h.start;
        let g = &self.h.target;
        let lambda = v[0];
        let x0 = v[1];
        let x = &v[2..];
        let e = q.exponent() as u32;
        let x0e = x0.powu(e);
        let va = g.a.mode_apply(g.k, x).expect("shape checked at build");
        let vb = g.b.mode_apply(1, x).expect("shape checked at build");
        let ja = g.a.mode_jacobian(g.k, x).expect("shape checked at build");
        let jb = g.b.mode_jacobian(1, x).expect("shape checked at build");
        let xa = x0.powu(self.pow_a);
        let xb = x0.powu(self.pow_b);
        let dxa = if self.pow_a == 0 {
            ZERO
        } else {
            Complex64::new(self.pow_a as f64, 0.0) * x0.powu(self.pow_a - 1)
        };
        let dxb = if self.pow_b == 0 {
            ZERO
        } else {
            Complex64::new(self.pow_b as f64, 0.0) * x0.powu(self.pow_b - 1)
        };
        let cols = n + 2;
        let mut jac = vec![ZERO; (n + 1) * cols];
        for i in 0..n {
            let binom = x[i].powu(e) - q.beta()[i] * x0e;
            let lead = lambda - q.mu()[i] * x0;
            let s_dl = binom;
            let s_dx0 = -q.mu()[i] * binom
                + lead * (-q.beta()[i] * Complex64::new(e as f64, 0.0) * x0.powu(e - 1));
            let s_dxi = lead * Complex64::new(e as f64, 0.0) * x[i].powu(e - 1);
            let t_dl = -xb * vb[i];
            let t_dx0 = dxa * va[i] - lambda * dxb * vb[i];
            jac[i * cols] = wq * s_dl + es * t_dl;
            jac[i * cols + 1] = wq * s_dx0 + es * t_dx0;
            for p in 0..n {
                let t_dxp = xa * ja[i * n + p] - lambda * xb * jb[i * n + p];
                let s_dxp = if p == i { s_dxi } else { ZERO };
                jac[i * cols + 2 + p] = wq * s_dxp + es * t_dxp;
            }
        }
        // hyperplane row
        jac[n * cols + 1] = wq * q.d() + es * g.plane.b;
        for p in 0..n {
            jac[n * cols + 2 + p] = wq * q.c()[p] + es * g.plane.a[p];
        }
        jac
    }

    pub fn jacobian_s(&self, v: &[Complex64], s: f64) -> CVec {
        let es = s.exp();
        let q = self.start_rows(v);
        let g = self.target_rows(v);
        q.iter()
            .zip(&g)
            .map(|(qi, gi)| es * (gi - self.h.gamma * qi))
            .collect()
    }
}

/// Doubly projective form of the homotopy: the eigenvalue lives on its own
/// projective line `(lambda0 : lambda1)` and `(x0 : x)` spans projective
/// x-space, matching the multihomogeneous structure of the systems. Points
/// are `v = [lambda0, lambda1, x0, x1, ..., xn]`. Unlike the single
/// homogenization, solutions at infinity stay isolated here even when the
/// tensor orders differ, which is what the retracer needs to classify
/// diverging paths.
pub(crate) struct BiprojectiveHomotopy<'a> {
    h: &'a LinearHomotopy,
    /// x0 powers completing the target rows to x-degree `max(m, m') - 1`.
    pow_a: u32,
    pow_b: u32,
}

impl LinearHomotopy {
    pub(crate) fn biprojective(&self) -> BiprojectiveHomotopy<'_> {
        let m = self.target.order_a();
        let mp = self.target.order_b();
        let top = m.max(mp);
        BiprojectiveHomotopy {
            h: self,
            pow_a: (top - m) as u32,
            pow_b: (top - mp) as u32,
        }
    }
}

impl BiprojectiveHomotopy<'_> {
    pub fn n(&self) -> usize {
        self.h.n()
    }

    fn rows(&self, v: &[Complex64]) -> (CVec, CVec) {
        let n = self.n();
        let q = &self.h.start;
        let g = &self.h.target;
        let (l0, l1, x0) = (v[0], v[1], v[2]);
        let x = &v[3..];
        let e = q.exponent() as u32;
        let x0e = x0.powu(e);
        let va = g.a.mode_apply(g.k, x).expect("shape checked at build");
        let vb = g.b.mode_apply(1, x).expect("shape checked at build");
        let xa = x0.powu(self.pow_a);
        let xb = x0.powu(self.pow_b);
        let mut start = Vec::with_capacity(n + 1);
        let mut target = Vec::with_capacity(n + 1);
        for i in 0..n {
            start.push((l1 - q.mu()[i] * l0) * (x[i].powu(e) - q.beta()[i] * x0e));
            target.push(l0 * xa * va[i] - l1 * xb * vb[i]);
        }
        start.push(
            q.c()
                .iter()
                .zip(x)
                .map(|(ci, xi)| ci * xi)
                .sum::<Complex64>()
                + q.d() * x0,
        );
        target.push(g.plane.eval_homogeneous(x, x0));
        (start, target)
    }

    pub fn eval(&self, v: &[Complex64], s: f64) -> CVec {
        let es = s.exp();
        let wq = self.h.gamma * (1.0 - es);
        let (start, target) = self.rows(v);
        start
            .iter()
            .zip(&target)
            .map(|(qi, gi)| wq * qi + es * gi)
            .collect()
    }

    pub fn jacobian_s(&self, v: &[Complex64], s: f64) -> CVec {
        let es = s.exp();
        let (start, target) = self.rows(v);
        start
            .iter()
            .zip(&target)
            .map(|(qi, gi)| es * (gi - self.h.gamma * qi))
            .collect()
    }

    /// Row-major `(n+1) x (n+3)` Jacobian in `(lambda0, lambda1, x0, x)`.
    pub fn jacobian_v(&self, v: &[Complex64], s: f64) -> CVec {
        let n = self.n();
        let es = s.exp();
        let wq = self.h.gamma * (1.0 - es);
        let q = &self.h.start;
        let g = &self.h.target;
        let (l0, l1, x0) = (v[0], v[1], v[2]);
        let x = &v[3..];
        let e = q.exponent() as u32;
        let x0e = x0.powu(e);
        let va = g.a.mode_apply(g.k, x).expect("shape checked at build");
        let vb = g.b.mode_apply(1, x).expect("shape checked at build");
        let ja = g.a.mode_jacobian(g.k, x).expect("shape checked at build");
        let jb = g.b.mode_jacobian(1, x).expect("shape checked at build");
        let xa = x0.powu(self.pow_a);
        let xb = x0.powu(self.pow_b);
        let dxa = if self.pow_a == 0 {
            ZERO
        } else {
            Complex64::new(self.pow_a as f64, 0.0) * x0.powu(self.pow_a - 1)
        };
        let dxb = if self.pow_b == 0 {
            ZERO
        } else {
            Complex64::new(self.pow_b as f64, 0.0) * x0.powu(self.pow_b - 1)
        };
        let cols = n + 3;
        let mut jac = vec![ZERO; (n + 1) * cols];
        for i in 0..n {
            let binom = x[i].powu(e) - q.beta()[i] * x0e;
            let lead = l1 - q.mu()[i] * l0;
            jac[i * cols] = wq * (-q.mu()[i] * binom) + es * (xa * va[i]);
            jac[i * cols + 1] = wq * binom + es * (-xb * vb[i]);
            jac[i * cols + 2] = wq
                * (lead * (-q.beta()[i] * Complex64::new(e as f64, 0.0) * x0.powu(e - 1)))
                + es * (l0 * dxa * va[i] - l1 * dxb * vb[i]);
            for p in 0..n {
                let t_dxp = l0 * xa * ja[i * n + p] - l1 * xb * jb[i * n + p];
                let s_dxp = if p == i {
                    lead * Complex64::new(e as f64, 0.0) * x[i].powu(e - 1)
                } else {
                    ZERO
                };
                jac[i * cols + 3 + p] = wq * s_dxp + es * t_dxp;
            }
        }
        jac[n * cols + 2] = wq * q.d() + es * g.plane.b;
        for p in 0..n {
            jac[n * cols + 3 + p] = wq * q.c()[p] + es * g.plane.a[p];
        }
        jac
    }
}

/// Real Newton homotopy `P(u) - (1 - t) P(anchor)` used to pull a complex
/// representative toward a real eigenpair. The base system `P` carries its
/// own real hyperplane.
#[derive(Clone, Debug)]
pub struct NewtonHomotopySystem {
    a: DenseTensor,
    b: DenseTensor,
    k: usize,
    plane_a: Vec<f64>,
    plane_b: f64,
    anchor: Vec<f64>,
    p0: Vec<f64>,
}

impl NewtonHomotopySystem {
    /// `anchor` is the real t = 0 offset `[lambda, x1, ..., xn]`.
    pub fn new<R: Rng>(
        a: &DenseTensor,
        b: &DenseTensor,
        k: usize,
        anchor: Vec<f64>,
        rng: &mut R,
    ) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: b.dim(),
            });
        }
        if anchor.len() != a.dim() + 1 {
            return Err(Error::DimensionMismatch {
                expected: a.dim() + 1,
                got: anchor.len(),
            });
        }
        let plane_a: Vec<f64> = (0..a.dim()).map(|_| 2.0 * rng.gen::<f64>() - 1.0).collect();
        let plane_b = 2.0 * rng.gen::<f64>() - 1.0;
        let mut sys = Self {
            a: a.clone(),
            b: b.clone(),
            k,
            plane_a,
            plane_b,
            anchor,
            p0: Vec::new(),
        };
        sys.p0 = sys.eval_base(&sys.anchor);
        Ok(sys)
    }

    pub fn n(&self) -> usize {
        self.a.dim()
    }

    pub fn anchor(&self) -> &[f64] {
        &self.anchor
    }

    /// The base system `P` over the reals.
    pub fn eval_base(&self, u: &[f64]) -> Vec<f64> {
        let n = self.n();
        let lambda = u[0];
        let x: CVec = u[1..].iter().map(|&r| Complex64::new(r, 0.0)).collect();
        let va = self
            .a
            .mode_apply(self.k, &x)
            .expect("shape checked at build");
        let vb = self.b.mode_apply(1, &x).expect("shape checked at build");
        let mut out = Vec::with_capacity(n + 1);
        for j in 0..n {
            out.push(va[j].re - lambda * vb[j].re);
        }
        out.push(
            self.plane_a
                .iter()
                .zip(&u[1..])
                .map(|(ai, xi)| ai * xi)
                .sum::<f64>()
                + self.plane_b,
        );
        out
    }

    /// `H(u, t) = P(u) - (1 - t) P(anchor)`.
    pub fn eval(&self, u: &[f64], t: f64) -> Vec<f64> {
        self.eval_base(u)
            .iter()
            .zip(&self.p0)
            .map(|(pi, p0i)| pi - (1.0 - t) * p0i)
            .collect()
    }

    /// Row-major `(n+1) x (n+1)` Jacobian of `P` (and of `H` in `u`).
    pub fn jacobian_u(&self, u: &[f64]) -> Vec<f64> {
        let n = self.n();
        let lambda = u[0];
        let x: CVec = u[1..].iter().map(|&r| Complex64::new(r, 0.0)).collect();
        let vb = self.b.mode_apply(1, &x).expect("shape checked at build");
        let ja = self
            .a
            .mode_jacobian(self.k, &x)
            .expect("shape checked at build");
        let jb = self.b.mode_jacobian(1, &x).expect("shape checked at build");
        let cols = n + 1;
        let mut jac = vec![0.0; cols * cols];
        for j in 0..n {
            jac[j * cols] = -vb[j].re;
            for p in 0..n {
                jac[j * cols + 1 + p] = ja[j * n + p].re - lambda * jb[j * n + p].re;
            }
        }
        for p in 0..n {
            jac[n * cols + 1 + p] = self.plane_a[p];
        }
        jac
    }

    /// `dH/dt = P(anchor)`.
    pub fn jacobian_t(&self) -> &[f64] {
        &self.p0
    }
}
