//! End-to-end eigenpair computations: the complex solvers `teig` (equal
//! orders) and `teneig` (mixed orders, with `eeig` as the identity-matrix
//! special case), and the real-pair extractors `zeig` and `heig`.

mod real;
mod solve;

pub use real::{extract_real_pair, heig, real_eigenvalues, zeig, RealEigResult};
pub use solve::{eeig, teig, teneig, SolveMeta, TeigResult, TeneigResult};

use num_complex::Complex64;

use crate::polysys::CVec;
use crate::tracker::Classification;

/// One equivalence class representative with its bookkeeping.
#[derive(Clone, Debug)]
pub struct EigenPair {
    pub lambda: Complex64,
    pub x: CVec,
    /// Number of paths that converged to this class.
    pub multiplicity: usize,
    /// Infinity norm of `A^(k) x^{m-1} - lambda B x^{m'-1}`.
    pub residual: f64,
    pub classification: Classification,
    pub is_real: bool,
    /// Shared id linking points sampled from one positive-dimensional
    /// component.
    pub component_id: Option<usize>,
}

/// Representative of the orbit `(t^{m-m'} lambda, t x)`, `t^{m'} = 1`.
#[derive(Clone, Debug)]
pub struct EquivalenceClass {
    pub representative: EigenPair,
    /// Count of representatives per class under the `B x^{m'} = 1`
    /// normalization, i.e. m'.
    pub scaling_order: usize,
    /// False when `B x^{m'}` vanished at the solution and the
    /// normalization could not be applied.
    pub normalized: bool,
}

impl EquivalenceClass {
    /// All `scaling_order` members of the class.
    pub fn members(&self, m: usize) -> Vec<(Complex64, CVec)> {
        let mp = self.scaling_order;
        let shift = m as i64 - mp as i64;
        (0..mp)
            .map(|j| {
                let t = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / mp as f64);
                let lam = self.representative.lambda * t.powi(shift as i32);
                let x: CVec = self.representative.x.iter().map(|xi| xi * t).collect();
                (lam, x)
            })
            .collect()
    }
}

/// Number of equivalence classes of isolated mode-k eigenpairs for generic
/// tensors: `n (m-1)^(n-1)` when the orders agree, otherwise
/// `((m-1)^n - (m'-1)^n) / (m - m')` evaluated in exact arithmetic.
pub fn path_count(m: usize, mprime: usize, n: usize) -> u64 {
    let a = (m - 1) as u64;
    let b = (mprime - 1) as u64;
    if m == mprime {
        return n as u64 * a.pow(n as u32 - 1);
    }
    // (a^n - b^n)/(a - b) = sum a^j b^(n-1-j)
    (0..n)
        .map(|j| a.pow(j as u32) * b.pow((n - 1 - j) as u32))
        .sum()
}

/// Paths tracked by the multihomogeneous start system used when the orders
/// differ: `n (max(m, m') - 1)^(n-1)`.
pub fn multihomogeneous_path_count(m: usize, mprime: usize, n: usize) -> u64 {
    let top = (m.max(mprime) - 1) as u64;
    n as u64 * top.pow(n as u32 - 1)
}

/// Greedy nearest matching of two eigenvalue multisets within `tol`.
pub fn eigenvalue_multisets_match(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for za in a {
        let mut best: Option<(f64, usize)> = None;
        for (i, zb) in b.iter().enumerate() {
            if !used[i] {
                let d = (za - zb).norm();
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, i));
                }
            }
        }
        match best {
            Some((d, i)) if d <= tol => used[i] = true,
            _ => return false,
        }
    }
    true
}

/// Checks that mode-k pairs of A coincide with mode-l pairs computed from
/// the <k,l> transpose: eigenvalue multisets must match (counting class
/// multiplicities) and every mode-k pair must satisfy the transposed
/// system's residual bound.
pub fn mode_consistency_check(
    a: &crate::tensor::DenseTensor,
    b: &crate::tensor::DenseTensor,
    k: usize,
    l: usize,
    pairs_k: &[EigenPair],
    pairs_l: &[EigenPair],
) -> bool {
    let expand = |pairs: &[EigenPair]| -> Vec<Complex64> {
        pairs
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.lambda, p.multiplicity))
            .collect()
    };
    if !eigenvalue_multisets_match(&expand(pairs_k), &expand(pairs_l), 1e-6) {
        return false;
    }
    let (lo, hi) = if k < l { (k, l) } else { (l, k) };
    let Ok(transposed) = a.transpose(lo, hi) else {
        return false;
    };
    let other_mode = if k < l { l } else { k };
    pairs_k.iter().all(|p| {
        let va = transposed.mode_apply(other_mode, &p.x).expect("dims match");
        let vb = b.mode_apply(1, &p.x).expect("dims match");
        let res = va
            .iter()
            .zip(&vb)
            .map(|(x, y)| (x - p.lambda * y).norm())
            .fold(0.0, f64::max);
        res <= residual_bound(a.order(), b.order(), p.lambda, &p.x)
    })
}

/// Residual acceptance scale: `1e-6 max(1, |lambda|, |x|_inf^(max(m,m')-1))`.
pub fn residual_bound(m: usize, mprime: usize, lambda: Complex64, x: &[Complex64]) -> f64 {
    let xnorm = crate::linalg::inf_norm(x);
    let pow = (m.max(mprime) - 1) as i32;
    1e-6 * lambda.norm().max(xnorm.powi(pow)).max(1.0)
}

/// Deterministic ordering: real part of lambda, imaginary part, then the
/// coordinates of x lexicographically.
pub(crate) fn cmp_pairs(
    a: &(Complex64, &[Complex64]),
    b: &(Complex64, &[Complex64]),
) -> std::cmp::Ordering {
    a.0.re
        .total_cmp(&b.0.re)
        .then_with(|| a.0.im.total_cmp(&b.0.im))
        .then_with(|| {
            for (x, y) in a.1.iter().zip(b.1.iter()) {
                let o = x.re.total_cmp(&y.re).then_with(|| x.im.total_cmp(&y.im));
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
}
