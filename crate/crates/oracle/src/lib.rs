//! Independent ground truth for small eigenproblem instances: a dense
//! pencil eigenvalue oracle via characteristic polynomials, a two-variable
//! elimination oracle, direct residual checks, and seeded random tensors.
//!
//! None of this shares polynomial-evaluation code with the solver's system
//! evaluators; cross-validation only counts when the routes are disjoint.

mod poly;
mod random;
mod two_var;

pub use poly::polynomial_roots;
pub use random::{random_pair, random_tensor, Field, RandomSpec};
pub use two_var::two_var_oracle;

use num_complex::Complex64;
use teneig::tensor::DenseTensor;

/// Infinity norm of `A^(k) x^{m-1} - lambda B x^{m'-1}`, straight from the
/// tensor contractions.
pub fn residual_check(
    a: &DenseTensor,
    b: &DenseTensor,
    k: usize,
    lambda: Complex64,
    x: &[Complex64],
) -> f64 {
    let va = a.mode_apply(k, x).expect("dimension mismatch");
    let vb = b.mode_apply(1, x).expect("dimension mismatch");
    va.iter()
        .zip(&vb)
        .map(|(p, q)| (p - lambda * q).norm())
        .fold(0.0, f64::max)
}

/// Eigenvalues of the matrix pencil `(A, B)`: roots of the characteristic
/// polynomial of `B^{-1} A`, computed by Faddeev-LeVerrier and a
/// simultaneous root iteration. Entirely independent of the homotopy path.
pub fn matrix_eig_oracle(a: &DenseTensor, b: &DenseTensor) -> Result<Vec<Complex64>, String> {
    if a.order() != 2 || b.order() != 2 {
        return Err("matrix oracle needs order-2 tensors".into());
    }
    if a.dim() != b.dim() {
        return Err("dimension mismatch".into());
    }
    let n = a.dim();
    let c = solve_matrix(b.entries(), a.entries(), n).ok_or("singular B")?;

    // Faddeev-LeVerrier: p(g) = g^n + c_{n-1} g^{n-1} + ... + c_0
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    let mut m_mat = identity(n);
    for k in 1..=n {
        if k > 1 {
            // M <- C (M + c_{n-k+1} I)
            let mut shifted = m_mat.clone();
            for i in 0..n {
                shifted[i * n + i] += coeffs[n - k + 1];
            }
            m_mat = mat_mul(&c, &shifted, n);
        } else {
            m_mat = c.clone();
        }
        let tr: Complex64 = (0..n).map(|i| m_mat[i * n + i]).sum();
        coeffs[n - k] = -tr / k as f64;
    }
    Ok(polynomial_roots(&coeffs))
}

fn identity(n: usize) -> Vec<Complex64> {
    let mut m = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        m[i * n + i] = Complex64::new(1.0, 0.0);
    }
    m
}

fn mat_mul(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for l in 0..n {
            let ail = a[i * n + l];
            if ail.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += ail * b[l * n + j];
            }
        }
    }
    out
}

/// Gaussian elimination solve of `B X = A` for the matrix X.
fn solve_matrix(b: &[Complex64], a: &[Complex64], n: usize) -> Option<Vec<Complex64>> {
    let mut lhs = b.to_vec();
    let mut rhs = a.to_vec();
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if lhs[row * n + col].norm() > lhs[pivot * n + col].norm() {
                pivot = row;
            }
        }
        if lhs[pivot * n + col].norm() == 0.0 {
            return None;
        }
        if pivot != col {
            for j in 0..n {
                lhs.swap(col * n + j, pivot * n + j);
                rhs.swap(col * n + j, pivot * n + j);
            }
        }
        let inv = Complex64::new(1.0, 0.0) / lhs[col * n + col];
        for row in 0..n {
            if row == col {
                continue;
            }
            let factor = lhs[row * n + col] * inv;
            if factor.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..n {
                let l = lhs[col * n + j];
                let r = rhs[col * n + j];
                lhs[row * n + j] -= factor * l;
                rhs[row * n + j] -= factor * r;
            }
        }
    }
    for row in 0..n {
        let inv = Complex64::new(1.0, 0.0) / lhs[row * n + row];
        for j in 0..n {
            rhs[row * n + j] *= inv;
        }
    }
    Some(rhs)
}
