//! Elimination oracle for two-variable eigenproblems: the eigenvalue is
//! eliminated between the two eigen rows, leaving one binary form whose
//! projective roots are the eigenvector directions.

use num_complex::Complex64;
use teneig::tensor::DenseTensor;

use crate::poly::polynomial_roots;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Coefficients of the binary form `(T^(k) x^{d})_j` over monomials
/// `x1^(d-p) x2^p`, accumulated with independent summation loops.
fn contraction_coefficients(t: &DenseTensor, k: usize) -> [Vec<Complex64>; 2] {
    let order = t.order();
    let degree = order - 1;
    let mut out = [vec![ZERO; degree + 1], vec![ZERO; degree + 1]];
    let total = 2usize.pow(order as u32);
    let mut idx = vec![0usize; order];
    for flat in 0..total {
        let a = t.entries()[flat];
        if a.norm_sqr() != 0.0 {
            let j = idx[k - 1];
            let p: usize = idx
                .iter()
                .enumerate()
                .filter(|&(pos, _)| pos != k - 1)
                .map(|(_, &i)| i)
                .sum();
            out[j][p] += a;
        }
        for pos in (0..order).rev() {
            idx[pos] += 1;
            if idx[pos] < 2 {
                break;
            }
            idx[pos] = 0;
        }
    }
    out
}

fn eval_binary(coeffs: &[Complex64], x: &[Complex64; 2]) -> Complex64 {
    let degree = coeffs.len() - 1;
    coeffs
        .iter()
        .enumerate()
        .map(|(p, c)| c * x[0].powu((degree - p) as u32) * x[1].powu(p as u32))
        .sum()
}

/// All equivalence-class representatives of the mode-k B-eigenpairs of a
/// two-variable problem. The eigenvector directions are the projective
/// roots of `F1 G2 - F2 G1`; eigenvalues are recovered by division, and
/// representatives follow the solver's conventions (`B x^{m'} = 1` with
/// principal roots for mixed orders, max-coordinate scaling otherwise).
pub fn two_var_oracle(
    a: &DenseTensor,
    b: &DenseTensor,
    k: usize,
) -> Result<Vec<(Complex64, Vec<Complex64>)>, String> {
    if a.dim() != 2 || b.dim() != 2 {
        return Err("two-variable oracle needs dim 2".into());
    }
    let m = a.order();
    let mp = b.order();
    let f = contraction_coefficients(a, k);
    let g = contraction_coefficients(b, 1);
    // resultant-style elimination: F1 G2 - F2 G1, degree m + m' - 2
    let deg = (m - 1) + (mp - 1);
    let mut h = vec![ZERO; deg + 1];
    for (i, fi) in f[0].iter().enumerate() {
        for (j, gj) in g[1].iter().enumerate() {
            h[i + j] += fi * gj;
        }
    }
    for (i, fi) in f[1].iter().enumerate() {
        for (j, gj) in g[0].iter().enumerate() {
            h[i + j] -= fi * gj;
        }
    }
    let scale = h.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err("eliminant vanishes identically; eigenvectors are not isolated".into());
    }
    // chart x = (1, z), plus the direction (0, 1) for the degree drop
    let mut top = deg;
    while top > 0 && h[top].norm() <= 1e-13 * scale {
        top -= 1;
    }
    let mut directions: Vec<[Complex64; 2]> = polynomial_roots(&h[..=top])
        .into_iter()
        .map(|z| [Complex64::new(1.0, 0.0), z])
        .collect();
    for _ in top..deg {
        directions.push([ZERO, Complex64::new(1.0, 0.0)]);
    }

    let mut out = Vec::new();
    for x in directions {
        let g1 = eval_binary(&g[0], &x);
        let g2 = eval_binary(&g[1], &x);
        let f1 = eval_binary(&f[0], &x);
        let f2 = eval_binary(&f[1], &x);
        let fscale = f1.norm().max(f2.norm()).max(1.0);
        let (num, den) = if g1.norm() >= g2.norm() {
            (f1, g1)
        } else {
            (f2, g2)
        };
        if den.norm() <= 1e-10 * fscale {
            // no finite eigenvalue in this direction
            continue;
        }
        let lambda = num / den;
        if m == mp {
            let i0 = if x[0].norm() >= x[1].norm() { 0 } else { 1 };
            let y = [x[0] / x[i0], x[1] / x[i0]];
            out.push((lambda, y.to_vec()));
        } else {
            // representative with B x^{m'} = 1
            let w = x[0] * g1 + x[1] * g2;
            if w.norm() <= 1e-12 {
                out.push((lambda, x.to_vec()));
                continue;
            }
            let lam = lambda / w.powf((m as f64 - mp as f64) / mp as f64);
            let root = w.powf(1.0 / mp as f64);
            out.push((lam, vec![x[0] / root, x[1] / root]));
        }
    }
    Ok(out)
}
