//! Small dense linear algebra used by the Newton correctors.
//!
//! Systems here never exceed a few dozen unknowns, so a plain LU with
//! partial pivoting and explicit inverse-based condition estimates are the
//! right tools. Matrices are row-major flat slices.

use num_complex::ComplexFloat;

/// LU factorization with partial pivoting of a square matrix.
pub struct Lu<T> {
    n: usize,
    lu: Vec<T>,
    piv: Vec<usize>,
}

pub fn lu_factor<T: ComplexFloat<Real = f64>>(a: &[T], n: usize) -> Option<Lu<T>> {
    debug_assert_eq!(a.len(), n * n);
    let mut lu = a.to_vec();
    let mut piv = vec![0usize; n];
    for col in 0..n {
        let mut best = col;
        let mut best_mag = lu[col * n + col].abs();
        for row in col + 1..n {
            let mag = lu[row * n + col].abs();
            if mag > best_mag {
                best = row;
                best_mag = mag;
            }
        }
        if best_mag == 0.0 {
            return None;
        }
        piv[col] = best;
        if best != col {
            for j in 0..n {
                lu.swap(col * n + j, best * n + j);
            }
        }
        let inv = T::one() / lu[col * n + col];
        for row in col + 1..n {
            let factor = lu[row * n + col] * inv;
            lu[row * n + col] = factor;
            for j in col + 1..n {
                let upd = lu[col * n + j];
                lu[row * n + j] = lu[row * n + j] - factor * upd;
            }
        }
    }
    Some(Lu { n, lu, piv })
}

impl<T: ComplexFloat<Real = f64>> Lu<T> {
    pub fn solve_in_place(&self, b: &mut [T]) {
        let n = self.n;
        for col in 0..n {
            b.swap(col, self.piv[col]);
        }
        for row in 1..n {
            for col in 0..row {
                let l = self.lu[row * n + col];
                let sub = l * b[col];
                b[row] = b[row] - sub;
            }
        }
        for row in (0..n).rev() {
            for col in row + 1..n {
                let u = self.lu[row * n + col];
                let sub = u * b[col];
                b[row] = b[row] - sub;
            }
            b[row] = b[row] / self.lu[row * n + row];
        }
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        x
    }
}

pub fn solve<T: ComplexFloat<Real = f64>>(a: &[T], b: &[T], n: usize) -> Option<Vec<T>> {
    lu_factor(a, n).map(|lu| lu.solve(b))
}

pub fn inf_norm<T: ComplexFloat<Real = f64>>(v: &[T]) -> f64 {
    v.iter().map(|z| z.abs()).fold(0.0, f64::max)
}

pub fn inf_norm_matrix<T: ComplexFloat<Real = f64>>(a: &[T], rows: usize, cols: usize) -> f64 {
    (0..rows)
        .map(|r| {
            a[r * cols..(r + 1) * cols]
                .iter()
                .map(|z| z.abs())
                .sum::<f64>()
        })
        .fold(0.0, f64::max)
}

/// Infinity-norm condition number computed from the explicit inverse.
/// Returns `f64::INFINITY` when the matrix is numerically singular.
pub fn cond_inf<T: ComplexFloat<Real = f64>>(a: &[T], n: usize) -> f64 {
    let Some(lu) = lu_factor(a, n) else {
        return f64::INFINITY;
    };
    let mut inv_row_sums = vec![0.0f64; n];
    let mut e = vec![T::zero(); n];
    for col in 0..n {
        e.iter_mut().for_each(|z| *z = T::zero());
        e[col] = T::one();
        lu.solve_in_place(&mut e);
        for (row, z) in e.iter().enumerate() {
            inv_row_sums[row] += z.abs();
        }
    }
    let inv_norm = inv_row_sums.iter().cloned().fold(0.0, f64::max);
    if !inv_norm.is_finite() {
        return f64::INFINITY;
    }
    inf_norm_matrix(a, n, n) * inv_norm
}
