//! All-roots solver for univariate complex polynomials via the
//! Aberth-Ehrlich simultaneous iteration.

use num_complex::Complex64;

const MAX_ITERS: usize = 400;

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Roots of `sum coeffs[i] z^i`, multiplicities included. Leading
/// coefficients that are negligible against the largest one are dropped;
/// exact zero roots are peeled off first.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while let Some(last) = c.last() {
        if last.norm() <= 1e-14 * scale && c.len() > 1 {
            c.pop();
        } else {
            break;
        }
    }
    let mut roots = Vec::new();
    while c.len() > 1 && c[0].norm() <= 1e-14 * scale {
        roots.push(Complex64::new(0.0, 0.0));
        c.remove(0);
    }
    let degree = c.len() - 1;
    if degree == 0 {
        return roots;
    }
    let lead = c[degree];
    let monic: Vec<Complex64> = c.iter().map(|v| v / lead).collect();
    // Cauchy bound on root magnitudes
    let radius = 1.0 + monic[..degree].iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            Complex64::from_polar(
                radius * (0.5 + 0.5 * (k + 1) as f64 / degree as f64),
                std::f64::consts::TAU * k as f64 / degree as f64 + 0.4,
            )
        })
        .collect();
    for _ in 0..MAX_ITERS {
        let mut shift = 0.0f64;
        for k in 0..degree {
            let (p, dp) = horner(&monic, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = if dp.norm() > 0.0 { p / dp } else { p };
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..degree {
                if j != k {
                    let d = z[k] - z[j];
                    if d.norm() > 1e-300 {
                        sum += Complex64::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * sum;
            let delta = if denom.norm() > 1e-300 { w / denom } else { w };
            z[k] -= delta;
            shift = shift.max(delta.norm() / (1.0 + z[k].norm()));
        }
        if shift <= 1e-14 {
            break;
        }
    }
    roots.extend(z);
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sort_roots(mut r: Vec<Complex64>) -> Vec<Complex64> {
        r.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        r
    }

    #[test]
    fn cubic_with_known_roots() {
        // (z - 1)(z + 2)(z - 3i) = z^3 + (1 - 3i) z^2 + (-2 - 3i) z + 6i
        let coeffs = vec![c(0.0, 6.0), c(-2.0, -3.0), c(1.0, -3.0), c(1.0, 0.0)];
        let roots = sort_roots(polynomial_roots(&coeffs));
        let expect = sort_roots(vec![c(1.0, 0.0), c(-2.0, 0.0), c(0.0, 3.0)]);
        for (r, e) in roots.iter().zip(&expect) {
            assert!((r - e).norm() < 1e-10, "{r} vs {e}");
        }
    }

    #[test]
    fn zero_roots_are_peeled_exactly() {
        // z^2 (z - 5)
        let coeffs = vec![c(0.0, 0.0), c(0.0, 0.0), c(-5.0, 0.0), c(1.0, 0.0)];
        let roots = sort_roots(polynomial_roots(&coeffs));
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[0], c(0.0, 0.0));
        assert_eq!(roots[1], c(0.0, 0.0));
        assert!((roots[2] - c(5.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn double_root_is_located() {
        // (z - 2)^2 (z + 1)
        let coeffs = vec![c(4.0, 0.0), c(0.0, 0.0), c(-3.0, 0.0), c(1.0, 0.0)];
        let roots = polynomial_roots(&coeffs);
        let near_two = roots
            .iter()
            .filter(|r| (*r - c(2.0, 0.0)).norm() < 1e-6)
            .count();
        assert_eq!(near_two, 2);
    }
}
