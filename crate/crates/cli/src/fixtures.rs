//! The bundled problem corpus: small tensors with published spectra, used
//! as CLI inputs and by the acceptance suite. Regeneration is bit-exact.

use anyhow::{bail, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teneig::tensor::{DenseTensor, MonomialForm};

use crate::io::TensorInput;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub struct FixtureInfo {
    pub name: &'static str,
    pub summary: &'static str,
    /// Accepts the --a parameter.
    pub takes_a: bool,
    /// Accepts the --n parameter.
    pub takes_n: bool,
}

pub fn list() -> Vec<FixtureInfo> {
    vec![
        FixtureInfo {
            name: "example-2.1",
            summary: "3x2x2 tensor with distinct mode spectra",
            takes_a: false,
            takes_n: false,
        },
        FixtureInfo {
            name: "motzkin",
            summary: "Motzkin sextic form, 3 variables",
            takes_a: false,
            takes_n: false,
        },
        FixtureInfo {
            name: "appendix-01",
            summary: "x1^4 + 2 x2^4 + 3 x3^4",
            takes_a: false,
            takes_n: false,
        },
        FixtureInfo {
            name: "appendix-02",
            summary: "diagonal quintic conjugated by seeded Householder rotations",
            takes_a: false,
            takes_n: false,
        },
        FixtureInfo {
            name: "appendix-03",
            summary: "2 x1^4 + 3 x2^4 + 5 x3^4 + 4a x1^2 x2 x3",
            takes_a: true,
            takes_n: false,
        },
        FixtureInfo {
            name: "appendix-04",
            summary: "3 x1^4 + x2^4 + 6a x1^2 x2^2",
            takes_a: true,
            takes_n: false,
        },
        FixtureInfo {
            name: "appendix-05",
            summary: "symmetric 4th-order 3-dim tensor with 11 Z-eigenpairs",
            takes_a: false,
            takes_n: false,
        },
        FixtureInfo {
            name: "appendix-06",
            summary: "A_iii = i, A_{i,i,i+1} = 10, order 3, dim 6",
            takes_a: false,
            takes_n: false,
        },
        FixtureInfo {
            name: "appendix-07",
            summary: "-sum over pairs of (xi - xj)^4, 6 variables",
            takes_a: false,
            takes_n: false,
        },
        FixtureInfo {
            name: "appendix-08",
            summary: "(x1+x2+x3+x4)^4 + (x2+x3+x4+x5)^4",
            takes_a: false,
            takes_n: false,
        },
        FixtureInfo {
            name: "appendix-09",
            summary: "2 x1^3 + 3 x1 x2^2 + 3 x1 x3^2",
            takes_a: false,
            takes_n: false,
        },
        FixtureInfo {
            name: "appendix-10",
            summary: "entries sin(i1+i2+i3+i4), order 4",
            takes_a: false,
            takes_n: true,
        },
        FixtureInfo {
            name: "appendix-11",
            summary: "entries tan(i1)+...+tan(i4), order 4",
            takes_a: false,
            takes_n: true,
        },
        FixtureInfo {
            name: "appendix-12",
            summary: "entries ln(i1)+...+ln(i5), order 5",
            takes_a: false,
            takes_n: true,
        },
    ]
}

/// Exponent vectors over `vars` summing to `degree`, with multinomial
/// coefficients scaled by `scale`.
fn expanded_power(
    vars: &[usize],
    n: usize,
    degree: usize,
    scale: f64,
) -> Vec<(Complex64, Vec<usize>)> {
    fn fact(v: usize) -> f64 {
        (1..=v).map(|x| x as f64).product()
    }
    let mut out = Vec::new();
    let parts = vars.len();
    let mut combo = vec![0usize; parts];
    combo[0] = degree;
    loop {
        let coeff = scale * fact(degree) / combo.iter().map(|&v| fact(v)).product::<f64>();
        let mut alpha = vec![0usize; n];
        for (slot, &v) in vars.iter().enumerate() {
            alpha[v] += combo[slot];
        }
        out.push((c(coeff), alpha));
        // next composition of `degree` into `parts` parts
        let mut i = 0;
        loop {
            if i + 1 >= parts {
                return out;
            }
            if combo[i] > 0 {
                combo[i + 1] += 1;
                let head: usize = combo[..=i].iter().sum();
                combo[0] = head - 1;
                for slot in 1..=i {
                    combo[slot] = 0;
                }
                break;
            }
            i += 1;
        }
    }
}

fn dense_from_fn(order: usize, dim: usize, f: impl Fn(&[usize]) -> f64) -> Result<DenseTensor> {
    let total = dim.pow(order as u32);
    let mut idx = vec![0usize; order];
    let mut entries = Vec::with_capacity(total);
    for _ in 0..total {
        entries.push(c(f(&idx)));
        for pos in (0..order).rev() {
            idx[pos] += 1;
            if idx[pos] < dim {
                break;
            }
            idx[pos] = 0;
        }
    }
    Ok(DenseTensor::new(order, dim, entries)?)
}

/// Symmetric tensor from values on sorted index tuples: every permutation
/// of a sorted tuple carries the same entry.
fn symmetric_dense(order: usize, dim: usize, vals: &[(&[usize], f64)]) -> Result<DenseTensor> {
    let lookup = |idx: &[usize]| -> f64 {
        let mut sorted = idx.to_vec();
        sorted.sort_unstable();
        vals.iter()
            .find(|(key, _)| *key == &sorted[..])
            .map(|(_, v)| *v)
            .unwrap_or(0.0)
    };
    dense_from_fn(order, dim, lookup)
}

fn householder_tensor() -> Result<DenseTensor> {
    // D x^5 = x1^5 + 2 x2^5 - 3 x3^5 - 4 x4^5 conjugated as D(Qx)^5 with
    // Q a product of three seeded Householder reflections
    let n = 4;
    let d = [1.0, 2.0, -3.0, -4.0];
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e1e);
    let mut q = vec![0.0f64; n * n];
    for i in 0..n {
        q[i * n + i] = 1.0;
    }
    for _ in 0..3 {
        let mut w: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
        let norm: f64 = w.iter().map(|v| v * v).sum::<f64>().sqrt();
        w.iter_mut().for_each(|v| *v /= norm);
        // Q <- Q (I - 2 w w^T)
        let mut next = vec![0.0f64; n * n];
        for r in 0..n {
            for col in 0..n {
                let mut sum = q[r * n + col];
                for l in 0..n {
                    sum -= 2.0 * q[r * n + l] * w[l] * w[col];
                }
                next[r * n + col] = sum;
            }
        }
        q = next;
    }
    dense_from_fn(5, n, |idx| {
        (0..n)
            .map(|j| d[j] * idx.iter().map(|&i| q[j * n + i]).product::<f64>())
            .sum()
    })
}

pub fn materialize(
    name: &str,
    a_param: Option<f64>,
    n_param: Option<usize>,
) -> Result<TensorInput> {
    let fixture = match name {
        "example-2.1" => {
            let shape = DenseTensor::zeros(3, 2)?;
            let mut entries = vec![c(0.0); 8];
            let vals = [
                ([0usize, 0, 0], 1.0),
                ([0, 1, 0], 2.0),
                ([1, 0, 0], 3.0),
                ([1, 1, 0], 4.0),
                ([0, 0, 1], 5.0),
                ([0, 1, 1], 6.0),
                ([1, 0, 1], 7.0),
                ([1, 1, 1], 0.0),
            ];
            for (idx, v) in vals {
                entries[shape.flat_index(&idx)] = c(v);
            }
            TensorInput::Dense(DenseTensor::new(3, 2, entries)?)
        }
        "motzkin" => TensorInput::Monomials(MonomialForm::new(
            6,
            3,
            vec![
                (c(1.0), vec![0, 0, 6]),
                (c(1.0), vec![4, 2, 0]),
                (c(1.0), vec![2, 4, 0]),
                (c(-3.0), vec![2, 2, 2]),
            ],
        )?),
        "appendix-01" => TensorInput::Monomials(MonomialForm::new(
            4,
            3,
            vec![
                (c(1.0), vec![4, 0, 0]),
                (c(2.0), vec![0, 4, 0]),
                (c(3.0), vec![0, 0, 4]),
            ],
        )?),
        "appendix-02" => TensorInput::Dense(householder_tensor()?),
        "appendix-03" => {
            let a = a_param.unwrap_or(0.0);
            TensorInput::Monomials(MonomialForm::new(
                4,
                3,
                vec![
                    (c(2.0), vec![4, 0, 0]),
                    (c(3.0), vec![0, 4, 0]),
                    (c(5.0), vec![0, 0, 4]),
                    (c(4.0 * a), vec![2, 1, 1]),
                ],
            )?)
        }
        "appendix-04" => {
            let a = a_param.unwrap_or(0.0);
            TensorInput::Monomials(MonomialForm::new(
                4,
                2,
                vec![
                    (c(3.0), vec![4, 0]),
                    (c(1.0), vec![0, 4]),
                    (c(6.0 * a), vec![2, 2]),
                ],
            )?)
        }
        "appendix-05" => {
            let vals: [(&[usize], f64); 15] = [
                (&[0, 0, 0, 0], 0.2883),
                (&[0, 0, 0, 1], -0.0031),
                (&[0, 0, 0, 2], 0.1973),
                (&[0, 0, 1, 1], -0.2485),
                (&[0, 0, 1, 2], -0.2939),
                (&[0, 0, 2, 2], 0.3847),
                (&[0, 1, 1, 1], 0.2972),
                (&[0, 1, 1, 2], 0.1862),
                (&[0, 1, 2, 2], 0.0919),
                (&[0, 2, 2, 2], -0.3619),
                (&[1, 1, 1, 1], 0.1241),
                (&[1, 1, 1, 2], -0.3420),
                (&[1, 1, 2, 2], 0.2127),
                (&[1, 2, 2, 2], 0.2727),
                (&[2, 2, 2, 2], -0.3054),
            ];
            TensorInput::Dense(symmetric_dense(4, 3, &vals)?)
        }
        "appendix-06" => {
            let mut vals: Vec<(Vec<usize>, f64)> = Vec::new();
            for i in 0..6 {
                vals.push((vec![i, i, i], (i + 1) as f64));
            }
            for i in 0..5 {
                vals.push((vec![i, i, i + 1], 10.0));
            }
            let borrowed: Vec<(&[usize], f64)> =
                vals.iter().map(|(k, v)| (k.as_slice(), *v)).collect();
            TensorInput::Dense(symmetric_dense(3, 6, &borrowed)?)
        }
        "appendix-07" => {
            let n = 6;
            let mut terms: Vec<(Complex64, Vec<usize>)> = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    // -(xi - xj)^4
                    for (coeff, ei) in [(-1.0, 4), (4.0, 3), (-6.0, 2), (4.0, 1), (-1.0, 0)] {
                        let mut alpha = vec![0usize; n];
                        alpha[i] = ei;
                        alpha[j] = 4 - ei;
                        terms.push((c(coeff), alpha));
                    }
                }
            }
            TensorInput::Monomials(MonomialForm::new(4, n, terms)?)
        }
        "appendix-08" => {
            let mut terms = expanded_power(&[0, 1, 2, 3], 5, 4, 1.0);
            terms.extend(expanded_power(&[1, 2, 3, 4], 5, 4, 1.0));
            TensorInput::Monomials(MonomialForm::new(4, 5, terms)?)
        }
        "appendix-09" => TensorInput::Monomials(MonomialForm::new(
            3,
            3,
            vec![
                (c(2.0), vec![3, 0, 0]),
                (c(3.0), vec![1, 2, 0]),
                (c(3.0), vec![1, 0, 2]),
            ],
        )?),
        "appendix-10" => {
            let n = n_param.unwrap_or(5);
            TensorInput::Dense(dense_from_fn(4, n, |idx| {
                (idx.iter().map(|&i| i + 1).sum::<usize>() as f64).sin()
            })?)
        }
        "appendix-11" => {
            let n = n_param.unwrap_or(6);
            TensorInput::Dense(dense_from_fn(4, n, |idx| {
                idx.iter().map(|&i| ((i + 1) as f64).tan()).sum()
            })?)
        }
        "appendix-12" => {
            let n = n_param.unwrap_or(4);
            TensorInput::Dense(dense_from_fn(5, n, |idx| {
                idx.iter().map(|&i| ((i + 1) as f64).ln()).sum()
            })?)
        }
        other => bail!("unknown fixture {other:?} (see `teneig fixtures`)"),
    };
    Ok(fixture)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_fixture_materializes() {
        for info in list() {
            let t = materialize(info.name, None, None).unwrap();
            assert!(t.to_tensor().is_ok(), "{} does not build", info.name);
        }
        assert!(materialize("nope", None, None).is_err());
    }

    #[test]
    fn regeneration_is_bit_exact() {
        for name in ["appendix-02", "appendix-10", "motzkin"] {
            let a = materialize(name, None, None).unwrap().to_tensor().unwrap();
            let b = materialize(name, None, None).unwrap().to_tensor().unwrap();
            assert_eq!(a, b, "{name}");
        }
    }

    #[test]
    fn motzkin_has_four_terms_and_vanishes_at_ones() {
        let TensorInput::Monomials(f) = materialize("motzkin", None, None).unwrap() else {
            panic!("motzkin should be a monomial form");
        };
        assert_eq!(f.terms().len(), 4);
        let t = f.to_tensor().unwrap();
        let ones = vec![c(1.0); 3];
        assert!(t.multilinear_form(&ones).unwrap().norm() < 1e-12);
    }

    #[test]
    fn sine_fixture_matches_formula() {
        let t = materialize("appendix-10", None, Some(5))
            .unwrap()
            .to_tensor()
            .unwrap();
        assert_eq!(t.order(), 4);
        assert_eq!(t.dim(), 5);
        // A_{2,3,1,5} = sin(2+3+1+5), 1-based
        assert!((t.get(&[1, 2, 0, 4]).re - (11.0f64).sin()).abs() < 1e-15);
    }

    #[test]
    fn householder_tensor_keeps_diagonal_spectrum_signature() {
        // multilinear form at Q^T e_j recovers the diagonal coefficient
        let t = materialize("appendix-02", None, None)
            .unwrap()
            .to_tensor()
            .unwrap();
        assert_eq!(t.order(), 5);
        assert_eq!(t.dim(), 4);
        assert!(t.is_real());
    }

    #[test]
    fn pair_power_fixture_expands_correctly() {
        let t = materialize("appendix-08", None, None)
            .unwrap()
            .to_tensor()
            .unwrap();
        // f(1,0,0,0,0) = 1^4 + 0 = 1; f(0,1,0,0,0) = 1 + 1 = 2
        let e1 = [c(1.0), c(0.0), c(0.0), c(0.0), c(0.0)];
        let e2 = [c(0.0), c(1.0), c(0.0), c(0.0), c(0.0)];
        assert!((t.multilinear_form(&e1).unwrap().re - 1.0).abs() < 1e-12);
        assert!((t.multilinear_form(&e2).unwrap().re - 2.0).abs() < 1e-12);
        // f(1,1,1,1,1) = 4^4 + 4^4 = 512
        let ones = vec![c(1.0); 5];
        assert!((t.multilinear_form(&ones).unwrap().re - 512.0).abs() < 1e-9);
    }

    #[test]
    fn difference_quartic_fixture_signs() {
        let t = materialize("appendix-07", None, None)
            .unwrap()
            .to_tensor()
            .unwrap();
        // -A x^4 at e1 - e2 direction: (x1-x2)^4 contributes 16, others 1 each
        let x = [c(1.0), c(-1.0), c(0.0), c(0.0), c(0.0), c(0.0)];
        let expect = -(16.0 + 1.0 * 4.0 + 1.0 * 4.0); // pairs (1,2), (1,j), (2,j)
        assert!((t.multilinear_form(&x).unwrap().re - expect).abs() < 1e-10);
    }
}
