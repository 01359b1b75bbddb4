//! Property tests for the tensor primitives and the solution store.

use num_complex::Complex64;
use proptest::prelude::*;
use teneig::tensor::{DenseTensor, MonomialForm};

fn arb_complex() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn arb_tensor(max_order: usize, max_dim: usize) -> impl Strategy<Value = DenseTensor> {
    (2..=max_order, 1..=max_dim).prop_flat_map(|(m, n)| {
        let total = n.pow(m as u32);
        proptest::collection::vec(arb_complex(), total)
            .prop_map(move |entries| DenseTensor::new(m, n, entries).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The analytic mode-k Jacobian agrees with central differences.
    #[test]
    fn mode_jacobian_matches_finite_differences(
        t in arb_tensor(5, 4),
        xs in proptest::collection::vec(arb_complex(), 4),
        k_pick in 0usize..8,
    ) {
        let n = t.dim();
        let m = t.order();
        let k = 1 + k_pick % m;
        let x = &xs[..n];
        let jac = t.mode_jacobian(k, x).unwrap();
        let h = 1e-6;
        for p in 0..n {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[p] += Complex64::new(h, 0.0);
            xm[p] -= Complex64::new(h, 0.0);
            let fp = t.mode_apply(k, &xp).unwrap();
            let fm = t.mode_apply(k, &xm).unwrap();
            for j in 0..n {
                let fd = (fp[j] - fm[j]) / Complex64::new(2.0 * h, 0.0);
                let an = jac[j * n + p];
                prop_assert!(
                    (fd - an).norm() <= 1e-5 * an.norm().max(1.0),
                    "entry ({j},{p}): fd {fd} analytic {an}"
                );
            }
        }
    }

    /// The multilinear form is homogeneous of degree m.
    #[test]
    fn multilinear_form_is_homogeneous(
        t in arb_tensor(4, 3),
        xs in proptest::collection::vec(arb_complex(), 3),
        scale in arb_complex(),
    ) {
        let n = t.dim();
        let x = &xs[..n];
        let f = t.multilinear_form(x).unwrap();
        let scaled: Vec<Complex64> = x.iter().map(|xi| xi * scale).collect();
        let fs = t.multilinear_form(&scaled).unwrap();
        let expect = f * scale.powu(t.order() as u32);
        prop_assert!((fs - expect).norm() <= 1e-10 * expect.norm().max(1.0));
    }

    /// Transposition is an involution, and contraction against x in every
    /// slot ties mode application to the full form.
    #[test]
    fn transpose_involution_and_contraction_identity(
        t in arb_tensor(4, 3),
        xs in proptest::collection::vec(arb_complex(), 3),
    ) {
        let n = t.dim();
        let m = t.order();
        let x = &xs[..n];
        for k in 1..m {
            for l in k + 1..=m {
                let g = t.transpose(k, l).unwrap();
                prop_assert_eq!(g.transpose(k, l).unwrap(), t.clone());
            }
        }
        let f = t.multilinear_form(x).unwrap();
        for k in 1..=m {
            let v = t.mode_apply(k, x).unwrap();
            let dot: Complex64 = v.iter().zip(x).map(|(a, b)| a * b).sum();
            prop_assert!((dot - f).norm() <= 1e-12 * f.norm().max(1.0));
        }
    }

    /// Symmetrized monomial forms build fully symmetric tensors that
    /// reproduce the polynomial.
    #[test]
    fn monomial_tensors_are_symmetric_and_faithful(
        coeffs in proptest::collection::vec(arb_complex(), 3),
        xs in proptest::collection::vec(arb_complex(), 3),
    ) {
        let terms = vec![
            (coeffs[0], vec![3usize, 0, 0]),
            (coeffs[1], vec![1, 2, 0]),
            (coeffs[2], vec![1, 1, 1]),
        ];
        let form = MonomialForm::new(3, 3, terms).unwrap();
        let t = form.to_tensor().unwrap();
        for k in 1..3 {
            for l in k + 1..=3 {
                prop_assert_eq!(t.transpose(k, l).unwrap(), t.clone());
            }
        }
        let x = &xs[..3];
        let direct = coeffs[0] * x[0].powu(3)
            + coeffs[1] * x[0] * x[1].powu(2)
            + coeffs[2] * x[0] * x[1] * x[2];
        let via_tensor = t.multilinear_form(x).unwrap();
        prop_assert!((via_tensor - direct).norm() <= 1e-12 * direct.norm().max(1.0));
    }
}
