//! Acceptance suite: every criterion the artifact must meet, one test per
//! criterion, each printing a PASS line (run with `--nocapture` to see
//! them). Solves are cached and executed twice so the determinism checks
//! can compare bit-for-bit.

use std::sync::OnceLock;

use num_complex::Complex64;
use teneig::eig::{
    eeig, eigenvalue_multisets_match, heig, multihomogeneous_path_count, path_count,
    residual_bound, teig, teneig, zeig, EigenPair, RealEigResult, SolveMeta, TeigResult,
    TeneigResult,
};
use teneig::tensor::DenseTensor;
use teneig::tracker::{Classification, TrackerConfig};
use teneig_cli::fixtures;
use teneig_oracle::{
    matrix_eig_oracle, random_pair, random_tensor, residual_check, two_var_oracle, Field,
    RandomSpec,
};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn fixture(name: &str, a: Option<f64>, n: Option<usize>) -> DenseTensor {
    fixtures::materialize(name, a, n)
        .expect("fixture")
        .to_tensor()
        .expect("tensor")
}

fn cfg_for(n: usize) -> TrackerConfig {
    TrackerConfig::for_dimension(n)
}

/// Weighted eigenvalue list: one entry per unit of multiplicity.
fn weighted_lambdas(pairs: &[EigenPair]) -> Vec<Complex64> {
    pairs
        .iter()
        .flat_map(|p| std::iter::repeat_n(p.lambda, p.multiplicity))
        .collect()
}

fn match_multiset(pairs: &[EigenPair], expect: &[f64], tol: f64) -> bool {
    let got = weighted_lambdas(pairs);
    let want: Vec<Complex64> = expect.iter().map(|&v| c(v)).collect();
    eigenvalue_multisets_match(&got, &want, tol)
}

fn vector_matches_up_to_sign(x: &[Complex64], expect: &[f64], tol: f64) -> bool {
    let direct = x
        .iter()
        .zip(expect)
        .map(|(z, e)| (z - c(*e)).norm())
        .fold(0.0_f64, f64::max);
    let flipped = x
        .iter()
        .zip(expect)
        .map(|(z, e)| (z + c(*e)).norm())
        .fold(0.0_f64, f64::max);
    direct.min(flipped) <= tol
}

// --- cached double-run solves ------------------------------------------------

struct Twice<T> {
    first: T,
    second: T,
}

fn twice<T>(mut f: impl FnMut() -> T) -> Twice<T> {
    Twice {
        first: f(),
        second: f(),
    }
}

static EX21: OnceLock<Vec<Twice<TeneigResult>>> = OnceLock::new();
fn ex21() -> &'static Vec<Twice<TeneigResult>> {
    EX21.get_or_init(|| {
        let a = fixture("example-2.1", None, None);
        (1..=3)
            .map(|mode| twice(|| eeig(&a, mode, 0, &cfg_for(2)).expect("eeig")))
            .collect()
    })
}

static MOTZKIN_Z: OnceLock<Twice<RealEigResult>> = OnceLock::new();
fn motzkin_z() -> &'static Twice<RealEigResult> {
    MOTZKIN_Z.get_or_init(|| {
        let a = fixture("motzkin", None, None);
        twice(|| zeig(&a, 1, 0, &cfg_for(3)).expect("zeig"))
    })
}

static MOTZKIN_H: OnceLock<Twice<RealEigResult>> = OnceLock::new();
fn motzkin_h() -> &'static Twice<RealEigResult> {
    MOTZKIN_H.get_or_init(|| {
        let a = fixture("motzkin", None, None);
        twice(|| heig(&a, 1, 0, &cfg_for(3)).expect("heig"))
    })
}

static COUNT_TEIG: OnceLock<Vec<Twice<TeigResult>>> = OnceLock::new();
fn count_teig() -> &'static Vec<Twice<TeigResult>> {
    COUNT_TEIG.get_or_init(|| {
        [(3usize, 5usize), (4, 3)]
            .iter()
            .map(|&(m, n)| {
                let spec = RandomSpec {
                    m,
                    mprime: m,
                    n,
                    seed: 100 + m as u64,
                    field: Field::Complex,
                    symmetric: false,
                };
                let a = random_tensor(&spec);
                let b = DenseTensor::identity(m, n).expect("identity");
                twice(move || teig(&a, &b, 1, 1, &cfg_for(n)).expect("teig"))
            })
            .collect()
    })
}

static COUNT_EEIG: OnceLock<Vec<Twice<TeneigResult>>> = OnceLock::new();
fn count_eeig() -> &'static Vec<Twice<TeneigResult>> {
    COUNT_EEIG.get_or_init(|| {
        [(3usize, 5usize), (4, 3)]
            .iter()
            .map(|&(m, n)| {
                let spec = RandomSpec {
                    m,
                    mprime: 2,
                    n,
                    seed: 200 + m as u64,
                    field: Field::Complex,
                    symmetric: false,
                };
                let a = random_tensor(&spec);
                twice(move || eeig(&a, 1, 1, &cfg_for(n)).expect("eeig"))
            })
            .collect()
    })
}

static COUNT_TENEIG: OnceLock<Vec<Twice<TeneigResult>>> = OnceLock::new();
fn count_teneig() -> &'static Vec<Twice<TeneigResult>> {
    COUNT_TENEIG.get_or_init(|| {
        [(5usize, 6usize, 3usize), (7, 8, 3)]
            .iter()
            .map(|&(m, mp, n)| {
                let spec = RandomSpec {
                    m,
                    mprime: mp,
                    n,
                    seed: 300 + m as u64,
                    field: Field::Complex,
                    symmetric: false,
                };
                let (a, b) = random_pair(&spec);
                twice(move || teneig(&a, &b, 1, 1, &cfg_for(n)).expect("teneig"))
            })
            .collect()
    })
}

static A1: OnceLock<Twice<RealEigResult>> = OnceLock::new();
fn a1() -> &'static Twice<RealEigResult> {
    A1.get_or_init(|| {
        let a = fixture("appendix-01", None, None);
        twice(|| zeig(&a, 1, 0, &cfg_for(3)).expect("zeig"))
    })
}

static A5: OnceLock<Twice<RealEigResult>> = OnceLock::new();
fn a5() -> &'static Twice<RealEigResult> {
    A5.get_or_init(|| {
        let a = fixture("appendix-05", None, None);
        twice(|| zeig(&a, 1, 0, &cfg_for(3)).expect("zeig"))
    })
}

static A3_SWEEP: OnceLock<Vec<(f64, Twice<RealEigResult>)>> = OnceLock::new();
fn a3_sweep() -> &'static Vec<(f64, Twice<RealEigResult>)> {
    A3_SWEEP.get_or_init(|| {
        [0.0, 0.25, 0.5, 1.0, 3.0]
            .iter()
            .map(|&p| {
                let a = fixture("appendix-03", Some(p), None);
                (p, twice(|| zeig(&a, 1, 0, &cfg_for(3)).expect("zeig")))
            })
            .collect()
    })
}

static A4_SWEEP: OnceLock<Vec<(f64, Twice<RealEigResult>)>> = OnceLock::new();
fn a4_sweep() -> &'static Vec<(f64, Twice<RealEigResult>)> {
    A4_SWEEP.get_or_init(|| {
        [-1.0, 0.0, 0.25, 0.5, 2.0, 3.0]
            .iter()
            .map(|&p| {
                let a = fixture("appendix-04", Some(p), None);
                (p, twice(|| zeig(&a, 1, 0, &cfg_for(2)).expect("zeig")))
            })
            .collect()
    })
}

static A9: OnceLock<Twice<RealEigResult>> = OnceLock::new();
fn a9() -> &'static Twice<RealEigResult> {
    A9.get_or_init(|| {
        let a = fixture("appendix-09", None, None);
        twice(|| zeig(&a, 1, 0, &cfg_for(3)).expect("zeig"))
    })
}

static A8: OnceLock<Twice<RealEigResult>> = OnceLock::new();
fn a8() -> &'static Twice<RealEigResult> {
    A8.get_or_init(|| {
        let a = fixture("appendix-08", None, None);
        twice(|| zeig(&a, 1, 0, &cfg_for(5)).expect("zeig"))
    })
}

// --- criteria ----------------------------------------------------------------

#[test]
fn criterion_01_example_mode_spectra() {
    let expected = [
        [0.4105, 4.3820, 9.8995],
        [0.2851, 4.3536, 9.5652],
        [0.2936, 4.3007, 9.4025],
    ];
    for (idx, run) in ex21().iter().enumerate() {
        let res = &run.first;
        assert_eq!(res.classes.len(), 3, "mode {} class count", idx + 1);
        let got: Vec<Complex64> = res
            .classes
            .iter()
            .map(|cl| cl.representative.lambda)
            .collect();
        let want: Vec<Complex64> = expected[idx].iter().map(|&v| c(v)).collect();
        assert!(
            eigenvalue_multisets_match(&got, &want, 1e-3),
            "mode {}: {got:?}",
            idx + 1
        );
    }
    println!("ACCEPTANCE 1 PASS: example-2.1 mode spectra match for all three modes");
}

#[test]
fn criterion_02_motzkin_z_eigenpairs() {
    let res = &motzkin_z().first;
    let total: usize = res.pairs.iter().map(|p| p.multiplicity).sum();
    assert_eq!(total, 25, "equivalence classes counting multiplicity");
    let mut expect = vec![0.0; 14];
    expect.extend(std::iter::repeat_n(0.015625, 8));
    expect.extend([0.25, 0.25, 1.0]);
    assert!(match_multiset(&res.pairs, &expect, 1e-3));
    // the eight 0.0156 eigenvectors match the published rows up to sign
    let rows: Vec<[f64; 3]> = {
        let mut v = Vec::new();
        for s1 in [1.0, -1.0] {
            for s2 in [1.0, -1.0] {
                v.push([0.8253, s1 * 0.2623, s2 * 0.5]);
                v.push([0.2623, s1 * 0.8253, s2 * 0.5]);
            }
        }
        v
    };
    let small: Vec<&EigenPair> = res
        .pairs
        .iter()
        .filter(|p| (p.lambda.re - 0.015625).abs() < 1e-3)
        .collect();
    assert_eq!(small.len(), 8);
    let mut used = vec![false; rows.len()];
    for p in &small {
        let hit = rows
            .iter()
            .enumerate()
            .find(|(i, row)| !used[*i] && vector_matches_up_to_sign(&p.x, &row[..], 1e-3));
        let (i, _) = hit.expect("eigenvector row not found");
        used[i] = true;
    }
    println!("ACCEPTANCE 2 PASS: Motzkin Z-eigenpairs match the published multiset and vectors");
}

#[test]
fn criterion_03_motzkin_h_eigenpairs() {
    let res = &motzkin_h().first;
    let mut expect = vec![0.0; 14];
    expect.extend(std::iter::repeat_n(1.0 / 18.0, 8));
    expect.extend(std::iter::repeat_n(1.0, 15));
    assert!(match_multiset(&res.pairs, &expect, 1e-3));
    let cluster = res
        .pairs
        .iter()
        .find(|p| (p.lambda.re - 1.0).abs() < 1e-3 && p.multiplicity == 13)
        .expect("multiplicity-13 cluster at lambda = 1");
    assert_ne!(cluster.classification, Classification::Regular);
    println!(
        "ACCEPTANCE 3 PASS: Motzkin H-eigenpairs match, multiplicity-13 cluster is non-regular"
    );
}

#[test]
fn criterion_04_generic_class_counts() {
    for (run, (m, n)) in count_teig().iter().zip([(3usize, 5usize), (4, 3)]) {
        let res = &run.first;
        let expect = path_count(m, m, n) as usize;
        assert_eq!(res.pairs.len(), expect, "T({m},{n})");
        assert_eq!(res.meta.paths_failed, 0);
        assert_eq!(res.meta.paths_at_infinity, 0);
    }
    for (run, (m, n)) in count_eeig().iter().zip([(3usize, 5usize), (4, 3)]) {
        let res = &run.first;
        let expect = path_count(m, 2, n) as usize;
        let surplus = multihomogeneous_path_count(m, 2, n) as usize - expect;
        assert_eq!(res.classes.len(), expect, "E({m},{n})");
        assert_eq!(res.meta.paths_failed, 0);
        assert_eq!(
            res.meta.paths_at_infinity, surplus,
            "E({m},{n}) at infinity"
        );
    }
    for (run, (m, mp, n)) in count_teneig()
        .iter()
        .zip([(5usize, 6usize, 3usize), (7, 8, 3)])
    {
        let res = &run.first;
        let expect = path_count(m, mp, n) as usize;
        let surplus = multihomogeneous_path_count(m, mp, n) as usize - expect;
        assert_eq!(res.classes.len(), expect, "G({m},{mp},{n})");
        assert_eq!(res.meta.paths_failed, 0);
        assert_eq!(
            res.meta.paths_at_infinity, surplus,
            "G({m},{mp},{n}) at infinity"
        );
    }
    println!("ACCEPTANCE 4 PASS: T(3,5)=80, T(4,3)=27, E(3,5)=31, E(4,3)=13, G(5,6,3)=61, G(7,8,3)=127 with zero failures");
}

#[test]
fn criterion_05_appendix_problem_1() {
    let res = &a1().first;
    let expect = [
        0.545455, 0.545455, 0.545455, 0.545455, 0.666667, 0.666667, 0.75, 0.75, 1.0, 1.2, 1.2, 2.0,
        3.0,
    ];
    assert!(match_multiset(&res.pairs, &expect, 1e-3));
    println!("ACCEPTANCE 5 PASS: appendix problem 1 Z-eigenvalue multiset matches");
}

#[test]
fn criterion_06_appendix_problem_5() {
    let res = &a5().first;
    let table: [(f64, [f64; 3]); 11] = [
        (-1.0954, [-0.5915, 0.7467, 0.3043]),
        (-0.5629, [-0.1762, 0.1796, -0.9678]),
        (-0.0451, [0.7797, 0.6135, 0.1250]),
        (0.1735, [0.3357, 0.9073, 0.2531]),
        (0.2433, [-0.9895, -0.0947, 0.1088]),
        (0.2628, [-0.1318, 0.4425, 0.8870]),
        (0.2682, [0.6099, 0.4362, 0.6616]),
        (0.3633, [0.2676, 0.6447, 0.7160]),
        (0.5105, [-0.3598, 0.7780, -0.5150]),
        (0.8169, [-0.8412, 0.2635, -0.4722]),
        (0.8893, [-0.6672, -0.2471, 0.7027]),
    ];
    assert_eq!(res.pairs.len(), 11);
    for (lam, x) in &table {
        let hit = res.pairs.iter().find(|p| {
            (p.lambda.re - lam).abs() <= 1e-3 && vector_matches_up_to_sign(&p.x, x, 1e-3)
        });
        assert!(hit.is_some(), "missing pair ({lam}, {x:?})");
    }
    println!("ACCEPTANCE 6 PASS: appendix problem 5 Z-eigenpairs match eigenvalues and vectors");
}

#[test]
fn criterion_07_parameter_sweeps() {
    let table8: [(f64, &[f64]); 5] = [
        (
            0.0,
            &[
                0.9677, 0.9677, 0.9677, 0.9677, 1.2, 1.2, 1.4286, 1.4286, 1.875, 1.875, 2.0, 3.0,
                5.0,
            ],
        ),
        (
            0.25,
            &[
                0.8464, 0.8464, 1.0881, 1.0881, 1.2150, 1.2150, 1.4412, 1.4412, 1.875, 1.875, 2.0,
                3.0, 5.0,
            ],
        ),
        (
            0.5,
            &[
                0.7243, 0.7243, 1.2069, 1.2069, 1.2593, 1.2593, 1.4783, 1.4783, 1.875, 1.875, 2.0,
                3.0, 5.0,
            ],
        ),
        (
            1.0,
            &[0.4787, 0.4787, 1.6133, 1.6133, 1.875, 1.875, 2.0, 3.0, 5.0],
        ),
        (
            3.0,
            &[
                -0.5126, -0.5126, 1.875, 1.875, 2.0, 2.2147, 2.2147, 3.0, 5.0,
            ],
        ),
    ];
    for ((p, run), (pe, expect)) in a3_sweep().iter().zip(&table8) {
        assert_eq!(p, pe);
        assert!(match_multiset(&run.first.pairs, expect, 1e-3), "a = {p}");
    }
    let table10: [(f64, &[f64]); 6] = [
        (-1.0, &[-0.6, -0.6, 1.0, 3.0]),
        (0.0, &[0.75, 0.75, 1.0, 3.0]),
        (0.25, &[0.975, 0.975, 1.0, 3.0]),
        (0.5, &[1.0, 3.0]),
        (2.0, &[1.0, 3.0, 4.125, 4.125]),
        (3.0, &[1.0, 3.0, 5.5714, 5.5714]),
    ];
    for ((p, run), (pe, expect)) in a4_sweep().iter().zip(&table10) {
        assert_eq!(p, pe);
        assert!(match_multiset(&run.first.pairs, expect, 1e-3), "a = {p}");
    }
    println!(
        "ACCEPTANCE 7 PASS: parameter sweeps match, including the bare {{1, 3}} row at a = 0.5"
    );
}

#[test]
fn criterion_08_positive_dimensional_detection() {
    let res9 = &a9().first;
    let hit = res9
        .pairs
        .iter()
        .find(|p| (p.lambda.re - 2.0).abs() <= 1e-3)
        .expect("lambda = 2 pair");
    assert_eq!(hit.classification, Classification::PositiveDimensional);
    assert!(vector_matches_up_to_sign(&hit.x, &[1.0, 0.0, 0.0], 1e-3));

    let res8 = &a8().first;
    // distinct eigenvalues group to exactly {0, 0.5, 24.5}
    let mut groups: Vec<f64> = Vec::new();
    for p in &res8.pairs {
        if !groups.iter().any(|g| (g - p.lambda.re).abs() <= 1e-3) {
            groups.push(p.lambda.re);
        }
    }
    groups.sort_by(f64::total_cmp);
    assert_eq!(groups.len(), 3, "groups {groups:?}");
    assert!((groups[0] - 0.0).abs() <= 1e-3);
    assert!((groups[1] - 0.5).abs() <= 1e-3);
    assert!((groups[2] - 24.5).abs() <= 1e-3);
    let zero_component: Vec<&EigenPair> = res8
        .pairs
        .iter()
        .filter(|p| p.lambda.re.abs() <= 1e-3)
        .collect();
    assert!(zero_component
        .iter()
        .any(|p| p.classification == Classification::PositiveDimensional));
    // at least one real eigenvector recovered on the component
    assert!(zero_component.iter().any(|p| p.is_real));
    println!("ACCEPTANCE 8 PASS: positive-dimensional components detected on problems 8 and 9");
}

#[test]
fn criterion_09_oracle_equivalence() {
    // 20 seeded random matrix pencils, n up to 5, against the dense oracle
    for seed in 0..20u64 {
        let n = 2 + (seed as usize) % 4;
        let spec = RandomSpec {
            m: 2,
            mprime: 2,
            n,
            seed: 1000 + seed,
            field: Field::Complex,
            symmetric: false,
        };
        let (a, b) = random_pair(&spec);
        let res = teig(&a, &b, 1, seed, &cfg_for(n)).expect("pencil solve");
        assert_eq!(res.meta.paths_failed, 0, "seed {seed}");
        let got: Vec<Complex64> = res.pairs.iter().map(|p| p.lambda).collect();
        let want = matrix_eig_oracle(&a, &b).expect("oracle");
        assert!(
            eigenvalue_multisets_match(&got, &want, 1e-8),
            "pencil seed {seed}"
        );
    }
    // 50 seeded random two-variable problems against the elimination oracle
    let canon = |lam: Complex64, m: usize, mp: usize| -> Complex64 {
        let shift = (m as i64 - mp as i64).rem_euclid(mp as i64) as u32;
        let mut best = lam;
        for j in 1..mp {
            let t = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / mp as f64);
            let cand = lam * t.powu(shift);
            if cand.re > best.re + 1e-12
                || ((cand.re - best.re).abs() <= 1e-12 && cand.im > best.im)
            {
                best = cand;
            }
        }
        best
    };
    for seed in 0..50u64 {
        let m = 3 + (seed as usize) % 3;
        let mp = if seed % 2 == 0 { 2 } else { m };
        let spec = RandomSpec {
            m,
            mprime: mp,
            n: 2,
            seed: 2000 + seed,
            field: Field::Complex,
            symmetric: false,
        };
        let a = random_tensor(&spec);
        let got: Vec<Complex64> = if mp == m {
            let b = DenseTensor::identity(m, 2).expect("identity");
            teig(&a, &b, 1, seed, &cfg_for(2))
                .expect("teig")
                .pairs
                .iter()
                .map(|p| canon(p.lambda, m, mp))
                .collect()
        } else {
            eeig(&a, 1, seed, &cfg_for(2))
                .expect("eeig")
                .classes
                .iter()
                .map(|cl| canon(cl.representative.lambda, m, mp))
                .collect()
        };
        let b = if mp == m {
            DenseTensor::identity(m, 2).expect("identity")
        } else {
            DenseTensor::identity_matrix(2).expect("identity")
        };
        let want: Vec<Complex64> = two_var_oracle(&a, &b, 1)
            .expect("oracle")
            .into_iter()
            .map(|(l, _)| canon(l, m, mp))
            .collect();
        assert!(
            eigenvalue_multisets_match(&got, &want, 1e-6),
            "two-var seed {seed} (m={m}, mp={mp}):\n  {got:?}\n  {want:?}"
        );
    }
    println!("ACCEPTANCE 9 PASS: 20 matrix pencils at 1e-8 and 50 two-variable problems at 1e-6 agree with the oracles");
}

// --- criterion 10: invariants over every solve above -------------------------

fn bits(z: Complex64) -> (u64, u64) {
    (z.re.to_bits(), z.im.to_bits())
}

fn assert_identical(a: &[EigenPair], b: &[EigenPair], label: &str) {
    assert_eq!(a.len(), b.len(), "{label}: class count");
    for (p, q) in a.iter().zip(b) {
        assert_eq!(bits(p.lambda), bits(q.lambda), "{label}: lambda bits");
        assert_eq!(p.x.len(), q.x.len());
        for (u, v) in p.x.iter().zip(&q.x) {
            assert_eq!(bits(*u), bits(*v), "{label}: x bits");
        }
        assert_eq!(p.multiplicity, q.multiplicity, "{label}: multiplicity");
        assert_eq!(
            p.residual.to_bits(),
            q.residual.to_bits(),
            "{label}: residual bits"
        );
        assert_eq!(
            p.classification, q.classification,
            "{label}: classification"
        );
    }
}

struct SolveView<'a> {
    label: String,
    a: DenseTensor,
    b: DenseTensor,
    mode: usize,
    mprime_for_members: usize,
    meta: &'a SolveMeta,
    pairs: Vec<&'a EigenPair>,
    rerun_pairs: Vec<&'a EigenPair>,
}

fn real_view<'a>(label: &str, a: &DenseTensor, run: &'a Twice<RealEigResult>) -> SolveView<'a> {
    SolveView {
        label: label.into(),
        a: a.clone(),
        b: DenseTensor::identity_matrix(a.dim()).expect("identity"),
        mode: 1,
        mprime_for_members: 2,
        meta: &run.first.meta,
        pairs: run.first.complex_pairs.iter().collect(),
        rerun_pairs: run.second.complex_pairs.iter().collect(),
    }
}

#[test]
fn criterion_10_invariant_suite() {
    let mut views: Vec<SolveView> = Vec::new();

    let ex = fixture("example-2.1", None, None);
    for (i, run) in ex21().iter().enumerate() {
        views.push(SolveView {
            label: format!("example-2.1 mode {}", i + 1),
            a: ex.clone(),
            b: DenseTensor::identity_matrix(2).expect("identity"),
            mode: i + 1,
            mprime_for_members: 2,
            meta: &run.first.meta,
            pairs: run
                .first
                .classes
                .iter()
                .map(|cl| &cl.representative)
                .collect(),
            rerun_pairs: run
                .second
                .classes
                .iter()
                .map(|cl| &cl.representative)
                .collect(),
        });
    }

    let motz = fixture("motzkin", None, None);
    views.push(real_view("motzkin zeig", &motz, motzkin_z()));
    {
        let run = motzkin_h();
        views.push(SolveView {
            label: "motzkin heig".into(),
            a: motz.clone(),
            b: DenseTensor::identity(6, 3).expect("identity"),
            mode: 1,
            mprime_for_members: 6,
            meta: &run.first.meta,
            pairs: run.first.complex_pairs.iter().collect(),
            rerun_pairs: run.second.complex_pairs.iter().collect(),
        });
    }

    for (i, (run, (m, n))) in count_teig()
        .iter()
        .zip([(3usize, 5usize), (4, 3)])
        .enumerate()
    {
        let spec = RandomSpec {
            m,
            mprime: m,
            n,
            seed: 100 + m as u64,
            field: Field::Complex,
            symmetric: false,
        };
        views.push(SolveView {
            label: format!("random teig #{i}"),
            a: random_tensor(&spec),
            b: DenseTensor::identity(m, n).expect("identity"),
            mode: 1,
            mprime_for_members: m,
            meta: &run.first.meta,
            pairs: run.first.pairs.iter().collect(),
            rerun_pairs: run.second.pairs.iter().collect(),
        });
    }
    for (i, (run, (m, n))) in count_eeig()
        .iter()
        .zip([(3usize, 5usize), (4, 3)])
        .enumerate()
    {
        let spec = RandomSpec {
            m,
            mprime: 2,
            n,
            seed: 200 + m as u64,
            field: Field::Complex,
            symmetric: false,
        };
        views.push(SolveView {
            label: format!("random eeig #{i}"),
            a: random_tensor(&spec),
            b: DenseTensor::identity_matrix(n).expect("identity"),
            mode: 1,
            mprime_for_members: 2,
            meta: &run.first.meta,
            pairs: run
                .first
                .classes
                .iter()
                .map(|cl| &cl.representative)
                .collect(),
            rerun_pairs: run
                .second
                .classes
                .iter()
                .map(|cl| &cl.representative)
                .collect(),
        });
    }
    for (i, (run, (m, mp, n))) in count_teneig()
        .iter()
        .zip([(5usize, 6usize, 3usize), (7, 8, 3)])
        .enumerate()
    {
        let spec = RandomSpec {
            m,
            mprime: mp,
            n,
            seed: 300 + m as u64,
            field: Field::Complex,
            symmetric: false,
        };
        let (a, b) = random_pair(&spec);
        views.push(SolveView {
            label: format!("random teneig #{i}"),
            a,
            b,
            mode: 1,
            mprime_for_members: mp,
            meta: &run.first.meta,
            pairs: run
                .first
                .classes
                .iter()
                .map(|cl| &cl.representative)
                .collect(),
            rerun_pairs: run
                .second
                .classes
                .iter()
                .map(|cl| &cl.representative)
                .collect(),
        });
    }

    views.push(real_view(
        "appendix-01 zeig",
        &fixture("appendix-01", None, None),
        a1(),
    ));
    views.push(real_view(
        "appendix-05 zeig",
        &fixture("appendix-05", None, None),
        a5(),
    ));
    views.push(real_view(
        "appendix-09 zeig",
        &fixture("appendix-09", None, None),
        a9(),
    ));
    views.push(real_view(
        "appendix-08 zeig",
        &fixture("appendix-08", None, None),
        a8(),
    ));
    for (p, run) in a3_sweep() {
        views.push(real_view(
            &format!("appendix-03 a={p}"),
            &fixture("appendix-03", Some(*p), None),
            run,
        ));
    }
    for (p, run) in a4_sweep() {
        views.push(real_view(
            &format!("appendix-04 a={p}"),
            &fixture("appendix-04", Some(*p), None),
            run,
        ));
    }

    for view in &views {
        // residual bound on every returned pair, via the independent check
        for p in &view.pairs {
            let r = residual_check(&view.a, &view.b, view.mode, p.lambda, &p.x);
            let bound = residual_bound(view.a.order(), view.b.order(), p.lambda, &p.x);
            assert!(r <= bound, "{}: residual {r} > {bound}", view.label);
            // equivalence covariance: all members of the class satisfy the
            // equations
            let m = view.a.order();
            let mp = view.mprime_for_members;
            let shift = (m as i64 - mp as i64).rem_euclid(mp as i64) as u32;
            for j in 0..mp {
                let t = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / mp as f64);
                let lam_j = p.lambda * t.powu(shift);
                let x_j: Vec<Complex64> = p.x.iter().map(|xi| xi * t).collect();
                let rj = residual_check(&view.a, &view.b, view.mode, lam_j, &x_j);
                assert!(
                    rj <= residual_bound(m, view.b.order(), lam_j, &x_j),
                    "{}: member {j} residual {rj}",
                    view.label
                );
            }
        }
        // path bookkeeping reconciles exactly
        let mult: usize = view.pairs.iter().map(|p| p.multiplicity).sum();
        assert!(
            view.meta.reconciles(mult),
            "{}: {} classes (weighted) + {} inf + {} failed != {} tracked",
            view.label,
            mult,
            view.meta.paths_at_infinity,
            view.meta.paths_failed,
            view.meta.paths_tracked
        );
        // reruns with the same seed are bit-identical
        let first: Vec<EigenPair> = view.pairs.iter().map(|p| (*p).clone()).collect();
        let second: Vec<EigenPair> = view.rerun_pairs.iter().map(|p| (*p).clone()).collect();
        assert_identical(&first, &second, &view.label);
    }
    println!(
        "ACCEPTANCE 10 PASS: residuals, covariance, bookkeeping, and bit-identical reruns hold over {} solves",
        views.len()
    );
}
