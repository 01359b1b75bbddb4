//! Seeded random test instances following the standard-normal protocol,
//! with optional symmetrization.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use teneig::tensor::DenseTensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

/// Description of one random instance: A of order `m`, B of order `mprime`.
#[derive(Clone, Copy, Debug)]
pub struct RandomSpec {
    pub m: usize,
    pub mprime: usize,
    pub n: usize,
    pub seed: u64,
    pub field: Field,
    pub symmetric: bool,
}

fn draw(order: usize, spec: &RandomSpec, stream: u64) -> DenseTensor {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(stream);
    let total = spec.n.pow(order as u32);
    let entries: Vec<Complex64> = (0..total)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = match spec.field {
                Field::Real => 0.0,
                Field::Complex => StandardNormal.sample(&mut rng),
            };
            Complex64::new(re, im)
        })
        .collect();
    let t = DenseTensor::new(order, spec.n, entries).expect("valid spec");
    if spec.symmetric {
        symmetrize(&t)
    } else {
        t
    }
}

/// The order-`m` tensor A of the instance.
pub fn random_tensor(spec: &RandomSpec) -> DenseTensor {
    draw(spec.m, spec, 0)
}

/// Both tensors of the instance, drawn from independent streams.
pub fn random_pair(spec: &RandomSpec) -> (DenseTensor, DenseTensor) {
    (draw(spec.m, spec, 0), draw(spec.mprime, spec, 1))
}

fn next_permutation(arr: &mut [usize]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

/// Averages entries over all index permutations, visiting each orbit once
/// through its sorted representative.
fn symmetrize(t: &DenseTensor) -> DenseTensor {
    let order = t.order();
    let dim = t.dim();
    let mut out = t.entries().to_vec();
    let mut canonical = vec![0usize; order];
    loop {
        // gather the orbit of the sorted tuple `canonical`
        let mut perm = canonical.clone();
        let mut sum = Complex64::new(0.0, 0.0);
        let mut count = 0usize;
        loop {
            sum += t.get(&perm);
            count += 1;
            if !next_permutation(&mut perm) {
                break;
            }
        }
        let avg = sum / count as f64;
        let mut perm = canonical.clone();
        loop {
            let flat = t.flat_index(&perm);
            out[flat] = avg;
            if !next_permutation(&mut perm) {
                break;
            }
        }
        // advance to the next nondecreasing tuple
        let mut pos = order;
        loop {
            if pos == 0 {
                return DenseTensor::new(order, dim, out).expect("same shape");
            }
            pos -= 1;
            if canonical[pos] + 1 < dim {
                let v = canonical[pos] + 1;
                for slot in pos..order {
                    canonical[slot] = v;
                }
                break;
            }
        }
    }
}
