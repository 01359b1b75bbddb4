//! Dense tensor storage and the contraction primitives behind every
//! polynomial evaluation in the solver.
//!
//! Entries are stored row-major over index tuples `(i1, ..., im)` with the
//! last index fastest. Modes are 1-based, matching the usual mode-k notation;
//! raw entry access is 0-based.

use num_complex::Complex64;

use crate::{Error, Result};

/// Supported size envelope: dense storage only, so cap the entry count.
const MAX_ENTRIES: usize = 100_000_000;

/// Order-`m`, dimension-`n` dense complex tensor. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseTensor {
    order: usize,
    dim: usize,
    entries: Vec<Complex64>,
}

fn entry_count(order: usize, dim: usize) -> Result<usize> {
    let mut total: usize = 1;
    for _ in 0..order {
        total = total
            .checked_mul(dim)
            .filter(|&t| t <= MAX_ENTRIES)
            .ok_or_else(|| Error::InvalidTensor(format!("dim^order too large: {dim}^{order}")))?;
    }
    Ok(total)
}

/// Calls `f` with every index tuple (0-based) and its flat offset.
fn for_each_tuple(order: usize, dim: usize, mut f: impl FnMut(&[usize], usize)) {
    let total = dim.pow(order as u32);
    let mut idx = vec![0usize; order];
    for flat in 0..total {
        f(&idx, flat);
        for pos in (0..order).rev() {
            idx[pos] += 1;
            if idx[pos] < dim {
                break;
            }
            idx[pos] = 0;
        }
    }
}

impl DenseTensor {
    pub fn new(order: usize, dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidTensor(format!(
                "order must be >= 2, got {order}"
            )));
        }
        if dim < 1 {
            return Err(Error::InvalidTensor("dim must be >= 1".into()));
        }
        let expected = entry_count(order, dim)?;
        if entries.len() != expected {
            return Err(Error::InvalidTensor(format!(
                "expected {expected} entries for order {order}, dim {dim}; got {}",
                entries.len()
            )));
        }
        Ok(Self {
            order,
            dim,
            entries,
        })
    }

    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        let total = entry_count(order, dim)?;
        Self::new(order, dim, vec![Complex64::new(0.0, 0.0); total])
    }

    /// Identity tensor: ones on the full diagonal, so mode-1 application
    /// gives the componentwise power `x^[m-1]`.
    pub fn identity(order: usize, dim: usize) -> Result<Self> {
        let mut t = Self::zeros(order, dim)?;
        for i in 0..dim {
            let mut flat = 0usize;
            for _ in 0..order {
                flat = flat * dim + i;
            }
            t.entries[flat] = Complex64::new(1.0, 0.0);
        }
        Ok(t)
    }

    /// The n-by-n identity matrix as an order-2 tensor.
    pub fn identity_matrix(dim: usize) -> Result<Self> {
        Self::identity(2, dim)
    }

    pub fn from_real(order: usize, dim: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            order,
            dim,
            entries.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    /// Flat offset of a 0-based index tuple.
    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.order);
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, idx: &[usize]) -> Complex64 {
        self.entries[self.flat_index(idx)]
    }

    pub fn scaled(&self, alpha: Complex64) -> Self {
        Self {
            order: self.order,
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * alpha).collect(),
        }
    }

    fn check_vector(&self, x: &[Complex64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(())
    }

    fn check_mode(&self, k: usize) -> Result<()> {
        if k < 1 || k > self.order {
            return Err(Error::ModeOutOfRange {
                mode: k,
                order: self.order,
            });
        }
        Ok(())
    }

    /// Contracts the last (fastest) index of a row-major buffer against x.
    fn contract_last(buf: &[Complex64], x: &[Complex64]) -> Vec<Complex64> {
        let n = x.len();
        buf.chunks_exact(n)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Contracts the first (slowest) index of a row-major buffer against x.
    fn contract_first(buf: &[Complex64], x: &[Complex64]) -> Vec<Complex64> {
        let n = x.len();
        let stride = buf.len() / n;
        let mut out = vec![Complex64::new(0.0, 0.0); stride];
        for (i, block) in buf.chunks_exact(stride).enumerate() {
            let xi = x[i];
            for (o, a) in out.iter_mut().zip(block) {
                *o += xi * a;
            }
        }
        out
    }

    /// Contracts dimension `pos` (0-based) of a row-major buffer holding
    /// `ndims` dimensions of extent n each.
    fn contract_dim(
        buf: &[Complex64],
        n: usize,
        ndims: usize,
        pos: usize,
        x: &[Complex64],
    ) -> Vec<Complex64> {
        let inner = n.pow((ndims - pos - 1) as u32);
        let chunk = n * inner;
        let mut out = vec![Complex64::new(0.0, 0.0); buf.len() / n];
        for (o, block) in buf.chunks_exact(chunk).enumerate() {
            let dst = &mut out[o * inner..(o + 1) * inner];
            for (j, sub) in block.chunks_exact(inner).enumerate() {
                let xj = x[j];
                for (d, a) in dst.iter_mut().zip(sub) {
                    *d += xj * a;
                }
            }
        }
        out
    }

    /// Full contraction `A x^m`, one index at a time.
    pub fn multilinear_form(&self, x: &[Complex64]) -> Result<Complex64> {
        self.check_vector(x)?;
        let mut buf = Self::contract_last(&self.entries, x);
        for _ in 1..self.order {
            buf = Self::contract_last(&buf, x);
        }
        Ok(buf[0])
    }

    /// Mode-k contraction `A^(k) x^{m-1}`: slot `k` stays free, all other
    /// slots are summed against `x`. Trailing slots are contracted first,
    /// then leading ones, costing about `n/(n-1)` multiplies per entry.
    pub fn mode_apply(&self, k: usize, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_vector(x)?;
        self.check_mode(k)?;
        let free = k - 1;
        let trailing = self.order - free - 1;
        let mut buf = if trailing > 0 {
            Self::contract_last(&self.entries, x)
        } else {
            Self::contract_first(&self.entries, x)
        };
        for _ in 1..trailing {
            buf = Self::contract_last(&buf, x);
        }
        let leading_done = usize::from(trailing == 0);
        for _ in leading_done..free {
            buf = Self::contract_first(&buf, x);
        }
        Ok(buf)
    }

    /// Jacobian of `mode_apply` with respect to `x`: entry `(j, p)` is
    /// `d (A^(k) x^{m-1})_j / d x_p`, computed analytically.
    ///
    /// Differentiates the staged contraction: the forward pass records the
    /// input of every stage, and one branch per stage replays the rest of
    /// the pipeline with that stage's slot left open as the derivative
    /// index.
    pub fn mode_jacobian(&self, k: usize, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_vector(x)?;
        self.check_mode(k)?;
        let n = self.dim;
        let m = self.order;
        let free = k - 1;
        let trailing = m - free - 1;
        // forward pass: trailing slots last-first, then leading slots
        let mut stage_inputs: Vec<Vec<Complex64>> = Vec::with_capacity(m - 1);
        stage_inputs.push(self.entries.clone());
        for t in 1..m - 1 {
            let prev = &stage_inputs[t - 1];
            let next = if t <= trailing {
                Self::contract_last(prev, x)
            } else {
                Self::contract_first(prev, x)
            };
            stage_inputs.push(next);
        }
        let mut jac = vec![Complex64::new(0.0, 0.0); n * n];
        // branches opening a trailing slot: it rides along as the last
        // dimension, so later trailing stages contract the one before it
        for t in 0..trailing {
            let mut buf = stage_inputs[t].clone();
            let mut ndims = m - t;
            for _ in t + 1..trailing {
                buf = Self::contract_dim(&buf, n, ndims, ndims - 2, x);
                ndims -= 1;
            }
            for _ in 0..free {
                buf = Self::contract_dim(&buf, n, ndims, 0, x);
                ndims -= 1;
            }
            debug_assert_eq!(ndims, 2);
            for (j, row) in buf.chunks_exact(n).enumerate() {
                for (p, v) in row.iter().enumerate() {
                    jac[j * n + p] += v;
                }
            }
        }
        // branches opening a leading slot: it stays in front, later leading
        // stages contract the dimension right behind it
        for s in 0..free {
            let mut buf = stage_inputs[trailing + s].clone();
            let mut ndims = free + 1 - s;
            for _ in s + 1..free {
                buf = Self::contract_dim(&buf, n, ndims, 1, x);
                ndims -= 1;
            }
            debug_assert_eq!(ndims, 2);
            for (p, row) in buf.chunks_exact(n).enumerate() {
                for (j, v) in row.iter().enumerate() {
                    jac[j * n + p] += v;
                }
            }
        }
        Ok(jac)
    }

    /// The <k,l> transpose: index slots `k` and `l` swapped. Involution.
    pub fn transpose(&self, k: usize, l: usize) -> Result<Self> {
        self.check_mode(k)?;
        self.check_mode(l)?;
        if k >= l {
            return Err(Error::InvalidTensor(format!(
                "transpose needs k < l, got k={k}, l={l}"
            )));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.entries.len()];
        let mut swapped = vec![0usize; self.order];
        for_each_tuple(self.order, self.dim, |idx, flat| {
            swapped.copy_from_slice(idx);
            swapped.swap(k - 1, l - 1);
            out[self.flat_index(&swapped)] = self.entries[flat];
        });
        Ok(Self {
            order: self.order,
            dim: self.dim,
            entries: out,
        })
    }
}

/// Polynomial form of degree `m` in `dim` variables; each term is a
/// coefficient and an exponent vector summing to `m`.
#[derive(Clone, Debug)]
pub struct MonomialForm {
    degree: usize,
    dim: usize,
    terms: Vec<(Complex64, Vec<usize>)>,
}

impl MonomialForm {
    /// Builds a form, merging duplicate exponent vectors.
    pub fn new(degree: usize, dim: usize, terms: Vec<(Complex64, Vec<usize>)>) -> Result<Self> {
        if degree < 2 {
            return Err(Error::InvalidTensor(format!(
                "degree must be >= 2, got {degree}"
            )));
        }
        let mut merged: std::collections::BTreeMap<Vec<usize>, Complex64> = Default::default();
        for (coeff, alpha) in terms {
            if alpha.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: alpha.len(),
                });
            }
            if alpha.iter().sum::<usize>() != degree {
                return Err(Error::InvalidTensor(format!(
                    "exponent vector {alpha:?} does not sum to degree {degree}"
                )));
            }
            *merged.entry(alpha).or_insert(Complex64::new(0.0, 0.0)) += coeff;
        }
        Ok(Self {
            degree,
            dim,
            terms: merged.into_iter().map(|(a, c)| (c, a)).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(Complex64, Vec<usize>)] {
        &self.terms
    }

    /// The unique symmetric tensor A with `A x^m` equal to this form. Each
    /// monomial coefficient is spread evenly over the distinct index
    /// permutations of its exponent multiset.
    pub fn to_tensor(&self) -> Result<DenseTensor> {
        let mut t = DenseTensor::zeros(self.degree, self.dim)?;
        let m_fact: f64 = (1..=self.degree).map(|v| v as f64).product();
        for (coeff, alpha) in &self.terms {
            let mut base: Vec<usize> = Vec::with_capacity(self.degree);
            let mut alpha_fact = 1.0f64;
            for (var, &count) in alpha.iter().enumerate() {
                alpha_fact *= (1..=count).map(|v| v as f64).product::<f64>();
                base.extend(std::iter::repeat_n(var, count));
            }
            let share = *coeff * (alpha_fact / m_fact);
            loop {
                let flat = t.flat_index(&base);
                t.entries[flat] += share;
                if !next_permutation(&mut base) {
                    break;
                }
            }
        }
        Ok(t)
    }
}

/// Advances `arr` to the next lexicographic permutation, returning false
/// after the last one. Repeated elements are visited once per distinct order.
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
