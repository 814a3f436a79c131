//! Brute-force tensor machinery used as an independent reference for the
//! exterior algebra.
//!
//! Everything here works on dense component arrays and sums over all `k!`
//! permutations, so it is only practical for small dimensions and ranks. Index
//! tuples in the public API are 1-based.

use crate::blade::BladeMask;
use crate::{Error, Multivector, Result};

const ANTISYMMETRY_TOLERANCE: f64 = 1e-12;

/// Rank-`k` contravariant tensor over an `n`-dimensional space, stored as
/// `n^k` components in row-major index order. Rank 0 is a single scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    dim: usize,
    rank: usize,
    coeffs: Vec<f64>,
}

/// All permutations of `0..k` with their signs, in lexicographic order.
pub fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i32)> {
    fn extend(
        prefix: &mut Vec<usize>,
        used: &mut [bool],
        sign: i32,
        out: &mut Vec<(Vec<usize>, i32)>,
    ) {
        let k = used.len();
        if prefix.len() == k {
            out.push((prefix.clone(), sign));
            return;
        }
        // Choosing the j-th smallest unused element costs j transpositions.
        let mut rank = 0;
        for v in 0..k {
            if used[v] {
                continue;
            }
            used[v] = true;
            prefix.push(v);
            extend(prefix, used, if rank % 2 == 0 { sign } else { -sign }, out);
            prefix.pop();
            used[v] = false;
            rank += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(k), &mut vec![false; k], 1, &mut out);
    out
}

/// The permutation symbol of order `k = indices.len()`: `+1` for an even
/// permutation of `1..=k`, `-1` for an odd one, `0` otherwise.
pub fn permutation_symbol(indices: &[usize]) -> i32 {
    let k = indices.len();
    let mut seen = vec![false; k];
    for &i in indices {
        if i == 0 || i > k || seen[i - 1] {
            return 0;
        }
        seen[i - 1] = true;
    }
    let mut inversions = 0;
    for p in 0..k {
        for q in p + 1..k {
            if indices[p] > indices[q] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Determinant by full permutation expansion.
pub fn permutation_determinant(matrix: &[Vec<f64>]) -> f64 {
    let k = matrix.len();
    signed_permutations(k)
        .into_iter()
        .map(|(perm, sign)| {
            let prod: f64 = perm
                .iter()
                .enumerate()
                .map(|(row, &col)| matrix[row][col])
                .product();
            sign as f64 * prod
        })
        .sum()
}

/// Generalized permutation symbol `ε^{upper}_{lower}`: the determinant of the
/// Kronecker-delta matrix `[δ^{upper_p}_{lower_q}]`.
pub fn generalized_delta(upper: &[usize], lower: &[usize]) -> i32 {
    assert_eq!(
        upper.len(),
        lower.len(),
        "index tuples must have equal length"
    );
    let m: Vec<Vec<f64>> = upper
        .iter()
        .map(|&u| {
            lower
                .iter()
                .map(|&l| if u == l { 1.0 } else { 0.0 })
                .collect()
        })
        .collect();
    permutation_determinant(&m) as i32
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Which exterior product is used to expand an antisymmetric tensor over its
/// components in [`expand_components`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WedgeConvention {
    /// `X = (1/p!) X^{i1…ip} e_{i1} ∧ … ∧ e_{ip}` with the combinatorial
    /// wedge of [`wedge_oracle`].
    Standard,
    /// `X = X^{i1…ip} e_{i1} ∧qa … ∧qa e_{ip}` with [`qa_wedge`].
    Quotient,
    /// The common mistake: the `1/p!` expansion written with [`qa_wedge`].
    /// Does not reconstruct `X` for `p >= 2`.
    QuotientWithFactorial,
}

impl DenseTensor {
    pub fn zeros(dim: usize, rank: usize) -> DenseTensor {
        DenseTensor {
            dim,
            rank,
            coeffs: vec![0.0; dim.pow(rank as u32)],
        }
    }

    pub fn scalar(dim: usize, value: f64) -> DenseTensor {
        DenseTensor {
            dim,
            rank: 0,
            coeffs: vec![value],
        }
    }

    pub fn vector(components: &[f64]) -> DenseTensor {
        DenseTensor {
            dim: components.len(),
            rank: 1,
            coeffs: components.to_vec(),
        }
    }

    pub fn from_coeffs(dim: usize, rank: usize, coeffs: Vec<f64>) -> Result<DenseTensor> {
        let expected = dim.pow(rank as u32);
        if coeffs.len() != expected {
            return Err(Error::CoefficientCount {
                expected,
                got: coeffs.len(),
            });
        }
        Ok(DenseTensor { dim, rank, coeffs })
    }

    /// `e_{i1} ⊗ … ⊗ e_{ik}` for 1-based indices.
    pub fn basis_product(dim: usize, indices: &[usize]) -> Result<DenseTensor> {
        let mut t = DenseTensor::zeros(dim, indices.len());
        for &i in indices {
            if i == 0 || i > dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
        }
        let flat = t.flat_index(indices);
        t.coeffs[flat] = 1.0;
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    fn flat_index(&self, indices: &[usize]) -> usize {
        indices.iter().fold(0, |acc, &i| acc * self.dim + (i - 1))
    }

    fn tuple(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.rank];
        for slot in idx.iter_mut().rev() {
            *slot = flat % self.dim + 1;
            flat /= self.dim;
        }
        idx
    }

    /// Component at a 1-based index tuple.
    pub fn component(&self, indices: &[usize]) -> f64 {
        assert_eq!(indices.len(), self.rank);
        self.coeffs[self.flat_index(indices)]
    }

    pub fn scale(&self, alpha: f64) -> DenseTensor {
        DenseTensor {
            coeffs: self.coeffs.iter().map(|c| alpha * c).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &DenseTensor) -> Result<DenseTensor> {
        self.same_shape(other)?;
        Ok(DenseTensor {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            ..self.clone()
        })
    }

    fn same_shape(&self, other: &DenseTensor) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &DenseTensor) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |acc, c| acc.max(c.abs()))
    }

    /// Max deviation from being a fixed point of [`antisymmetrize`].
    pub fn antisymmetry_defect(&self) -> f64 {
        antisymmetrize(self).max_abs_diff(self)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetry_defect() <= ANTISYMMETRY_TOLERANCE * (1.0 + self.max_abs())
    }

    fn require_antisymmetric(&self) -> Result<()> {
        let deviation = self.antisymmetry_defect();
        if deviation > ANTISYMMETRY_TOLERANCE * (1.0 + self.max_abs()) {
            return Err(Error::NotAntisymmetric { deviation });
        }
        Ok(())
    }
}

/// `t ⊗ u`: rank `p + q` with component `(I, J)` equal to `t(I) u(J)`. Scalar
/// operands reduce to the real product or scalar multiplication.
pub fn tensor_product(t: &DenseTensor, u: &DenseTensor) -> Result<DenseTensor> {
    if t.dim != u.dim {
        return Err(Error::DimMismatch {
            left: t.dim,
            right: u.dim,
        });
    }
    let mut coeffs = Vec::with_capacity(t.coeffs.len() * u.coeffs.len());
    for &a in &t.coeffs {
        for &b in &u.coeffs {
            coeffs.push(a * b);
        }
    }
    Ok(DenseTensor {
        dim: t.dim,
        rank: t.rank + u.rank,
        coeffs,
    })
}

/// The antisymmetrization projector:
/// `(A t)(I) = (1/k!) Σ_σ sign(σ) t(σ(I))`; identity on ranks 0 and 1.
pub fn antisymmetrize(t: &DenseTensor) -> DenseTensor {
    if t.rank <= 1 {
        return t.clone();
    }
    let perms = signed_permutations(t.rank);
    let norm = 1.0 / factorial(t.rank);
    let mut out = DenseTensor::zeros(t.dim, t.rank);
    let mut permuted = vec![0; t.rank];
    for flat in 0..t.coeffs.len() {
        let idx = t.tuple(flat);
        let mut acc = 0.0;
        for (perm, sign) in &perms {
            for (slot, &p) in permuted.iter_mut().zip(perm) {
                *slot = idx[p];
            }
            acc += *sign as f64 * t.coeffs[t.flat_index(&permuted)];
        }
        out.coeffs[flat] = norm * acc;
    }
    out
}

/// Exterior product of antisymmetric tensors of ranks `p` and `q`:
/// `((p+q)!/(p! q!)) A(t ⊗ u)`.
pub fn wedge_oracle(t: &DenseTensor, u: &DenseTensor) -> Result<DenseTensor> {
    let qa = qa_wedge(t, u)?;
    let factor = factorial(t.rank + u.rank) / (factorial(t.rank) * factorial(u.rank));
    Ok(qa.scale(factor))
}

/// The quotient-algebra exterior product `A(t ⊗ u)`, with no combinatorial
/// factor.
pub fn qa_wedge(t: &DenseTensor, u: &DenseTensor) -> Result<DenseTensor> {
    t.require_antisymmetric()?;
    u.require_antisymmetric()?;
    Ok(antisymmetrize(&tensor_product(t, u)?))
}

/// Components of the grade-`k` part of `x` as an antisymmetric rank-`k`
/// tensor: `X^{i1…ik}` is the canonical coefficient times the sign of the
/// permutation sorting the indices, zero on repeated indices.
pub fn multivector_to_tensor(x: &Multivector, k: usize) -> Result<DenseTensor> {
    let dim = x.dim();
    crate::Grade::new(k, dim)?;
    let mut t = DenseTensor::zeros(dim, k);
    for flat in 0..t.coeffs.len() {
        let idx = t.tuple(flat);
        let (mask, sign) = crate::blade::canonical_reorder(&idx, dim)?;
        if sign != 0 {
            t.coeffs[flat] = sign as f64 * x.coeff(mask);
        }
    }
    Ok(t)
}

/// Inverse of [`multivector_to_tensor`]: the grade-`rank` multivector whose
/// canonical coefficient on `e_{i1…ik}` (ascending) is `t(i1, …, ik)`.
pub fn tensor_to_multivector(t: &DenseTensor) -> Result<Multivector> {
    if t.rank > t.dim {
        return Err(Error::RankTooLarge {
            rank: t.rank,
            dim: t.dim,
        });
    }
    t.require_antisymmetric()?;
    let mut coeffs = vec![0.0; 1 << t.dim];
    for (m, slot) in coeffs.iter_mut().enumerate() {
        let mask = BladeMask(m as u32);
        if mask.grade() == t.rank {
            let idx: Vec<usize> = mask.indices().collect();
            *slot = t.component(&idx);
        }
    }
    Multivector::from_coeffs(t.dim, coeffs)
}

/// Rebuilds an antisymmetric tensor from its components by summing basis
/// wedges over every index tuple, under the given convention.
pub fn expand_components(t: &DenseTensor, convention: WedgeConvention) -> Result<DenseTensor> {
    t.require_antisymmetric()?;
    let dim = t.dim;
    let mut acc = DenseTensor::zeros(dim, t.rank);
    let prefactor = match convention {
        WedgeConvention::Standard | WedgeConvention::QuotientWithFactorial => {
            1.0 / factorial(t.rank)
        }
        WedgeConvention::Quotient => 1.0,
    };
    for flat in 0..t.coeffs.len() {
        let c = t.coeffs[flat];
        if c == 0.0 {
            continue;
        }
        let idx = t.tuple(flat);
        let mut blade = DenseTensor::scalar(dim, 1.0);
        for &i in &idx {
            let e = DenseTensor::basis_product(dim, &[i])?;
            blade = match convention {
                WedgeConvention::Standard => wedge_oracle(&blade, &e)?,
                _ => qa_wedge(&blade, &e)?,
            };
        }
        acc = acc.add(&blade.scale(prefactor * c))?;
    }
    Ok(acc)
}
