//! Euclidean structures: validated Gram matrices, bases and their b-metrics,
//! scalar products of multivectors, reciprocal bases and the expansion
//! formulas.

pub mod io;

use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::OnceLock;

use nalgebra::DMatrix;

use crate::blade::{bits, BladeIndex, BladeMask};
use crate::exterior::wedge;
use crate::{Error, Multivector, Result};

/// Entrywise absolute tolerance for Gram matrix symmetry.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
/// Smallest admissible Cholesky pivot.
pub const PIVOT_TOLERANCE: f64 = 1e-12;
/// Max entry of `dual_forms * vectors - I` accepted for a basis.
pub const DUALITY_TOLERANCE: f64 = 1e-10;

/// A symmetric positive-definite bilinear form given by its Gram matrix in
/// the standard coordinate basis, with its inverse and lower Cholesky factor
/// computed at construction.
#[derive(Debug, Clone)]
pub struct EuclideanMetric {
    dim: usize,
    gram: DMatrix<f64>,
    inverse: DMatrix<f64>,
    factor: DMatrix<f64>,
    id: u64,
    identity: bool,
    blade_gram: OnceLock<Vec<Vec<f64>>>,
}

impl PartialEq for EuclideanMetric {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}

/// Lower-triangular `L` with `L Lᵀ = m`, or the 1-based index of the first
/// pivot that is not safely positive.
fn cholesky(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = m.nrows();
    let mut l = DMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = m[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if d.is_nan() || d <= PIVOT_TOLERANCE {
            return Err(Error::NotPositiveDefinite {
                pivot: j + 1,
                value: d,
            });
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    Ok(l)
}

/// Determinant of a small dense matrix: cofactor expansion up to 4x4, LU with
/// partial pivoting above.
fn small_det(m: &[f64], k: usize) -> f64 {
    match k {
        0 => 1.0,
        1 => m[0],
        2 => m[0] * m[3] - m[1] * m[2],
        3 => {
            m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
                + m[2] * (m[3] * m[7] - m[4] * m[6])
        }
        4 => {
            let mut det = 0.0;
            let mut minor = [0.0; 9];
            for col in 0..4 {
                let mut p = 0;
                for r in 1..4 {
                    for c in 0..4 {
                        if c != col {
                            minor[p] = m[r * 4 + c];
                            p += 1;
                        }
                    }
                }
                let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
                det += sign * m[col] * small_det(&minor, 3);
            }
            det
        }
        _ => DMatrix::from_row_slice(k, k, m).lu().determinant(),
    }
}

impl EuclideanMetric {
    /// Validates a Gram matrix given as rows.
    pub fn from_gram(rows: &[Vec<f64>]) -> Result<EuclideanMetric> {
        let dim = rows.len();
        crate::multivector::check_dim(dim)?;
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::NotSquare { dim });
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        EuclideanMetric::from_matrix(DMatrix::from_row_slice(dim, dim, &flat))
    }

    pub fn from_matrix(gram: DMatrix<f64>) -> Result<EuclideanMetric> {
        let dim = gram.nrows();
        crate::multivector::check_dim(dim)?;
        if gram.ncols() != dim {
            return Err(Error::NotSquare { dim });
        }
        if let Some(i) = gram.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        for i in 0..dim {
            for j in i + 1..dim {
                if (gram[(i, j)] - gram[(j, i)]).abs() > SYMMETRY_TOLERANCE {
                    return Err(Error::Asymmetric {
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
        let factor = cholesky(&gram)?;
        let inverse = gram
            .clone()
            .try_inverse()
            .ok_or(Error::NotPositiveDefinite {
                pivot: dim,
                value: 0.0,
            })?;
        let mut hasher = DefaultHasher::new();
        dim.hash(&mut hasher);
        for v in gram.iter() {
            v.to_bits().hash(&mut hasher);
        }
        let identity = gram == DMatrix::identity(dim, dim);
        Ok(EuclideanMetric {
            dim,
            gram,
            inverse,
            factor,
            id: hasher.finish(),
            identity,
            blade_gram: OnceLock::new(),
        })
    }

    pub fn identity(dim: usize) -> Result<EuclideanMetric> {
        EuclideanMetric::from_matrix(DMatrix::identity(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn inverse_gram(&self) -> &DMatrix<f64> {
        &self.inverse
    }

    /// Lower-triangular `L` with `L Lᵀ = gram`.
    pub fn cholesky_factor(&self) -> &DMatrix<f64> {
        &self.factor
    }

    /// Content hash of the Gram matrix.
    pub fn id(&self) -> u64 {
        self.id
    }

    /// True when the Gram matrix is exactly the identity.
    pub fn is_identity(&self) -> bool {
        self.identity
    }

    /// `G(e_{i+1}, e_{j+1})` for 0-based indices.
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.gram[(i, j)]
    }

    /// `G(v, w)` for coordinate vectors.
    pub fn dot(&self, v: &[f64], w: &[f64]) -> f64 {
        let mut s = 0.0;
        for (i, vi) in v.iter().enumerate().take(self.dim) {
            for (j, wj) in w.iter().enumerate().take(self.dim) {
                s += vi * self.gram[(i, j)] * wj;
            }
        }
        s
    }

    /// Scalar product of canonical blades: the determinant of the Gram
    /// submatrix on their index sets, zero across grades.
    pub fn blade_scalar_product(&self, a: BladeMask, b: BladeMask) -> f64 {
        let k = a.grade();
        if k != b.grade() {
            return 0.0;
        }
        let rows: Vec<u32> = bits(a.0).collect();
        let cols: Vec<u32> = bits(b.0).collect();
        let mut sub = Vec::with_capacity(k * k);
        for &r in &rows {
            for &c in &cols {
                sub.push(self.gram[(r as usize, c as usize)]);
            }
        }
        small_det(&sub, k)
    }

    /// Per-grade tables of blade scalar products, indexed by position within
    /// the grade.
    fn blade_gram(&self) -> &[Vec<f64>] {
        self.blade_gram.get_or_init(|| {
            let index = BladeIndex::new(self.dim);
            (0..=self.dim)
                .map(|k| {
                    let blades = index.grade(k);
                    let mut table = Vec::with_capacity(blades.len() * blades.len());
                    for &a in blades {
                        for &b in blades {
                            table.push(self.blade_scalar_product(a, b));
                        }
                    }
                    table
                })
                .collect()
        })
    }

    /// Outermorphism of `Lᵀ`: the coordinates of `x` in an orthonormal frame
    /// for this metric, where the scalar product becomes the plain component
    /// sum.
    pub fn to_orthonormal_frame(&self, x: &Multivector) -> Result<Multivector> {
        if x.dim() != self.dim {
            return Err(Error::DimMismatch {
                left: x.dim(),
                right: self.dim,
            });
        }
        let lt = self.factor.transpose();
        let columns: Vec<Multivector> = (0..self.dim)
            .map(|i| Multivector::vector(lt.column(i).as_slice()))
            .collect::<Result<_>>()?;
        let images = blade_images(&columns)?;
        let mut out = Multivector::zero(self.dim)?;
        for (mask, &c) in x.coeffs().iter().enumerate() {
            if c != 0.0 {
                out = &out + &images[mask].scale(c);
            }
        }
        Ok(out)
    }
}

/// `images[mask]` = wedge of `vectors[i]` over the bits `i` of `mask`, in
/// ascending order.
fn blade_images(vectors: &[Multivector]) -> Result<Vec<Multivector>> {
    let dim = vectors.len();
    let mut images = Vec::with_capacity(1 << dim);
    images.push(Multivector::scalar(dim, 1.0)?);
    for mask in 1usize..(1 << dim) {
        let top = usize::BITS - 1 - mask.leading_zeros();
        let rest = mask & !(1 << top);
        let next = wedge(&images[rest], &vectors[top as usize])?;
        images.push(next);
    }
    Ok(images)
}

/// The euclidean scalar product of multivectors: grades are orthogonal and
/// blades pair through Gram-submatrix determinants.
pub fn scalar_product(x: &Multivector, y: &Multivector, g: &EuclideanMetric) -> Result<f64> {
    x.same_dim(y)?;
    if x.dim() != g.dim() {
        return Err(Error::DimMismatch {
            left: x.dim(),
            right: g.dim(),
        });
    }
    let (xs, ys) = (x.coeffs(), y.coeffs());
    if g.is_identity() {
        return Ok(xs.iter().zip(ys).map(|(a, b)| a * b).sum());
    }
    let index = BladeIndex::new(g.dim());
    let tables = g.blade_gram();
    let mut total = 0.0;
    for (k, table) in tables.iter().enumerate() {
        let blades = index.grade(k);
        let width = blades.len();
        for (i, a) in blades.iter().enumerate() {
            let xa = xs[a.index()];
            if xa == 0.0 {
                continue;
            }
            let row = &table[i * width..(i + 1) * width];
            let mut s = 0.0;
            for (j, b) in blades.iter().enumerate() {
                s += row[j] * ys[b.index()];
            }
            total += xa * s;
        }
    }
    Ok(total)
}

/// A basis of the coordinate space: `vectors` holds `b_k` as column `k`,
/// `dual_forms` holds the dual covector `β^k` as row `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    vectors: DMatrix<f64>,
    dual_forms: DMatrix<f64>,
}

impl Basis {
    /// Basis from its vectors, each given by its coordinates.
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Basis> {
        let dim = columns.len();
        crate::multivector::check_dim(dim)?;
        if columns.iter().any(|c| c.len() != dim) {
            return Err(Error::NotSquare { dim });
        }
        let flat: Vec<f64> = columns.iter().flatten().copied().collect();
        Basis::from_matrix(DMatrix::from_column_slice(dim, dim, &flat))
    }

    pub fn from_matrix(vectors: DMatrix<f64>) -> Result<Basis> {
        let dim = vectors.nrows();
        if vectors.ncols() != dim {
            return Err(Error::NotSquare { dim });
        }
        if let Some(i) = vectors.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        let dual_forms = vectors.clone().try_inverse().ok_or(Error::SingularBasis)?;
        let residual = &dual_forms * &vectors - DMatrix::<f64>::identity(dim, dim);
        if residual.amax() > DUALITY_TOLERANCE {
            return Err(Error::SingularBasis);
        }
        Ok(Basis {
            vectors,
            dual_forms,
        })
    }

    pub fn standard(dim: usize) -> Result<Basis> {
        crate::multivector::check_dim(dim)?;
        Basis::from_matrix(DMatrix::identity(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn vectors(&self) -> &DMatrix<f64> {
        &self.vectors
    }

    pub fn dual_forms(&self) -> &DMatrix<f64> {
        &self.dual_forms
    }

    /// Coordinates of `b_k` (0-based `k`).
    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k).iter().copied().collect()
    }

    /// Components of `β^k` (0-based `k`).
    pub fn dual_form(&self, k: usize) -> Vec<f64> {
        self.dual_forms.row(k).iter().copied().collect()
    }

    fn as_multivectors(&self) -> Result<Vec<Multivector>> {
        (0..self.dim())
            .map(|k| Multivector::vector(&self.vector(k)))
            .collect()
    }
}

/// The fiducial metric induced by a basis, `G(v, w) = Σ_k β^k(v) β^k(w)`.
/// The basis is orthonormal under it.
pub fn b_metric(basis: &Basis) -> Result<EuclideanMetric> {
    let duals = basis.dual_forms();
    EuclideanMetric::from_matrix(duals.transpose() * duals)
}

/// The unique basis `{e^k}` with `G(e_k, e^l) = δ_k^l`, computed from the
/// inverse of the basis Gram matrix `[G(e_j, e_k)]`.
pub fn reciprocal_basis(basis: &Basis, g: &EuclideanMetric) -> Result<Basis> {
    if basis.dim() != g.dim() {
        return Err(Error::DimMismatch {
            left: basis.dim(),
            right: g.dim(),
        });
    }
    let b = basis.vectors();
    let basis_gram = b.transpose() * g.gram() * b;
    let inv = basis_gram.try_inverse().ok_or(Error::SingularBasis)?;
    Basis::from_matrix(b * inv)
}

/// Which of the two reciprocal expansion formulas to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expansion {
    /// `X = X·1 + Σ_k (1/k!) [X·(e^{j1}∧…∧e^{jk})] e_{j1}∧…∧e_{jk}`:
    /// contravariant components on the given basis.
    Contravariant,
    /// `X = X·1 + Σ_k (1/k!) [X·(e_{j1}∧…∧e_{jk})] e^{j1}∧…∧e^{jk}`:
    /// covariant components on the reciprocal basis.
    Covariant,
}

/// Components of `x` against every blade of `coefficient_basis`, paired with
/// the corresponding blade of `expansion_basis`. Index tuples are summed over
/// ascending sets; each set stands for its `k!` orderings, which cancels the
/// `1/k!`.
fn expansion_terms(
    x: &Multivector,
    coefficient_basis: &Basis,
    expansion_basis: &Basis,
    g: &EuclideanMetric,
) -> Result<Vec<(f64, Multivector)>> {
    let coeff_blades = blade_images(&coefficient_basis.as_multivectors()?)?;
    let expand_blades = blade_images(&expansion_basis.as_multivectors()?)?;
    coeff_blades
        .iter()
        .zip(expand_blades)
        .map(|(c, e)| Ok((scalar_product(x, c, g)?, e)))
        .collect()
}

/// Reconstructs `x` from its components relative to `basis` and its
/// reciprocal.
pub fn expand_in_basis(
    x: &Multivector,
    basis: &Basis,
    g: &EuclideanMetric,
    formula: Expansion,
) -> Result<Multivector> {
    if x.dim() != g.dim() {
        return Err(Error::DimMismatch {
            left: x.dim(),
            right: g.dim(),
        });
    }
    let reciprocal = reciprocal_basis(basis, g)?;
    let (coefficient_basis, expansion_basis) = match formula {
        Expansion::Contravariant => (&reciprocal, basis),
        Expansion::Covariant => (basis, &reciprocal),
    };
    let mut out = Multivector::zero(x.dim())?;
    for (c, blade) in expansion_terms(x, coefficient_basis, expansion_basis, g)? {
        if c != 0.0 {
            out = &out + &blade.scale(c);
        }
    }
    Ok(out)
}

/// `X·(e^{j1}∧…∧e^{jk})` for ascending `j`: the contravariant components of
/// `x` on `basis`, indexed by the blade mask of the index set.
pub fn contravariant_components(
    x: &Multivector,
    basis: &Basis,
    g: &EuclideanMetric,
) -> Result<Vec<f64>> {
    let reciprocal = reciprocal_basis(basis, g)?;
    let blades = blade_images(&reciprocal.as_multivectors()?)?;
    blades.iter().map(|b| scalar_product(x, b, g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(dim: usize, terms: &[(u32, f64)]) -> Multivector {
        let t: Vec<_> = terms.iter().map(|&(m, c)| (BladeMask(m), c)).collect();
        Multivector::from_terms(dim, &t).unwrap()
    }

    #[test]
    fn gram_validation() {
        let id = EuclideanMetric::identity(3).unwrap();
        assert!(id.is_identity());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(id.entry(i, j), if i == j { 1.0 } else { 0.0 });
            }
        }
        let g = EuclideanMetric::from_gram(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        assert!(!g.is_identity());
        let l = g.cholesky_factor();
        assert!((l * l.transpose() - g.gram()).amax() < 1e-15);

        let err = EuclideanMetric::from_gram(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap_err();
        assert!(matches!(err, Error::NotPositiveDefinite { pivot: 2, .. }));
        assert_eq!(
            EuclideanMetric::from_gram(&[vec![1.0, 0.5], vec![0.0, 1.0]]).unwrap_err(),
            Error::Asymmetric { row: 1, col: 2 }
        );
        assert!(matches!(
            EuclideanMetric::from_gram(&[vec![0.0, 0.0], vec![0.0, 1.0]]).unwrap_err(),
            Error::NotPositiveDefinite { pivot: 1, .. }
        ));
        assert_eq!(
            EuclideanMetric::from_gram(&[vec![1.0, 0.0], vec![0.0]]).unwrap_err(),
            Error::NotSquare { dim: 2 }
        );
    }

    #[test]
    fn id_is_content_hash() {
        let a = EuclideanMetric::from_gram(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let b = EuclideanMetric::from_gram(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        assert_eq!(a.id(), b.id());
        assert_ne!(a.id(), EuclideanMetric::identity(2).unwrap().id());
    }

    #[test]
    fn small_det_matches_lu() {
        let m: Vec<f64> = (0..16)
            .map(|i| ((i * 7 % 5) as f64) - 1.5 + if i % 5 == 0 { 3.0 } else { 0.0 })
            .collect();
        let lu = DMatrix::from_row_slice(4, 4, &m).lu().determinant();
        assert!((small_det(&m, 4) - lu).abs() < 1e-12);
        let m3 = [2.0, -1.0, 0.5, 1.0, 3.0, 0.0, -2.0, 1.0, 1.0];
        let lu3 = DMatrix::from_row_slice(3, 3, &m3).lu().determinant();
        assert!((small_det(&m3, 3) - lu3).abs() < 1e-12);
    }

    #[test]
    fn scalar_product_examples() {
        let id = EuclideanMetric::identity(3).unwrap();
        let e12 = mv(3, &[(3, 1.0)]);
        assert_eq!(scalar_product(&e12, &e12, &id).unwrap(), 1.0);
        assert_eq!(
            scalar_product(&mv(3, &[(1, 1.0)]), &mv(3, &[(2, 1.0)]), &id).unwrap(),
            0.0
        );

        let g = EuclideanMetric::from_gram(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let e12 = mv(2, &[(3, 1.0)]);
        assert_eq!(scalar_product(&e12, &e12, &g).unwrap(), 3.0);
        assert_eq!(
            scalar_product(&mv(2, &[(1, 1.0)]), &mv(2, &[(2, 1.0)]), &g).unwrap(),
            1.0
        );
        let alpha = mv(2, &[(0, 3.0)]);
        let beta = mv(2, &[(0, -2.0)]);
        assert_eq!(scalar_product(&alpha, &beta, &g).unwrap(), -6.0);
        // Grades never mix.
        assert_eq!(
            scalar_product(&alpha, &mv(2, &[(1, 1.0)]), &g).unwrap(),
            0.0
        );
        assert!(scalar_product(&alpha, &mv(3, &[(0, 1.0)]), &g).is_err());
    }

    #[test]
    fn b_metric_examples() {
        let std = Basis::standard(3).unwrap();
        assert!(b_metric(&std).unwrap().is_identity());

        let b = Basis::from_columns(&[vec![2.0]]).unwrap();
        assert_eq!(b_metric(&b).unwrap().gram()[(0, 0)], 0.25);
    }

    #[test]
    fn singular_basis_rejected() {
        assert_eq!(
            Basis::from_columns(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap_err(),
            Error::SingularBasis
        );
    }

    #[test]
    fn reciprocal_examples() {
        let std = Basis::standard(2).unwrap();
        let id = EuclideanMetric::identity(2).unwrap();
        assert_eq!(reciprocal_basis(&std, &id).unwrap(), std);

        let g = EuclideanMetric::from_gram(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let r = reciprocal_basis(&std, &g).unwrap();
        let expect = [[2.0 / 3.0, -1.0 / 3.0], [-1.0 / 3.0, 2.0 / 3.0]];
        for (k, want) in expect.iter().enumerate() {
            for (got, want) in r.vector(k).iter().zip(want) {
                assert!((got - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn expansion_orthonormal_case() {
        let x = mv(3, &[(1, 1.0), (3, 2.0)]);
        let std = Basis::standard(3).unwrap();
        let id = EuclideanMetric::identity(3).unwrap();
        for f in [Expansion::Contravariant, Expansion::Covariant] {
            assert_eq!(expand_in_basis(&x, &std, &id, f).unwrap(), x);
        }
        assert_eq!(contravariant_components(&x, &std, &id).unwrap(), x.coeffs());
    }

    #[test]
    fn orthonormal_frame_preserves_scalar_product() {
        let g = EuclideanMetric::from_gram(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let e12 = mv(2, &[(3, 1.0)]);
        let f = g.to_orthonormal_frame(&e12).unwrap();
        let id = EuclideanMetric::identity(2).unwrap();
        assert!((scalar_product(&f, &f, &id).unwrap() - 3.0).abs() < 1e-14);
    }
}
