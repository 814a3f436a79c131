//! Dense multivectors over an n-dimensional real space.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use crate::blade::{canonical_reorder, BladeIndex, BladeMask};
use crate::{Error, Result, MAX_DIM};

/// Default relative tolerance for [`Multivector::approx_eq`].
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// A grade index `k` with `0 <= k <= dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grade(usize);

impl Grade {
    pub fn new(k: usize, dim: usize) -> Result<Grade> {
        if k > dim {
            return Err(Error::GradeOutOfRange { grade: k, dim });
        }
        Ok(Grade(k))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// Element of the exterior algebra: `2^dim` coefficients, one per canonical
/// blade, indexed by blade mask.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    dim: usize,
    coeffs: Vec<f64>,
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::DimOutOfRange(dim));
    }
    Ok(())
}

#[inline]
pub(crate) fn grade_involution_sign(mask: u32) -> f64 {
    if mask.count_ones() & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[inline]
pub(crate) fn reversion_sign(mask: u32) -> f64 {
    // (-1)^(k(k-1)/2) is + for k = 0,1 mod 4 and - for k = 2,3 mod 4.
    if mask.count_ones() & 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl Multivector {
    pub fn zero(dim: usize) -> Result<Multivector> {
        check_dim(dim)?;
        Ok(Multivector {
            dim,
            coeffs: vec![0.0; 1 << dim],
        })
    }

    pub fn scalar(dim: usize, value: f64) -> Result<Multivector> {
        let mut mv = Multivector::zero(dim)?;
        mv.coeffs[0] = value;
        mv.check_finite()?;
        Ok(mv)
    }

    /// Grade-1 multivector from its `dim` coordinates.
    pub fn vector(components: &[f64]) -> Result<Multivector> {
        let mut mv = Multivector::zero(components.len())?;
        for (i, &c) in components.iter().enumerate() {
            mv.coeffs[1 << i] = c;
        }
        mv.check_finite()?;
        Ok(mv)
    }

    pub fn blade(dim: usize, mask: BladeMask) -> Result<Multivector> {
        let mut mv = Multivector::zero(dim)?;
        if mask.index() >= mv.coeffs.len() {
            let index = 32 - mask.0.leading_zeros() as usize;
            return Err(Error::IndexOutOfRange { index, dim });
        }
        mv.coeffs[mask.index()] = 1.0;
        Ok(mv)
    }

    /// `e_{i1} ∧ … ∧ e_{ik}` for 1-based indices in any order.
    pub fn wedge_of_indices(dim: usize, indices: &[usize]) -> Result<Multivector> {
        let (mask, sign) = canonical_reorder(indices, dim)?;
        let mut mv = Multivector::zero(dim)?;
        mv.coeffs[mask.index()] = sign as f64;
        Ok(mv)
    }

    /// Unit top-grade blade `e_1 ∧ … ∧ e_dim`.
    pub fn pseudoscalar(dim: usize) -> Result<Multivector> {
        check_dim(dim)?;
        Multivector::blade(dim, BladeMask::pseudoscalar(dim))
    }

    pub fn from_coeffs(dim: usize, coeffs: Vec<f64>) -> Result<Multivector> {
        check_dim(dim)?;
        if coeffs.len() != 1 << dim {
            return Err(Error::CoefficientCount {
                expected: 1 << dim,
                got: coeffs.len(),
            });
        }
        let mv = Multivector { dim, coeffs };
        mv.check_finite()?;
        Ok(mv)
    }

    pub fn from_terms(dim: usize, terms: &[(BladeMask, f64)]) -> Result<Multivector> {
        let mut mv = Multivector::zero(dim)?;
        for &(mask, c) in terms {
            let slot = mv
                .coeffs
                .get_mut(mask.index())
                .ok_or(Error::IndexOutOfRange {
                    index: 32 - mask.0.leading_zeros() as usize,
                    dim,
                })?;
            *slot += c;
        }
        mv.check_finite()?;
        Ok(mv)
    }

    /// Crate-internal constructor for kernels whose output length is known.
    pub(crate) fn from_raw(dim: usize, coeffs: Vec<f64>) -> Multivector {
        debug_assert_eq!(coeffs.len(), 1 << dim);
        Multivector { dim, coeffs }
    }

    pub fn check_finite(&self) -> Result<()> {
        match self.coeffs.iter().position(|c| !c.is_finite()) {
            Some(i) => Err(Error::NonFinite(i)),
            None => Ok(()),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: BladeMask) -> f64 {
        self.coeffs[mask.index()]
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    /// Nonzero terms in canonical (grade, mask) order.
    pub fn terms(&self) -> Vec<(BladeMask, f64)> {
        BladeIndex::new(self.dim)
            .canonical_order()
            .map(|m| (m, self.coeffs[m.index()]))
            .filter(|&(_, c)| c != 0.0)
            .collect()
    }

    /// The grade of a homogeneous nonzero multivector, `None` if mixed or zero.
    pub fn homogeneous_grade(&self) -> Option<usize> {
        let mut grade = None;
        for (m, &c) in self.coeffs.iter().enumerate() {
            if c != 0.0 {
                let g = m.count_ones() as usize;
                match grade {
                    None => grade = Some(g),
                    Some(h) if h != g => return None,
                    _ => {}
                }
            }
        }
        grade
    }

    pub(crate) fn same_dim(&self, other: &Multivector) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    fn map_signs(&self, sign: impl Fn(u32) -> f64) -> Multivector {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, &c)| sign(m as u32) * c)
            .collect();
        Multivector::from_raw(self.dim, coeffs)
    }

    /// The k-part: keeps the grade-k coefficients only.
    pub fn k_part(&self, k: usize) -> Result<Multivector> {
        Grade::new(k, self.dim)?;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, &c)| if m.count_ones() as usize == k { c } else { 0.0 })
            .collect();
        Ok(Multivector::from_raw(self.dim, coeffs))
    }

    /// Main automorphism: grade k scaled by `(-1)^k`.
    pub fn grade_involution(&self) -> Multivector {
        self.map_signs(grade_involution_sign)
    }

    /// Reversion: grade k scaled by `(-1)^(k(k-1)/2)`.
    pub fn reversion(&self) -> Multivector {
        self.map_signs(reversion_sign)
    }

    /// Conjugation: reversion composed with the grade involution.
    pub fn conjugate(&self) -> Multivector {
        self.map_signs(|m| grade_involution_sign(m) * reversion_sign(m))
    }

    pub fn checked_add(&self, other: &Multivector) -> Result<Multivector> {
        self.same_dim(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Multivector::from_raw(self.dim, coeffs))
    }

    pub fn checked_sub(&self, other: &Multivector) -> Result<Multivector> {
        self.same_dim(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Multivector::from_raw(self.dim, coeffs))
    }

    pub fn scale(&self, alpha: f64) -> Multivector {
        Multivector::from_raw(self.dim, self.coeffs.iter().map(|c| alpha * c).collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, c| acc.max(c.abs()))
    }

    /// Equality within `tol * (1 + max(|self|, |other|))` on the max-abs
    /// coefficient difference. Different dimensions never compare equal.
    pub fn approx_eq(&self, other: &Multivector, tol: f64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let diff = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()));
        diff <= tol * (1.0 + self.max_abs().max(other.max_abs()))
    }
}

impl Index<BladeMask> for Multivector {
    type Output = f64;

    fn index(&self, mask: BladeMask) -> &f64 {
        &self.coeffs[mask.index()]
    }
}

/// Panics on dimension mismatch; use [`Multivector::checked_add`] otherwise.
impl Add for &Multivector {
    type Output = Multivector;

    fn add(self, rhs: &Multivector) -> Multivector {
        self.checked_add(rhs)
            .expect("multivector dimensions differ")
    }
}

/// Panics on dimension mismatch; use [`Multivector::checked_sub`] otherwise.
impl Sub for &Multivector {
    type Output = Multivector;

    fn sub(self, rhs: &Multivector) -> Multivector {
        self.checked_sub(rhs)
            .expect("multivector dimensions differ")
    }
}

impl Neg for &Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

/// Canonical rendering: terms in (grade, mask) order, e.g. `1 - 2 e1 + 3 e12`.
/// Unit coefficients are elided on blades, zero renders as `0`.
impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (mask, c)) in terms.into_iter().enumerate() {
            let negative = c.is_sign_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mask == BladeMask::SCALAR {
                write!(f, "{magnitude}")?;
            } else if magnitude == 1.0 {
                write!(f, "{mask}")?;
            } else {
                write!(f, "{magnitude} {mask}")?;
            }
        }
        Ok(())
    }
}
