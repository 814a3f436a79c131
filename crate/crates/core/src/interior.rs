//! Left and right contractions.
//!
//! Both are built from the single-vector case. For a vector `v` and a
//! canonical blade `e_{j1} ∧ … ∧ e_{jk}`:
//!
//! ```text
//! v ⌟ e_J = Σ_r (-1)^(r-1)   G(v, e_{jr}) e_{J \ jr}
//! e_J ⌞ v = Σ_r (-1)^(k-r)   G(e_{jr}, v) e_{J \ jr}
//! ```
//!
//! and longer blades are peeled with `(X ∧ Y) ⌟ Z = X ⌟ (Y ⌟ Z)` and
//! `X ⌞ (Y ∧ Z) = (X ⌞ Y) ⌞ Z`.

use crate::blade::{bits, BladeMask};
use crate::kernel::{self, Strategy};
use crate::metric::EuclideanMetric;
use crate::{Error, Multivector, Result};

/// Adds `scale * (v ⌟ M)` to `out`, where `metric_row[j] = G(v, e_{j+1})`.
#[inline]
pub(crate) fn left_vector_contract_into(
    metric_row: &[f64],
    m: &[f64],
    scale: f64,
    out: &mut [f64],
) {
    for (mask, &c) in m.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let c = scale * c;
        let mut sign = 1.0;
        for j in bits(mask as u32) {
            let gj = metric_row[j as usize];
            if gj != 0.0 {
                out[mask ^ (1 << j)] += sign * gj * c;
            }
            sign = -sign;
        }
    }
}

/// Adds `scale * (M ⌞ v)` to `out`, where `metric_row[j] = G(e_{j+1}, v)`.
#[inline]
pub(crate) fn right_vector_contract_into(
    metric_row: &[f64],
    m: &[f64],
    scale: f64,
    out: &mut [f64],
) {
    for (mask, &c) in m.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let c = scale * c;
        // The last vector of the blade takes sign +1.
        let mut sign = if mask.count_ones() & 1 == 1 {
            1.0
        } else {
            -1.0
        };
        for j in bits(mask as u32) {
            let gj = metric_row[j as usize];
            if gj != 0.0 {
                out[mask ^ (1 << j)] += sign * gj * c;
            }
            sign = -sign;
        }
    }
}

fn metric_rows(g: &EuclideanMetric) -> Vec<Vec<f64>> {
    (0..g.dim())
        .map(|i| (0..g.dim()).map(|j| g.entry(i, j)).collect())
        .collect()
}

fn check(x: &Multivector, y: &Multivector, g: &EuclideanMetric) -> Result<()> {
    x.same_dim(y)?;
    if x.dim() != g.dim() {
        return Err(Error::DimMismatch {
            left: x.dim(),
            right: g.dim(),
        });
    }
    Ok(())
}

fn require_vector(v: &Multivector) -> Result<()> {
    match v.homogeneous_grade() {
        Some(1) => Ok(()),
        None if v.is_zero() => Ok(()),
        _ => Err(Error::NotAVector),
    }
}

/// `v ⌟ e_blade` for a grade-1 `v`.
pub fn vector_left_contract(
    v: &Multivector,
    blade: BladeMask,
    g: &EuclideanMetric,
) -> Result<Multivector> {
    require_vector(v)?;
    if v.dim() != g.dim() {
        return Err(Error::DimMismatch {
            left: v.dim(),
            right: g.dim(),
        });
    }
    let target = Multivector::blade(v.dim(), blade)?;
    let row: Vec<f64> = (0..g.dim())
        .map(|j| {
            (0..g.dim())
                .map(|i| v.coeffs()[1 << i] * g.entry(i, j))
                .sum()
        })
        .collect();
    let mut out = vec![0.0; 1 << v.dim()];
    left_vector_contract_into(&row, target.coeffs(), 1.0, &mut out);
    Ok(Multivector::from_raw(v.dim(), out))
}

/// Left contraction `X ⌟ Y`.
pub fn left_contraction(
    x: &Multivector,
    y: &Multivector,
    g: &EuclideanMetric,
) -> Result<Multivector> {
    left_contraction_with(x, y, g, Strategy::auto(x.dim()))
}

pub fn left_contraction_with(
    x: &Multivector,
    y: &Multivector,
    g: &EuclideanMetric,
    strategy: Strategy,
) -> Result<Multivector> {
    check(x, y, g)?;
    let rows = metric_rows(g);
    let len = y.coeffs().len();
    let out = kernel::accumulate(x.coeffs(), len, strategy, |a, xa, buf| {
        let mut current = y.coeffs().to_vec();
        let mut next = vec![0.0; len];
        // Innermost factor is the highest-index vector of the blade.
        let vectors: Vec<u32> = bits(a as u32).collect();
        for &j in vectors.iter().rev() {
            next.fill(0.0);
            left_vector_contract_into(&rows[j as usize], &current, 1.0, &mut next);
            std::mem::swap(&mut current, &mut next);
        }
        for (o, c) in buf.iter_mut().zip(&current) {
            *o += xa * c;
        }
    });
    Ok(Multivector::from_raw(x.dim(), out))
}

/// Right contraction `X ⌞ Y`.
pub fn right_contraction(
    x: &Multivector,
    y: &Multivector,
    g: &EuclideanMetric,
) -> Result<Multivector> {
    right_contraction_with(x, y, g, Strategy::auto(x.dim()))
}

pub fn right_contraction_with(
    x: &Multivector,
    y: &Multivector,
    g: &EuclideanMetric,
    strategy: Strategy,
) -> Result<Multivector> {
    check(x, y, g)?;
    let rows = metric_rows(g);
    let len = x.coeffs().len();
    let out = kernel::accumulate(y.coeffs(), len, strategy, |b, yb, buf| {
        let mut current = x.coeffs().to_vec();
        let mut next = vec![0.0; len];
        for j in bits(b as u32) {
            next.fill(0.0);
            right_vector_contract_into(&rows[j as usize], &current, 1.0, &mut next);
            std::mem::swap(&mut current, &mut next);
        }
        for (o, c) in buf.iter_mut().zip(&current) {
            *o += yb * c;
        }
    });
    Ok(Multivector::from_raw(x.dim(), out))
}
