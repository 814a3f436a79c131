//! The euclidean Clifford (geometric) product.

use std::collections::HashMap;

use crate::blade::BladeMask;
use crate::cayley::{
    self, blade_product_recursive, orthonormal_blade_product, CayleyTable, TABLE_MAX_DIM,
};
use crate::exterior::basis_vector_wedge_into;
use crate::interior::left_vector_contract_into;
use crate::kernel::{self, Strategy};
use crate::metric::EuclideanMetric;
use crate::{Error, Multivector, Result};

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

/// `X Y` under `g`.
///
/// The identity metric uses the signed-XOR blade rule directly. Other metrics
/// go through the shared Cayley table up to [`TABLE_MAX_DIM`], and through
/// memoized blade-by-multivector recursion above it.
pub fn geometric_product(
    x: &Multivector,
    y: &Multivector,
    g: &EuclideanMetric,
) -> Result<Multivector> {
    check(x, y, g)?;
    let strategy = Strategy::auto(x.dim());
    if g.is_identity() {
        return Ok(orthonormal_product(x, y, strategy));
    }
    if g.dim() <= TABLE_MAX_DIM {
        let table = cayley::table_for(g)?;
        return Ok(table_product(x, y, &table, strategy));
    }
    Ok(streamed_product(x, y, g))
}

/// `X Y` using an explicit table.
pub fn geometric_product_table(
    x: &Multivector,
    y: &Multivector,
    table: &CayleyTable,
    strategy: Strategy,
) -> Result<Multivector> {
    x.same_dim(y)?;
    if x.dim() != table.dim() {
        return Err(Error::DimMismatch {
            left: x.dim(),
            right: table.dim(),
        });
    }
    Ok(table_product(x, y, table, strategy))
}

/// `X Y` with every blade product evaluated by recursion, no table. Same
/// arithmetic as the table path, entry for entry.
pub fn geometric_product_recursive(
    x: &Multivector,
    y: &Multivector,
    g: &EuclideanMetric,
) -> Result<Multivector> {
    check(x, y, g)?;
    let ys = y.coeffs();
    let out = kernel::accumulate(x.coeffs(), ys.len(), Strategy::Sequential, |a, xa, buf| {
        for (b, &yb) in ys.iter().enumerate() {
            if yb == 0.0 {
                continue;
            }
            let xy = xa * yb;
            for (m, c) in blade_product_recursive(BladeMask(a as u32), BladeMask(b as u32), g) {
                buf[m as usize] += xy * c;
            }
        }
    });
    Ok(Multivector::from_raw(x.dim(), out))
}

/// `X Y` under the identity metric of `x.dim()`.
pub fn geometric_product_orthonormal(
    x: &Multivector,
    y: &Multivector,
    strategy: Strategy,
) -> Result<Multivector> {
    x.same_dim(y)?;
    Ok(orthonormal_product(x, y, strategy))
}

/// `X Y` by recursion on the left blade applied to the whole of `Y`, with
/// `e_a Y` memoized per call. Needs no table, so it covers any dimension.
pub fn geometric_product_streamed(
    x: &Multivector,
    y: &Multivector,
    g: &EuclideanMetric,
) -> Result<Multivector> {
    check(x, y, g)?;
    Ok(streamed_product(x, y, g))
}

fn orthonormal_product(x: &Multivector, y: &Multivector, strategy: Strategy) -> Multivector {
    let ys = y.coeffs();
    let out = kernel::accumulate(x.coeffs(), ys.len(), strategy, |a, xa, buf| {
        for (b, &yb) in ys.iter().enumerate() {
            if yb == 0.0 {
                continue;
            }
            let (m, s) = orthonormal_blade_product(BladeMask(a as u32), BladeMask(b as u32));
            buf[m.index()] += xa * yb * s;
        }
    });
    Multivector::from_raw(x.dim(), out)
}

fn table_product(
    x: &Multivector,
    y: &Multivector,
    table: &CayleyTable,
    strategy: Strategy,
) -> Multivector {
    let ys = y.coeffs();
    let out = kernel::accumulate(x.coeffs(), ys.len(), strategy, |a, xa, buf| {
        for (b, &yb) in ys.iter().enumerate() {
            if yb == 0.0 {
                continue;
            }
            let xy = xa * yb;
            for &(m, c) in table.entry(BladeMask(a as u32), BladeMask(b as u32)) {
                buf[m as usize] += xy * c;
            }
        }
    });
    Multivector::from_raw(x.dim(), out)
}

fn streamed_product(x: &Multivector, y: &Multivector, g: &EuclideanMetric) -> Multivector {
    let dim = x.dim();
    let rows: Vec<Vec<f64>> = (0..dim)
        .map(|i| (0..dim).map(|j| g.entry(i, j)).collect())
        .collect();
    let mut memo: HashMap<u32, Vec<f64>> = HashMap::new();
    memo.insert(0, y.coeffs().to_vec());

    fn left_blade_times(a: u32, rows: &[Vec<f64>], memo: &mut HashMap<u32, Vec<f64>>) -> Vec<f64> {
        if let Some(v) = memo.get(&a) {
            return v.clone();
        }
        let i = a.trailing_zeros();
        let rest = a ^ (1 << i);
        let inner = left_blade_times(rest, rows, memo);
        let mut out = vec![0.0; inner.len()];
        left_vector_contract_into(&rows[i as usize], &inner, 1.0, &mut out);
        basis_vector_wedge_into(i, &inner, 1.0, &mut out);
        let mut sign = 1.0;
        for j in crate::blade::bits(rest) {
            let k = sign * rows[i as usize][j as usize];
            sign = -sign;
            if k != 0.0 {
                let sub = left_blade_times(rest ^ (1 << j), rows, memo);
                for (o, s) in out.iter_mut().zip(&sub) {
                    *o -= k * s;
                }
            }
        }
        memo.insert(a, out.clone());
        out
    }

    let mut acc = vec![0.0; 1 << dim];
    for (a, &xa) in x.coeffs().iter().enumerate() {
        if xa == 0.0 {
            continue;
        }
        let row = left_blade_times(a as u32, &rows, &mut memo);
        for (o, r) in acc.iter_mut().zip(&row) {
            *o += xa * r;
        }
    }
    Multivector::from_raw(dim, acc)
}

/// `⟨rev(X) Y⟩_0`, the scalar product read off the Clifford product.
pub fn scalar_part_product(x: &Multivector, y: &Multivector, g: &EuclideanMetric) -> Result<f64> {
    Ok(geometric_product(&x.reversion(), y, g)?.scalar_part())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(dim: usize, terms: &[(u32, f64)]) -> Multivector {
        let t: Vec<_> = terms.iter().map(|&(m, c)| (BladeMask(m), c)).collect();
        Multivector::from_terms(dim, &t).unwrap()
    }

    #[test]
    fn examples() {
        let g = EuclideanMetric::identity(3).unwrap();
        let a = mv(3, &[(0, 1.0), (1, 1.0)]);
        let b = mv(3, &[(0, 1.0), (1, -1.0)]);
        assert!(geometric_product(&a, &b, &g).unwrap().is_zero());

        let e = |i: u32| mv(3, &[(1 << i, 1.0)]);
        let left =
            geometric_product(&e(0), &geometric_product(&e(1), &e(2), &g).unwrap(), &g).unwrap();
        let right =
            geometric_product(&geometric_product(&e(0), &e(1), &g).unwrap(), &e(2), &g).unwrap();
        assert_eq!(left, mv(3, &[(7, 1.0)]));
        assert_eq!(right, left);

        let g2 = EuclideanMetric::from_gram(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let e1 = mv(2, &[(1, 1.0)]);
        assert_eq!(
            geometric_product(&e1, &e1, &g2).unwrap(),
            mv(2, &[(0, 2.0)])
        );
    }

    #[test]
    fn scalar_part_examples() {
        let g = EuclideanMetric::identity(3).unwrap();
        let e12 = mv(3, &[(3, 1.0)]);
        assert_eq!(scalar_part_product(&e12, &e12, &g).unwrap(), 1.0);
        let alpha = mv(3, &[(0, 3.0)]);
        let beta = mv(3, &[(0, -0.5)]);
        assert_eq!(scalar_part_product(&alpha, &beta, &g).unwrap(), -1.5);
    }

    #[test]
    fn streamed_matches_table() {
        let g = EuclideanMetric::from_gram(&[
            vec![1.5, 0.2, -0.3],
            vec![0.2, 1.0, 0.1],
            vec![-0.3, 0.1, 2.0],
        ])
        .unwrap();
        let x =
            Multivector::from_coeffs(3, (0..8).map(|i| i as f64 * 0.3 - 1.0).collect()).unwrap();
        let y =
            Multivector::from_coeffs(3, (0..8).map(|i| 1.0 - i as f64 * 0.2).collect()).unwrap();
        let table = geometric_product(&x, &y, &g).unwrap();
        assert!(geometric_product_streamed(&x, &y, &g)
            .unwrap()
            .approx_eq(&table, 1e-12));
        assert_eq!(geometric_product_recursive(&x, &y, &g).unwrap(), table);
    }

    #[test]
    fn dim_mismatch() {
        let g = EuclideanMetric::identity(2).unwrap();
        let x = mv(3, &[(1, 1.0)]);
        assert!(geometric_product(&x, &x, &g).is_err());
    }
}
