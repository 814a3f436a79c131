//! The exterior (wedge) product.

use crate::blade::crossings;
use crate::kernel::{self, Strategy};
use crate::{Multivector, Result};

/// `X ∧ Y`, the bilinear extension of the blade rule: blades sharing a vector
/// give zero, otherwise `e_a ∧ e_b = ± e_{a|b}` with the merge parity sign.
pub fn wedge(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    wedge_with(x, y, Strategy::auto(x.dim()))
}

pub fn wedge_with(x: &Multivector, y: &Multivector, strategy: Strategy) -> Result<Multivector> {
    x.same_dim(y)?;
    let ys = y.coeffs();
    let len = ys.len();
    let out = kernel::accumulate(x.coeffs(), len, strategy, |a, xa, buf| {
        let a = a as u32;
        for (b, &yb) in ys.iter().enumerate() {
            let b = b as u32;
            if yb == 0.0 || a & b != 0 {
                continue;
            }
            let s = if crossings(a, b) & 1 == 0 { 1.0 } else { -1.0 };
            buf[(a | b) as usize] += xa * yb * s;
        }
    });
    Ok(Multivector::from_raw(x.dim(), out))
}

/// Wedge of a sequence of multivectors, left to right. An empty sequence is
/// the scalar 1.
pub fn wedge_all(dim: usize, factors: &[Multivector]) -> Result<Multivector> {
    let mut acc = Multivector::scalar(dim, 1.0)?;
    for f in factors {
        acc = wedge(&acc, f)?;
    }
    Ok(acc)
}

/// `e_i ∧ M` for a single basis vector, written into `out`.
#[inline]
pub(crate) fn basis_vector_wedge_into(i: u32, m: &[f64], scale: f64, out: &mut [f64]) {
    let bit = 1u32 << i;
    let below = bit - 1;
    for (mask, &c) in m.iter().enumerate() {
        let mask = mask as u32;
        if c == 0.0 || mask & bit != 0 {
            continue;
        }
        let s = if (mask & below).count_ones() & 1 == 0 {
            1.0
        } else {
            -1.0
        };
        out[(mask | bit) as usize] += scale * c * s;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::BladeMask;

    fn mv(dim: usize, terms: &[(u32, f64)]) -> Multivector {
        let t: Vec<_> = terms.iter().map(|&(m, c)| (BladeMask(m), c)).collect();
        Multivector::from_terms(dim, &t).unwrap()
    }

    #[test]
    fn examples() {
        let e1 = mv(3, &[(1, 1.0)]);
        let e2 = mv(3, &[(2, 1.0)]);
        assert_eq!(wedge(&e1, &e2).unwrap(), mv(3, &[(3, 1.0)]));
        assert_eq!(wedge(&e2, &e1).unwrap(), mv(3, &[(3, -1.0)]));
        let one_e1 = mv(3, &[(0, 1.0), (1, 1.0)]);
        assert_eq!(
            wedge(&one_e1, &one_e1).unwrap(),
            mv(3, &[(0, 1.0), (1, 2.0)])
        );
    }

    #[test]
    fn top_grade_truncation() {
        let e12 = mv(3, &[(3, 1.0)]);
        let e23 = mv(3, &[(6, 1.0)]);
        assert!(wedge(&e12, &e23).unwrap().is_zero());
    }

    #[test]
    fn dim_mismatch() {
        assert!(wedge(&mv(2, &[(1, 1.0)]), &mv(3, &[(1, 1.0)])).is_err());
    }

    #[test]
    fn vector_wedge_helper_matches_general_wedge() {
        let m = mv(4, &[(0, 0.5), (3, 2.0), (5, -1.0), (10, 3.0)]);
        for i in 0..4u32 {
            let mut out = vec![0.0; 16];
            basis_vector_wedge_into(i, m.coeffs(), 1.0, &mut out);
            let ei = Multivector::blade(4, BladeMask(1 << i)).unwrap();
            assert_eq!(out, wedge(&ei, &m).unwrap().coeffs());
        }
    }
}
