//! Precomputed Clifford products of canonical blade pairs.
//!
//! Entries are built grade by grade of the left blade. For `e_a` with lowest
//! vector `e_i` and `e_a = e_i ∧ e_r`,
//!
//! ```text
//! e_a e_b = e_i (e_r e_b) - (e_i ⌟ e_r) e_b
//! e_i M   = e_i ⌟ M + e_i ∧ M
//! ```
//!
//! so every entry depends only on entries whose left blade has lower grade.

use std::borrow::Cow;
use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use crate::blade::{bits, BladeMask};
use crate::kernel::{self, Strategy};
use crate::metric::EuclideanMetric;
use crate::{Error, Result};

/// Largest dimension for which tables are built (4^8 blade pairs).
pub const TABLE_MAX_DIM: usize = 8;

/// Sparse multivector: `(mask, coefficient)` in ascending mask order with no
/// exact zeros.
pub type Terms = Vec<(u32, f64)>;

/// Product of canonical blades `e_a e_b`, with sub-products supplied by
/// `lookup(c)` = `e_c e_b` for blades `c` of lower grade than `a`.
pub(crate) fn compose_entry<'t>(
    a: u32,
    b: u32,
    g: &EuclideanMetric,
    mut lookup: impl FnMut(u32) -> Cow<'t, [(u32, f64)]>,
) -> Terms {
    if a == 0 {
        return vec![(b, 1.0)];
    }
    let dim = g.dim();
    let i = a.trailing_zeros();
    let bit = 1u32 << i;
    let rest = a ^ bit;
    let below = bit - 1;
    let mut acc = vec![0.0; 1 << dim];

    // e_i (e_r e_b)
    for &(m, c) in lookup(rest).iter() {
        let mut sign = 1.0;
        for j in bits(m) {
            let gij = g.entry(i as usize, j as usize);
            if gij != 0.0 {
                acc[(m ^ (1 << j)) as usize] += sign * gij * c;
            }
            sign = -sign;
        }
        if m & bit == 0 {
            let s = if (m & below).count_ones() & 1 == 0 {
                1.0
            } else {
                -1.0
            };
            acc[(m | bit) as usize] += s * c;
        }
    }

    // - (e_i ⌟ e_r) e_b
    let mut sign = 1.0;
    for j in bits(rest) {
        let k = sign * g.entry(i as usize, j as usize);
        sign = -sign;
        if k == 0.0 {
            continue;
        }
        for &(m, c) in lookup(rest ^ (1 << j)).iter() {
            acc[m as usize] -= k * c;
        }
    }

    acc.iter()
        .enumerate()
        .filter(|&(_, &c)| c != 0.0)
        .map(|(m, &c)| (m as u32, c))
        .collect()
}

/// `e_a e_b` by direct recursion, with no table.
pub fn blade_product_recursive(a: BladeMask, b: BladeMask, g: &EuclideanMetric) -> Terms {
    fn go(a: u32, b: u32, g: &EuclideanMetric) -> Terms {
        compose_entry(a, b, g, |c| Cow::Owned(go(c, b, g)))
    }
    go(a.0, b.0, g)
}

/// `e_a e_b` under the identity metric: a single signed blade `e_{a xor b}`.
/// The sign is the merge parity; shared vectors square to one.
#[inline]
pub fn orthonormal_blade_product(a: BladeMask, b: BladeMask) -> (BladeMask, f64) {
    let s = if crate::blade::crossings(a.0, b.0) & 1 == 0 {
        1.0
    } else {
        -1.0
    };
    (BladeMask(a.0 ^ b.0), s)
}

/// Clifford products of all canonical blade pairs for one (dimension,
/// metric), stored as sparse rows.
#[derive(Debug, Clone, PartialEq)]
pub struct CayleyTable {
    dim: usize,
    metric_id: u64,
    offsets: Vec<usize>,
    terms: Vec<(u32, f64)>,
}

static BUILDS: AtomicUsize = AtomicUsize::new(0);

impl CayleyTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric_id(&self) -> u64 {
        self.metric_id
    }

    /// Sparse terms of `e_a e_b`.
    #[inline]
    pub fn entry(&self, a: BladeMask, b: BladeMask) -> &[(u32, f64)] {
        let slot = (a.index() << self.dim) | b.index();
        &self.terms[self.offsets[slot]..self.offsets[slot + 1]]
    }

    /// Total stored nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Builds the table eagerly.
pub fn build_cayley_table(g: &EuclideanMetric) -> Result<CayleyTable> {
    build_cayley_table_with(g, Strategy::auto(g.dim()))
}

pub fn build_cayley_table_with(g: &EuclideanMetric, strategy: Strategy) -> Result<CayleyTable> {
    let dim = g.dim();
    if dim > TABLE_MAX_DIM {
        return Err(Error::TableTooLarge { dim });
    }
    BUILDS.fetch_add(1, Ordering::Relaxed);
    let size = 1usize << dim;
    let mut entries: Vec<Terms> = vec![Vec::new(); size * size];
    let mut by_grade: Vec<Vec<u32>> = vec![Vec::new(); dim + 1];
    for a in 0..size as u32 {
        by_grade[a.count_ones() as usize].push(a);
    }
    for level in &by_grade {
        let pairs: Vec<(u32, u32)> = level
            .iter()
            .flat_map(|&a| (0..size as u32).map(move |b| (a, b)))
            .collect();
        let built = {
            let entries = &entries;
            kernel::map_items(&pairs, strategy, |&(a, b)| {
                compose_entry(a, b, g, |c| {
                    Cow::Borrowed(&entries[((c as usize) << dim) | b as usize])
                })
            })
        };
        for (&(a, b), terms) in pairs.iter().zip(built) {
            entries[((a as usize) << dim) | b as usize] = terms;
        }
    }
    let mut offsets = Vec::with_capacity(size * size + 1);
    let mut terms = Vec::with_capacity(entries.iter().map(Vec::len).sum());
    offsets.push(0);
    for e in entries {
        terms.extend(e);
        offsets.push(terms.len());
    }
    Ok(CayleyTable {
        dim,
        metric_id: g.id(),
        offsets,
        terms,
    })
}

type CacheKey = (usize, Vec<u64>);
type Slot = Arc<OnceLock<Arc<CayleyTable>>>;

fn cache() -> &'static Mutex<HashMap<CacheKey, Slot>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Slot>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Shared table for `g`, built on first use. Concurrent first callers block on
/// a single build and all receive the same table.
pub fn table_for(g: &EuclideanMetric) -> Result<Arc<CayleyTable>> {
    if g.dim() > TABLE_MAX_DIM {
        return Err(Error::TableTooLarge { dim: g.dim() });
    }
    let key = (g.dim(), g.gram().iter().map(|v| v.to_bits()).collect());
    let slot = {
        let mut map = cache().lock().unwrap_or_else(|e| e.into_inner());
        Arc::clone(map.entry(key).or_default())
    };
    let table =
        slot.get_or_init(|| Arc::new(build_cayley_table(g).expect("dimension checked above")));
    Ok(Arc::clone(table))
}

/// Number of table builds performed by this process.
pub fn builds_performed() -> usize {
    BUILDS.load(Ordering::Relaxed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_metric_entries() {
        let g = EuclideanMetric::identity(3).unwrap();
        let t = build_cayley_table(&g).unwrap();
        assert_eq!(t.entry(BladeMask(1), BladeMask(1)), &[(0, 1.0)]);
        assert_eq!(t.entry(BladeMask(1), BladeMask(2)), &[(3, 1.0)]);
        assert_eq!(t.entry(BladeMask(3), BladeMask(3)), &[(0, -1.0)]);
        assert_eq!(t.entry(BladeMask(2), BladeMask(1)), &[(3, -1.0)]);
        for b in 0..8 {
            assert_eq!(t.entry(BladeMask(0), BladeMask(b)), &[(b, 1.0)]);
        }
    }

    #[test]
    fn general_metric_vector_square() {
        let g = EuclideanMetric::from_gram(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let t = build_cayley_table(&g).unwrap();
        assert_eq!(t.entry(BladeMask(1), BladeMask(1)), &[(0, 2.0)]);
        // e1 e2 = G(e1,e2) + e1∧e2
        assert_eq!(t.entry(BladeMask(1), BladeMask(2)), &[(0, 1.0), (3, 1.0)]);
        // e2 e1 = G(e2,e1) - e1∧e2
        assert_eq!(t.entry(BladeMask(2), BladeMask(1)), &[(0, 1.0), (3, -1.0)]);
    }

    #[test]
    fn table_matches_recursion_and_fast_path() {
        let g = EuclideanMetric::identity(4).unwrap();
        let t = build_cayley_table(&g).unwrap();
        for a in 0..16 {
            for b in 0..16 {
                let (a, b) = (BladeMask(a), BladeMask(b));
                assert_eq!(t.entry(a, b), blade_product_recursive(a, b, &g).as_slice());
                let (m, s) = orthonormal_blade_product(a, b);
                assert_eq!(t.entry(a, b), &[(m.0, s)]);
            }
        }
    }

    #[test]
    fn rebuild_is_bit_identical_across_strategies() {
        let g = EuclideanMetric::from_gram(&[
            vec![1.5, 0.2, -0.3],
            vec![0.2, 1.0, 0.1],
            vec![-0.3, 0.1, 2.0],
        ])
        .unwrap();
        let a = build_cayley_table_with(&g, Strategy::Sequential).unwrap();
        let b = build_cayley_table_with(&g, Strategy::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, build_cayley_table(&g).unwrap());
    }

    #[test]
    fn too_large() {
        let g = EuclideanMetric::identity(9).unwrap();
        assert_eq!(
            build_cayley_table(&g).unwrap_err(),
            Error::TableTooLarge { dim: 9 }
        );
        assert!(table_for(&g).is_err());
    }

    #[test]
    fn memoized_table_is_shared() {
        let g = EuclideanMetric::from_gram(&[vec![3.0, 0.5], vec![0.5, 7.0]]).unwrap();
        let handles: Vec<_> = (0..8)
            .map(|_| {
                let g = g.clone();
                std::thread::spawn(move || table_for(&g).unwrap())
            })
            .collect();
        let tables: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for t in &tables[1..] {
            assert!(Arc::ptr_eq(&tables[0], t));
        }
        assert_eq!(tables[0].metric_id(), g.id());
    }
}
