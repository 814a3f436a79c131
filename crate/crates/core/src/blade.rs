//! Canonical basis blades named by bitmask.
//!
//! Bit `i` of a mask stands for the basis vector `e_{i+1}`; the blade is the
//! wedge of its vectors in ascending index order. Any other ordering of the
//! same vectors is the canonical blade times a permutation sign.

use std::fmt;

use crate::{Error, Result, MAX_DIM};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BladeMask(pub u32);

impl BladeMask {
    pub const SCALAR: BladeMask = BladeMask(0);

    /// The blade `e_index` for a 1-based vector index.
    pub fn vector(index: usize) -> BladeMask {
        debug_assert!((1..=MAX_DIM).contains(&index));
        BladeMask(1 << (index - 1))
    }

    /// The top blade `e_1 ∧ … ∧ e_dim`.
    pub fn pseudoscalar(dim: usize) -> BladeMask {
        BladeMask(((1u64 << dim) - 1) as u32)
    }

    #[inline]
    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, index: usize) -> bool {
        index >= 1 && self.0 & (1 << (index - 1)) != 0
    }

    /// 1-based vector indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        bits(self.0).map(|b| b as usize + 1)
    }

    /// Canonical name: `e` followed by the indices. Single-digit indices are
    /// concatenated (`e12`); if any index exceeds 9 they are joined with `_`
    /// (`e1_10`) so the name stays unambiguous. The scalar blade is `1`.
    pub fn name(self) -> String {
        if self.0 == 0 {
            return "1".to_string();
        }
        let idx: Vec<usize> = self.indices().collect();
        let sep = if idx.iter().any(|&i| i > 9) { "_" } else { "" };
        let body: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        format!("e{}", body.join(sep))
    }
}

impl fmt::Display for BladeMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Set bit positions of `mask`, ascending.
#[inline]
pub(crate) fn bits(mut mask: u32) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros();
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Sign of `e_a ∧ e_b` relative to the canonical blade `e_{a|b}`, or 0 when
/// the blades share a vector. The sign is the parity of the number of pairs
/// (i in a, j in b) with i > j, i.e. the transpositions needed to merge.
#[inline]
pub fn wedge_sign(a: BladeMask, b: BladeMask) -> i32 {
    if a.0 & b.0 != 0 {
        return 0;
    }
    if crossings(a.0, b.0) & 1 == 0 {
        1
    } else {
        -1
    }
}

/// Number of pairs (i in a, j in b) with i > j.
#[inline]
pub(crate) fn crossings(a: u32, b: u32) -> u32 {
    let mut count = 0;
    let mut rest = a >> 1;
    while rest != 0 {
        count += (rest & b).count_ones();
        rest >>= 1;
    }
    count
}

/// Sorts a list of 1-based vector indices into a canonical blade.
///
/// Returns the mask together with the parity of the sorting permutation, or
/// `(0, 0)` when an index repeats (the wedge vanishes).
pub fn canonical_reorder(indices: &[usize], dim: usize) -> Result<(BladeMask, i32)> {
    let mut mask = 0u32;
    let mut sign = 1;
    for &index in indices {
        if index == 0 || index > dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let bit = 1u32 << (index - 1);
        if mask & bit != 0 {
            // Keep validating the remaining indices before reporting zero.
            sign = 0;
            continue;
        }
        // Moving the new vector left past every larger one already placed.
        if (mask & !(bit | (bit - 1))).count_ones() & 1 == 1 {
            sign = -sign;
        }
        mask |= bit;
    }
    if sign == 0 {
        return Ok((BladeMask::SCALAR, 0));
    }
    Ok((BladeMask(mask), sign))
}

/// Canonical blade masks of a dimension grouped by grade, with each mask's
/// position inside its grade.
#[derive(Debug, Clone)]
pub struct BladeIndex {
    dim: usize,
    by_grade: Vec<Vec<BladeMask>>,
    position: Vec<usize>,
}

impl BladeIndex {
    pub fn new(dim: usize) -> BladeIndex {
        let mut by_grade = vec![Vec::new(); dim + 1];
        let mut position = vec![0; 1 << dim];
        for m in 0..(1u32 << dim) {
            let mask = BladeMask(m);
            let g = mask.grade();
            position[m as usize] = by_grade[g].len();
            by_grade[g].push(mask);
        }
        BladeIndex {
            dim,
            by_grade,
            position,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self, k: usize) -> &[BladeMask] {
        &self.by_grade[k]
    }

    pub fn position(&self, mask: BladeMask) -> usize {
        self.position[mask.index()]
    }

    /// All masks ordered by (grade, mask): the canonical term order.
    pub fn canonical_order(&self) -> impl Iterator<Item = BladeMask> + '_ {
        self.by_grade.iter().flatten().copied()
    }
}
