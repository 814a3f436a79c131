//! A kernel for the euclidean Clifford algebra of an n-dimensional real
//! space.
//!
//! Multivectors are dense arrays of `2^n` coefficients indexed by canonical
//! blade bitmasks ([`BladeMask`]). The metric-free layer provides the k-part
//! operator, the three involutions and the exterior product. A validated
//! [`EuclideanMetric`] adds the scalar product, reciprocal bases, left and
//! right contractions and the Clifford product, the latter backed by a
//! memoized [`CayleyTable`].
//!
//! The [`tensor`] module is a brute-force reference built on explicit tensor
//! products and antisymmetrization; it is exponential and meant for tests.
//!
//! With the default `parallel` feature, product loops above
//! [`kernel::PARALLEL_MIN_DIM`] run on rayon. Results are bit-identical to the
//! sequential path.

pub mod blade;
pub mod cayley;
pub mod clifford;
mod error;
pub mod exterior;
pub mod interior;
pub mod kernel;
pub mod metric;
pub mod multivector;
pub mod tensor;

pub use blade::{canonical_reorder, BladeMask};
pub use cayley::{build_cayley_table, CayleyTable};
pub use clifford::{geometric_product, scalar_part_product};
pub use error::{Error, Result};
pub use exterior::wedge;
pub use interior::{left_contraction, right_contraction, vector_left_contract};
pub use kernel::Strategy;
pub use metric::{
    b_metric, expand_in_basis, reciprocal_basis, scalar_product, Basis, EuclideanMetric, Expansion,
};
pub use multivector::{Grade, Multivector, DEFAULT_TOLERANCE};

/// Largest supported dimension (`2^12 = 4096` coefficients).
pub const MAX_DIM: usize = 12;
