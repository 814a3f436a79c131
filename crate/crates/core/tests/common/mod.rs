#![allow(dead_code)]

use eucliff::{Basis, BladeMask, EuclideanMetric, Multivector};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut TestRng) -> f64 {
    rng.random_range(-1.0..=1.0)
}

pub fn random_mv(rng: &mut TestRng, dim: usize) -> Multivector {
    Multivector::from_coeffs(dim, (0..1 << dim).map(|_| uniform(rng)).collect()).unwrap()
}

pub fn random_homogeneous(rng: &mut TestRng, dim: usize, grade: usize) -> Multivector {
    let coeffs = (0..1u32 << dim)
        .map(|m| {
            if m.count_ones() as usize == grade {
                uniform(rng)
            } else {
                0.0
            }
        })
        .collect();
    Multivector::from_coeffs(dim, coeffs).unwrap()
}

pub fn random_vector(rng: &mut TestRng, dim: usize) -> Multivector {
    random_homogeneous(rng, dim, 1)
}

pub fn random_scalar(rng: &mut TestRng, dim: usize) -> Multivector {
    Multivector::scalar(dim, uniform(rng)).unwrap()
}

pub fn random_coords(rng: &mut TestRng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| uniform(rng)).collect()
}

/// `AᵀA + 0.1 I` with `A` uniform in [-1, 1].
pub fn random_spd(rng: &mut TestRng, dim: usize) -> EuclideanMetric {
    let a = DMatrix::from_fn(dim, dim, |_, _| uniform(rng));
    let g = a.transpose() * &a + DMatrix::identity(dim, dim) * 0.1;
    EuclideanMetric::from_matrix(g).unwrap()
}

/// Uniform random basis, resampled until its condition number is below 50.
pub fn random_basis(rng: &mut TestRng, dim: usize) -> Basis {
    loop {
        let m = DMatrix::from_fn(dim, dim, |_, _| uniform(rng));
        let sv = m.clone().singular_values();
        let (max, min) = (sv.max(), sv.min());
        if min > 0.0 && max / min < 50.0 {
            return Basis::from_matrix(m).unwrap();
        }
    }
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

pub fn blade(dim: usize, mask: u32) -> Multivector {
    Multivector::blade(dim, BladeMask(mask)).unwrap()
}

pub fn basis_vector(basis: &Basis, k: usize) -> Multivector {
    Multivector::vector(&basis.vector(k)).unwrap()
}
