//! Bilinear accumulation loops shared by every product.
//!
//! A product `X ∘ Y` is evaluated as `Σ_a x_a (e_a ∘ Y)`: one dense partial
//! result per nonzero coefficient of the left operand, folded into the output
//! in ascending mask order. The parallel strategy computes partials of a chunk
//! concurrently and folds them in the same order, so both strategies produce
//! bit-identical results.

/// How product loops are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise runs
    /// sequentially.
    Parallel,
}

/// Smallest dimension at which [`Strategy::auto`] picks the parallel path.
pub const PARALLEL_MIN_DIM: usize = 6;

/// Partials kept alive at once by the parallel path.
#[cfg(feature = "parallel")]
const CHUNK: usize = 64;

impl Strategy {
    pub fn auto(dim: usize) -> Strategy {
        if cfg!(feature = "parallel") && dim >= PARALLEL_MIN_DIM {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// Computes `Σ_a partial(a, x_a)` over the nonzero entries of `left`, where
/// `partial` writes `x_a (e_a ∘ Y)` into a zeroed buffer of length `len`.
pub(crate) fn accumulate<F>(left: &[f64], len: usize, strategy: Strategy, partial: F) -> Vec<f64>
where
    F: Fn(usize, f64, &mut [f64]) + Sync,
{
    let active: Vec<usize> = (0..left.len()).filter(|&a| left[a] != 0.0).collect();
    let mut out = vec![0.0; len];
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel if active.len() > 1 => {
            use rayon::prelude::*;
            for chunk in active.chunks(CHUNK) {
                let partials: Vec<Vec<f64>> = chunk
                    .par_iter()
                    .map(|&a| {
                        let mut buf = vec![0.0; len];
                        partial(a, left[a], &mut buf);
                        buf
                    })
                    .collect();
                for buf in &partials {
                    fold_into(&mut out, buf);
                }
            }
        }
        _ => {
            let mut buf = vec![0.0; len];
            for &a in &active {
                buf.fill(0.0);
                partial(a, left[a], &mut buf);
                fold_into(&mut out, &buf);
            }
        }
    }
    out
}

#[inline]
fn fold_into(out: &mut [f64], buf: &[f64]) {
    for (o, b) in out.iter_mut().zip(buf) {
        *o += b;
    }
}

/// Runs `f` over `items`, in parallel when the strategy allows it.
pub(crate) fn map_items<T, R, F>(items: &[T], strategy: Strategy, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}
