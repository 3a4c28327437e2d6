//! Seeded random signals, subspaces, fields and operators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fiber::FiberContext;
use crate::linalg::{orthonormal_range, CMatrix};
use crate::operators::{OperatorMatrix, RangeOperatorField};
use crate::signal::{SignalVector, C64};
use crate::spaces::RangeFunction;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn signal<R: Rng>(rng: &mut R, len: usize) -> SignalVector {
    SignalVector::new((0..len).map(|_| complex(rng)).collect())
}

pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex(rng))
}

/// Haar-ish random unitary from the QR factor of a random matrix.
pub fn unitary<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    matrix(rng, n, n).qr().q()
}

/// Random Hermitian matrix.
pub fn hermitian<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    let a = matrix(rng, n, n);
    (&a + a.adjoint()) * C64::new(0.5, 0.0)
}

/// Random range function: each fiber gets a random subspace of random
/// dimension in `min_dim..=|C|`.
pub fn range_function<R: Rng>(rng: &mut R, ctx: &FiberContext, min_dim: usize) -> RangeFunction {
    let m = ctx.fiber_len();
    let bases = (0..ctx.num_fibers())
        .map(|_| {
            let d = rng.random_range(min_dim.min(m)..=m);
            orthonormal_range(&matrix(rng, m, d))
        })
        .collect();
    RangeFunction::new(ctx, bases).expect("orthonormal by construction")
}

/// Random range function with at least one nonzero fiber, provided `|C| > 0`.
pub fn nonzero_range_function<R: Rng>(rng: &mut R, ctx: &FiberContext) -> RangeFunction {
    loop {
        let j = range_function(rng, ctx, 0);
        if j.total_dim() > 0 {
            return j;
        }
    }
}

/// `R(w) = A(w) B(w)*` with `A(w)` random: zero off `J(w)`, arbitrary range.
pub fn field<R: Rng>(rng: &mut R, ctx: &FiberContext, j: &RangeFunction) -> RangeOperatorField {
    let fibers = j
        .bases()
        .iter()
        .map(|b| matrix(rng, ctx.fiber_len(), b.ncols()) * b.adjoint())
        .collect();
    RangeOperatorField::new(ctx, fibers).expect("shapes follow the context")
}

/// `R(w) = B W B*` with `W` unitary: an isometry of `V` onto itself.
pub fn unitary_field<R: Rng>(rng: &mut R, ctx: &FiberContext, j: &RangeFunction) -> RangeOperatorField {
    let fibers = j
        .bases()
        .iter()
        .map(|b| b * unitary(rng, b.ncols()) * b.adjoint())
        .collect();
    RangeOperatorField::new(ctx, fibers).expect("shapes follow the context")
}

/// `R(w) = B H B*` with `H` Hermitian.
pub fn hermitian_field<R: Rng>(rng: &mut R, ctx: &FiberContext, j: &RangeFunction) -> RangeOperatorField {
    let fibers = j
        .bases()
        .iter()
        .map(|b| b * hermitian(rng, b.ncols()) * b.adjoint())
        .collect();
    RangeOperatorField::new(ctx, fibers).expect("shapes follow the context")
}

/// Dense random `n x n` operator.
pub fn dense_operator<R: Rng>(rng: &mut R, n: usize) -> OperatorMatrix {
    OperatorMatrix::new(matrix(rng, n, n)).expect("square")
}
