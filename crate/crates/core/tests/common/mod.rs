#![allow(dead_code)]

use lca_fiber::linalg::max_abs;
use lca_fiber::{all_subgroups, fiber_context, CMatrix, FiberContext, GroupSpec, SignalVector, C64};

/// Every abelian group of order 4, 8, 12 and 16, up to isomorphism.
pub const GROUPS: &[&[usize]] = &[
    &[4],
    &[2, 2],
    &[8],
    &[2, 4],
    &[2, 2, 2],
    &[12],
    &[2, 6],
    &[16],
    &[2, 8],
    &[4, 4],
    &[2, 2, 4],
    &[2, 2, 2, 2],
];

/// One context per (group, subgroup) pair.
pub fn fixtures() -> Vec<FiberContext> {
    GROUPS
        .iter()
        .flat_map(|orders| {
            let g = GroupSpec::new(orders).unwrap();
            all_subgroups(&g)
                .into_iter()
                .map(move |h| fiber_context(&g, &h).unwrap())
                .collect::<Vec<_>>()
        })
        .collect()
}

pub fn label(ctx: &FiberContext) -> String {
    format!("G={:?} Gamma={:?}", ctx.group().orders(), ctx.gamma().element_coords())
}

pub fn f1() -> FiberContext {
    let g = GroupSpec::new(&[4]).unwrap();
    fiber_context(&g, &lca_fiber::Subgroup::generated_by_indices(&g, &[2])).unwrap()
}

/// `perm[x]` is the index of `x - t`, found by coordinate arithmetic alone.
pub fn translation_table(g: &GroupSpec, t: usize) -> Vec<usize> {
    let n = g.order();
    let tc = g.coords_of(t);
    let coords: Vec<Vec<usize>> = (0..n).map(|i| g.coords_of(i)).collect();
    coords
        .iter()
        .map(|x| {
            let src: Vec<usize> = x
                .iter()
                .zip(&tc)
                .zip(g.orders())
                .map(|((a, b), m)| (a + m - b) % m)
                .collect();
            coords.iter().position(|c| *c == src).unwrap()
        })
        .collect()
}

pub fn apply_table(perm: &[usize], f: &SignalVector) -> SignalVector {
    SignalVector::new(perm.iter().map(|&i| f[i]).collect())
}

/// Orthogonal projector onto the span of arbitrary vectors, by twice-applied
/// Gram-Schmidt (deliberately not SVD based).
pub fn dense_projector(n: usize, vectors: &[SignalVector]) -> CMatrix {
    let scale = vectors.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let mut basis: Vec<nalgebra::DVector<C64>> = Vec::new();
    for v in vectors {
        let mut x = v.values().clone();
        for _ in 0..2 {
            for q in &basis {
                let c = q.dotc(&x);
                x -= q * c;
            }
        }
        let norm = x.norm();
        if norm > 1e-8 * scale {
            basis.push(x / C64::new(norm, 0.0));
        }
    }
    let mut p = CMatrix::zeros(n, n);
    for q in &basis {
        p += q * q.adjoint();
    }
    p
}

pub fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs(&(a - b))
}

pub fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}
