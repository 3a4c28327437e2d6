//! Small dense complex linear-algebra helpers. Matrices are nalgebra's;
//! the SVD and Hermitian eigensolver are faer's, since nalgebra's complex
//! SVD returns wrong factors for some inputs with zero columns.

use faer::{Mat, Side};
use nalgebra::DMatrix;

use crate::signal::C64;

pub type CMatrix = DMatrix<C64>;

/// Singular values below `RANK_TOL * max(1, sigma_max)` count as zero.
pub const RANK_TOL: f64 = 1e-9;

/// Singular values in decreasing order; empty for degenerate shapes.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s = to_faer(m).singular_values().expect("svd converges");
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

fn to_faer(m: &CMatrix) -> Mat<C64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

pub fn op_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

fn rank_threshold(sigma_max: f64) -> f64 {
    RANK_TOL * sigma_max.max(1.0)
}

pub fn rank(m: &CMatrix) -> usize {
    let s = singular_values(m);
    let thr = rank_threshold(s.first().copied().unwrap_or(0.0));
    s.iter().filter(|&&x| x > thr).count()
}

/// Orthonormal basis for the column span of `m`: the left singular vectors
/// above the rank threshold, ordered by decreasing singular value, each with
/// its largest-modulus entry rotated onto the positive real axis.
pub fn orthonormal_range(m: &CMatrix) -> CMatrix {
    let rows = m.nrows();
    if rows == 0 || m.ncols() == 0 {
        return CMatrix::zeros(rows, 0);
    }
    let svd = to_faer(m).thin_svd().expect("svd converges");
    let (u, sv) = (svd.U(), svd.S().column_vector());
    // faer sorts singular values in nonincreasing order already.
    let thr = rank_threshold(if sv.nrows() > 0 { sv[0].re } else { 0.0 });
    let keep: Vec<usize> = (0..sv.nrows()).filter(|&i| sv[i].re > thr).collect();
    let mut out = CMatrix::zeros(rows, keep.len());
    for (j, &i) in keep.iter().enumerate() {
        let mut col = nalgebra::DVector::from_fn(rows, |r, _| u[(r, i)]);
        let peak = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if let Some(z) = col.iter().find(|z| z.norm() >= peak - 1e-12) {
            let phase = z.conj() / z.norm();
            col *= phase;
        }
        out.set_column(j, &col);
    }
    out
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Location and modulus of the largest entry.
pub fn argmax_abs(m: &CMatrix) -> (usize, usize, f64) {
    let mut best = (0, 0, 0.0);
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let v = m[(i, j)].norm();
            if v > best.2 {
                best = (i, j, v);
            }
        }
    }
    best
}

pub fn frobenius_sq(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum()
}

pub fn trace(m: &CMatrix) -> C64 {
    (0..m.nrows().min(m.ncols())).map(|i| m[(i, i)]).sum()
}

pub fn is_hermitian(m: &CMatrix, tol: f64) -> bool {
    m.is_square() && max_abs(&(m - m.adjoint())) <= tol
}

/// Smallest eigenvalue of the Hermitian part of `m`; `+inf` when empty.
pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    if m.nrows() == 0 {
        return f64::INFINITY;
    }
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    to_faer(&h)
        .self_adjoint_eigenvalues(Side::Lower)
        .expect("eigensolver converges")
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

/// Orthogonal projection onto the span of orthonormal columns `q`.
pub fn projector(q: &CMatrix) -> CMatrix {
    q * q.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn range_of_rank_one_matrix() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0, 1.0), c(0.0, 2.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let q = orthonormal_range(&m);
        assert_eq!(q.ncols(), 1);
        assert!((q[(0, 0)] - c(1.0, 0.0)).norm() < 1e-12);
        assert!(q[(1, 0)].norm() < 1e-12);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn degenerate_shapes() {
        let m = CMatrix::zeros(3, 0);
        assert_eq!(orthonormal_range(&m).shape(), (3, 0));
        assert_eq!(op_norm(&m), 0.0);
        assert_eq!(rank(&CMatrix::zeros(2, 2)), 0);
        assert_eq!(min_eigenvalue(&CMatrix::zeros(0, 0)), f64::INFINITY);
    }

    #[test]
    fn norms_of_diagonal() {
        let m = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(3.0, 0.0), c(0.0, -4.0)]));
        assert!((op_norm(&m) - 4.0).abs() < 1e-12);
        assert!((frobenius_sq(&m) - 25.0).abs() < 1e-12);
        assert_eq!(argmax_abs(&m), (1, 1, 4.0));
        assert!(!is_hermitian(&m, 1e-12));
    }

    #[test]
    fn range_of_matrix_with_zero_columns() {
        // Regression: this shape made nalgebra's complex SVD return wrong
        // factors.
        let a = [c(-0.261, -0.037), c(0.180, 0.594), c(0.670, 0.0), c(-0.210, 0.228)];
        let b = [c(0.676, 0.0), c(0.249, 0.588), c(-0.246, 0.110), c(0.252, -0.002)];
        let m = CMatrix::from_fn(4, 4, |i, j| match j {
            0 => a[i],
            3 => b[i],
            _ => c(0.0, 0.0),
        });
        let q = orthonormal_range(&m);
        assert_eq!(q.ncols(), 2);
        assert!(max_abs(&(q.adjoint() * &q - CMatrix::identity(2, 2))) < 1e-12);
        assert!(max_abs(&(projector(&q) * &m - &m)) < 1e-12);
        assert_eq!(rank(&m), 2);
    }
}
