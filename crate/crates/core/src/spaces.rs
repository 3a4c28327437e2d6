//! Translation-invariant subspaces of `L2(G)` and their range functions.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::fiber::{determining_set, zak, zak_inverse, FiberContext, FiberedVector};
use crate::group::translate_index;
use crate::linalg::{max_abs, orthonormal_range, projector, CMatrix};
use crate::signal::{SignalVector, C64};

/// Tolerance for subspace membership, orthonormality and frame checks.
pub const SPACE_TOL: f64 = 1e-9;

fn orthonormality_error(q: &CMatrix) -> f64 {
    max_abs(&(q.adjoint() * q - CMatrix::identity(q.ncols(), q.ncols())))
}

/// Per-fiber orthonormal bases of `J(w)`, each a `|C| x dim J(w)` matrix.
/// A zero fiber is a matrix with no columns.
#[derive(Clone, Debug, PartialEq)]
pub struct RangeFunction {
    bases: Vec<CMatrix>,
}

impl RangeFunction {
    pub fn new(ctx: &FiberContext, bases: Vec<CMatrix>) -> Result<Self> {
        if bases.len() != ctx.num_fibers() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} fibers", ctx.num_fibers()),
                actual: format!("{} fibers", bases.len()),
            });
        }
        for (w, b) in bases.iter().enumerate() {
            if b.nrows() != ctx.fiber_len() || b.ncols() > ctx.fiber_len() {
                return Err(Error::ShapeMismatch {
                    expected: format!(
                        "fiber {w}: {} rows, at most {} columns",
                        ctx.fiber_len(),
                        ctx.fiber_len()
                    ),
                    actual: format!("{}x{}", b.nrows(), b.ncols()),
                });
            }
            let err = orthonormality_error(b);
            if err > 1e-10 {
                return Err(Error::Input(format!(
                    "basis of fiber {w} is not orthonormal (deviation {err:.3e})"
                )));
            }
        }
        Ok(RangeFunction { bases })
    }

    /// `J(w) = L2(C)` for every fiber.
    pub fn full(ctx: &FiberContext) -> Self {
        RangeFunction {
            bases: vec![CMatrix::identity(ctx.fiber_len(), ctx.fiber_len()); ctx.num_fibers()],
        }
    }

    /// `J(w) = {0}` for every fiber.
    pub fn zero(ctx: &FiberContext) -> Self {
        RangeFunction {
            bases: vec![CMatrix::zeros(ctx.fiber_len(), 0); ctx.num_fibers()],
        }
    }

    pub fn bases(&self) -> &[CMatrix] {
        &self.bases
    }

    pub fn basis(&self, omega: usize) -> &CMatrix {
        &self.bases[omega]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.ncols()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.bases.iter().map(|b| b.ncols()).sum()
    }

    /// `P_J(w)`.
    pub fn projector(&self, omega: usize) -> CMatrix {
        projector(&self.bases[omega])
    }
}

/// An orthonormal basis of a subspace of `L2(G)`, stored as columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    vectors: CMatrix,
}

impl SubspaceBasis {
    pub fn new(vectors: CMatrix) -> Result<Self> {
        let err = orthonormality_error(&vectors);
        if err > 1e-10 {
            return Err(Error::Input(format!("basis is not orthonormal (deviation {err:.3e})")));
        }
        Ok(SubspaceBasis { vectors })
    }

    /// Orthonormal basis of the span of arbitrary vectors of length `len`.
    pub fn spanned_by(len: usize, vectors: &[SignalVector]) -> Result<Self> {
        let m = columns(len, vectors)?;
        Ok(SubspaceBasis {
            vectors: orthonormal_range(&m),
        })
    }

    pub fn full(len: usize) -> Self {
        SubspaceBasis {
            vectors: CMatrix::identity(len, len),
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn vector(&self, i: usize) -> SignalVector {
        SignalVector::from(self.vectors.column(i).clone_owned())
    }

    pub fn vectors(&self) -> Vec<SignalVector> {
        (0..self.dim()).map(|i| self.vector(i)).collect()
    }

    pub fn projector(&self) -> CMatrix {
        projector(&self.vectors)
    }

    /// Dense orthogonal projection of `f`.
    pub fn project(&self, f: &SignalVector) -> SignalVector {
        SignalVector::from(&self.vectors * (self.vectors.adjoint() * f.values()))
    }
}

fn columns(len: usize, vectors: &[SignalVector]) -> Result<CMatrix> {
    let mut m = CMatrix::zeros(len, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        if v.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                actual: v.len(),
            });
        }
        m.set_column(j, v.values());
    }
    Ok(m)
}

/// `J(w) = span {Z phi (w) : phi in generators}`.
pub fn range_function(ctx: &FiberContext, generators: &[SignalVector]) -> Result<RangeFunction> {
    let fibered = generators.iter().map(|phi| zak(ctx, phi)).collect::<Result<Vec<_>>>()?;
    let bases = (0..ctx.num_fibers())
        .map(|w| {
            let mut m = CMatrix::zeros(ctx.fiber_len(), fibered.len());
            for (j, fv) in fibered.iter().enumerate() {
                m.set_column(j, fv.fiber(w));
            }
            orthonormal_range(&m)
        })
        .collect();
    Ok(RangeFunction { bases })
}

/// Orthonormal basis of `V = {f : Zf(w) in J(w) for all w}`. Column
/// `(w, j)` is the preimage under `Z` of the `j`-th basis vector of `J(w)`
/// placed in fiber `w`; columns are ordered by fiber, then by `j`.
pub fn space_from_range(ctx: &FiberContext, j: &RangeFunction) -> Result<SubspaceBasis> {
    let n = ctx.group().order();
    let mut out = CMatrix::zeros(n, j.total_dim());
    let mut col = 0;
    for (w, b) in j.bases().iter().enumerate() {
        for k in 0..b.ncols() {
            let mut fibers = vec![DVector::zeros(ctx.fiber_len()); ctx.num_fibers()];
            fibers[w] = b.column(k).clone_owned();
            let v = zak_inverse(ctx, &FiberedVector::new(ctx, fibers)?)?;
            out.set_column(col, v.values());
            col += 1;
        }
    }
    Ok(SubspaceBasis { vectors: out })
}

/// Projection onto the space of `J`, computed fiber by fiber.
pub fn project_via_fibers(ctx: &FiberContext, j: &RangeFunction, f: &SignalVector) -> Result<SignalVector> {
    let zf = zak(ctx, f)?;
    let fibers = zf
        .fibers()
        .iter()
        .enumerate()
        .map(|(w, x)| {
            let b = j.basis(w);
            b * (b.adjoint() * x)
        })
        .collect();
    zak_inverse(ctx, &FiberedVector::new(ctx, fibers)?)
}

/// Outcome of an invariance test; `witness` names the offending
/// `(gamma, basis vector)` when the space is not invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceCheck {
    pub invariant: bool,
    pub max_residual: f64,
    pub witness: Option<InvarianceWitness>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceWitness {
    pub gamma: Vec<usize>,
    pub vector: usize,
    pub residual: f64,
}

impl InvarianceCheck {
    pub fn into_result(self) -> Result<()> {
        match self.witness {
            Some(w) if !self.invariant => Err(Error::NotInvariant {
                gamma: w.gamma,
                vector: w.vector,
                residual: w.residual,
            }),
            _ => Ok(()),
        }
    }
}

/// Tests `T_g V in V` for each generator `g` of `Gamma`.
pub fn is_translation_invariant(ctx: &FiberContext, basis: &SubspaceBasis) -> Result<InvarianceCheck> {
    let g = ctx.group();
    if basis.ambient_dim() != g.order() {
        return Err(Error::LengthMismatch {
            expected: g.order(),
            actual: basis.ambient_dim(),
        });
    }
    let p = basis.projector();
    let mut max_residual: f64 = 0.0;
    let mut witness: Option<InvarianceWitness> = None;
    for &gamma in ctx.gamma().generators() {
        for k in 0..basis.dim() {
            let t = translate_index(g, &basis.vector(k), gamma)?;
            let residual = (t.values() - &p * t.values()).camax();
            max_residual = max_residual.max(residual);
            if residual > SPACE_TOL && witness.as_ref().is_none_or(|w| residual > w.residual) {
                witness = Some(InvarianceWitness {
                    gamma: g.coords_of(gamma),
                    vector: k,
                    residual,
                });
            }
        }
    }
    Ok(InvarianceCheck {
        invariant: witness.is_none(),
        max_residual,
        witness,
    })
}

/// Tests whether the span of `w` is closed under multiplication by every
/// `X_gamma|Omega`.
pub fn is_multiplicatively_invariant(ctx: &FiberContext, w: &[FiberedVector]) -> InvarianceCheck {
    let dim = ctx.num_fibers() * ctx.fiber_len();
    let mut m = CMatrix::zeros(dim, w.len());
    for (j, fv) in w.iter().enumerate() {
        m.set_column(j, &fv.flatten());
    }
    let q = orthonormal_range(&m);
    let p = projector(&q);
    let mut max_residual: f64 = 0.0;
    let mut witness: Option<InvarianceWitness> = None;
    for (gi, d) in determining_set(ctx).iter().enumerate() {
        let moved = d.multiplier(ctx) * &q;
        let resid = &moved - &p * &moved;
        for k in 0..q.ncols() {
            let r = resid.column(k).camax();
            max_residual = max_residual.max(r);
            if r > SPACE_TOL && witness.as_ref().is_none_or(|x| r > x.residual) {
                witness = Some(InvarianceWitness {
                    gamma: ctx.group().coords_of(ctx.gamma().elements()[gi]),
                    vector: k,
                    residual: r,
                });
            }
        }
    }
    InvarianceCheck {
        invariant: witness.is_none(),
        max_residual,
        witness,
    }
}

/// `S^Gamma(A)`: orthonormal basis of the span of all `Gamma`-translates
/// of the generators.
pub fn translate_span(ctx: &FiberContext, generators: &[SignalVector]) -> Result<SubspaceBasis> {
    let g = ctx.group();
    let mut all = Vec::with_capacity(generators.len() * ctx.gamma().order());
    for phi in generators {
        for &gamma in ctx.gamma().elements() {
            all.push(translate_index(g, phi, gamma)?);
        }
    }
    SubspaceBasis::spanned_by(g.order(), &all)
}

/// Splits an invariant `V` into mutually orthogonal principal spaces
/// `S^Gamma(phi_n)` whose fibers `Z phi_n (w)` are unit or zero.
pub fn principal_decomposition(ctx: &FiberContext, v: &SubspaceBasis) -> Result<Vec<SignalVector>> {
    is_translation_invariant(ctx, v)?.into_result()?;
    let j = range_function(ctx, &v.vectors())?;
    let count = j.dims().into_iter().max().unwrap_or(0);
    (0..count)
        .map(|n| {
            let fibers = j
                .bases()
                .iter()
                .map(|b| {
                    if n < b.ncols() {
                        b.column(n).clone_owned()
                    } else {
                        DVector::zeros(ctx.fiber_len())
                    }
                })
                .collect();
            zak_inverse(ctx, &FiberedVector::new(ctx, fibers)?)
        })
        .collect()
}

/// True when every fiber of `Z phi` has norm 0 or 1, which makes the
/// translates of `phi` a Parseval frame for `S^Gamma(phi)` under the
/// normalized Haar measure on `Gamma`.
pub fn parseval_fiber_check(ctx: &FiberContext, phi: &SignalVector) -> Result<bool> {
    let z = zak(ctx, phi)?;
    Ok(z.fibers().iter().all(|f| {
        let n = f.norm();
        n <= SPACE_TOL || (n - 1.0).abs() <= SPACE_TOL
    }))
}

/// The translates `T_g phi_n`, each scaled by the square root of the Haar
/// weight of a point of `Gamma`, as a discrete frame.
pub fn translate_frame(ctx: &FiberContext, phis: &[SignalVector]) -> Result<Vec<SignalVector>> {
    let s = C64::new(ctx.gamma_weight().sqrt(), 0.0);
    let mut out = Vec::with_capacity(phis.len() * ctx.gamma().order());
    for phi in phis {
        for &gamma in ctx.gamma().elements() {
            out.push(translate_index(ctx.group(), phi, gamma)?.scale(s));
        }
    }
    Ok(out)
}

/// `max |sum_y y y* - P_V|`; zero exactly for a Parseval frame of `V`.
pub fn frame_deviation(frame: &[SignalVector], v: &SubspaceBasis) -> Result<f64> {
    let m = columns(v.ambient_dim(), frame)?;
    Ok(max_abs(&(&m * m.adjoint() - v.projector())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber::fiber_context;
    use crate::group::{GroupSpec, Subgroup};

    fn f1() -> FiberContext {
        let g = GroupSpec::new(&[4]).unwrap();
        fiber_context(&g, &Subgroup::generated_by_indices(&g, &[2])).unwrap()
    }

    fn basis_of(n: usize, idx: &[usize]) -> SubspaceBasis {
        let vs: Vec<_> = idx.iter().map(|&i| SignalVector::delta(n, i)).collect();
        SubspaceBasis::spanned_by(n, &vs).unwrap()
    }

    #[test]
    fn range_function_of_delta() {
        let c = f1();
        let j = range_function(&c, &[SignalVector::delta(4, 0)]).unwrap();
        assert_eq!(j.dims(), vec![1, 1]);
        for w in 0..2 {
            let b = j.basis(w);
            assert!((b[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-12);
            assert!(b[(1, 0)].norm() < 1e-12);
        }
    }

    #[test]
    fn range_function_extremes() {
        let c = f1();
        assert_eq!(range_function(&c, &[]).unwrap().dims(), vec![0, 0]);
        let all: Vec<_> = (0..4).map(|i| SignalVector::delta(4, i)).collect();
        assert_eq!(range_function(&c, &all).unwrap().dims(), vec![2, 2]);
    }

    #[test]
    fn space_from_range_examples() {
        let c = f1();
        assert_eq!(space_from_range(&c, &RangeFunction::zero(&c)).unwrap().dim(), 0);
        assert_eq!(space_from_range(&c, &RangeFunction::full(&c)).unwrap().dim(), 4);
        let j = range_function(&c, &[SignalVector::delta(4, 0)]).unwrap();
        let v = space_from_range(&c, &j).unwrap();
        assert_eq!(v.dim(), 2);
        let want = basis_of(4, &[0, 2]).projector();
        assert!(max_abs(&(v.projector() - want)) < 1e-12);
    }

    #[test]
    fn projection_fixes_members_and_kills_complement() {
        let c = f1();
        let j = range_function(&c, &[SignalVector::delta(4, 0)]).unwrap();
        let inside = SignalVector::from_real(&[2.0, 0.0, -1.0, 0.0]);
        let p = project_via_fibers(&c, &j, &inside).unwrap();
        assert!(p.max_abs_diff(&inside) < 1e-12);
        let outside = SignalVector::from_real(&[0.0, 3.0, 0.0, 1.0]);
        let p = project_via_fibers(&c, &j, &outside).unwrap();
        assert!(p.norm() < 1e-12);
    }

    #[test]
    fn invariance_examples() {
        let c = f1();
        assert!(is_translation_invariant(&c, &basis_of(4, &[0, 2])).unwrap().invariant);
        let chk = is_translation_invariant(&c, &basis_of(4, &[0])).unwrap();
        assert!(!chk.invariant);
        assert_eq!(chk.witness.unwrap().gamma, vec![2]);
        assert!(is_translation_invariant(&c, &SubspaceBasis::full(4)).unwrap().invariant);
    }

    #[test]
    fn decomposition_of_full_space() {
        let c = f1();
        let phis = principal_decomposition(&c, &SubspaceBasis::full(4)).unwrap();
        assert_eq!(phis.len(), 2);
        for phi in &phis {
            let z = zak(&c, phi).unwrap();
            for f in z.fibers() {
                assert!((f.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn decomposition_of_principal_space() {
        let c = f1();
        let v = translate_span(&c, &[SignalVector::delta(4, 0)]).unwrap();
        let phis = principal_decomposition(&c, &v).unwrap();
        assert_eq!(phis.len(), 1);
        let z = zak(&c, &phis[0]).unwrap();
        for f in z.fibers() {
            // normalized Z(delta_0)(w) is the first axis
            assert!((f[0].norm() - 1.0).abs() < 1e-12);
            assert!(f[1].norm() < 1e-12);
        }
    }

    #[test]
    fn decomposition_edge_cases() {
        let c = f1();
        let empty = SubspaceBasis::new(CMatrix::zeros(4, 0)).unwrap();
        assert!(principal_decomposition(&c, &empty).unwrap().is_empty());
        assert!(matches!(
            principal_decomposition(&c, &basis_of(4, &[1])),
            Err(Error::NotInvariant { .. })
        ));
    }

    #[test]
    fn parseval_fiber_examples() {
        let c = f1();
        assert!(!parseval_fiber_check(&c, &SignalVector::delta(4, 0)).unwrap());
        assert!(parseval_fiber_check(&c, &SignalVector::zeros(4)).unwrap());
        // unit fibers e_0 at both w come from sqrt(2) delta_0
        let phi = SignalVector::delta(4, 0).scale(C64::new(2f64.sqrt(), 0.0));
        assert!(parseval_fiber_check(&c, &phi).unwrap());
        let frame = translate_frame(&c, &[phi]).unwrap();
        let v = basis_of(4, &[0, 2]);
        assert!(frame_deviation(&frame, &v).unwrap() < 1e-12);
    }

    #[test]
    fn multiplicative_invariance_matches_translation_invariance() {
        let c = f1();
        let inv = basis_of(4, &[0, 2]);
        let w: Vec<_> = inv.vectors().iter().map(|v| zak(&c, v).unwrap()).collect();
        assert!(is_multiplicatively_invariant(&c, &w).invariant);
        let non = basis_of(4, &[0]);
        let w: Vec<_> = non.vectors().iter().map(|v| zak(&c, v).unwrap()).collect();
        let chk = is_multiplicatively_invariant(&c, &w);
        assert!(!chk.invariant);
        assert_eq!(chk.witness.unwrap().gamma, vec![2]);
    }
}
