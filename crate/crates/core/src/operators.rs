//! Translation-preserving operators and their range-operator fields.
//!
//! An operator `U` on `V` commutes with every `T_g`, `g` in `Gamma`, exactly
//! when `Z U Z^{-1}` is block diagonal over `Omega`; the diagonal blocks form
//! the field `w -> R(w)`. Fields are stored as `|C| x |C|` matrices that
//! vanish on `J(w)^perp`.

use crate::error::{Error, Result};
use crate::fiber::{determining_set, FiberContext};
use crate::group::GroupSpec;
use crate::linalg::{argmax_abs, frobenius_sq, max_abs, min_eigenvalue, op_norm, rank, trace, CMatrix};
use crate::report::VerificationReport;
use crate::signal::{SignalVector, C64};
use crate::spaces::{frame_deviation, space_from_range, RangeFunction, SubspaceBasis};
use crate::tolerance::{relative_gap, Tolerances};

/// A square complex matrix acting on signals.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix(CMatrix);

impl OperatorMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::ShapeMismatch {
                expected: "square matrix".into(),
                actual: format!("{}x{}", m.nrows(), m.ncols()),
            });
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Input("matrix has non-finite entries".into()));
        }
        Ok(OperatorMatrix(m))
    }

    pub fn identity(n: usize) -> Self {
        OperatorMatrix(CMatrix::identity(n, n))
    }

    /// Matrix of `T_t`, `(T_t f)(x) = f(x - t)`.
    pub fn translation(g: &GroupSpec, t: usize) -> Self {
        let n = g.order();
        let mut m = CMatrix::zeros(n, n);
        for x in 0..n {
            m[(x, g.sub(x, t))] = C64::new(1.0, 0.0);
        }
        OperatorMatrix(m)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn apply(&self, f: &SignalVector) -> SignalVector {
        SignalVector::from(&self.0 * f.values())
    }

    pub fn adjoint(&self) -> Self {
        OperatorMatrix(self.0.adjoint())
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::ShapeMismatch {
                expected: format!("{n}x{n}"),
                actual: format!("{}x{}", self.dim(), self.dim()),
            });
        }
        Ok(())
    }
}

/// `w -> R(w)`, one `|C| x |C|` matrix per fiber, zero off `J(w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RangeOperatorField {
    fibers: Vec<CMatrix>,
}

impl RangeOperatorField {
    pub fn new(ctx: &FiberContext, fibers: Vec<CMatrix>) -> Result<Self> {
        let m = ctx.fiber_len();
        if fibers.len() != ctx.num_fibers() || fibers.iter().any(|r| r.shape() != (m, m)) {
            return Err(Error::ShapeMismatch {
                expected: format!("{} fibers of shape {m}x{m}", ctx.num_fibers()),
                actual: format!(
                    "{} fibers of shapes {:?}",
                    fibers.len(),
                    fibers.iter().map(|r| r.shape()).collect::<Vec<_>>()
                ),
            });
        }
        Ok(RangeOperatorField { fibers })
    }

    /// `R(w) = values[w] * I`.
    pub fn scalar(ctx: &FiberContext, values: &[C64]) -> Result<Self> {
        let m = ctx.fiber_len();
        Self::new(ctx, values.iter().map(|&v| CMatrix::identity(m, m) * v).collect())
    }

    pub fn fibers(&self) -> &[CMatrix] {
        &self.fibers
    }

    pub fn fiber(&self, omega: usize) -> &CMatrix {
        &self.fibers[omega]
    }

    /// `max_w ||R(w)||`.
    pub fn sup_norm(&self) -> f64 {
        self.fibers.iter().map(op_norm).fold(0.0, f64::max)
    }

    pub fn adjoint(&self) -> Self {
        RangeOperatorField {
            fibers: self.fibers.iter().map(|r| r.adjoint()).collect(),
        }
    }

    /// Largest entry of `R(w) (I - P_J(w))` over all fibers.
    pub fn domain_residual(&self, j: &RangeFunction) -> f64 {
        self.fibers
            .iter()
            .enumerate()
            .map(|(w, r)| {
                let n = r.nrows();
                max_abs(&(r * (CMatrix::identity(n, n) - j.projector(w))))
            })
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &RangeOperatorField) -> f64 {
        self.fibers
            .iter()
            .zip(&other.fibers)
            .map(|(a, b)| max_abs(&(a - b)))
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorWitness {
    pub gamma: Vec<usize>,
    pub row: usize,
    pub col: usize,
    pub magnitude: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PreservationCheck {
    pub preserving: bool,
    pub max_commutator: f64,
    pub witness: Option<CommutatorWitness>,
}

impl PreservationCheck {
    pub fn into_result(self) -> Result<()> {
        match self.witness {
            Some(w) if !self.preserving => Err(Error::NotTranslationPreserving {
                gamma: w.gamma,
                row: w.row,
                col: w.col,
                magnitude: w.magnitude,
            }),
            _ => Ok(()),
        }
    }
}

/// Tests `U T_g = T_g U` for each generator `g` of `Gamma`.
pub fn check_translation_preserving(
    ctx: &FiberContext,
    u: &OperatorMatrix,
    tol: &Tolerances,
) -> Result<PreservationCheck> {
    commutator_check(ctx, u, None, tol)
}

/// As [`check_translation_preserving`], for `U` restricted to `V`.
pub fn check_translation_preserving_on(
    ctx: &FiberContext,
    u: &OperatorMatrix,
    v: &SubspaceBasis,
    tol: &Tolerances,
) -> Result<PreservationCheck> {
    commutator_check(ctx, u, Some(v), tol)
}

fn commutator_check(
    ctx: &FiberContext,
    u: &OperatorMatrix,
    v: Option<&SubspaceBasis>,
    tol: &Tolerances,
) -> Result<PreservationCheck> {
    let g = ctx.group();
    u.check_dim(g.order())?;
    let mut max_commutator: f64 = 0.0;
    let mut witness: Option<CommutatorWitness> = None;
    for &gamma in ctx.gamma().generators() {
        let t = OperatorMatrix::translation(g, gamma).into_matrix();
        let mut comm = u.matrix() * &t - &t * u.matrix();
        if let Some(v) = v {
            comm *= v.matrix();
        }
        let (row, col, magnitude) = argmax_abs(&comm);
        max_commutator = max_commutator.max(magnitude);
        if magnitude > tol.commutator_abs && witness.as_ref().is_none_or(|w| magnitude > w.magnitude) {
            witness = Some(CommutatorWitness {
                gamma: g.coords_of(gamma),
                row,
                col,
                magnitude,
            });
        }
    }
    Ok(PreservationCheck {
        preserving: witness.is_none(),
        max_commutator,
        witness,
    })
}

/// The induced operator `Z U Z^{-1}` on the flattened fibered space.
pub fn induced_operator(ctx: &FiberContext, u: &OperatorMatrix) -> Result<CMatrix> {
    u.check_dim(ctx.group().order())?;
    let z = ctx.zak_matrix();
    Ok(&z * u.matrix() * z.adjoint())
}

/// Outcome of a fiber solve: the best field and how far `U` is from it.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberSolve {
    pub field: RangeOperatorField,
    /// Largest off-fiber leakage of `Z U v` over the basis of `V`.
    pub residual: f64,
    pub worst_omega: usize,
}

/// Solves `Z(U v)(w) = R(w) Z v (w)` over the basis of `V` produced by
/// [`space_from_range`]. Each basis vector lives in a single fiber, so the
/// solve is `R(w) = Y(w) B(w)*`, and anything `U` sends to other fibers is
/// the residual.
pub fn fiber_solve(ctx: &FiberContext, u: &OperatorMatrix, j: &RangeFunction) -> Result<FiberSolve> {
    u.check_dim(ctx.group().order())?;
    let v = space_from_range(ctx, j)?;
    let z = ctx.zak_matrix();
    let images = &z * u.matrix() * v.matrix();
    let m = ctx.fiber_len();

    let mut fibers = Vec::with_capacity(ctx.num_fibers());
    let mut residual: f64 = 0.0;
    let mut worst_omega = 0;
    let mut col = 0;
    for w in 0..ctx.num_fibers() {
        let b = j.basis(w);
        let d = b.ncols();
        let block = images.columns(col, d);
        let y = block.rows(w * m, m).clone_owned();
        fibers.push(&y * b.adjoint());

        let mut leak = block.clone_owned();
        leak.rows_mut(w * m, m).fill(C64::new(0.0, 0.0));
        let r = max_abs(&leak);
        if r > residual {
            residual = r;
            worst_omega = w;
        }
        col += d;
    }
    Ok(FiberSolve {
        field: RangeOperatorField { fibers },
        residual,
        worst_omega,
    })
}

/// The range-operator field of a translation-preserving `U` on the space of `J`.
pub fn extract_range_operator(
    ctx: &FiberContext,
    u: &OperatorMatrix,
    j: &RangeFunction,
    tol: &Tolerances,
) -> Result<RangeOperatorField> {
    let v = space_from_range(ctx, j)?;
    check_translation_preserving_on(ctx, u, &v, tol)?.into_result()?;
    let solve = fiber_solve(ctx, u, j)?;
    if solve.residual > tol.field_residual_abs {
        return Err(Error::FieldResidual {
            omega: solve.worst_omega,
            residual: solve.residual,
        });
    }
    Ok(solve.field)
}

/// `U = Z^{-1} (+)_w R(w) Z`, which vanishes on `V^perp`.
pub fn synthesize_operator(
    ctx: &FiberContext,
    r: &RangeOperatorField,
    j: &RangeFunction,
    tol: &Tolerances,
) -> Result<OperatorMatrix> {
    let m = ctx.fiber_len();
    if r.fibers.len() != ctx.num_fibers() || r.fibers.iter().any(|x| x.shape() != (m, m)) {
        return Err(Error::ShapeMismatch {
            expected: format!("{} fibers of shape {m}x{m}", ctx.num_fibers()),
            actual: format!("{} fibers", r.fibers.len()),
        });
    }
    for (w, rw) in r.fibers.iter().enumerate() {
        let resid = max_abs(&(rw * (CMatrix::identity(m, m) - j.projector(w))));
        if resid > tol.coord_abs * max_abs(rw).max(1.0) {
            return Err(Error::DomainViolation {
                omega: w,
                residual: resid,
            });
        }
    }
    let n = ctx.group().order();
    let mut blocks = CMatrix::zeros(n, n);
    for (w, rw) in r.fibers.iter().enumerate() {
        blocks.view_mut((w * m, w * m), (m, m)).copy_from(rw);
    }
    let z = ctx.zak_matrix();
    OperatorMatrix::new(z.adjoint() * blocks * z)
}

/// Which multiplication operators an induced operator must commute with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultiplicationMode {
    /// Multiplication by each `X_g|Omega`, `g` in `Gamma`.
    DeterminingSet,
    /// Multiplication by every function on `Omega`, i.e. block diagonality.
    Full,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MultiplicationWitness {
    Gamma(Vec<usize>),
    Fibers { row_omega: usize, col_omega: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicationCheck {
    pub preserving: bool,
    pub max_residual: f64,
    pub witness: Option<MultiplicationWitness>,
}

/// Tests whether `uhat`, acting on the flattened fibered space, commutes with
/// the multiplications selected by `mode`.
pub fn multiplication_preserving_check(
    ctx: &FiberContext,
    uhat: &CMatrix,
    mode: MultiplicationMode,
    tol: &Tolerances,
) -> Result<MultiplicationCheck> {
    let n = ctx.num_fibers() * ctx.fiber_len();
    if uhat.shape() != (n, n) {
        return Err(Error::ShapeMismatch {
            expected: format!("{n}x{n}"),
            actual: format!("{}x{}", uhat.nrows(), uhat.ncols()),
        });
    }
    let mut max_residual: f64 = 0.0;
    let mut witness = None;
    let mut worst = 0.0;
    match mode {
        MultiplicationMode::DeterminingSet => {
            for (gi, d) in determining_set(ctx).iter().enumerate() {
                let mul = d.multiplier(ctx);
                let r = max_abs(&(uhat * &mul - &mul * uhat));
                max_residual = max_residual.max(r);
                if r > tol.commutator_abs && r > worst {
                    worst = r;
                    let gamma = ctx.gamma().elements()[gi];
                    witness = Some(MultiplicationWitness::Gamma(ctx.group().coords_of(gamma)));
                }
            }
        }
        MultiplicationMode::Full => {
            let m = ctx.fiber_len();
            for a in 0..ctx.num_fibers() {
                for b in 0..ctx.num_fibers() {
                    if a == b {
                        continue;
                    }
                    let r = max_abs(&uhat.view((a * m, b * m), (m, m)).clone_owned());
                    max_residual = max_residual.max(r);
                    if r > tol.commutator_abs && r > worst {
                        worst = r;
                        witness = Some(MultiplicationWitness::Fibers {
                            row_omega: a,
                            col_omega: b,
                        });
                    }
                }
            }
        }
    }
    Ok(MultiplicationCheck {
        preserving: witness.is_none(),
        max_residual,
        witness,
    })
}

/// `||U|_V||` against `max_w ||R(w)||`.
pub fn norm_identity_report(
    ctx: &FiberContext,
    u: &OperatorMatrix,
    r: &RangeOperatorField,
    j: &RangeFunction,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    u.check_dim(ctx.group().order())?;
    let v = space_from_range(ctx, j)?;
    let lhs = op_norm(&(u.matrix() * v.matrix()));
    let norms: Vec<f64> = r.fibers.iter().map(op_norm).collect();
    let (arg, rhs) = norms
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0.0), |best, (w, x)| if x > best.1 { (w, x) } else { best });
    let gap = relative_gap(lhs, rhs);

    let mut rep = VerificationReport::new("norm_identity");
    rep.metric("operator_norm", lhs)
        .metric("max_fiber_norm", rhs)
        .metric("relative_gap", gap)
        .verdict("norm_identity", gap <= tol.report_rel);
    rep.witness = Some(format!("omega={:?}", ctx.group().coords_of(ctx.omega().reps()[arg])));
    Ok(rep)
}

fn positive_on(u: &CMatrix, v: &SubspaceBasis, tol: &Tolerances) -> bool {
    let up = u * v.projector();
    let scale = op_norm(&up).max(1.0);
    let hermitian = max_abs(&(&up - up.adjoint())) <= tol.space_abs * scale;
    let compressed = v.matrix().adjoint() * u * v.matrix();
    hermitian && min_eigenvalue(&compressed) >= -tol.space_abs * scale
}

/// Hilbert-Schmidt norm (and trace, for positive `U`) by several routes:
/// entrywise, an orthonormal basis of `V`, the supplied Parseval frame and
/// the sum over fibers.
pub fn hs_trace_report(
    ctx: &FiberContext,
    u: &OperatorMatrix,
    r: &RangeOperatorField,
    j: &RangeFunction,
    frame: &[SignalVector],
    tol: &Tolerances,
) -> Result<VerificationReport> {
    u.check_dim(ctx.group().order())?;
    let v = space_from_range(ctx, j)?;
    let deviation = frame_deviation(frame, &v)?;
    if deviation > tol.space_abs {
        return Err(Error::NotParseval { deviation });
    }
    let um = u.matrix();

    let hs_entrywise = frobenius_sq(&(um * v.projector()));
    let hs_basis: f64 = (0..v.dim()).map(|k| (um * v.matrix().column(k)).norm_squared()).sum();
    let hs_frame: f64 = frame.iter().map(|y| u.apply(y).values().norm_squared()).sum();
    let hs_fibers: f64 = r
        .fibers
        .iter()
        .enumerate()
        .map(|(w, rw)| frobenius_sq(&(rw * j.basis(w))))
        .sum();
    let routes = [hs_entrywise, hs_basis, hs_frame, hs_fibers];
    let hs_gap = max_pairwise_gap(&routes);

    let mut rep = VerificationReport::new("hilbert_schmidt_trace");
    rep.metric("frame_deviation", deviation)
        .metric("hs_sq_entrywise", hs_entrywise)
        .metric("hs_sq_orthonormal_basis", hs_basis)
        .metric("hs_sq_frame", hs_frame)
        .metric("hs_sq_fibers", hs_fibers)
        .metric("hs_relative_gap", hs_gap)
        .verdict("hs_identity", hs_gap <= tol.report_rel);

    let positive = positive_on(um, &v, tol);
    rep.flag("positive", positive);
    if positive {
        let tr_basis = trace(&(v.matrix().adjoint() * um * v.matrix())).re;
        let tr_frame: f64 = frame.iter().map(|y| u.apply(y).inner(y).re).sum();
        let tr_fibers: f64 = r
            .fibers
            .iter()
            .enumerate()
            .map(|(w, rw)| {
                let b = j.basis(w);
                trace(&(b.adjoint() * rw * b)).re
            })
            .sum();
        let gap = max_pairwise_gap(&[tr_basis, tr_frame, tr_fibers]);
        rep.metric("trace_orthonormal_basis", tr_basis)
            .metric("trace_frame", tr_frame)
            .metric("trace_fibers", tr_fibers)
            .metric("trace_relative_gap", gap)
            .verdict("trace_identity", gap <= tol.report_rel);
    } else {
        rep.skip("trace_identity");
    }
    Ok(rep)
}

fn max_pairwise_gap(xs: &[f64]) -> f64 {
    let mut gap: f64 = 0.0;
    for (i, &a) in xs.iter().enumerate() {
        for &b in &xs[i + 1..] {
            gap = gap.max(relative_gap(a, b));
        }
    }
    gap
}

/// Isometry, self-adjointness and rank of `U` on `V`, each judged
/// independently on `U` and on its field, plus whether the two agree.
pub fn structural_flags(
    ctx: &FiberContext,
    u: &OperatorMatrix,
    r: &RangeOperatorField,
    j: &RangeFunction,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    u.check_dim(ctx.group().order())?;
    let v = space_from_range(ctx, j)?;
    let uq = u.matrix() * v.matrix();
    let up = u.matrix() * v.projector();
    let m = ctx.fiber_len();

    let iso_u = max_abs(&(uq.adjoint() * &uq - CMatrix::identity(v.dim(), v.dim())));
    let sa_u = max_abs(&(&up - up.adjoint()));
    let rank_u = rank(&uq);

    let mut iso_f: f64 = 0.0;
    let mut sa_f: f64 = 0.0;
    let mut rank_f = 0;
    for (w, rw) in r.fibers.iter().enumerate() {
        iso_f = iso_f.max(max_abs(&(rw.adjoint() * rw - j.projector(w))));
        sa_f = sa_f.max(max_abs(&(rw - rw.adjoint())));
        rank_f += rank(rw);
    }
    debug_assert_eq!(r.fibers.first().map_or(m, |x| x.nrows()), m);

    let u_iso = iso_u <= tol.space_abs;
    let f_iso = iso_f <= tol.space_abs;
    let u_sa = sa_u <= tol.space_abs;
    let f_sa = sa_f <= tol.space_abs;

    let mut rep = VerificationReport::new("structural_flags");
    rep.metric("isometry_residual_operator", iso_u)
        .metric("isometry_residual_fibers", iso_f)
        .metric("self_adjoint_residual_operator", sa_u)
        .metric("self_adjoint_residual_fibers", sa_f)
        .metric("rank_operator", rank_u as f64)
        .metric("rank_fibers", rank_f as f64)
        .flag("operator_isometry", u_iso)
        .flag("fiber_isometry", f_iso)
        .flag("operator_self_adjoint", u_sa)
        .flag("fiber_self_adjoint", f_sa)
        .verdict("isometry_agreement", u_iso == f_iso)
        .verdict("self_adjoint_agreement", u_sa == f_sa)
        .verdict("rank_additivity", rank_u == rank_f);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber::fiber_context;
    use crate::group::Subgroup;
    use crate::spaces::{principal_decomposition, range_function, translate_frame, translate_span};

    fn ctx(orders: &[usize], gens: &[usize]) -> FiberContext {
        let g = GroupSpec::new(orders).unwrap();
        fiber_context(&g, &Subgroup::generated_by_indices(&g, gens)).unwrap()
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn diffop(ctx: &FiberContext, step: usize) -> OperatorMatrix {
        let n = ctx.group().order();
        let t = OperatorMatrix::translation(ctx.group(), step).into_matrix();
        OperatorMatrix::new(CMatrix::identity(n, n) - t).unwrap()
    }

    fn is_scalar(m: &CMatrix, s: C64) -> bool {
        max_abs(&(m - CMatrix::identity(m.nrows(), m.ncols()) * s)) < 1e-12
    }

    #[test]
    fn preservation_examples() {
        let f1 = ctx(&[4], &[2]);
        let tol = Tolerances::default();
        let t1 = OperatorMatrix::translation(f1.group(), 1);
        assert!(check_translation_preserving(&f1, &t1, &tol).unwrap().preserving);
        assert!(
            check_translation_preserving(&f1, &OperatorMatrix::identity(4), &tol)
                .unwrap()
                .preserving
        );

        let mut d = CMatrix::zeros(4, 4);
        d[(0, 0)] = c(1.0, 0.0);
        let chk = check_translation_preserving(&f1, &OperatorMatrix::new(d).unwrap(), &tol).unwrap();
        assert!(!chk.preserving);
        let w = chk.witness.unwrap();
        assert_eq!(w.gamma, vec![2]);
        assert_eq!(w.magnitude, 1.0);

        assert!(check_translation_preserving(&f1, &OperatorMatrix::identity(3), &tol).is_err());
    }

    #[test]
    fn extract_examples() {
        let f1 = ctx(&[4], &[2]);
        let tol = Tolerances::default();
        let full = RangeFunction::full(&f1);

        let r = extract_range_operator(&f1, &OperatorMatrix::identity(4), &full, &tol).unwrap();
        assert!(r.fibers().iter().all(|x| is_scalar(x, c(1.0, 0.0))));

        let r = extract_range_operator(&f1, &diffop(&f1, 2), &full, &tol).unwrap();
        assert!(is_scalar(r.fiber(0), c(0.0, 0.0)));
        assert!(is_scalar(r.fiber(1), c(2.0, 0.0)));

        let t2 = OperatorMatrix::translation(f1.group(), 2);
        let r = extract_range_operator(&f1, &t2, &full, &tol).unwrap();
        assert!(is_scalar(r.fiber(0), c(1.0, 0.0)));
        assert!(is_scalar(r.fiber(1), c(-1.0, 0.0)));

        let mut d = CMatrix::zeros(4, 4);
        d[(0, 0)] = c(1.0, 0.0);
        let err = extract_range_operator(&f1, &OperatorMatrix::new(d).unwrap(), &full, &tol);
        assert!(matches!(err, Err(Error::NotTranslationPreserving { .. })));
    }

    #[test]
    fn synthesize_examples() {
        let f1 = ctx(&[4], &[2]);
        let tol = Tolerances::default();
        let full = RangeFunction::full(&f1);

        let id = RangeOperatorField::scalar(&f1, &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let u = synthesize_operator(&f1, &id, &full, &tol).unwrap();
        assert!(max_abs(&(u.matrix() - CMatrix::identity(4, 4))) < 1e-12);

        let r = RangeOperatorField::scalar(&f1, &[c(0.0, 0.0), c(2.0, 0.0)]).unwrap();
        let u = synthesize_operator(&f1, &r, &full, &tol).unwrap();
        assert!(max_abs(&(u.matrix() - diffop(&f1, 2).matrix())) < 1e-12);

        // R(w) = <2, w> I gives T_2
        let r = RangeOperatorField::scalar(&f1, &[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let u = synthesize_operator(&f1, &r, &full, &tol).unwrap();
        let t2 = OperatorMatrix::translation(f1.group(), 2);
        assert!(max_abs(&(u.matrix() - t2.matrix())) < 1e-12);

        // identity field on a proper J yields the projection onto V
        let j = range_function(&f1, &[SignalVector::delta(4, 0)]).unwrap();
        let r = RangeOperatorField::new(&f1, (0..2).map(|w| j.projector(w)).collect()).unwrap();
        let u = synthesize_operator(&f1, &r, &j, &tol).unwrap();
        let v = space_from_range(&f1, &j).unwrap();
        assert!(max_abs(&(u.matrix() - v.projector())) < 1e-12);

        // identity field on that J violates the domain convention
        assert!(matches!(
            synthesize_operator(&f1, &id, &j, &tol),
            Err(Error::DomainViolation { .. })
        ));
    }

    #[test]
    fn norm_examples() {
        let tol = Tolerances::default();
        let f1 = ctx(&[4], &[2]);
        let full = RangeFunction::full(&f1);
        let id = OperatorMatrix::identity(4);
        let r = extract_range_operator(&f1, &id, &full, &tol).unwrap();
        let rep = norm_identity_report(&f1, &id, &r, &full, &tol).unwrap();
        assert!((rep.get("operator_norm").unwrap() - 1.0).abs() < 1e-12);
        assert!(rep.passed());

        let f2 = ctx(&[8], &[2]);
        let full = RangeFunction::full(&f2);
        let u = diffop(&f2, 2);
        let r = extract_range_operator(&f2, &u, &full, &tol).unwrap();
        let rep = norm_identity_report(&f2, &u, &r, &full, &tol).unwrap();
        assert!((rep.get("operator_norm").unwrap() - 2.0).abs() < 1e-12);
        assert!((rep.get("max_fiber_norm").unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(rep.witness.as_deref(), Some("omega=[2]"));

        let u = OperatorMatrix::new(OperatorMatrix::translation(f2.group(), 2).into_matrix() * c(3.0, 0.0)).unwrap();
        let r = extract_range_operator(&f2, &u, &full, &tol).unwrap();
        let rep = norm_identity_report(&f2, &u, &r, &full, &tol).unwrap();
        assert!((rep.get("operator_norm").unwrap() - 3.0).abs() < 1e-12);
        assert!((rep.get("max_fiber_norm").unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn hs_trace_examples() {
        let tol = Tolerances::default();
        let f1 = ctx(&[4], &[2]);
        let full = RangeFunction::full(&f1);
        let phis = principal_decomposition(&f1, &SubspaceBasis::full(4)).unwrap();
        let frame = translate_frame(&f1, &phis).unwrap();

        let id = OperatorMatrix::identity(4);
        let r = extract_range_operator(&f1, &id, &full, &tol).unwrap();
        let rep = hs_trace_report(&f1, &id, &r, &full, &frame, &tol).unwrap();
        assert!((rep.get("hs_sq_entrywise").unwrap() - 4.0).abs() < 1e-12);
        assert!((rep.get("hs_sq_fibers").unwrap() - 4.0).abs() < 1e-12);
        assert!(rep.passed());

        let two = OperatorMatrix::new(CMatrix::identity(4, 4) * c(2.0, 0.0)).unwrap();
        let r = extract_range_operator(&f1, &two, &full, &tol).unwrap();
        let rep = hs_trace_report(&f1, &two, &r, &full, &frame, &tol).unwrap();
        assert_eq!(rep.get_flag("positive"), Some(true));
        assert!((rep.get("trace_frame").unwrap() - 8.0).abs() < 1e-12);
        assert!((rep.get("trace_fibers").unwrap() - 8.0).abs() < 1e-12);

        let u = diffop(&f1, 2);
        let r = extract_range_operator(&f1, &u, &full, &tol).unwrap();
        let rep = hs_trace_report(&f1, &u, &r, &full, &frame, &tol).unwrap();
        assert!((rep.get("hs_sq_entrywise").unwrap() - 8.0).abs() < 1e-12);
        assert!((rep.get("hs_sq_fibers").unwrap() - 8.0).abs() < 1e-12);
        // I - T_2 on Z_4 is self-adjoint with spectrum {0, 2}, hence positive
        assert_eq!(rep.get_flag("positive"), Some(true));
        assert!((rep.get("trace_fibers").unwrap() - 4.0).abs() < 1e-12);

        // I - T_1 is not self-adjoint, so the trace clause is skipped
        let u = diffop(&f1, 1);
        let r = extract_range_operator(&f1, &u, &full, &tol).unwrap();
        let rep = hs_trace_report(&f1, &u, &r, &full, &frame, &tol).unwrap();
        assert_eq!(rep.skipped, vec!["trace_identity".to_string()]);
        assert!(rep.passed());

        // the unscaled translates are not a Parseval frame
        let raw: Vec<_> = (0..4).map(|i| SignalVector::delta(4, i).scale(c(2.0, 0.0))).collect();
        assert!(matches!(
            hs_trace_report(&f1, &u, &r, &full, &raw, &tol),
            Err(Error::NotParseval { .. })
        ));
    }

    #[test]
    fn structural_examples() {
        let tol = Tolerances::default();
        let f1 = ctx(&[4], &[2]);
        let full = RangeFunction::full(&f1);

        let t2 = OperatorMatrix::translation(f1.group(), 2);
        let r = extract_range_operator(&f1, &t2, &full, &tol).unwrap();
        let rep = structural_flags(&f1, &t2, &r, &full, &tol).unwrap();
        assert_eq!(rep.get_flag("operator_isometry"), Some(true));
        assert_eq!(rep.get_flag("fiber_isometry"), Some(true));
        assert!(rep.passed());

        let u = diffop(&f1, 2);
        let r = extract_range_operator(&f1, &u, &full, &tol).unwrap();
        let rep = structural_flags(&f1, &u, &r, &full, &tol).unwrap();
        assert_eq!(rep.get_flag("operator_self_adjoint"), Some(true));
        assert_eq!(rep.get_flag("fiber_self_adjoint"), Some(true));
        assert_eq!(rep.get_flag("operator_isometry"), Some(false));
        assert!(rep.passed());

        let v = translate_span(&f1, &[SignalVector::delta(4, 0)]).unwrap();
        let p = OperatorMatrix::new(v.projector()).unwrap();
        let r = extract_range_operator(&f1, &p, &full, &tol).unwrap();
        let rep = structural_flags(&f1, &p, &r, &full, &tol).unwrap();
        assert_eq!(rep.get("rank_operator"), Some(2.0));
        assert_eq!(rep.get("rank_fibers"), Some(2.0));
        assert_eq!(rank(r.fiber(0)), 1);
        assert_eq!(rank(r.fiber(1)), 1);
    }

    #[test]
    fn multiplication_examples() {
        let tol = Tolerances::default();
        let f1 = ctx(&[4], &[2]);
        let mut block = CMatrix::zeros(4, 4);
        block
            .view_mut((0, 0), (2, 2))
            .copy_from(&CMatrix::from_fn(2, 2, |i, j| c(i as f64, j as f64)));
        block.view_mut((2, 2), (2, 2)).fill(c(0.5, -1.0));
        for mode in [MultiplicationMode::DeterminingSet, MultiplicationMode::Full] {
            assert!(
                multiplication_preserving_check(&f1, &block, mode, &tol)
                    .unwrap()
                    .preserving
            );
        }

        let mut swap = CMatrix::zeros(4, 4);
        swap.view_mut((0, 2), (2, 2)).fill_with_identity();
        swap.view_mut((2, 0), (2, 2)).fill_with_identity();
        let d = multiplication_preserving_check(&f1, &swap, MultiplicationMode::DeterminingSet, &tol).unwrap();
        assert!(!d.preserving);
        assert_eq!(d.witness, Some(MultiplicationWitness::Gamma(vec![2])));
        let f = multiplication_preserving_check(&f1, &swap, MultiplicationMode::Full, &tol).unwrap();
        assert!(!f.preserving);

        let uhat = induced_operator(&f1, &diffop(&f1, 2)).unwrap();
        assert!(
            multiplication_preserving_check(&f1, &uhat, MultiplicationMode::DeterminingSet, &tol)
                .unwrap()
                .preserving
        );
        assert!(multiplication_preserving_check(&f1, &CMatrix::zeros(3, 3), MultiplicationMode::Full, &tol).is_err());
    }
}
