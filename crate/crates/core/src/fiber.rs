//! The fiberization `Z : L2(G) -> L2(Omega, L2(C))`.
//!
//! With `Gamma` a subgroup, `Omega` the canonical section of `G^ / Gamma*` and
//! `C` the canonical section of `G / Gamma`,
//!
//! ```text
//! Zf(w)(c) = |Gamma|^{-1/2} sum_{g in Gamma} f(c + g) <g, w>
//! ```
//!
//! Counting measure on `Omega` and `C` makes `Z` unitary, and
//! `Z(T_g f)(w) = <g, w> Zf(w)` for every `g` in `Gamma`.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::group::{annihilator, transversal, GroupElement, GroupSpec, Subgroup, Transversal};
use crate::linalg::CMatrix;
use crate::signal::{SignalVector, C64};

/// Everything `Z` needs: the group, `Gamma`, `Gamma*` and both sections.
#[derive(Clone, Debug)]
pub struct FiberContext {
    group: GroupSpec,
    gamma: Subgroup,
    gamma_star: Subgroup,
    omega: Transversal,
    c_section: Transversal,
    normalization: f64,
    /// `gamma_pos[x]` is the position of `x` in `gamma.elements()`.
    gamma_pos: Vec<Option<usize>>,
    /// `chars[i][w] = <gamma_i, omega_w>`.
    chars: Vec<Vec<C64>>,
}

pub fn fiber_context(g: &GroupSpec, gamma: &Subgroup) -> Result<FiberContext> {
    if gamma.ambient() != g {
        return Err(Error::Input("subgroup belongs to a different group".into()));
    }
    let gamma_star = annihilator(g, gamma);
    let omega = transversal(g, &gamma_star);
    let c_section = transversal(g, gamma);

    let mut gamma_pos = vec![None; g.order()];
    for (i, &x) in gamma.elements().iter().enumerate() {
        gamma_pos[x] = Some(i);
    }
    let chars: Vec<Vec<C64>> = gamma
        .elements()
        .iter()
        .map(|&x| omega.reps().iter().map(|&w| g.pairing_index(x, w)).collect())
        .collect();

    // Omega must restrict to |Gamma| distinct characters of Gamma.
    if omega.len() != gamma.order() {
        return Err(Error::Input("Omega is not a section of the dual quotient".into()));
    }
    for a in 0..omega.len() {
        for b in a + 1..omega.len() {
            let same = gamma
                .elements()
                .iter()
                .all(|&x| g.pairs_trivially(x, g.sub(omega.reps()[a], omega.reps()[b])));
            if same {
                return Err(Error::Input(format!(
                    "Omega representatives {a} and {b} restrict to the same character"
                )));
            }
        }
    }

    Ok(FiberContext {
        group: g.clone(),
        gamma: gamma.clone(),
        gamma_star,
        normalization: 1.0 / (gamma.order() as f64).sqrt(),
        omega,
        c_section,
        gamma_pos,
        chars,
    })
}

impl FiberContext {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn gamma(&self) -> &Subgroup {
        &self.gamma
    }

    pub fn gamma_star(&self) -> &Subgroup {
        &self.gamma_star
    }

    pub fn omega(&self) -> &Transversal {
        &self.omega
    }

    pub fn c_section(&self) -> &Transversal {
        &self.c_section
    }

    /// `|Gamma|^{-1/2}`.
    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn num_fibers(&self) -> usize {
        self.omega.len()
    }

    pub fn fiber_len(&self) -> usize {
        self.c_section.len()
    }

    /// Weight of one point of `Gamma` under the Haar measure dual to counting
    /// measure on `Omega`.
    pub fn gamma_weight(&self) -> f64 {
        1.0 / self.gamma.order() as f64
    }

    /// Position of `(w, c)` in the flattened fibered space.
    pub fn flat_index(&self, omega: usize, c: usize) -> usize {
        omega * self.fiber_len() + c
    }

    /// `<gamma, omega_w>` for `gamma` given as a group element index.
    pub fn character(&self, gamma: usize, omega: usize) -> Option<C64> {
        self.gamma_pos[gamma].map(|i| self.chars[i][omega])
    }

    /// Splits `x = c + g` with `c` in `C` and `g` in `Gamma`; returns the
    /// position of `c` in `C` and the position of `g` in `Gamma`.
    fn split(&self, x: usize) -> (usize, usize) {
        let c_pos = self.c_section.coset_of(x);
        let g = self.group.sub(x, self.c_section.reps()[c_pos]);
        (c_pos, self.gamma_pos[g].expect("x - rep lies in Gamma"))
    }

    fn check_len(&self, f: &SignalVector) -> Result<()> {
        if f.len() != self.group.order() {
            return Err(Error::LengthMismatch {
                expected: self.group.order(),
                actual: f.len(),
            });
        }
        Ok(())
    }

    /// Matrix of `Z` from signal coordinates to flattened fiber coordinates.
    pub fn zak_matrix(&self) -> CMatrix {
        let n = self.group.order();
        let mut z = CMatrix::zeros(n, n);
        for x in 0..n {
            let (c, gi) = self.split(x);
            for w in 0..self.num_fibers() {
                z[(self.flat_index(w, c), x)] = self.chars[gi][w] * self.normalization;
            }
        }
        z
    }
}

/// An element of `L2(Omega, L2(C))`: one vector of length `|C|` per fiber.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberedVector {
    fibers: Vec<DVector<C64>>,
}

impl FiberedVector {
    pub fn new(ctx: &FiberContext, fibers: Vec<DVector<C64>>) -> Result<Self> {
        let shape_ok = fibers.len() == ctx.num_fibers() && fibers.iter().all(|f| f.len() == ctx.fiber_len());
        if !shape_ok {
            return Err(Error::ShapeMismatch {
                expected: format!("{} fibers of length {}", ctx.num_fibers(), ctx.fiber_len()),
                actual: format!(
                    "{} fibers of lengths {:?}",
                    fibers.len(),
                    fibers.iter().map(|f| f.len()).collect::<Vec<_>>()
                ),
            });
        }
        Ok(FiberedVector { fibers })
    }

    pub fn zeros(ctx: &FiberContext) -> Self {
        FiberedVector {
            fibers: vec![DVector::zeros(ctx.fiber_len()); ctx.num_fibers()],
        }
    }

    pub fn fibers(&self) -> &[DVector<C64>] {
        &self.fibers
    }

    pub fn fiber(&self, omega: usize) -> &DVector<C64> {
        &self.fibers[omega]
    }

    pub fn norm(&self) -> f64 {
        self.fibers.iter().map(|f| f.norm_squared()).sum::<f64>().sqrt()
    }

    /// Fibers concatenated in `Omega` order.
    pub fn flatten(&self) -> DVector<C64> {
        DVector::from_iterator(
            self.fibers.iter().map(|f| f.len()).sum(),
            self.fibers.iter().flat_map(|f| f.iter().copied()),
        )
    }

    pub fn from_flat(ctx: &FiberContext, v: &DVector<C64>) -> Result<Self> {
        if v.len() != ctx.num_fibers() * ctx.fiber_len() {
            return Err(Error::LengthMismatch {
                expected: ctx.num_fibers() * ctx.fiber_len(),
                actual: v.len(),
            });
        }
        let m = ctx.fiber_len();
        Ok(FiberedVector {
            fibers: (0..ctx.num_fibers()).map(|w| v.rows(w * m, m).clone_owned()).collect(),
        })
    }

    pub fn max_abs_diff(&self, other: &FiberedVector) -> f64 {
        self.fibers
            .iter()
            .zip(&other.fibers)
            .flat_map(|(a, b)| a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max)
    }
}

pub fn zak(ctx: &FiberContext, f: &SignalVector) -> Result<FiberedVector> {
    ctx.check_len(f)?;
    let g = &ctx.group;
    let mut fibers = vec![DVector::zeros(ctx.fiber_len()); ctx.num_fibers()];
    for (w, fiber) in fibers.iter_mut().enumerate() {
        for (c, &rep) in ctx.c_section.reps().iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for (i, &gamma) in ctx.gamma.elements().iter().enumerate() {
                acc += f[g.add(rep, gamma)] * ctx.chars[i][w];
            }
            fiber[c] = acc * ctx.normalization;
        }
    }
    Ok(FiberedVector { fibers })
}

pub fn zak_inverse(ctx: &FiberContext, fv: &FiberedVector) -> Result<SignalVector> {
    let fv = FiberedVector::new(ctx, fv.fibers.clone())?;
    let mut out = vec![C64::new(0.0, 0.0); ctx.group.order()];
    for (x, slot) in out.iter_mut().enumerate() {
        let (c, gi) = ctx.split(x);
        let acc: C64 = (0..ctx.num_fibers())
            .map(|w| fv.fibers[w][c] * ctx.chars[gi][w].conj())
            .sum();
        *slot = acc * ctx.normalization;
    }
    Ok(SignalVector::new(out))
}

/// A function on `Omega`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeterminingFunction {
    pub omega_values: Vec<C64>,
}

impl DeterminingFunction {
    /// Multiplication by this function on the flattened fibered space.
    pub fn multiplier(&self, ctx: &FiberContext) -> CMatrix {
        let m = ctx.fiber_len();
        CMatrix::from_diagonal(&DVector::from_iterator(
            self.omega_values.len() * m,
            self.omega_values.iter().flat_map(|&v| std::iter::repeat_n(v, m)),
        ))
    }

    /// Pointwise product with a fibered vector.
    pub fn apply(&self, fv: &FiberedVector) -> FiberedVector {
        FiberedVector {
            fibers: fv.fibers.iter().zip(&self.omega_values).map(|(f, &v)| f * v).collect(),
        }
    }
}

/// `X_gamma` restricted to `Omega`.
pub fn determining_function(ctx: &FiberContext, gamma: &GroupElement) -> Result<DeterminingFunction> {
    let idx = ctx.group.index_of(gamma)?;
    let i = ctx.gamma_pos[idx].ok_or_else(|| Error::NotInSubgroup(gamma.coords().to_vec()))?;
    Ok(DeterminingFunction {
        omega_values: ctx.chars[i].clone(),
    })
}

/// All of `{X_gamma|Omega : gamma in Gamma}` in `Gamma` order.
pub fn determining_set(ctx: &FiberContext) -> Vec<DeterminingFunction> {
    ctx.chars
        .iter()
        .map(|row| DeterminingFunction {
            omega_values: row.clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(orders: &[usize], gens: &[usize]) -> FiberContext {
        let g = GroupSpec::new(orders).unwrap();
        let h = Subgroup::generated_by_indices(&g, gens);
        fiber_context(&g, &h).unwrap()
    }

    #[test]
    fn context_shapes() {
        let c = ctx(&[4], &[2]);
        assert_eq!((c.num_fibers(), c.fiber_len()), (2, 2));
        let c = ctx(&[4], &[]);
        assert_eq!((c.num_fibers(), c.fiber_len()), (1, 4));
        let c = ctx(&[4], &[1]);
        assert_eq!((c.num_fibers(), c.fiber_len()), (4, 1));
    }

    #[test]
    fn zak_of_delta() {
        let c = ctx(&[4], &[2]);
        let z = zak(&c, &SignalVector::delta(4, 0)).unwrap();
        let h = 1.0 / 2f64.sqrt();
        for w in 0..2 {
            assert!((z.fiber(w)[0] - C64::new(h, 0.0)).norm() < 1e-15);
            assert!(z.fiber(w)[1].norm() < 1e-15);
        }
        let back = zak_inverse(&c, &z).unwrap();
        assert!(back.max_abs_diff(&SignalVector::delta(4, 0)) < 1e-15);
    }

    #[test]
    fn trivial_gamma_reindexes() {
        let c = ctx(&[4], &[]);
        let f = SignalVector::from_real(&[1.0, -2.0, 3.5, 0.25]);
        let z = zak(&c, &f).unwrap();
        assert_eq!(z.fiber(0).as_slice(), f.as_slice());
    }

    #[test]
    fn zero_maps_to_zero() {
        let c = ctx(&[8], &[2]);
        assert_eq!(zak(&c, &SignalVector::zeros(8)).unwrap(), FiberedVector::zeros(&c));
        assert_eq!(
            zak_inverse(&c, &FiberedVector::zeros(&c)).unwrap(),
            SignalVector::zeros(8)
        );
    }

    #[test]
    fn shape_errors() {
        let c = ctx(&[4], &[2]);
        assert!(zak(&c, &SignalVector::zeros(3)).is_err());
        assert!(FiberedVector::new(&c, vec![DVector::zeros(2)]).is_err());
        assert!(FiberedVector::new(&c, vec![DVector::zeros(2), DVector::zeros(3)]).is_err());
    }

    #[test]
    fn determining_function_values() {
        let c = ctx(&[4], &[2]);
        let g = c.group().clone();
        let d = determining_function(&c, &g.element(0)).unwrap();
        assert!(d.omega_values.iter().all(|&v| v == C64::new(1.0, 0.0)));
        let d = determining_function(&c, &g.element(2)).unwrap();
        assert_eq!(d.omega_values, vec![C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]);
        assert!(determining_function(&c, &g.element(1)).is_err());

        let c = ctx(&[8], &[2]);
        let g = c.group().clone();
        let d = determining_function(&c, &g.element(2)).unwrap();
        let want = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for (v, (re, im)) in d.omega_values.iter().zip(want) {
            assert!((v - C64::new(re, im)).norm() < 1e-15);
        }
    }

    #[test]
    fn zak_matrix_agrees_with_summation() {
        let c = ctx(&[2, 6], &[3, 8]);
        let f = SignalVector::new((0..12).map(|i| C64::new(i as f64, (i * i) as f64 * 0.1)).collect());
        let via_matrix = c.zak_matrix() * f.values();
        let direct = zak(&c, &f).unwrap().flatten();
        assert!((via_matrix - direct).camax() < 1e-12);
    }
}
