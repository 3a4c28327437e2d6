//! Command implementations behind the `lca-fiber` binary.
//!
//! Exit codes: 0 when every verdict passes, 1 when a mathematical check
//! fails, 2 on malformed input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fiber::{determining_set, fiber_context, zak, zak_inverse, FiberContext};
use crate::group::{GroupSpec, Subgroup};
use crate::json::{GroupSpecJson, JsonComplex, OperatorJson};
use crate::linalg::{max_abs, rank, CMatrix};
use crate::operators::{
    check_translation_preserving, extract_range_operator, fiber_solve, hs_trace_report, induced_operator,
    multiplication_preserving_check, norm_identity_report, structural_flags, synthesize_operator, MultiplicationMode,
    OperatorMatrix, RangeOperatorField,
};
use crate::report::VerificationReport;
use crate::sampling;
use crate::signal::C64;
use crate::spaces::{
    principal_decomposition, range_function, space_from_range, translate_frame, translate_span, RangeFunction,
    SubspaceBasis,
};
use crate::tolerance::{relative_gap, Tolerances};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    pub tol_rel: Option<f64>,
    pub tol_abs: Option<f64>,
    pub seed: u64,
    pub json: bool,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn tolerances(&self) -> Result<Tolerances> {
        for t in [self.tol_rel, self.tol_abs].into_iter().flatten() {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Input(format!("tolerance {t} must be positive")));
            }
        }
        Ok(Tolerances::default().with_overrides(self.tol_rel, self.tol_abs))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiberSymbol {
    pub omega: Vec<usize>,
    pub symbol: JsonComplex,
    pub expected: JsonComplex,
    pub scalar_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub exit_code: i32,
    pub error: Option<String>,
    pub sections: Vec<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbols: Option<Vec<FiberSymbol>>,
}

impl CommandReport {
    fn new(command: &str) -> Self {
        CommandReport {
            command: command.to_string(),
            exit_code: EXIT_PASS,
            error: None,
            sections: Vec::new(),
            symbols: None,
        }
    }

    fn from_error(command: &str, e: Error) -> Self {
        let mut r = Self::new(command);
        r.exit_code = if e.is_verification_failure() {
            EXIT_FAIL
        } else {
            EXIT_INPUT
        };
        r.error = Some(e.to_string());
        r
    }

    fn finish(mut self) -> Self {
        if self.exit_code == EXIT_PASS && !self.sections.iter().all(|s| s.passed()) {
            self.exit_code = EXIT_FAIL;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Plain-text table for terminals.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let status = match self.exit_code {
            EXIT_PASS => "PASS",
            EXIT_FAIL => "FAIL",
            _ => "INPUT ERROR",
        };
        let _ = writeln!(s, "{}: {status}", self.command);
        if let Some(e) = &self.error {
            let _ = writeln!(s, "  error: {e}");
        }
        for sec in &self.sections {
            let _ = writeln!(s, "[{}]", sec.name);
            for m in &sec.metrics {
                let _ = writeln!(s, "  {:<32} {:>14.6e}", m.name, m.value);
            }
            for f in &sec.flags {
                let _ = writeln!(s, "  {:<32} {:>14}", f.name, f.value);
            }
            for v in &sec.verdicts {
                let _ = writeln!(s, "  {:<32} {:>14}", v.name, if v.value { "pass" } else { "FAIL" });
            }
            for k in &sec.skipped {
                let _ = writeln!(s, "  {:<32} {:>14}", k, "skipped");
            }
            if let Some(w) = &sec.witness {
                let _ = writeln!(s, "  witness: {w}");
            }
        }
        if let Some(symbols) = &self.symbols {
            let _ = writeln!(s, "[fiber symbols]");
            for sym in symbols {
                let _ = writeln!(
                    s,
                    "  omega={:?}  R = ({:+.6}{:+.6}i) I",
                    sym.omega, sym.symbol[0], sym.symbol[1]
                );
            }
        }
        s
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load_context(spec: &Path) -> Result<FiberContext> {
    let (g, gamma) = GroupSpecJson::parse(&read(spec)?)?.build()?;
    fiber_context(&g, &gamma)
}

/// Commutation check, then (if it passes) the field and every report, all on
/// `V = L2(G)`. Returns the field when one was extracted.
fn operator_pipeline(
    ctx: &FiberContext,
    u: &OperatorMatrix,
    tol: &Tolerances,
    out: &mut CommandReport,
) -> Result<Option<RangeOperatorField>> {
    let check = check_translation_preserving(ctx, u, tol)?;
    let mut sec = VerificationReport::new("translation_preserving");
    sec.metric("max_commutator", check.max_commutator)
        .verdict("translation_preserving", check.preserving);
    if let Some(w) = &check.witness {
        sec.witness = Some(format!(
            "gamma={:?} row={} col={} magnitude={:.3e}",
            w.gamma, w.row, w.col, w.magnitude
        ));
    }
    out.sections.push(sec);
    if !check.preserving {
        return Ok(None);
    }

    let full = RangeFunction::full(ctx);
    let uhat = induced_operator(ctx, u)?;
    let by_set = multiplication_preserving_check(ctx, &uhat, MultiplicationMode::DeterminingSet, tol)?;
    let by_block = multiplication_preserving_check(ctx, &uhat, MultiplicationMode::Full, tol)?;
    let solve = fiber_solve(ctx, u, &full)?;
    let mut sec = VerificationReport::new("range_operator");
    sec.metric("fiber_solve_residual", solve.residual)
        .metric("determining_set_residual", by_set.max_residual)
        .metric("block_residual", by_block.max_residual)
        .metric("sup_fiber_norm", solve.field.sup_norm())
        .verdict("fiber_solve", solve.residual <= tol.field_residual_abs)
        .verdict("determining_set_preserving", by_set.preserving)
        .verdict("modes_agree", by_set.preserving == by_block.preserving);
    out.sections.push(sec);

    let field = extract_range_operator(ctx, u, &full, tol)?;
    out.sections.push(norm_identity_report(ctx, u, &field, &full, tol)?);
    let phis = principal_decomposition(ctx, &SubspaceBasis::full(ctx.group().order()))?;
    let frame = translate_frame(ctx, &phis)?;
    out.sections.push(hs_trace_report(ctx, u, &field, &full, &frame, tol)?);
    out.sections.push(structural_flags(ctx, u, &field, &full, tol)?);
    Ok(Some(field))
}

pub fn cmd_analyze(spec: &Path, operator: &Path, cfg: &RunConfig) -> CommandReport {
    const NAME: &str = "analyze";
    let run = || -> Result<CommandReport> {
        let tol = cfg.tolerances()?;
        let ctx = load_context(spec)?;
        let u = OperatorJson::parse(&read(operator)?)?.to_operator()?;
        let n = ctx.group().order();
        if u.dim() != n {
            return Err(Error::ShapeMismatch {
                expected: format!("{n}x{n} operator"),
                actual: format!("{0}x{0}", u.dim()),
            });
        }
        let mut out = CommandReport::new(NAME);
        operator_pipeline(&ctx, &u, &tol, &mut out)?;
        Ok(out.finish())
    };
    run().unwrap_or_else(|e| CommandReport::from_error(NAME, e))
}

/// `U = I - T_step` on `Z_modulus`, with `Gamma` generated by `step`.
pub fn cmd_demo_diffop(modulus: i64, step: i64, cfg: &RunConfig) -> CommandReport {
    const NAME: &str = "demo-diffop";
    let run = || -> Result<CommandReport> {
        let tol = cfg.tolerances()?;
        if modulus < 2 {
            return Err(Error::Input(format!("modulus {modulus} must be at least 2")));
        }
        let n = modulus as usize;
        let d = step.rem_euclid(modulus) as usize;
        let g = GroupSpec::new(&[n])?;
        let ctx = fiber_context(&g, &Subgroup::generated_by_indices(&g, &[d]))?;
        let u = OperatorMatrix::new(CMatrix::identity(n, n) - OperatorMatrix::translation(&g, d).into_matrix())?;

        let mut out = CommandReport::new(NAME);
        let Some(field) = operator_pipeline(&ctx, &u, &tol, &mut out)? else {
            return Ok(out.finish());
        };

        let m = ctx.fiber_len();
        let mut symbols = Vec::new();
        let mut symbol_err: f64 = 0.0;
        let mut expected_norm: f64 = 0.0;
        for (w, &rep) in ctx.omega().reps().iter().enumerate() {
            let r = field.fiber(w);
            let s = r[(0, 0)];
            let scalar_residual = max_abs(&(r - CMatrix::identity(m, m) * s));
            let expected = C64::new(1.0, 0.0) - g.pairing_index(d, rep);
            symbol_err = symbol_err.max((s - expected).norm()).max(scalar_residual);
            expected_norm = expected_norm.max(expected.norm());
            symbols.push(FiberSymbol {
                omega: g.coords_of(rep),
                symbol: [s.re, s.im],
                expected: [expected.re, expected.im],
                scalar_residual,
            });
        }
        let norm = out
            .sections
            .iter()
            .find_map(|s| s.get("operator_norm"))
            .unwrap_or(f64::NAN);
        let mut sec = VerificationReport::new("difference_operator");
        sec.metric("symbol_error", symbol_err)
            .metric("operator_norm", norm)
            .metric("max_symbol_modulus", expected_norm)
            .verdict("fiber_symbols", symbol_err <= tol.coord_abs)
            .verdict("norm_formula", (norm - expected_norm).abs() <= tol.coord_abs);
        out.sections.push(sec);
        out.symbols = Some(symbols);
        Ok(out.finish())
    };
    run().unwrap_or_else(|e| CommandReport::from_error(NAME, e))
}

const CHECK_TRIALS: usize = 20;

/// Runs the invariant suites on one group spec.
pub fn cmd_check(spec: &Path, cfg: &RunConfig) -> CommandReport {
    const NAME: &str = "check";
    let run = || -> Result<CommandReport> {
        let tol = cfg.tolerances()?;
        let ctx = load_context(spec)?;
        let mut out = CommandReport::new(NAME);
        out.sections = check_suites(&ctx, &tol, cfg.seed)?;
        Ok(out.finish())
    };
    run().unwrap_or_else(|e| CommandReport::from_error(NAME, e))
}

/// The suites behind [`cmd_check`]; deterministic in `seed`.
pub fn check_suites(ctx: &FiberContext, tol: &Tolerances, seed: u64) -> Result<Vec<VerificationReport>> {
    let mut rng = sampling::rng(seed);
    let g = ctx.group();
    let n = g.order();
    let mut sections = Vec::new();

    let mut iso: f64 = 0.0;
    let mut recon: f64 = 0.0;
    let mut inter: f64 = 0.0;
    for _ in 0..CHECK_TRIALS {
        let f = sampling::signal(&mut rng, n);
        let zf = zak(ctx, &f)?;
        iso = iso.max((zf.norm() - f.norm()).abs() / f.norm());
        recon = recon.max(zak_inverse(ctx, &zf)?.max_abs_diff(&f));
        for (gi, d) in determining_set(ctx).iter().enumerate() {
            let t = crate::group::translate_index(g, &f, ctx.gamma().elements()[gi])?;
            inter = inter.max(zak(ctx, &t)?.max_abs_diff(&d.apply(&zf)));
        }
    }
    let mut sec = VerificationReport::new("zak_transform");
    sec.metric("isometry_relative_error", iso)
        .metric("reconstruction_error", recon)
        .metric("intertwining_error", inter)
        .verdict("isometry", iso <= tol.isometry_rel)
        .verdict("reconstruction", recon <= tol.coord_abs)
        .verdict("intertwining", inter <= tol.coord_abs);
    sections.push(sec);

    let chars = CMatrix::from_fn(ctx.gamma().order(), ctx.num_fibers(), |i, w| {
        determining_set(ctx)[i].omega_values[w]
    });
    let r = rank(&chars);
    let mut sec = VerificationReport::new("determining_set");
    sec.metric("rank", r as f64)
        .metric("num_fibers", ctx.num_fibers() as f64)
        .verdict("spans_functions_on_omega", r == ctx.num_fibers());
    sections.push(sec);

    let mut proj_err: f64 = 0.0;
    let mut dims_ok = true;
    for _ in 0..CHECK_TRIALS {
        let gens: Vec<_> = (0..2).map(|_| sampling::signal(&mut rng, n)).collect();
        let v = translate_span(ctx, &gens[..1 + (n % 2)])?;
        let j = range_function(ctx, &v.vectors())?;
        let back = space_from_range(ctx, &j)?;
        dims_ok &= back.dim() == v.dim();
        proj_err = proj_err.max(max_abs(&(back.projector() - v.projector())));
    }
    let mut sec = VerificationReport::new("range_function_correspondence");
    sec.metric("projection_error", proj_err)
        .verdict("round_trip", proj_err <= tol.space_abs)
        .verdict("dimension_additivity", dims_ok);
    sections.push(sec);

    let mut field_err: f64 = 0.0;
    let mut op_err: f64 = 0.0;
    let mut norm_gap: f64 = 0.0;
    for _ in 0..CHECK_TRIALS {
        let j = sampling::range_function(&mut rng, ctx, 0);
        let r = sampling::field(&mut rng, ctx, &j);
        let u = synthesize_operator(ctx, &r, &j, tol)?;
        let r2 = extract_range_operator(ctx, &u, &j, tol)?;
        field_err = field_err.max(r.max_abs_diff(&r2));
        let u2 = synthesize_operator(ctx, &r2, &j, tol)?;
        op_err = op_err.max(max_abs(&(u.matrix() - u2.matrix())));
        let rep = norm_identity_report(ctx, &u, &r2, &j, tol)?;
        norm_gap = norm_gap.max(relative_gap(
            rep.get("operator_norm").unwrap_or(0.0),
            rep.get("max_fiber_norm").unwrap_or(0.0),
        ));
    }
    let mut sec = VerificationReport::new("operator_correspondence");
    sec.metric("extract_after_synthesize_error", field_err)
        .metric("synthesize_after_extract_error", op_err)
        .metric("norm_relative_gap", norm_gap)
        .verdict("field_round_trip", field_err <= tol.space_abs)
        .verdict("operator_round_trip", op_err <= tol.space_abs)
        .verdict("norm_identity", norm_gap <= tol.report_rel);
    sections.push(sec);

    Ok(sections)
}
