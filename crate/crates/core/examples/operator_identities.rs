//! Operator norm, Hilbert-Schmidt norm, trace and structural properties of a
//! range operator, each computed on the space and on the fibers.
//!
//! cargo run --example operator_identities

use lca_fiber::spaces::space_from_range;
use lca_fiber::{
    fiber_context, hs_trace_report, norm_identity_report, principal_decomposition, sampling, structural_flags,
    synthesize_operator, translate_frame, GroupSpec, RangeOperatorField, Subgroup, Tolerances, VerificationReport,
};

fn show(rep: &VerificationReport) {
    println!("[{}]", rep.name);
    for m in &rep.metrics {
        println!("  {:<28} {:.12}", m.name, m.value);
    }
    for f in &rep.flags {
        println!("  {:<28} {}", f.name, f.value);
    }
    for v in &rep.verdicts {
        println!("  {:<28} {}", v.name, if v.value { "pass" } else { "FAIL" });
    }
}

fn main() -> lca_fiber::Result<()> {
    let g = GroupSpec::new(&[8])?;
    let ctx = fiber_context(&g, &Subgroup::generated_by_indices(&g, &[2]))?;
    let tol = Tolerances::default();
    let mut rng = sampling::rng(11);

    let j = sampling::range_function(&mut rng, &ctx, 1);
    let w = sampling::field(&mut rng, &ctx, &j);
    // R = W* W is positive, so the trace identity applies as well.
    let r = RangeOperatorField::new(
        &ctx,
        w.adjoint()
            .fibers()
            .iter()
            .zip(w.fibers())
            .map(|(a, b)| a * b)
            .collect(),
    )?;
    let u = synthesize_operator(&ctx, &r, &j, &tol)?;

    let v = space_from_range(&ctx, &j)?;
    let frame = translate_frame(&ctx, &principal_decomposition(&ctx, &v)?)?;

    show(&norm_identity_report(&ctx, &u, &r, &j, &tol)?);
    show(&hs_trace_report(&ctx, &u, &r, &j, &frame, &tol)?);

    let iso = sampling::unitary_field(&mut rng, &ctx, &j);
    let ui = synthesize_operator(&ctx, &iso, &j, &tol)?;
    show(&structural_flags(&ctx, &ui, &iso, &j, &tol)?);
    Ok(())
}
