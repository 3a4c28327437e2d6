//! Range operators: build one from a measurable field of fiber matrices,
//! recover the field, and see a non-preserving operator rejected.
//!
//! cargo run --example range_operators

use lca_fiber::operators::{induced_operator, multiplication_preserving_check, MultiplicationMode};
use lca_fiber::{
    check_translation_preserving, extract_range_operator, fiber_context, sampling, synthesize_operator, GroupSpec,
    Subgroup, Tolerances,
};

fn main() -> lca_fiber::Result<()> {
    let g = GroupSpec::new(&[2, 6])?;
    let ctx = fiber_context(&g, &Subgroup::generated_by_indices(&g, &[2]))?;
    let tol = Tolerances::default();
    let mut rng = sampling::rng(5);

    let j = sampling::range_function(&mut rng, &ctx, 1);
    let r = sampling::field(&mut rng, &ctx, &j);
    let u = synthesize_operator(&ctx, &r, &j, &tol)?;
    println!("J dims {:?}; U is {}x{}", j.dims(), u.dim(), u.dim());

    let check = check_translation_preserving(&ctx, &u, &tol)?;
    println!(
        "commutes with Gamma: {} (max commutator {:.2e})",
        check.preserving, check.max_commutator
    );
    let uhat = induced_operator(&ctx, &u)?;
    let d = multiplication_preserving_check(&ctx, &uhat, MultiplicationMode::DeterminingSet, &tol)?;
    println!("Z U Z* commutes with the determining set: {}", d.preserving);

    let back = extract_range_operator(&ctx, &u, &j, &tol)?;
    println!("recovered field error: {:.2e}", back.max_abs_diff(&r));

    let dense = sampling::dense_operator(&mut rng, g.order());
    let check = check_translation_preserving(&ctx, &dense, &tol)?;
    if let Some(w) = check.witness {
        println!(
            "random operator: fails at gamma {:?}, entry ({}, {}) = {:.3}",
            w.gamma, w.row, w.col, w.magnitude
        );
    }
    match extract_range_operator(&ctx, &dense, &j, &tol) {
        Err(e) => println!("extract refuses: {e}"),
        Ok(_) => unreachable!("a random operator does not commute with translations"),
    }
    Ok(())
}
