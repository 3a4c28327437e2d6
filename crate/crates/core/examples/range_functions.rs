//! Translation-invariant subspaces and their range functions on Z_12 with
//! Gamma = <3>.
//!
//! cargo run --example range_functions

use lca_fiber::linalg::max_abs;
use lca_fiber::sampling;
use lca_fiber::spaces::{
    is_translation_invariant, project_via_fibers, range_function, space_from_range, translate_span,
};
use lca_fiber::{fiber_context, GroupSpec, Subgroup};

fn main() -> lca_fiber::Result<()> {
    let g = GroupSpec::new(&[12])?;
    let ctx = fiber_context(&g, &Subgroup::generated_by_indices(&g, &[3]))?;
    let mut rng = sampling::rng(1);

    let gens = vec![sampling::signal(&mut rng, 12)];
    let v = translate_span(&ctx, &gens)?;
    println!("S(A): dim {} (|Gamma| = {})", v.dim(), ctx.gamma().order());
    println!("invariant: {}", is_translation_invariant(&ctx, &v)?.invariant);

    let j = range_function(&ctx, &gens)?;
    println!("fiber dims J(omega) = {:?}, sum {}", j.dims(), j.total_dim());

    let back = space_from_range(&ctx, &j)?;
    println!(
        "V -> J -> V projector error: {:.2e}",
        max_abs(&(back.projector() - v.projector()))
    );

    let f = sampling::signal(&mut rng, 12);
    let p1 = v.project(&f);
    let p2 = project_via_fibers(&ctx, &j, &f)?;
    println!("projection, dense vs fiberwise: {:.2e}", p1.max_abs_diff(&p2));

    // A random range function is a range function of some invariant space.
    let j = sampling::range_function(&mut rng, &ctx, 0);
    let v = space_from_range(&ctx, &j)?;
    println!(
        "random J dims {:?} -> invariant: {}",
        j.dims(),
        is_translation_invariant(&ctx, &v)?.invariant
    );
    Ok(())
}
