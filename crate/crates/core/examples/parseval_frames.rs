//! Principal decomposition of an invariant space: generators whose fibers
//! are unit or zero, and the Parseval frame their translates form.
//!
//! cargo run --example parseval_frames

use lca_fiber::sampling;
use lca_fiber::spaces::{frame_deviation, parseval_fiber_check, translate_span};
use lca_fiber::{fiber_context, principal_decomposition, translate_frame, zak, GroupSpec, Subgroup};

fn main() -> lca_fiber::Result<()> {
    let g = GroupSpec::new(&[4, 4])?;
    let ctx = fiber_context(
        &g,
        &Subgroup::generated_by_indices(&g, &[g.index_of(&lca_fiber::GroupElement::new(&g, &[1, 2])?)?]),
    )?;
    let mut rng = sampling::rng(3);

    let gens: Vec<_> = (0..2).map(|_| sampling::signal(&mut rng, 16)).collect();
    let v = translate_span(&ctx, &gens)?;
    println!("V = S(a, b): dim {}", v.dim());

    let phis = principal_decomposition(&ctx, &v)?;
    for (n, phi) in phis.iter().enumerate() {
        let norms: Vec<String> = zak(&ctx, phi)?
            .fibers()
            .iter()
            .map(|f| format!("{:.3}", f.norm()))
            .collect();
        println!(
            "phi_{n}: fiber norms [{}], parseval: {}",
            norms.join(", "),
            parseval_fiber_check(&ctx, phi)?
        );
    }

    // Each translate carries the Haar weight 1/|Gamma|.
    let frame = translate_frame(&ctx, &phis)?;
    println!(
        "{} frame vectors, frame operator vs P_V: {:.2e}",
        frame.len(),
        frame_deviation(&frame, &v)?
    );

    let f = sampling::signal(&mut rng, 16);
    let energy: f64 = frame.iter().map(|y| f.inner(y).norm_sqr()).sum();
    println!("sum |<f, y>|^2 = {:.12}", energy);
    println!("||P_V f||^2    = {:.12}", v.project(&f).norm().powi(2));
    Ok(())
}
