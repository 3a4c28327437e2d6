//! The Zak transform on Z_4 with Gamma = {0, 2}: unitary, and it turns
//! translation by Gamma into multiplication by a character.
//!
//! cargo run --example zak_transform

use lca_fiber::group::translate_index;
use lca_fiber::{
    determining_function, fiber_context, zak, zak_inverse, GroupElement, GroupSpec, SignalVector, Subgroup,
};

fn main() -> lca_fiber::Result<()> {
    let g = GroupSpec::new(&[4])?;
    let ctx = fiber_context(&g, &Subgroup::generated_by_indices(&g, &[2]))?;

    let f = SignalVector::from_real(&[1.0, 2.0, 3.0, 4.0]);
    let zf = zak(&ctx, &f)?;
    for (w, fiber) in zf.fibers().iter().enumerate() {
        let entries: Vec<String> = fiber.iter().map(|z| format!("{:+.4}{:+.4}i", z.re, z.im)).collect();
        println!("Zf(omega_{w}) = [{}]", entries.join(", "));
    }
    println!("||f|| = {:.6}, ||Zf|| = {:.6}", f.norm(), zf.norm());
    println!("inverse error = {:.2e}", zak_inverse(&ctx, &zf)?.max_abs_diff(&f));

    let two = GroupElement::new(&g, &[2])?;
    let lhs = zak(&ctx, &translate_index(&g, &f, 2)?)?;
    let rhs = determining_function(&ctx, &two)?.apply(&zf);
    println!("Z(T_2 f) vs X_2 Zf: {:.2e}", lhs.max_abs_diff(&rhs));
    Ok(())
}
