//! Subgroups, annihilators and coset transversals of Z_2 x Z_4.
//!
//! cargo run --example group_duality

use lca_fiber::{annihilator, transversal, GroupElement, GroupSpec, Subgroup};

fn main() -> lca_fiber::Result<()> {
    let g = GroupSpec::new(&[2, 4])?;
    let gamma = Subgroup::generated(&g, &[GroupElement::new(&g, &[1, 2])?])?;
    let star = annihilator(&g, &gamma);

    println!("G = Z_2 x Z_4, |G| = {}", g.order());
    println!("Gamma       = {:?}", gamma.element_coords());
    println!("Gamma^perp  = {:?}", star.element_coords());

    // Omega indexes the fibers (a section of the dual modulo Gamma^perp),
    // C is a section of G modulo Gamma.
    println!("Omega       = {:?}", transversal(&g, &star).rep_coords());
    println!("C           = {:?}", transversal(&g, &gamma).rep_coords());

    println!("\npairing <gamma, omega> on Gamma x Omega:");
    let omega = transversal(&g, &star);
    for &x in gamma.elements() {
        let row: Vec<String> = omega
            .reps()
            .iter()
            .map(|&k| {
                let z = g.pairing_index(x, k);
                format!("{:+.0}{:+.0}i", z.re, z.im)
            })
            .collect();
        println!("  {:?}: {}", g.coords_of(x), row.join("  "));
    }
    Ok(())
}
