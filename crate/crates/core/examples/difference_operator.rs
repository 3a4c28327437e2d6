//! U f(x) = f(x) - f(x - d) on Z_N with Gamma = <d>: every fiber operator is
//! the scalar 1 - <d, omega>, and ||U|| is the largest of their moduli.
//!
//! cargo run --example difference_operator -- 8 2

use lca_fiber::cli::{cmd_demo_diffop, RunConfig};

fn main() {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, d) = match args[..] {
        [n, d] => (n, d),
        _ => (8, 2),
    };
    let rep = cmd_demo_diffop(n, d, &RunConfig::default());
    print!("{}", rep.to_text());
    std::process::exit(rep.exit_code);
}
