use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lca_fiber::cli::{cmd_analyze, cmd_check, cmd_demo_diffop, CommandReport, RunConfig, EXIT_INPUT};

#[derive(Parser)]
#[command(
    name = "lca-fiber",
    about = "Range functions and range operators on finite abelian groups"
)]
struct Args {
    /// Override every relative tolerance.
    #[arg(long, global = true)]
    tol_rel: Option<f64>,
    /// Override every absolute tolerance.
    #[arg(long, global = true)]
    tol_abs: Option<f64>,
    /// Seed for the randomized suites of `check`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print the JSON report instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a matrix for translation preservation and verify its field.
    Analyze { spec: PathBuf, operator: PathBuf },
    /// Run U f(x) = f(x) - f(x - step) on Z_modulus through the pipeline.
    DemoDiffop {
        #[arg(allow_negative_numbers = true)]
        modulus: i64,
        #[arg(allow_negative_numbers = true)]
        step: i64,
    },
    /// Run the invariant suites on a group spec.
    Check { spec: PathBuf },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = RunConfig {
        tol_rel: args.tol_rel,
        tol_abs: args.tol_abs,
        seed: args.seed,
        json: args.json,
        out: args.out,
    };
    let report: CommandReport = match &args.command {
        Command::Analyze { spec, operator } => cmd_analyze(spec, operator, &cfg),
        Command::DemoDiffop { modulus, step } => cmd_demo_diffop(*modulus, *step, &cfg),
        Command::Check { spec } => cmd_check(spec, &cfg),
    };
    let mut code = report.exit_code;
    if let Some(path) = &cfg.out {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("cannot write {}: {e}", path.display());
            code = EXIT_INPUT;
        }
    }
    if cfg.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(code as u8)
}
