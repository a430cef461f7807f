use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use upp_elab::cli::{run, RunConfig};
use upp_elab::elab::Pts;
use upp_elab::kernel::DEFAULT_FUEL;

/// Elaborate an input signature into a universe-polymorphic one.
#[derive(Parser)]
#[command(version)]
struct Args {
    /// Input signature.
    #[arg(long)]
    input: PathBuf,
    /// Constraint file, one `entry : level == level .` per line.
    #[arg(long)]
    constraints: Option<PathBuf>,
    /// Where to write the output signature.
    #[arg(long, required_unless_present = "dry_run")]
    output: Option<PathBuf>,
    /// Also write an Agda-style rendering here.
    #[arg(long)]
    agda_out: Option<PathBuf>,
    /// Accept non-general level assignments when unification gets stuck.
    #[arg(long)]
    heuristic: bool,
    /// Write unifier steps to `<output>.trace`.
    #[arg(long)]
    trace: bool,
    /// Head-reduction budget per conversion.
    #[arg(long, default_value_t = DEFAULT_FUEL, value_parser = clap::value_parser!(u64).range(1..))]
    fuel: u64,
    /// Sort layout: `I`, `P`, or `sorts=a,b;axioms=a:b;rules=a:b:c,…`.
    #[arg(long, default_value = "I")]
    pts: Pts,
    /// Print each entry's erased form with its generated level variables.
    #[arg(long)]
    dry_run: bool,
}

fn main() -> ExitCode {
    let a = Args::parse();
    let cfg = RunConfig {
        input: a.input,
        constraints: a.constraints,
        output: a.output.unwrap_or_default(),
        agda_out: a.agda_out,
        heuristic: a.heuristic,
        trace: a.trace,
        fuel: a.fuel,
        pts: a.pts,
        dry_run: a.dry_run,
    };
    let report = run(&cfg);
    print!("{}", report.stdout);
    for d in &report.diagnostics {
        eprintln!("{d}");
    }
    ExitCode::from(report.exit_code as u8)
}
