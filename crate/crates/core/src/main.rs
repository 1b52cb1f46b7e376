use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lpsi_core::report::{run, ExperimentConfig, Status};

#[derive(Parser)]
#[command(name = "lpsi", version, about = "Two-sided approximation bounds for L^psi_{beta,1} classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate suites and write report.csv / report.md.
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Config file with one key=value per line; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Family, e.g. power:r=2, loglog:sp=2,gamma=1,K1=1,K2=1.72, harmlog:gamma=2,K1=e
    #[arg(long)]
    psi: Option<String>,
    /// Metric exponent (real > 1) or inf.
    #[arg(long)]
    s: Option<String>,
    /// Shift parameter beta (any real).
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// a..b, 2^a..2^b or a comma-separated list.
    #[arg(long)]
    n: Option<String>,
    /// Comma-separated: theorem1..theorem4, lemmas, corollaries, kernels, all.
    #[arg(long)]
    suite: Option<String>,
    /// l in D(l;n); defaults to n.
    #[arg(long)]
    l: Option<String>,
    /// Relative tolerance for certified sums.
    #[arg(long)]
    tol: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<String>,
    /// Seed for randomized sampling.
    #[arg(long)]
    seed: Option<String>,
    /// Max/min ratio spread allowed in corollary checks.
    #[arg(long)]
    spread: Option<String>,
}

fn build_config(args: &VerifyArgs) -> Result<ExperimentConfig, String> {
    let mut cfg = ExperimentConfig::default();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        cfg.apply_text(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let flags = [
        ("psi", &args.psi),
        ("s", &args.s),
        ("beta", &args.beta),
        ("n", &args.n),
        ("suite", &args.suite),
        ("l", &args.l),
        ("tol", &args.tol),
        ("out", &args.out),
        ("seed", &args.seed),
        ("spread", &args.spread),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, v).map_err(|e| e.to_string())?;
        }
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::Config.code() } else { 0 });
        }
    };
    let Command::Verify(args) = cli.command;
    let cfg = match build_config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Status::Config.code());
        }
    };
    let outcome = run(&cfg);
    if outcome.status == Status::Pass {
        println!("{}", outcome.message);
    } else {
        eprintln!("{:?}: {}", outcome.status, outcome.message);
    }
    ExitCode::from(outcome.status.code())
}
