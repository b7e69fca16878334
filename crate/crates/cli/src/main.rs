use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use torus_gcs_cli::{run_text, ExitStatus, Format, Overrides};

/// Exact verification of generalized complex tori, gerbes and mirror objects.
#[derive(Parser, Debug)]
#[command(name = "torus-gcs", version)]
struct Args {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Seed for sampled triples and generated morphisms.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of generated morphism samples for dg checks.
    #[arg(long)]
    samples: Option<usize>,
    /// Also re-run matrix-level checks in binary64.
    #[arg(long)]
    float: bool,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.config.display());
            return ExitCode::from(ExitStatus::InvalidInput.code() as u8);
        }
    };
    let overrides = Overrides { seed: args.seed, samples: args.samples, float_mode: args.float };
    let out = run_text(&text, &overrides, args.format);
    print!("{}", out.stdout);
    if let Some(e) = &out.stderr {
        eprintln!("{e}");
    }
    ExitCode::from(out.status.code() as u8)
}
