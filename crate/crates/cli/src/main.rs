//! Command-line front end for the q-immanant verification suites.
//!
//! `qimm verify` assembles a configuration from an optional JSON file plus
//! command-line flags (flags win), runs the selected suites, and renders the
//! report as canonical JSON or human-readable text.  Exit code 0 means every
//! check passed, 1 means at least one check failed, 2 means the configuration
//! was invalid.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qimm_core::suites::{self, VerifyConfig};

#[derive(Parser)]
#[command(name = "qimm", version, about = "Exact checks for q-immanant central elements of quantum gl(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and emit a report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run (repeatable); "all" selects every suite available at the chosen n.
    #[arg(long = "suite")]
    suite: Vec<String>,

    /// Matrix size n of quantum gl(n).
    #[arg(long)]
    n: Option<usize>,

    /// Module site count (repeatable); overrides the per-suite defaults.
    #[arg(long = "N")]
    module_sites: Vec<usize>,

    /// Largest immanant degree m.
    #[arg(long)]
    m_max: Option<usize>,

    /// Largest Hecke algebra degree for the hecke suite.
    #[arg(long)]
    hecke_m_max: Option<usize>,

    /// Deformation parameter as a rational "p/r", not 0 or a root of unity.
    #[arg(long)]
    q: Option<String>,

    /// Sample point for the immanant polynomial variable (repeatable), as "p/r".
    #[arg(long = "z")]
    z: Vec<String>,

    /// Truncation order for the Newton identity series in 1/u.
    #[arg(long)]
    newton_order: Option<usize>,

    /// Largest immanant degree for the capelli suite.
    #[arg(long)]
    capelli_m_max: Option<usize>,

    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Worker thread count.
    #[arg(long)]
    jobs: Option<usize>,

    /// Report rendering.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,

    /// JSON file with a base configuration; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Record per-check wall-clock times in the report.
    #[arg(long)]
    timings: bool,
}

fn merged_config(args: &VerifyArgs) -> Result<VerifyConfig, String> {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
            serde_json::from_str(&text).map_err(|e| format!("invalid config file: {}", e))?
        }
        None => VerifyConfig::default(),
    };
    if !args.suite.is_empty() {
        config.suites = args.suite.clone();
    }
    if let Some(n) = args.n {
        config.n = n;
    }
    if !args.module_sites.is_empty() {
        config.module_sites = args.module_sites.clone();
    }
    if let Some(m) = args.m_max {
        config.m_max = m;
    }
    if let Some(m) = args.hecke_m_max {
        config.hecke_m_max = m;
    }
    if let Some(q) = &args.q {
        config.q = q.clone();
    }
    if !args.z.is_empty() {
        config.z = args.z.clone();
    }
    if let Some(order) = args.newton_order {
        config.newton_order = order;
    }
    if let Some(m) = args.capelli_m_max {
        config.capelli_m_max = m;
    }
    if let Some(jobs) = args.jobs {
        config.jobs = jobs;
    }
    if args.timings {
        config.timings = true;
    }
    Ok(config)
}

fn verify(args: VerifyArgs) -> ExitCode {
    let config = match merged_config(&args) {
        Ok(config) => config,
        Err(msg) => {
            eprintln!("error: {}", msg);
            return ExitCode::from(2);
        }
    };
    let report = match suites::run(&config) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    };
    let rendered = match args.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    if let Some(path) = &args.out {
        if let Err(e) = fs::write(path, &rendered) {
            eprintln!("error: cannot write {}: {}", path.display(), e);
            return ExitCode::from(2);
        }
    } else {
        print!("{}", rendered);
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify(args) => verify(args),
    }
}
