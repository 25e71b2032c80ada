use clap::{Parser, Subcommand};
use mqv::pipeline::{Command, Options};
use mqv::{load, run_all, Overrides};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mqv",
    version,
    about = "Checks for multiplicative preprojective representations and their Ext complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Instance file; repeat for several instances.
    #[arg(long, global = true)]
    instance: Vec<PathBuf>,
    /// Overrides the instance seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Prime for the subspace search.
    #[arg(long, global = true)]
    prime: Option<u64>,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Writes the report here instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Adds the first-order deformation check to `ext` and `verify-all`.
    #[arg(long, global = true)]
    first_order: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Parse and validate instances.
    Validate,
    /// Symbolic identities of the relation.
    Identities,
    /// Sample (or read) a representation.
    Sample,
    /// Check the relation on the representation.
    Check,
    /// Stability verdicts and induction compatibility.
    Stability,
    /// The Ext complex of the induced module with itself.
    Ext,
    /// Every stage in order.
    VerifyAll,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Validate => Command::Validate,
            Cmd::Identities => Command::Identities,
            Cmd::Sample => Command::Sample,
            Cmd::Check => Command::Check,
            Cmd::Stability => Command::Stability,
            Cmd::Ext => Command::Ext,
            Cmd::VerifyAll => Command::VerifyAll,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.instance.is_empty() {
        eprintln!("error: at least one --instance is required");
        return ExitCode::from(2);
    }
    let overrides = Overrides {
        seed: cli.seed,
        prime: cli.prime,
    };
    let mut loaded = Vec::new();
    for path in &cli.instance {
        let shown = path.display().to_string();
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("{shown}: {e}");
                return ExitCode::from(2);
            }
        };
        match load(&shown, &text, overrides) {
            Ok(l) => loaded.push(l),
            Err(e) => {
                eprintln!("{shown}:{e}");
                return ExitCode::from(2);
            }
        }
    }
    let started = std::time::Instant::now();
    let report = run_all(
        &loaded,
        cli.command.into(),
        Options {
            first_order: cli.first_order,
        },
        cli.jobs,
    );
    eprintln!(
        "{} finished in {:.3}s",
        report.command,
        started.elapsed().as_secs_f64()
    );
    let text = report.render();
    match &cli.report {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("{}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
