use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use trscert_cli::{Outcome, SearchArgs, EXIT_INPUT};

/// Checks termination certificates for term rewrite systems.
#[derive(Parser)]
#[command(name = "trscert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a certificate. Exit 0 certified, 1 rejected, 2 unsupported, 3 bad input.
    Certify { trs: PathBuf, cert: PathBuf },
    /// Show how one step orients the rules still present before it.
    Orient {
        trs: PathBuf,
        cert: PathBuf,
        #[arg(long, default_value_t = 0)]
        step: usize,
    },
    /// Brute-force a certificate over a finite coefficient grid.
    Search {
        trs: PathBuf,
        #[arg(long)]
        regime: String,
        #[arg(long)]
        carrier: String,
        /// Comma-separated scalar literals, e.g. `-inf,0,1`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        grid: Vec<String>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        sd: Option<usize>,
        #[arg(long)]
        delta: Option<String>,
        /// Treat the rules as pairs to remove rather than rules of SN(R).
        #[arg(long)]
        ordered: bool,
        #[arg(long)]
        max_steps: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let outcome: Outcome = match cli.command {
        Command::Certify { trs, cert } => trscert_cli::certify(&trs, &cert),
        Command::Orient { trs, cert, step } => trscert_cli::orient(&trs, &cert, step),
        Command::Search {
            trs,
            regime,
            carrier,
            grid,
            dim,
            sd,
            delta,
            ordered,
            max_steps,
            budget,
        } => trscert_cli::search(
            &trs,
            &SearchArgs {
                regime,
                carrier,
                grid,
                dim,
                sd,
                delta,
                ordered,
                max_steps,
                budget,
            },
        ),
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
