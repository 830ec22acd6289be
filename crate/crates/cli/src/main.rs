use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cyclecalc_cli::{run_script, Format, RunOptions};

#[derive(Parser)]
#[command(name = "cyclecalc", version, about = "Run cycle-calculus job scripts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a TOML job script and print one record per command.
    Run {
        script: PathBuf,
        /// Stop at the first failing command.
        #[arg(long)]
        fail_fast: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Seed for randomized commands.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum number of expanded terms during symbol rewriting.
        #[arg(long, env = "CYCLECALC_STEP_BUDGET", default_value_t = cyclecalc::symbols::DEFAULT_STEP_BUDGET)]
        step_budget: u64,
        /// Add wall-clock milliseconds to each record.
        #[arg(long)]
        timing: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { script, fail_fast, format, seed, step_budget, timing } => {
            let text = match std::fs::read_to_string(&script) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read {}: {e}", script.display());
                    return ExitCode::from(2);
                }
            };
            let opts = RunOptions { fail_fast, seed, step_budget, timing };
            match run_script(&text, &opts, format) {
                Ok((out, ok)) => {
                    let _ = std::io::stdout().write_all(out.as_bytes());
                    if ok {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
    }
}
