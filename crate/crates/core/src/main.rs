use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use perc_lab::cli::{replay, run_file, CliError, RunOptions};

#[derive(Parser)]
#[command(name = "perc-lab", version, about = "Percolation laboratory")]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the experiment described by a TOML config.
    Run {
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Halve tail grids and truncation radii.
        #[arg(long)]
        fast: bool,
    },
    /// Re-run a manifest and compare output checksums.
    Replay { manifest: PathBuf },
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match args.cmd {
        Cmd::Run { config, seed, workers, out, fast } => match run_file(&config, &RunOptions { seed, workers, out, fast }) {
            Ok(m) => {
                for f in &m.outputs {
                    eprintln!("{}  {}", f.sha256, f.file);
                }
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Cmd::Replay { manifest } => match replay(&manifest) {
            Ok(r) => {
                for f in &r.files {
                    eprintln!("{}  {}", if f.pass { "ok  " } else { "FAIL" }, f.file);
                }
                if !r.hash_matches {
                    eprintln!("FAIL  config hash does not match the embedded config");
                }
                if r.pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => fail(e),
        },
    }
}
