mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::CliConfig;

/// Binary linear codes: spectra, LP bounds, canonical forms, classification.
#[derive(Parser, Debug)]
#[command(name = "gf2codes", version)]
pub struct Cli {
    /// Settings file with `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Node cap for each canonical labelling.
    #[arg(long, global = true)]
    max_nodes: Option<u64>,
    /// Search-node cap for classification; exceeding it checkpoints and exits 2.
    #[arg(long, global = true)]
    work_budget: Option<u64>,
    #[arg(long, global = true)]
    max_dim: Option<usize>,
    #[arg(long, global = true)]
    max_len: Option<usize>,
    /// Worker threads for classify, extend and scan-columns.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Parents per checkpoint unit.
    #[arg(long, global = true)]
    chunk: Option<usize>,
    /// Directory for database files and checkpoints.
    #[arg(long, global = true)]
    db_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weight distribution of a generator matrix.
    Wd { matrix: PathBuf },
    /// Dual weight distribution via MacWilliams.
    Dual { matrix: PathBuf },
    /// Minimum distance.
    Mindist { matrix: PathBuf },
    /// Residual code of a codeword, given as a 0/1 string.
    Residual { matrix: PathBuf, codeword: String },
    /// Canonical generator matrix and certificate.
    Canon {
        matrix: PathBuf,
        /// Also check certificate invariance under this many random re-encodings.
        #[arg(long, default_value_t = 0)]
        check: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Equivalence test with a coordinate permutation witness.
    Iso { a: PathBuf, b: PathBuf },
    /// Automorphism group order.
    Aut { matrix: PathBuf },
    /// Solve a linear program in the text format.
    Lp {
        file: PathBuf,
        /// Integer-tighten these variables (comma separated; `all` for every A_ variable).
        #[arg(long)]
        tighten: Option<String>,
    },
    /// Griesmer lower bound on the length of a [n,k,d] code.
    Griesmer { k: usize, d: u64 },
    /// Classify all codes of a weight set, dimension by dimension.
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Print per-length counts instead of database records.
        #[arg(long)]
        summary: bool,
    },
    /// Extend parent databases by one dimension at a single length.
    Extend {
        #[arg(long, num_args = 1.., required = true)]
        parents: Vec<PathBuf>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Replace every column by every nonzero vector.
    ScanColumns { matrix: PathBuf },
    /// Rerun the published claims as named checks.
    VerifyPaper {
        /// Highest tier to run (0 seconds, 1 minutes, 2 hours, 3 unbounded).
        #[arg(long)]
        tier: Option<u8>,
        /// Run only these check ids.
        #[arg(long = "check")]
        checks: Vec<String>,
        /// Only the one-line `CHECK` summaries.
        #[arg(long)]
        machine: bool,
        /// Include wall time per check.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args, Debug)]
pub struct SpecArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    nmin: usize,
    #[arg(long)]
    nmax: usize,
    /// Allowed weights: `20,24,28` or ranges `20..46:2`.
    #[arg(long, required_unless_present = "min_distance")]
    weights: Option<String>,
    /// All weights from this value up to nmax.
    #[arg(long, conflicts_with = "weights")]
    min_distance: Option<usize>,
    /// Weights to exclude.
    #[arg(long)]
    forbid: Option<String>,
    /// Every weight divisible by this.
    #[arg(long, default_value_t = 1)]
    divisor: usize,
    #[arg(long)]
    projective: bool,
    /// Allow zero columns.
    #[arg(long)]
    allow_zero_columns: bool,
}

fn build_config(cli: &Cli) -> Result<CliConfig, String> {
    let mut c = CliConfig::default();
    if let Some(path) = &cli.config {
        c.load_file(path)?;
    }
    c.apply_env(std::env::vars())?;
    let flags: [(&str, Option<String>); 7] = [
        ("chunk", cli.chunk.map(|v| v.to_string())),
        ("max_nodes", cli.max_nodes.map(|v| v.to_string())),
        ("work_budget", cli.work_budget.map(|v| v.to_string())),
        ("max_dim", cli.max_dim.map(|v| v.to_string())),
        ("max_len", cli.max_len.map(|v| v.to_string())),
        ("workers", cli.workers.map(|v| v.to_string())),
        ("db_dir", cli.db_dir.as_ref().map(|p| p.display().to_string())),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            c.set(k, &v)?;
        }
    }
    if let Command::VerifyPaper { tier: Some(t), .. } = &cli.command {
        c.set("tier", &t.to_string())?;
    }
    Ok(c)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { commands::EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let config = match build_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("gf2codes: {e}");
            return ExitCode::from(commands::EXIT_USAGE);
        }
    };
    if config.workers > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(config.workers).build_global();
    }
    let mut out = std::io::stdout().lock();
    ExitCode::from(commands::dispatch(&cli.command, &config, &mut out))
}
