use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "hyperham", version, about = "Hamiltonian ℓ-cycles in k-uniform hypergraphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every randomized stage; a fresh one is drawn and reported when omitted.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; output does not depend on this.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// Largest n accepted by the cycle census.
    #[arg(long, global = true, default_value_t = 12)]
    pub limit_n: usize,
    /// Write tables (or the generated instance) here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Plain,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Complete,
    Binomial,
    #[value(alias = "dirac_rejection")]
    Dirac,
    Bipartite3,
    #[value(alias = "h_epsilon")]
    HEpsilon,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    Cycles,
    Matchings,
    Permanent,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate an instance in the text format.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Exhaustive counts on a small instance.
    Oracle {
        instance: PathBuf,
        #[arg(long, default_value_t = 1)]
        ell: usize,
        #[arg(long, value_enum, default_value_t = OracleMode::Cycles)]
        mode: OracleMode,
    },
    /// Closed-form counts and bounds.
    Formula {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        ell: Option<usize>,
        /// Print Ψ_k(n, ℓ) exactly.
        #[arg(long)]
        psi: bool,
        /// Print ln Ψ_k(n, ℓ).
        #[arg(long)]
        psi_ln: bool,
        /// Print c_k(ℓ).
        #[arg(long)]
        c: bool,
        /// Print ln(slack^n Ψ δ^{n/(k-ℓ)}); needs --delta.
        #[arg(long)]
        dirac_bound: bool,
        /// Print ln((n-1)! p^n / 2); needs --p.
        #[arg(long)]
        gnp: bool,
        /// Print ln(m! (d/m)^m); needs --m and --d.
        #[arg(long)]
        ck: bool,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        slack: f64,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        d: Option<f64>,
    },
    /// Minimum-degree concentration of the auxiliary bipartite graph.
    Bpi {
        instance: PathBuf,
        /// One part per line, vertices separated by spaces.
        #[arg(long, conflicts_with = "m")]
        partition: Option<PathBuf>,
        /// Draw k random parts of this size instead of reading a partition.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Sample distinct Hamiltonian ℓ-cycles.
    Pipeline {
        instance: PathBuf,
        #[arg(long, default_value_t = 1)]
        ell: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Target number of paths.
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Target connector block size.
        #[arg(long, default_value_t = 5)]
        t: usize,
        #[arg(long, default_value_t = 0.2)]
        eta: f64,
        /// Minimum partite co-degree of a partition, or `auto` for ⌈(δ - 0.1) m⌉.
        #[arg(long, default_value = "0")]
        dstar_threshold: String,
        #[arg(long, default_value_t = 20)]
        max_tries: usize,
        /// Re-validate the cycle lines of a previous run instead of sampling.
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Oracle counts against the closed form over a grid of sizes and densities.
    Scan {
        #[arg(long, value_enum, default_value_t = Family::Binomial)]
        family: Family,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        ell: usize,
        /// Comma-separated vertex counts.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Comma-separated edge probabilities (binomial).
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
        /// Comma-separated Dirac ratios (dirac).
        #[arg(long, value_delimiter = ',')]
        delta: Vec<f64>,
        /// Instances per cell.
        #[arg(long, default_value_t = 1)]
        reps: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("E: {first}");
            return ExitCode::from(2);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("E: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
