//! `chisub`: generate, quantize, probe, mine and benchmark from the command line.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on data or validation errors.
//! Results go to stdout (or `--out`); the effective configuration and all
//! diagnostics go to stderr.

mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use chisub_core::Algorithm;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::CommandError;

#[derive(Debug, Parser)]
#[command(name = "chisub", version, about = "Top-k chi-square significant substring mining")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded synthetic dataset with geometric perturbation
    Gen(GenArgs),
    /// Map a numeric series to symbols through a binning scheme
    Quantize(QuantizeArgs),
    /// Report blocks and local maxima of a sequence
    Probe(ProbeArgs),
    /// Mine the top-k substrings
    Mine(MineArgs),
    /// Time miners and measure approximation ratios against the exact oracle
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Sequence file
    #[arg(long)]
    pub seq: PathBuf,
    /// Alphabet file (`label<TAB>probability` per line)
    #[arg(long)]
    pub alphabet: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long = "len")]
    pub length: usize,
    /// Alphabet size
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of perturbed chunks; 0 leaves the string uniform
    #[arg(long, default_value_t = chisub_core::datagen::DEFAULT_CHUNKS)]
    pub chunks: usize,
    #[arg(long = "geom-p", default_value_t = chisub_core::datagen::DEFAULT_GEOMETRIC_P)]
    pub geom_p: f64,
    /// Shortest chunk (default l/100)
    #[arg(long)]
    pub chunk_min: Option<usize>,
    /// Longest chunk (default l/20)
    #[arg(long)]
    pub chunk_max: Option<usize>,
    /// Sequence output file (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Alphabet output file (defaults to `<out>.alphabet`)
    #[arg(long)]
    pub alphabet: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QuantizeArgs {
    /// Numeric series: one number per line, or CSV with `--column`
    #[arg(long)]
    pub input: PathBuf,
    /// `cricket`, `clicks`, or a bins file (`lower_bound<TAB>label` per line)
    #[arg(long)]
    pub scheme: String,
    /// CSV column by header name or 0-based index
    #[arg(long)]
    pub column: Option<String>,
    /// Alphabet file whose probabilities replace the empirical ones
    #[arg(long)]
    pub probs: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Alphabet output file (defaults to `<out>.alphabet`)
    #[arg(long)]
    pub alphabet: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoChoice {
    Naive,
    Blocking,
    Arlm,
    Agmm,
    All,
}

impl AlgoChoice {
    pub fn algorithms(self) -> Vec<Algorithm> {
        match self {
            Self::Naive => vec![Algorithm::Naive],
            Self::Blocking => vec![Algorithm::Blocking],
            Self::Arlm => vec![Algorithm::Arlm],
            Self::Agmm => vec![Algorithm::Agmm],
            Self::All => Algorithm::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Args)]
pub struct MineArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "agmm")]
    pub algo: AlgoChoice,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    Len,
    M,
    K,
    Chunks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Table,
    Tsv,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Benchmark this sequence instead of generated data
    #[arg(long, requires = "alphabet")]
    pub seq: Option<PathBuf>,
    #[arg(long, requires = "seq")]
    pub alphabet: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "all")]
    pub algo: AlgoChoice,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub repeats: usize,
    #[arg(long, overrides_with = "no_ratio")]
    pub ratio: bool,
    #[arg(long, overrides_with = "ratio")]
    pub no_ratio: bool,
    /// Longest sequence the exact oracle may run on
    #[arg(long, default_value_t = chisub_core::bench::DEFAULT_ORACLE_CAP)]
    pub oracle_cap: usize,
    /// Run the oracle past the cap
    #[arg(long)]
    pub force_oracle: bool,
    #[arg(long = "len", default_value_t = 10_000)]
    pub length: usize,
    #[arg(long, default_value_t = 5)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = chisub_core::datagen::DEFAULT_CHUNKS)]
    pub chunks: usize,
    #[arg(long = "geom-p", default_value_t = chisub_core::datagen::DEFAULT_GEOMETRIC_P)]
    pub geom_p: f64,
    /// Generated datasets per point, seeded `seed`, `seed+1`, ...
    #[arg(long, default_value_t = 1)]
    pub datasets: u64,
    /// Parameter to sweep over `--values`
    #[arg(long, value_enum, requires = "values", conflicts_with = "seq")]
    pub sweep: Option<SweepParam>,
    #[arg(long, value_delimiter = ',', requires = "sweep")]
    pub values: Vec<usize>,
    /// Write long-format per-sweep rows to this file
    #[arg(long)]
    pub emit_plot_data: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: ReportFormat,
}

impl BenchArgs {
    pub fn ratio_enabled(&self) -> bool {
        !self.no_ratio
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = out.write_all(text.as_bytes());
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        1
                    } else {
                        0
                    }
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match commands::run(&cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
