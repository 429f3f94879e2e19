//! `cantomine`: mine parallel sentences from two Wikipedia editions, build
//! dataset splits and score baselines.

mod commands;
mod config;
mod error;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use cantomine::corpus::CorpusFormat;
use cantomine::mining::DedupScope;
use cantomine::wiki::LinkFormat;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "cantomine",
    version,
    about = "Parallel sentence mining between Wikipedia editions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and clean a pages-articles XML dump into article JSON lines.
    Ingest(IngestArgs),
    /// Match articles of two editions through interlanguage links.
    Pair(PairArgs),
    /// Mine sentence pairs from paired articles.
    Mine(MineArgs),
    /// Count mined pairs at several thresholds.
    Sweep(SweepArgs),
    /// Split the datasets of a manifest into train/valid/test files.
    Split(SplitArgs),
    /// Corpus BLEU of a hypothesis file against a reference file.
    Bleu(BleuArgs),
    /// Score baseline systems on the test split of every dataset.
    Report(ReportArgs),
}

#[derive(Args)]
pub struct IngestArgs {
    #[arg(long)]
    pub dump: PathBuf,
    /// Language code stored with each article, e.g. `zh-yue`.
    #[arg(long)]
    pub lang: String,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct PairArgs {
    /// Source-language articles (JSON lines).
    #[arg(long)]
    pub src: PathBuf,
    /// Target-language articles (JSON lines).
    #[arg(long)]
    pub tgt: PathBuf,
    #[arg(long)]
    pub links: PathBuf,
    #[arg(long, default_value = "tsv")]
    pub links_format: LinkFormat,
    /// TSV columns are `src_title\ttgt_title` instead of target first.
    #[arg(long)]
    pub reverse: bool,
    /// `ll_lang` to keep from an SQL dump. Defaults to the language of the
    /// source articles.
    #[arg(long)]
    pub source_lang: Option<String>,
    /// Drop links whose titles match this regex.
    #[arg(long)]
    pub exclude: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct MiningInputs {
    /// Article pair listing written by `pair`.
    #[arg(long)]
    pub pairs: PathBuf,
    #[arg(long)]
    pub src: PathBuf,
    #[arg(long)]
    pub tgt: PathBuf,
    /// Run configuration (JSON).
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub no_digit_filter: bool,
    #[arg(long)]
    pub dedup_scope: Option<DedupScope>,
    #[arg(long)]
    pub min_tokens: Option<usize>,
}

#[derive(Args)]
pub struct MineArgs {
    #[command(flatten)]
    pub inputs: MiningInputs,
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(long, default_value = "tsv")]
    pub format: CorpusFormat,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub inputs: MiningInputs,
    /// Comma-separated thresholds, e.g. `0.9,0.93,0.95`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub thresholds: Vec<f64>,
    /// Write the table here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SplitArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory; created if missing.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct BleuArgs {
    #[arg(long)]
    pub hyp: PathBuf,
    #[arg(long = "ref")]
    pub reference: PathBuf,
    #[arg(long)]
    pub lowercase: bool,
}

#[derive(Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// Comma-separated: `copy`, `lexicon`, or `file:NAME=DIR` reading
    /// `DIR/<test set>.txt`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub systems: Vec<String>,
    /// Extra lexicon entries (TSV) added to the built-in mappings.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub lowercase: bool,
    /// Also write the TSV report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ingest(a) => commands::ingest(&a),
        Command::Pair(a) => commands::pair(&a),
        Command::Mine(a) => commands::mine(&a),
        Command::Sweep(a) => commands::sweep(&a),
        Command::Split(a) => commands::split(&a),
        Command::Bleu(a) => commands::bleu(&a),
        Command::Report(a) => commands::report(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("cantomine: {f}");
            ExitCode::from(f.code)
        }
    }
}
