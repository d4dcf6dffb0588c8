//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::analyzer::batch_analyze;
use crate::corpus::{build_instance_base, parse_lexicon_with, AnnotatedWord, Task, Window};
use crate::eval::{run_xval_many, XvalConfig};
use crate::info::feature_report;
use crate::model::{Algorithm, Model};

pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Parser)]
#[command(name = "morphseg", version, about = "Memory-based morphological segmentation")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Train a model on an annotated lexicon and write it to disk.
    Train(TrainArgs),
    /// Segment words (one per line) with a trained model.
    Analyze(AnalyzeArgs),
    /// Cross-validate one or more algorithms.
    Xval(XvalArgs),
    /// Print information gain and gain ratio per feature.
    Gain(GainArgs),
    /// Print node and arc counts of an IGTree model.
    Stats(StatsArgs),
}

#[derive(Debug, Args)]
struct CorpusArgs {
    /// Lexicon file: `surface<TAB>seg/tag( seg/tag)*` per line.
    #[arg(long)]
    corpus: PathBuf,
    /// Task: m1, m2 or m3.
    #[arg(long, default_value = "m3")]
    task: Task,
    /// Context widths as LEFT,RIGHT.
    #[arg(long, default_value = "3,3")]
    window: Window,
    /// Lowercase every word on ingestion.
    #[arg(long)]
    lowercase: bool,
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, default_value = "ib1ig")]
    algo: Algorithm,
    /// Where to write the model.
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(long)]
    model: PathBuf,
    /// Words to analyze, one per line (default: standard input).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    lowercase: bool,
}

#[derive(Debug, Args)]
struct XvalArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Algorithms to compare (repeat or comma-separate).
    #[arg(long, value_delimiter = ',', default_value = "ib1,ib1ig,igtree")]
    algo: Vec<Algorithm>,
    /// Number of folds.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(2..))]
    k: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GainArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Data(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Data(format!("standard output: {e}"))),
    }
}

fn load_corpus(args: &CorpusArgs) -> Result<Vec<AnnotatedWord>, CliError> {
    let text = read_file(&args.corpus)?;
    let words = parse_lexicon_with(&text, args.lowercase)
        .map_err(|e| CliError::Data(format!("{}: {e}", args.corpus.display())))?;
    if words.is_empty() {
        return Err(CliError::Data(format!("{}: corpus has no words", args.corpus.display())));
    }
    Ok(words)
}

fn load_model(path: &Path) -> Result<Model, CliError> {
    let text = read_file(path)?;
    Model::from_text(&text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn gain_table(rows: &[crate::info::FeatureReport]) -> String {
    let mut out = String::from("feature\toffset\tgain\tgain_ratio\n");
    for r in rows {
        out.push_str(&format!(
            "{}\t{:+}\t{:.6}\t{:.6}{}\n",
            r.index,
            r.offset,
            r.gain,
            r.gain_ratio.value,
            if r.gain_ratio.degenerate { "\tdegenerate" } else { "" }
        ));
    }
    out
}

fn train(args: &TrainArgs) -> Result<(), CliError> {
    let words = load_corpus(&args.corpus)?;
    let base = build_instance_base(&words, args.corpus.task, args.corpus.window)
        .map_err(|e| CliError::Data(e.to_string()))?;
    let mut out = String::new();
    out.push_str(&format!("words\t{}\n", words.len()));
    out.push_str(&format!("instances\t{}\n", base.global().total()));
    out.push_str(&format!("unique_vectors\t{}\n", base.len()));
    out.push_str(&gain_table(&feature_report(&base)));
    let model = Model::train(base, args.algo);
    if let Some(tree) = model.tree() {
        let s = tree.stats();
        eprintln!("igtree: {} nodes, {} arcs, compression {:.4}", s.nodes, s.arcs, s.compression);
    }
    fs::write(&args.model, model.to_text())
        .map_err(|e| CliError::Data(format!("{}: {e}", args.model.display())))?;
    eprintln!(
        "trained {} on {} words ({}), model written to {}",
        args.algo,
        words.len(),
        args.corpus.task,
        args.model.display()
    );
    write_output(args.output.as_deref(), &out)
}

fn analyze(args: &AnalyzeArgs) -> Result<(), CliError> {
    let model = load_model(&args.model)?;
    let mut input = String::new();
    match &args.input {
        Some(p) => input = read_file(p)?,
        None => {
            io::stdin()
                .read_to_string(&mut input)
                .map_err(|e| CliError::Data(format!("standard input: {e}")))?;
        }
    }
    let words: Vec<String> = input
        .lines()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty())
        .map(|l| if args.lowercase { l.to_lowercase() } else { l.to_string() })
        .collect();
    let start = Instant::now();
    let results = batch_analyze(&model, &words);
    let elapsed = start.elapsed().as_secs_f64();
    let mut out = String::new();
    let (mut failed, mut coerced) = (0, 0);
    for r in &results {
        match r {
            Ok(seg) => {
                coerced += usize::from(seg.coerced());
                out.push_str(&seg.to_string());
                out.push('\n');
            }
            Err(e) => {
                failed += 1;
                eprintln!("{e}");
            }
        }
    }
    write_output(args.output.as_deref(), &out)?;
    eprintln!(
        "analyzed {} words ({} failed, {} coerced) in {:.3}s, {:.0} words/s",
        results.len(),
        failed,
        coerced,
        elapsed,
        results.len() as f64 / elapsed.max(1e-9)
    );
    if failed > 0 {
        return Err(CliError::Data(format!("{failed} words could not be analyzed")));
    }
    Ok(())
}

fn xval(args: &XvalArgs) -> Result<(), CliError> {
    let words = load_corpus(&args.corpus)?;
    let mut algos = Vec::new();
    for a in &args.algo {
        if !algos.contains(a) {
            algos.push(*a);
        }
    }
    let config = XvalConfig {
        task: args.corpus.task,
        window: args.corpus.window,
        k: args.k as usize,
        seed: args.seed,
    };
    let report = run_xval_many(&words, &config, &algos).map_err(|e| CliError::Usage(e.to_string()))?;
    for s in &report.summaries {
        eprintln!(
            "{} {}: word error {:.2}% (sd {:.2}), instance error {:.2}% (sd {:.2})",
            s.algorithm,
            s.task,
            100.0 * s.word_error.mean,
            100.0 * s.word_error.sd,
            100.0 * s.instance_error.mean,
            100.0 * s.instance_error.sd
        );
    }
    write_output(args.output.as_deref(), &report.to_tsv())
}

fn gain(args: &GainArgs) -> Result<(), CliError> {
    let words = load_corpus(&args.corpus)?;
    let base = build_instance_base(&words, args.corpus.task, args.corpus.window)
        .map_err(|e| CliError::Data(e.to_string()))?;
    write_output(args.output.as_deref(), &gain_table(&feature_report(&base)))
}

fn stats(args: &StatsArgs) -> Result<(), CliError> {
    let model = load_model(&args.model)?;
    let tree = model.tree().ok_or_else(|| {
        CliError::Data(format!(
            "{}: stats needs an igtree model, found {}",
            args.model.display(),
            model.algorithm()
        ))
    })?;
    let s = tree.stats();
    let text = format!(
        "nodes\tarcs\tunique_vectors\tfeatures\tcompression\n{}\t{}\t{}\t{}\t{:.6}\n",
        s.nodes,
        s.arcs,
        tree.unique_vectors(),
        tree.width(),
        s.compression
    );
    write_output(args.output.as_deref(), &text)
}

/// Parses `args` (including the program name) and runs the subcommand,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Train(a) => train(a),
        Command::Analyze(a) => analyze(a),
        Command::Xval(a) => xval(a),
        Command::Gain(a) => gain(a),
        Command::Stats(a) => stats(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
