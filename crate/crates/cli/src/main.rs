//! `namefinder`: train, decode, score, and learning-curve front end.
//!
//! Exit codes: 0 success, 1 usage, 2 parse or format error, 3 I/O error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use namefinder::corpus::NameClass;
use namefinder::decoder::decode_sentences_parallel;
use namefinder::experiment::{learning_curve, DEFAULT_FRACTIONS};
use namefinder::synth::{generate, SynthConfig};
use namefinder::{emit_annotated, parse_annotated, read_model, score, tokenize, train, write_model, FeatureConfig};

#[derive(Parser)]
#[command(name = "namefinder", version, about = "Bigram-HMM name finder")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count an annotated corpus into a model file.
    Train {
        corpus: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        features: FeatureArgs,
    },
    /// Find names in plain text and write annotated output.
    Decode {
        input: PathBuf,
        #[arg(long)]
        model: PathBuf,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Input is one tokenized sentence per line; any markup is stripped.
        #[arg(long)]
        pretokenized: bool,
    },
    /// Score a response file against a key file.
    Score {
        key: PathBuf,
        response: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
    },
    /// Train on growing prefixes of a corpus and score each on a test set.
    LearningCurve {
        training: PathBuf,
        test: PathBuf,
        /// Comma-separated fractions such as `1,1/2,1/4,1/8`.
        #[arg(long, value_parser = parse_fractions)]
        fractions: Option<Fractions>,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        /// Reserved: subsets are prefixes, so the seed does not change results.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        features: FeatureArgs,
    },
    /// Write a synthetic annotated corpus.
    Generate {
        sentences: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FeatureArgs {
    /// Read `.` as the digit-group separator and `,` as the decimal point.
    #[arg(long)]
    spanish_numbers: bool,
}

impl FeatureArgs {
    fn config(&self) -> FeatureConfig {
        if self.spanish_numbers {
            FeatureConfig::SPANISH_NUMBERS
        } else {
            FeatureConfig::ENGLISH
        }
    }
}

/// Settings shared by the experiment commands.
#[derive(Debug, Clone, PartialEq)]
struct RunConfig {
    feature_config: FeatureConfig,
    beta: f64,
    seed: u64,
    curve_fractions: Vec<f64>,
}

impl RunConfig {
    fn new(feature_config: FeatureConfig, beta: f64, seed: u64, fractions: Option<Fractions>) -> anyhow::Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Usage(format!("--beta must be positive, got {beta}")).into());
        }
        Ok(RunConfig {
            feature_config,
            beta,
            seed,
            curve_fractions: fractions.map_or_else(|| DEFAULT_FRACTIONS.to_vec(), |f| f.0),
        })
    }
}

#[derive(Debug, Clone)]
struct Fractions(Vec<f64>);

/// Parses `1,1/2,0.25` into fractions in (0, 1], sorted descending.
fn parse_fractions(text: &str) -> Result<Fractions, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim) {
        let value = match item.split_once('/') {
            Some((n, d)) => {
                let n: f64 = n.trim().parse().map_err(|_| format!("bad numerator in `{item}`"))?;
                let d: f64 = d.trim().parse().map_err(|_| format!("bad denominator in `{item}`"))?;
                n / d
            }
            None => item.parse().map_err(|_| format!("bad fraction `{item}`"))?,
        };
        if !(value > 0.0 && value <= 1.0) {
            return Err(format!("fraction `{item}` is outside (0, 1]"));
        }
        out.push(value);
    }
    out.sort_by(|a, b| b.total_cmp(a));
    out.dedup();
    Ok(Fractions(out))
}

/// A bad argument value detected after parsing.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn load_corpus(path: &Path) -> anyhow::Result<Vec<namefinder::AnnotatedSentence>> {
    parse_annotated(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn cmd_train(corpus: &Path, model_path: &Path, config: FeatureConfig) -> anyhow::Result<()> {
    let sentences = load_corpus(corpus)?;
    let model = train(&sentences, config).with_context(|| format!("training on {}", corpus.display()))?;
    write(model_path, &write_model(&model))?;

    let mut regions = [0usize; 7];
    for r in sentences.iter().flat_map(|s| &s.regions) {
        regions[r.class.index()] += 1;
    }
    println!("sentences {}", sentences.len());
    println!("words {}", sentences.iter().map(|s| s.tokens.len()).sum::<usize>());
    println!("vocabulary {}", model.vocabulary().size());
    for class in NameClass::ENTITIES {
        println!("regions {} {}", class, regions[class.index()]);
    }
    Ok(())
}

fn cmd_decode(model_path: &Path, input: &Path, output: Option<&Path>, pretokenized: bool) -> anyhow::Result<()> {
    let model = read_model(&read(model_path)?).with_context(|| format!("loading {}", model_path.display()))?;
    let text = read(input)?;
    let started = Instant::now();
    let sentences: Vec<Vec<String>> = if pretokenized {
        parse_annotated(&text)
            .with_context(|| format!("parsing {}", input.display()))?
            .into_iter()
            .map(|s| s.tokens)
            .collect()
    } else {
        tokenize(&text)
    };
    let decoded: Vec<_> = decode_sentences_parallel(&sentences, &model)
        .into_iter()
        .map(|r| r.sentence)
        .collect();
    let annotated = emit_annotated(&decoded);
    let elapsed = started.elapsed().as_secs_f64();

    match output {
        Some(path) => write(path, &annotated)?,
        None => io::stdout()
            .lock()
            .write_all(annotated.as_bytes())
            .context("writing standard output")?,
    }
    let mb = text.len() as f64 / 1e6;
    let rate = if elapsed > 0.0 {
        mb / (elapsed / 3600.0)
    } else {
        f64::INFINITY
    };
    eprintln!(
        "decoded {} sentences, {mb:.3} MB in {elapsed:.3}s ({rate:.0} MB/hr)",
        decoded.len()
    );
    Ok(())
}

fn cmd_score(key: &Path, response: &Path, beta: f64) -> anyhow::Result<()> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Usage(format!("--beta must be positive, got {beta}")).into());
    }
    let report = score(&load_corpus(key)?, &load_corpus(response)?, beta)?;
    print!("{}", report.to_table());
    print!("{}", report.to_record());
    Ok(())
}

fn cmd_learning_curve(training: &Path, test: &Path, config: &RunConfig) -> anyhow::Result<()> {
    let (training, test) = (load_corpus(training)?, load_corpus(test)?);
    let rows = learning_curve(
        &training,
        &test,
        &config.curve_fractions,
        config.feature_config,
        config.beta,
    )?;
    for row in rows {
        println!("{} {} {:.4}", row.fraction, row.words, row.report.overall.f_measure);
    }
    Ok(())
}

fn cmd_generate(sentences: usize, seed: u64, output: Option<&Path>) -> anyhow::Result<()> {
    if sentences == 0 {
        bail!(Usage("sentence count must be positive".into()));
    }
    let text = emit_annotated(&generate(&SynthConfig::default(), sentences, seed));
    match output {
        Some(path) => write(path, &text),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .context("writing standard output"),
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Train {
            corpus,
            model,
            features,
        } => cmd_train(&corpus, &model, features.config()),
        Command::Decode {
            input,
            model,
            output,
            pretokenized,
        } => cmd_decode(&model, &input, output.as_deref(), pretokenized),
        Command::Score { key, response, beta } => cmd_score(&key, &response, beta),
        Command::LearningCurve {
            training,
            test,
            fractions,
            beta,
            seed,
            features,
        } => {
            let config = RunConfig::new(features.config(), beta, seed, fractions)?;
            cmd_learning_curve(&training, &test, &config)
        }
        Command::Generate {
            sentences,
            seed,
            output,
        } => cmd_generate(sentences, seed, output.as_deref()),
    }
}

/// Maps an error chain to the documented exit code.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<Usage>() {
            return 1;
        }
        if cause.is::<io::Error>() {
            return 3;
        }
        if let Some(e) = cause.downcast_ref::<namefinder::Error>() {
            return match e {
                namefinder::Error::Io(_) => 3,
                namefinder::Error::InvalidFraction(_) => 1,
                namefinder::Error::Experiment { source, .. } if matches!(**source, namefinder::Error::Io(_)) => 3,
                _ => 2,
            };
        }
    }
    2
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
