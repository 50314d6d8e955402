//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on usage errors, 2 on data errors (bad
//! input files, decoder errors in strict mode, unreadable paths).

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use graph_seqlab_core::codec::CodecError;
use graph_seqlab_core::metrics::{ScoreCounts, SentenceStats};
use graph_seqlab_core::{
    label_stats, Arc, Codec, CorpusStats, DecodeMode, DepGraph, GeneratorConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::corpus::{Format, FormatError, Sentence};
use crate::labels::{LabelFile, LabeledSentence};
use crate::report;

#[derive(Debug, Parser)]
#[command(
    name = "graph-seqlab",
    version,
    about = "Dependency graph linearization toolkit"
)]
struct Cli {
    /// Worker threads for per-sentence work.
    #[arg(long, global = true, env = "GRAPH_SEQLAB_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CodecName {
    Hb,
    Bk,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatName {
    Sdp,
    Conllu,
}

impl From<FormatName> for Format {
    fn from(f: FormatName) -> Self {
        match f {
            FormatName::Sdp => Format::Sdp,
            FormatName::Conllu => Format::Conllu,
        }
    }
}

#[derive(Debug, Args)]
struct CodecArgs {
    /// Linearization: hierarchical (hb) or k-plane bracketing (bk).
    #[arg(long, value_enum)]
    codec: CodecName,

    /// Plane budget for bk.
    #[arg(long)]
    k: Option<usize>,
}

impl CodecArgs {
    fn codec(&self) -> Result<Codec, CliError> {
        match (self.codec, self.k) {
            (CodecName::Hb, None) => Ok(Codec::Hierarchical),
            (CodecName::Hb, Some(_)) => {
                Err(CliError::Usage("--k only applies to --codec bk".into()))
            }
            (CodecName::Bk, Some(k)) if k >= 1 => Ok(Codec::Planes(k)),
            (CodecName::Bk, _) => Err(CliError::Usage("--codec bk needs --k N with N >= 1".into())),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encode a treebank as a label file.
    Encode {
        #[command(flatten)]
        codec: CodecArgs,
        /// Input format; guessed from the extension when absent.
        #[arg(long, value_enum)]
        format: Option<FormatName>,
        input: PathBuf,
        output: PathBuf,
    },
    /// Decode a label file back to a treebank.
    Decode {
        /// Fail on ill-formed label sequences instead of repairing them.
        #[arg(long)]
        strict: bool,
        /// Output format; guessed from the extension when absent.
        #[arg(long, value_enum)]
        format: Option<FormatName>,
        /// Relation written on decoded arcs (labels carry none).
        #[arg(long, default_value = "dep")]
        default_rel: String,
        labels: PathBuf,
        output: PathBuf,
    },
    /// Report the share of sentences that survive encoding and decoding.
    Roundtrip {
        #[command(flatten)]
        codec: CodecArgs,
        #[arg(long, value_enum)]
        format: Option<FormatName>,
        input: PathBuf,
    },
    /// Treebank statistics.
    Stats {
        #[arg(long, value_enum)]
        format: Option<FormatName>,
        #[arg(long)]
        json: bool,
        input: PathBuf,
    },
    /// Label inventory statistics of label files.
    Labelstats {
        #[arg(long)]
        json: bool,
        /// Also list the most frequent labels.
        #[arg(long, default_value_t = 0)]
        ranks: usize,
        train: PathBuf,
        eval: Option<PathBuf>,
    },
    /// Score predicted graphs against gold graphs.
    Score {
        #[arg(long, value_enum)]
        format: Option<FormatName>,
        #[arg(long)]
        json: bool,
        gold: PathBuf,
        pred: PathBuf,
    },
    /// Write a synthetic corpus in SDP format.
    Gen {
        #[arg(long)]
        n_sents: usize,
        /// Maximum sentence length.
        #[arg(long)]
        len: usize,
        /// Minimum sentence length (defaults to --len).
        #[arg(long)]
        min_len: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        density: f64,
        #[arg(long, default_value_t = 0.0)]
        p_cycle: f64,
        #[arg(long, default_value_t = 0.0)]
        p_reentrancy: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        output: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
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

    fn io(path: &Path, e: io::Error) -> Self {
        CliError::Data(format!("{}: {}", path.display(), e))
    }

    fn format(path: &Path, e: FormatError) -> Self {
        match e {
            FormatError::Syntax { line, message } => {
                CliError::Data(format!("{}:{}: {}", path.display(), line, message))
            }
            other => CliError::Data(format!("{}: {}", path.display(), other)),
        }
    }
}

/// Runs the command line; returns the process exit status. Reports go to
/// `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };

    // Reports are buffered so that the worker pool never touches `stdout`.
    let mut buffer = Vec::new();
    let result = match cli.jobs {
        Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))
            .and_then(|pool| pool.install(|| execute(cli.command, &mut buffer))),
        None => execute(cli.command, &mut buffer),
    }
    .and_then(|()| {
        stdout
            .write_all(&buffer)
            .and_then(|()| stdout.flush())
            .map_err(|e| CliError::Data(format!("stdout: {}", e)))
    });

    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "graph-seqlab: {}", e);
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut Vec<u8>) -> Result<(), CliError> {
    match command {
        Command::Encode {
            codec,
            format,
            input,
            output,
        } => {
            let codec = codec.codec()?;
            let sentences = read_corpus(&input, format)?;
            let file = LabelFile {
                codec,
                sentences: sentences
                    .par_iter()
                    .map(|s| LabeledSentence::encode(&s.graph, codec))
                    .collect(),
            };
            write_output(out, &output, &file.render())
        }

        Command::Decode {
            strict,
            format,
            default_rel,
            labels,
            output,
        } => {
            let (file, lines) = LabelFile::parse_with_lines(&read_input(&labels)?)
                .map_err(|e| CliError::format(&labels, e))?;
            let format = resolve_format(&output, format);
            let mode = if strict {
                DecodeMode::Strict
            } else {
                DecodeMode::Robust
            };
            let decoded: Vec<Result<Sentence, CliError>> = file
                .sentences
                .par_iter()
                .enumerate()
                .map(|(i, s)| {
                    let template = DepGraph::new(s.nodes.clone(), []).map_err(|e| {
                        CliError::Data(format!("{}: sentence {}: {}", labels.display(), i + 1, e))
                    })?;
                    let graph = file
                        .codec
                        .decode_graph(&template, &s.labels, mode)
                        .map_err(|e| decode_error(&labels, i, &lines[i], e))?;
                    let arcs = graph.arcs().iter().map(|a| {
                        let rel = if a.is_root() {
                            format.root_relation()
                        } else {
                            default_rel.as_str()
                        };
                        Arc::labeled(a.head, a.dep, rel)
                    });
                    let graph = graph.with_arcs(arcs).expect("same arcs");
                    Ok(Sentence::new(graph))
                })
                .collect();
            let sentences = decoded.into_iter().collect::<Result<Vec<_>, _>>()?;
            let text = format
                .write(&sentences)
                .map_err(|e| CliError::Data(format!("{}: {}", output.display(), e)))?;
            write_output(out, &output, &text)
        }

        Command::Roundtrip {
            codec,
            format,
            input,
        } => {
            let codec = codec.codec()?;
            let sentences = read_corpus(&input, format)?;
            let failures: Vec<Option<String>> = sentences
                .par_iter()
                .enumerate()
                .map(|(i, s)| roundtrip_failure(codec, i, &s.graph))
                .collect();
            let failed: Vec<String> = failures.into_iter().flatten().collect();
            let coverage = if sentences.is_empty() {
                100.0
            } else {
                100.0 * (sentences.len() - failed.len()) as f64 / sentences.len() as f64
            };
            let mut text = format!("coverage: {:.2}\n", coverage);
            for line in failed {
                text.push_str(&line);
                text.push('\n');
            }
            emit(out, &text)
        }

        Command::Stats {
            format,
            json,
            input,
        } => {
            let sentences = read_corpus(&input, format)?;
            let per_sentence: Vec<SentenceStats> = sentences
                .par_iter()
                .map(|s| SentenceStats::of(&s.graph))
                .collect();
            let stats = CorpusStats::from_sentences(&per_sentence);
            if json {
                emit(out, &to_json(&report::stats_json(&stats)))
            } else {
                emit(out, &report::stats_text(&stats))
            }
        }

        Command::Labelstats {
            json,
            ranks,
            train,
            eval,
        } => {
            let train_file = read_labels(&train)?;
            let eval_labels: Vec<String> = match &eval {
                Some(path) => read_labels(path)?.label_strings().collect(),
                None => Vec::new(),
            };
            let stats = label_stats(train_file.label_strings(), eval_labels);
            if json {
                emit(out, &to_json(&report::labels_json(&stats)))
            } else {
                emit(out, &report::labels_text(&stats, ranks))
            }
        }

        Command::Score {
            format,
            json,
            gold,
            pred,
        } => {
            let gold_s = read_corpus(&gold, format)?;
            let pred_s = read_corpus(&pred, format)?;
            if gold_s.len() != pred_s.len() {
                return Err(CliError::Data(format!(
                    "{} has {} sentences, {} has {}",
                    gold.display(),
                    gold_s.len(),
                    pred.display(),
                    pred_s.len()
                )));
            }
            if let Some(i) = gold_s
                .iter()
                .zip(&pred_s)
                .position(|(g, p)| g.graph.len() != p.graph.len())
            {
                return Err(CliError::Data(format!(
                    "sentence {}: gold has {} nodes, prediction has {}",
                    i + 1,
                    gold_s[i].graph.len(),
                    pred_s[i].graph.len()
                )));
            }
            let counts = gold_s
                .par_iter()
                .zip(&pred_s)
                .map(|(g, p)| ScoreCounts::sentence(&g.graph, &p.graph))
                .reduce(ScoreCounts::default, ScoreCounts::merge);
            let report = counts.report();
            if json {
                emit(out, &to_json(&report::score_json(&report)))
            } else {
                emit(out, &report::score_text(&report))
            }
        }

        Command::Gen {
            n_sents,
            len,
            min_len,
            density,
            p_cycle,
            p_reentrancy,
            seed,
            output,
        } => {
            let min_len = min_len.unwrap_or(len);
            if len == 0 || min_len == 0 || min_len > len {
                return Err(CliError::Usage("need 1 <= --min-len <= --len".into()));
            }
            let sentences =
                generate_corpus(n_sents, min_len, len, density, p_cycle, p_reentrancy, seed);
            let text = Format::Sdp
                .write(&sentences)
                .map_err(|e| CliError::Data(e.to_string()))?;
            write_output(out, &output, &text)
        }
    }
}

const RELATIONS: [&str; 6] = ["ARG1", "ARG2", "ARG3", "BV", "compound", "mwe"];

/// Synthetic SDP corpus; sentence lengths, seeds and relations all derive
/// from `seed`.
pub fn generate_corpus(
    n_sents: usize,
    min_len: usize,
    max_len: usize,
    density: f64,
    p_cycle: f64,
    p_reentrancy: f64,
    seed: u64,
) -> Vec<Sentence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n_sents)
        .map(|i| {
            let len = rng.gen_range(min_len..=max_len);
            let config = GeneratorConfig {
                len,
                density,
                p_cycle,
                p_reentrancy,
            };
            let graph = config.generate(rng.gen());
            let arcs = graph.arcs().iter().map(|a| {
                let rel = if a.is_root() {
                    "top"
                } else {
                    RELATIONS[rng.gen_range(0..RELATIONS.len())]
                };
                Arc::labeled(a.head, a.dep, rel)
            });
            let graph = graph.with_arcs(arcs).expect("same arcs");
            let mut sentence = Sentence::new(graph);
            sentence.comments.push(format!("#{}", 20_000_001 + i));
            sentence
        })
        .collect()
}

fn roundtrip_failure(codec: Codec, index: usize, g: &DepGraph) -> Option<String> {
    let decoded = codec.decode(&codec.encode(g), DecodeMode::Robust).ok()?;
    let got: std::collections::BTreeSet<(usize, usize)> = decoded.iter().map(Arc::key).collect();
    let want = g.unlabeled_arcs();
    if got == want {
        return None;
    }
    let show = |arcs: Vec<&(usize, usize)>| {
        arcs.iter()
            .map(|(h, d)| format!("{}->{}", h, d))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let missing = show(want.difference(&got).collect());
    let spurious = show(got.difference(&want).collect());
    let mut line = format!("sentence {}: missing [{}]", index + 1, missing);
    if !spurious.is_empty() {
        line.push_str(&format!(" spurious [{}]", spurious));
    }
    Some(line)
}

fn decode_error(path: &Path, sentence: usize, lines: &[usize], e: CodecError) -> CliError {
    let line = match &e {
        CodecError::Decode(d) => lines.get(d.position().saturating_sub(1)),
        _ => lines.first(),
    };
    let place = match line {
        Some(line) => format!("{}:{}", path.display(), line),
        None => path.display().to_string(),
    };
    CliError::Data(format!("{}: sentence {}: {}", place, sentence + 1, e))
}

fn resolve_format(path: &Path, format: Option<FormatName>) -> Format {
    format
        .map(Format::from)
        .unwrap_or_else(|| Format::from_path(path))
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::io(path, e))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::io(path, e))
    }
}

fn read_corpus(path: &Path, format: Option<FormatName>) -> Result<Vec<Sentence>, CliError> {
    let text = read_input(path)?;
    resolve_format(path, format)
        .parse(&text)
        .map_err(|e| CliError::format(path, e))
}

fn read_labels(path: &Path) -> Result<LabelFile, CliError> {
    LabelFile::parse(&read_input(path)?).map_err(|e| CliError::format(path, e))
}

fn write_output(out: &mut Vec<u8>, path: &Path, text: &str) -> Result<(), CliError> {
    if path == Path::new("-") {
        out.extend_from_slice(text.as_bytes());
        Ok(())
    } else {
        fs::write(path, text).map_err(|e| CliError::io(path, e))
    }
}

fn emit(out: &mut Vec<u8>, text: &str) -> Result<(), CliError> {
    out.extend_from_slice(text.as_bytes());
    Ok(())
}

fn to_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}
