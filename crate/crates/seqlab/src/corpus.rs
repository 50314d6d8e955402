//! Sentences as read from treebank files.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use graph_seqlab_core::DepGraph;

use crate::{conllu, sdp};

/// A graph together with the parts of its source block that the graph model
/// does not cover.
#[derive(Clone, Debug, PartialEq)]
pub struct Sentence {
    /// Comment lines, verbatim and without line terminator.
    pub comments: Vec<String>,
    pub graph: DepGraph,
    /// Columns other than id, form and the graph columns, per node. Empty when
    /// unknown; writers then emit `_`.
    pub extra: Vec<Vec<String>>,
    /// CoNLL-U multiword token lines, each with the position of the first
    /// token it spans.
    pub multiword: Vec<(usize, String)>,
}

impl Sentence {
    pub fn new(graph: DepGraph) -> Self {
        Sentence {
            comments: Vec::new(),
            graph,
            extra: Vec::new(),
            multiword: Vec::new(),
        }
    }

    pub(crate) fn extra_column(&self, position: usize, column: usize) -> &str {
        self.extra
            .get(position - 1)
            .and_then(|cols| cols.get(column))
            .map(String::as_str)
            .unwrap_or("_")
    }
}

#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum Format {
    Sdp,
    Conllu,
}

impl Format {
    /// Guesses the format from a file extension; SDP otherwise.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("conllu") | Some("conll") => Format::Conllu,
            _ => Format::Sdp,
        }
    }

    pub fn parse(&self, text: &str) -> Result<Vec<Sentence>, FormatError> {
        match self {
            Format::Sdp => sdp::parse_sdp(text),
            Format::Conllu => conllu::parse_conllu_enhanced(text),
        }
    }

    pub fn write(&self, sentences: &[Sentence]) -> Result<String, FormatError> {
        match self {
            Format::Sdp => sdp::write_sdp(sentences),
            Format::Conllu => conllu::write_conllu_enhanced(sentences),
        }
    }

    /// Relation given to root attachments that lack one.
    pub fn root_relation(&self) -> &'static str {
        match self {
            Format::Sdp => "top",
            Format::Conllu => "root",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sdp" => Ok(Format::Sdp),
            "conllu" => Ok(Format::Conllu),
            _ => Err(format!("unknown format {:?}", s)),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Sdp => "sdp",
            Format::Conllu => "conllu",
        })
    }
}

#[derive(Clone, Debug, Eq, PartialEq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("sentence {sentence}: arc ({head} -> {dep}) has no relation")]
    MissingRelation {
        sentence: usize,
        head: usize,
        dep: usize,
    },

    #[error("sentence {sentence}: {message}")]
    Unwritable { sentence: usize, message: String },
}

impl FormatError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        FormatError::Syntax {
            line,
            message: message.into(),
        }
    }

    /// Line number of the offending input, when there is one.
    pub fn line(&self) -> Option<usize> {
        match self {
            FormatError::Syntax { line, .. } => Some(*line),
            _ => None,
        }
    }
}

/// Splits text into blank-line separated blocks of `(line number, line)`,
/// accepting LF and CRLF.
pub(crate) fn blocks(text: &str) -> Vec<Vec<(usize, &str)>> {
    let mut blocks = Vec::new();
    let mut current = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() {
            if !current.is_empty() {
                blocks.push(std::mem::take(&mut current));
            }
        } else {
            current.push((i + 1, line));
        }
    }
    if !current.is_empty() {
        blocks.push(current);
    }
    blocks
}
