//! Label files: one `token<TAB>label` line per position, a blank line between
//! sentences, and a `#codec=hb` or `#codec=bk:<k>` header.
//!
//! Sentences containing empty nodes carry an extra `#ids=` line listing the
//! CoNLL-U ids of their nodes, e.g. `#ids=1 2 2.1 3`.

use std::fmt::Write;

use graph_seqlab_core::codec::UnknownCodec;
use graph_seqlab_core::{Codec, DepGraph, Node, TokenLabel};

use crate::corpus::{blocks, FormatError};

#[derive(Clone, Debug, PartialEq)]
pub struct LabeledSentence {
    pub nodes: Vec<Node>,
    pub labels: Vec<TokenLabel>,
}

impl LabeledSentence {
    pub fn encode(graph: &DepGraph, codec: Codec) -> Self {
        LabeledSentence {
            nodes: graph.nodes().to_vec(),
            labels: codec.encode(graph),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabelFile {
    pub codec: Codec,
    pub sentences: Vec<LabeledSentence>,
}

impl LabelFile {
    pub fn render(&self) -> String {
        let mut out = format!("#codec={}\n", self.codec);
        for sentence in &self.sentences {
            if sentence.nodes.iter().any(Node::is_empty_node) {
                let ids: Vec<String> = sentence
                    .nodes
                    .iter()
                    .map(|n| {
                        if n.sub_id == 0 {
                            n.id.to_string()
                        } else {
                            format!("{}.{}", n.id, n.sub_id)
                        }
                    })
                    .collect();
                writeln!(out, "#ids={}", ids.join(" ")).expect("writing to a String cannot fail");
            }
            for (node, label) in sentence.nodes.iter().zip(&sentence.labels) {
                writeln!(out, "{}\t{}", node.form, label).expect("writing to a String cannot fail");
            }
            out.push('\n');
        }
        out
    }

    /// All labels in file order, rendered.
    pub fn label_strings(&self) -> impl Iterator<Item = String> + '_ {
        self.sentences
            .iter()
            .flat_map(|s| s.labels.iter().map(TokenLabel::render))
    }

    pub fn parse(text: &str) -> Result<LabelFile, FormatError> {
        Self::parse_with_lines(text).map(|(file, _)| file)
    }

    /// Like [`LabelFile::parse`], also returning the line number of every
    /// label, per sentence.
    pub fn parse_with_lines(text: &str) -> Result<(LabelFile, Vec<Vec<usize>>), FormatError> {
        let mut codec = None;
        let mut sentences = Vec::new();
        let mut label_lines = Vec::new();

        for block in blocks(text) {
            let mut ids: Option<(usize, Vec<(usize, usize)>)> = None;
            let mut forms = Vec::new();
            let mut labels = Vec::new();
            let mut lines = Vec::new();
            for &(line, content) in &block {
                if let Some(name) = content.strip_prefix("#codec=") {
                    if codec.is_some() || !sentences.is_empty() || !forms.is_empty() {
                        return Err(FormatError::syntax(
                            line,
                            "codec header must come first, once",
                        ));
                    }
                    codec = Some(name.parse::<Codec>().map_err(|UnknownCodec(name)| {
                        FormatError::syntax(line, format!("unknown codec {:?}", name))
                    })?);
                    continue;
                }
                if codec.is_none() {
                    return Err(FormatError::syntax(line, "missing #codec= header"));
                }
                if let Some(list) = content.strip_prefix("#ids=") {
                    ids = Some((
                        line,
                        parse_ids(list).ok_or_else(|| {
                            FormatError::syntax(line, format!("malformed id list {:?}", list))
                        })?,
                    ));
                    continue;
                }
                if content.starts_with('#') {
                    continue;
                }
                let (form, label) = content
                    .split_once('\t')
                    .ok_or_else(|| FormatError::syntax(line, "expected token<TAB>label"))?;
                let label = label
                    .parse::<TokenLabel>()
                    .map_err(|e| FormatError::syntax(line, format!("label {:?}: {}", label, e)))?;
                forms.push(form.to_owned());
                labels.push(label);
                lines.push(line);
            }
            if forms.is_empty() {
                continue;
            }

            let nodes = match ids {
                None => forms
                    .into_iter()
                    .enumerate()
                    .map(|(i, f)| Node::token(i + 1, f))
                    .collect(),
                Some((line, ids)) => {
                    if ids.len() != forms.len() {
                        return Err(FormatError::syntax(
                            line,
                            format!("{} ids for {} tokens", ids.len(), forms.len()),
                        ));
                    }
                    let nodes: Vec<Node> = ids
                        .into_iter()
                        .zip(forms)
                        .map(|((id, sub), f)| Node {
                            id,
                            sub_id: sub,
                            form: f,
                        })
                        .collect();
                    DepGraph::new(nodes.clone(), [])
                        .map_err(|e| FormatError::syntax(line, e.to_string()))?;
                    nodes
                }
            };
            sentences.push(LabeledSentence { nodes, labels });
            label_lines.push(lines);
        }

        let codec = codec.ok_or_else(|| FormatError::syntax(1, "missing #codec= header"))?;
        Ok((LabelFile { codec, sentences }, label_lines))
    }
}

fn parse_ids(list: &str) -> Option<Vec<(usize, usize)>> {
    list.split(' ')
        .map(|id| match id.split_once('.') {
            Some((n, m)) => Some((n.parse().ok()?, m.parse().ok()?)),
            None => Some((id.parse().ok()?, 0)),
        })
        .collect()
}
