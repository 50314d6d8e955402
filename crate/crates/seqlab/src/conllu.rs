//! CoNLL-U with enhanced dependencies.
//!
//! The graph comes from the DEPS column (`head:rel` items joined by `|`).
//! Empty nodes (`n.m`) become positions of their own, right after token `n`;
//! multiword token lines (`a-b`) are kept aside and written back unchanged.

use std::collections::HashMap;
use std::fmt::Write;

use graph_seqlab_core::{Arc, DepGraph, Node};

use crate::corpus::{blocks, FormatError, Sentence};

const COLUMNS: usize = 10;

enum RowId {
    Token(usize),
    Empty(usize, usize),
    Range(usize),
}

fn parse_id(s: &str) -> Option<RowId> {
    if let Some((a, b)) = s.split_once('-') {
        let a = a.parse().ok()?;
        let b: usize = b.parse().ok()?;
        return (a >= 1 && b >= a).then_some(RowId::Range(a));
    }
    if let Some((n, m)) = s.split_once('.') {
        let m = m.parse().ok()?;
        return (m >= 1).then(|| n.parse().ok().map(|n| RowId::Empty(n, m)))?;
    }
    let n = s.parse().ok()?;
    (n >= 1).then_some(RowId::Token(n))
}

fn node_key(s: &str) -> Option<(usize, usize)> {
    if s == "0" {
        return Some((0, 0));
    }
    match parse_id(s)? {
        RowId::Token(n) => Some((n, 0)),
        RowId::Empty(n, m) => Some((n, m)),
        RowId::Range(_) => None,
    }
}

pub fn parse_conllu_enhanced(text: &str) -> Result<Vec<Sentence>, FormatError> {
    let mut sentences = Vec::new();

    for block in blocks(text) {
        let mut comments = Vec::new();
        let mut nodes: Vec<Node> = Vec::new();
        let mut extra = Vec::new();
        let mut multiword = Vec::new();
        // (line, dependent position, raw DEPS)
        let mut deps: Vec<(usize, usize, &str)> = Vec::new();
        let mut positions: HashMap<(usize, usize), usize> = HashMap::new();
        let mut last_token = 0;
        let mut last_key = (0, 0);

        for &(line, content) in &block {
            if content.starts_with('#') {
                comments.push(content.to_owned());
                continue;
            }
            let cols: Vec<&str> = content.split('\t').collect();
            if cols.len() != COLUMNS {
                return Err(FormatError::syntax(
                    line,
                    format!("expected {} columns, found {}", COLUMNS, cols.len()),
                ));
            }
            let id = parse_id(cols[0])
                .ok_or_else(|| FormatError::syntax(line, format!("malformed id {:?}", cols[0])))?;
            let key = match id {
                RowId::Range(first) => {
                    if first != last_token + 1 {
                        return Err(FormatError::syntax(
                            line,
                            format!(
                                "multiword range {} does not start at the next token",
                                cols[0]
                            ),
                        ));
                    }
                    multiword.push((nodes.len() + 1, content.to_owned()));
                    continue;
                }
                RowId::Token(n) => (n, 0),
                RowId::Empty(n, m) => (n, m),
            };
            if positions.contains_key(&key) {
                return Err(FormatError::syntax(
                    line,
                    format!("duplicate node id {}", cols[0]),
                ));
            }
            let in_order = match key {
                (n, 0) => n == last_token + 1,
                (n, m) => {
                    n == last_token
                        && if last_key.0 == n && last_key.1 > 0 {
                            m == last_key.1 + 1
                        } else {
                            m == 1
                        }
                }
            };
            if !in_order {
                return Err(FormatError::syntax(
                    line,
                    format!("node id {} out of order", cols[0]),
                ));
            }
            if key.1 == 0 {
                last_token = key.0;
            }
            last_key = key;

            let node = if key.1 == 0 {
                Node::token(key.0, cols[1])
            } else {
                Node::empty(key.0, key.1, cols[1])
            };
            nodes.push(node);
            positions.insert(key, nodes.len());
            deps.push((line, nodes.len(), cols[8]));
            extra.push(
                cols[2..8]
                    .iter()
                    .chain(std::iter::once(&cols[9]))
                    .map(|s| (*s).to_owned())
                    .collect(),
            );
        }

        if nodes.is_empty() {
            if !comments.is_empty() || !multiword.is_empty() {
                let line = block.last().map_or(0, |l| l.0);
                return Err(FormatError::syntax(line, "sentence without nodes"));
            }
            continue;
        }

        let mut arcs = Vec::new();
        let mut seen = HashMap::new();
        for (line, dep, raw) in deps {
            if raw == "_" {
                continue;
            }
            for item in raw.split('|') {
                let (head, rel) = item.split_once(':').ok_or_else(|| {
                    FormatError::syntax(line, format!("DEPS item {:?} is not head:rel", item))
                })?;
                let head_key = node_key(head).ok_or_else(|| {
                    FormatError::syntax(line, format!("malformed head id {:?}", head))
                })?;
                let head = if head_key == (0, 0) {
                    0
                } else {
                    *positions.get(&head_key).ok_or_else(|| {
                        FormatError::syntax(line, format!("DEPS refers to missing node {}", head))
                    })?
                };
                if head == dep {
                    return Err(FormatError::syntax(line, "self-loop in DEPS"));
                }
                if seen.insert((head, dep), ()).is_some() {
                    return Err(FormatError::syntax(
                        line,
                        format!("repeated head {} in DEPS", item),
                    ));
                }
                arcs.push(Arc::labeled(head, dep, rel));
            }
        }

        let first_line = block[0].0;
        let graph = DepGraph::new(nodes, arcs)
            .map_err(|e| FormatError::syntax(first_line, e.to_string()))?;
        sentences.push(Sentence {
            comments,
            graph,
            extra,
            multiword,
        });
    }

    Ok(sentences)
}

fn node_id(node: &Node) -> String {
    if node.sub_id == 0 {
        node.id.to_string()
    } else {
        format!("{}.{}", node.id, node.sub_id)
    }
}

/// Writes CoNLL-U. DEPS is rebuilt from the arcs; the other columns come
/// from [`Sentence::extra`] or are left as `_`. Every arc needs a relation.
pub fn write_conllu_enhanced(sentences: &[Sentence]) -> Result<String, FormatError> {
    let mut out = String::new();
    for (s, sentence) in sentences.iter().enumerate() {
        let g = &sentence.graph;
        if let Some(arc) = g.arcs().iter().find(|a| a.relation.is_none()) {
            return Err(FormatError::MissingRelation {
                sentence: s + 1,
                head: arc.head,
                dep: arc.dep,
            });
        }
        if let Some(arc) = g.arcs().iter().find(|a| {
            a.relation
                .as_deref()
                .is_some_and(|r| r.contains(['|', '\t', '\n']))
        }) {
            return Err(FormatError::Unwritable {
                sentence: s + 1,
                message: format!("relation {:?} cannot appear in DEPS", arc.relation),
            });
        }

        for comment in &sentence.comments {
            out.push_str(comment);
            out.push('\n');
        }

        let mut incoming: Vec<Vec<&Arc>> = vec![Vec::new(); g.len() + 1];
        for arc in g.arcs() {
            incoming[arc.dep].push(arc);
        }

        let mut multiword = sentence.multiword.iter().peekable();
        for (i, node) in g.nodes().iter().enumerate() {
            let position = i + 1;
            while let Some((_, line)) = multiword.next_if(|(p, _)| *p == position) {
                out.push_str(line);
                out.push('\n');
            }

            let mut heads: Vec<&Arc> = incoming[position].clone();
            heads.sort_by_key(|a| a.head);
            let deps = if heads.is_empty() {
                String::from("_")
            } else {
                heads
                    .iter()
                    .map(|a| {
                        let head = if a.head == 0 {
                            String::from("0")
                        } else {
                            node_id(&g.nodes()[a.head - 1])
                        };
                        format!("{}:{}", head, a.relation.as_deref().unwrap_or_default())
                    })
                    .collect::<Vec<_>>()
                    .join("|")
            };

            write!(out, "{}\t{}", node_id(node), node.form)
                .expect("writing to a String cannot fail");
            for column in 0..6 {
                out.push('\t');
                out.push_str(sentence.extra_column(position, column));
            }
            writeln!(out, "\t{}\t{}", deps, sentence.extra_column(position, 6))
                .expect("writing to a String cannot fail");
        }
        for (_, line) in multiword {
            out.push_str(line);
            out.push('\n');
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(id: &str, form: &str, deps: &str) -> String {
        format!("{}\t{}\t_\t_\t_\t_\t_\t_\t{}\t_\n", id, form, deps)
    }

    fn keys(s: &Sentence) -> Vec<(usize, usize, &str)> {
        s.graph
            .arcs()
            .iter()
            .map(|a| (a.head, a.dep, a.relation.as_deref().unwrap()))
            .collect()
    }

    #[test]
    fn smallest_enhanced_graph() {
        let text = row("1", "Eat", "0:root") + &row("2", "it", "1:obj");
        let s = parse_conllu_enhanced(&text).unwrap();
        assert_eq!(keys(&s[0]), [(0, 1, "root"), (1, 2, "obj")]);
        assert!(s[0].graph.is_top(1));
    }

    #[test]
    fn empty_nodes_are_materialized() {
        let text = row("1", "a", "0:root")
            + &row("2", "b", "1:x")
            + &row("3", "c", "1:x")
            + &row("3.1", "E", "1:x")
            + &row("4", "d", "3.1:conj");
        let s = parse_conllu_enhanced(&text).unwrap();
        let g = &s[0].graph;
        assert_eq!(g.len(), 5);
        assert_eq!(g.node(4).unwrap().sub_id, 1);
        assert_eq!(g.arc(4, 5).unwrap().relation.as_deref(), Some("conj"));
    }

    #[test]
    fn reentrancy_is_preserved() {
        let text = row("1", "a", "_")
            + &row("2", "b", "0:root")
            + &row("3", "c", "2:nsubj|5:nsubj")
            + &row("4", "d", "_")
            + &row("5", "e", "_");
        let s = parse_conllu_enhanced(&text).unwrap();
        assert_eq!(
            keys(&s[0]),
            [(0, 2, "root"), (2, 3, "nsubj"), (5, 3, "nsubj")]
        );
    }

    #[test]
    fn relation_subtypes_keep_their_colon() {
        let text = row("1", "a", "2:nmod:poss") + &row("2", "b", "0:root");
        let s = parse_conllu_enhanced(&text).unwrap();
        assert_eq!(
            s[0].graph.arc(2, 1).unwrap().relation.as_deref(),
            Some("nmod:poss")
        );
    }

    #[test]
    fn multiword_lines_survive_writing() {
        let text = String::from("# text = del\n")
            + "1-2\tdel\t_\t_\t_\t_\t_\t_\t_\t_\n"
            + &row("1", "de", "2:case")
            + &row("2", "el", "0:root");
        let s = parse_conllu_enhanced(&text).unwrap();
        assert_eq!(s[0].graph.len(), 2);
        let written = write_conllu_enhanced(&s).unwrap();
        assert_eq!(written, text + "\n");
    }

    #[test]
    fn errors_name_the_line() {
        let missing = row("1", "a", "0:root") + &row("2", "b", "7:obj");
        assert_eq!(parse_conllu_enhanced(&missing).unwrap_err().line(), Some(2));

        let duplicate = row("1", "a", "_") + &row("1", "b", "_");
        let err = parse_conllu_enhanced(&duplicate).unwrap_err();
        assert_eq!(err.line(), Some(2));
        assert!(err.to_string().contains("duplicate"));

        let skipped = row("1", "a", "_") + &row("3", "b", "_");
        assert_eq!(parse_conllu_enhanced(&skipped).unwrap_err().line(), Some(2));

        let bad_empty = row("1", "a", "_") + &row("1.2", "b", "_");
        assert_eq!(
            parse_conllu_enhanced(&bad_empty).unwrap_err().line(),
            Some(2)
        );

        let short = "1\ta\n";
        assert_eq!(parse_conllu_enhanced(short).unwrap_err().line(), Some(1));
    }

    #[test]
    fn writes_decimal_heads() {
        let text =
            row("1", "a", "0:root") + &row("1.1", "E", "1:orphan") + &row("2", "b", "1.1:conj|1:x");
        let s = parse_conllu_enhanced(&text).unwrap();
        let written = write_conllu_enhanced(&s).unwrap();
        assert!(written.contains("\t1:x|1.1:conj\t"));
        assert_eq!(parse_conllu_enhanced(&written).unwrap(), s);
    }
}
