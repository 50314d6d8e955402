//! SemEval 2015 semantic dependency format.
//!
//! One tab-separated row per token: id, form, lemma, pos, top (`+`/`-`),
//! pred (`+`/`-`), frame, and one argument column per predicate in textual
//! order. A relation in argument column `j` is an arc from the `j`-th
//! predicate to the row's token; `top +` is an arc from the virtual root.

use std::fmt::Write;

use graph_seqlab_core::{Arc, DepGraph, Node};

use crate::corpus::{blocks, FormatError, Sentence};

const FIXED_COLUMNS: usize = 7;

/// Relation given to arcs created from the top column.
pub const TOP_RELATION: &str = "top";

pub fn parse_sdp(text: &str) -> Result<Vec<Sentence>, FormatError> {
    let mut sentences = Vec::new();
    let mut pending_comments = Vec::new();

    for block in blocks(text) {
        let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
        for &(line, content) in &block {
            if content.starts_with('#') {
                if !rows.is_empty() {
                    return Err(FormatError::syntax(line, "comment inside a sentence block"));
                }
                pending_comments.push(content.to_owned());
            } else {
                rows.push((line, content.split('\t').collect()));
            }
        }
        if rows.is_empty() {
            continue;
        }

        let predicates: Vec<usize> = rows
            .iter()
            .enumerate()
            .filter(|(_, (_, cols))| cols.get(5) == Some(&"+"))
            .map(|(i, _)| i + 1)
            .collect();
        let expected = FIXED_COLUMNS + predicates.len();

        let mut nodes = Vec::with_capacity(rows.len());
        let mut extra = Vec::with_capacity(rows.len());
        let mut arcs = Vec::new();
        for (i, (line, cols)) in rows.iter().enumerate() {
            let position = i + 1;
            let line = *line;
            if cols.len() != expected {
                let message = if cols.len() > expected && cols.len() >= FIXED_COLUMNS {
                    format!(
                        "{} argument columns but only {} predicates",
                        cols.len() - FIXED_COLUMNS,
                        predicates.len()
                    )
                } else {
                    format!("expected {} columns, found {}", expected, cols.len())
                };
                return Err(FormatError::syntax(line, message));
            }
            if cols[0].parse::<usize>().ok() != Some(position) {
                return Err(FormatError::syntax(
                    line,
                    format!("expected id {}, found {:?}", position, cols[0]),
                ));
            }
            let flag = |col: usize, name: &str| match cols[col] {
                "+" => Ok(true),
                "-" => Ok(false),
                other => Err(FormatError::syntax(
                    line,
                    format!("{} column must be + or -, found {:?}", name, other),
                )),
            };
            if flag(4, "top")? {
                arcs.push(Arc::labeled(0, position, TOP_RELATION));
            }
            flag(5, "pred")?;

            for (j, &cell) in cols[FIXED_COLUMNS..].iter().enumerate() {
                if cell != "_" {
                    let head = predicates[j];
                    if head == position {
                        return Err(FormatError::syntax(line, "self-loop"));
                    }
                    arcs.push(Arc::labeled(head, position, cell));
                }
            }

            nodes.push(Node::token(position, cols[1]));
            extra.push(vec![
                cols[2].to_owned(),
                cols[3].to_owned(),
                cols[6].to_owned(),
            ]);
        }

        let first_line = rows[0].0;
        let graph = DepGraph::new(nodes, arcs)
            .map_err(|e| FormatError::syntax(first_line, e.to_string()))?;
        sentences.push(Sentence {
            comments: std::mem::take(&mut pending_comments),
            graph,
            extra,
            multiword: Vec::new(),
        });
    }

    Ok(sentences)
}

/// Writes sentences in the SDP 2015 layout. Nodes are numbered by position,
/// so empty nodes become ordinary rows. Every arc not attached to the root
/// needs a relation.
pub fn write_sdp(sentences: &[Sentence]) -> Result<String, FormatError> {
    let mut out = String::new();
    for (s, sentence) in sentences.iter().enumerate() {
        let g = &sentence.graph;
        if let Some(arc) = g.inner_arcs().find(|a| a.relation.is_none()) {
            return Err(FormatError::MissingRelation {
                sentence: s + 1,
                head: arc.head,
                dep: arc.dep,
            });
        }

        let predicates: Vec<usize> = (1..=g.len())
            .filter(|&p| g.inner_arcs().any(|a| a.head == p))
            .collect();

        for comment in &sentence.comments {
            out.push_str(comment);
            out.push('\n');
        }
        for (i, node) in g.nodes().iter().enumerate() {
            let position = i + 1;
            let is_pred = predicates.binary_search(&position).is_ok();
            write!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                position,
                node.form,
                sentence.extra_column(position, 0),
                sentence.extra_column(position, 1),
                if g.is_top(position) { "+" } else { "-" },
                if is_pred { "+" } else { "-" },
                sentence.extra_column(position, 2),
            )
            .expect("writing to a String cannot fail");
            for &pred in &predicates {
                out.push('\t');
                match g.arc(pred, position) {
                    Some(arc) => out.push_str(arc.relation.as_deref().unwrap_or("_")),
                    None => out.push('_'),
                }
            }
            out.push('\n');
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn keys(s: &Sentence) -> Vec<(usize, usize, Option<&str>)> {
        s.graph
            .arcs()
            .iter()
            .map(|a| (a.head, a.dep, a.relation.as_deref()))
            .collect()
    }

    #[test]
    fn minimal_block() {
        let text = "#20001001\n1\tA\ta\tDT\t-\t-\t_\n2\tb\tb\tNN\t-\t-\t_\n3\tc\tc\tVB\t+\t-\t_\n";
        let s = parse_sdp(text).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(keys(&s[0]), [(0, 3, Some("top"))]);
        assert_eq!(s[0].comments, ["#20001001"]);
        assert!(s[0].graph.is_top(3));
    }

    #[test]
    fn argument_columns_follow_predicates() {
        let text = "\
1\ta\t_\t_\t-\t-\t_\t_\t_
2\tb\t_\t_\t-\t+\t_\t_\t_
3\tc\t_\t_\t-\t-\t_\t_\t_
4\td\t_\t_\t-\t-\t_\tARG1\t_
5\te\t_\t_\t-\t+\t_\t_\t_
";
        let s = parse_sdp(text).unwrap();
        assert_eq!(keys(&s[0]), [(2, 4, Some("ARG1"))]);
    }

    #[test]
    fn errors_name_the_line() {
        let too_many = "1\ta\t_\t_\t-\t-\t_\tARG1\n";
        assert_eq!(parse_sdp(too_many).unwrap_err().line(), Some(1));

        let gap = "1\ta\t_\t_\t-\t-\t_\n3\tb\t_\t_\t-\t-\t_\n";
        assert_eq!(parse_sdp(gap).unwrap_err().line(), Some(2));

        let bad_flag = "1\ta\t_\t_\t-\t-\t_\n2\tb\t_\t_\tx\t-\t_\n";
        assert_eq!(parse_sdp(bad_flag).unwrap_err().line(), Some(2));

        let short = "\n\n1\ta\t_\n";
        assert_eq!(parse_sdp(short).unwrap_err().line(), Some(3));
    }

    #[test]
    fn top_arc_sets_the_top_column() {
        let g = DepGraph::from_arcs(3, [Arc::new(0, 3), Arc::labeled(3, 1, "ARG1")]).unwrap();
        let out = write_sdp(&[Sentence::new(g)]).unwrap();
        let rows: Vec<&str> = out.lines().collect();
        assert_eq!(rows[2], "3\tw3\t_\t_\t+\t+\t_\t_");
        assert_eq!(rows[0], "1\tw1\t_\t_\t-\t-\t_\tARG1");
    }

    #[test]
    fn missing_relation_is_an_error() {
        let g = DepGraph::from_pairs(3, &[(1, 2)]).unwrap();
        assert_eq!(
            write_sdp(&[Sentence::new(g)]),
            Err(FormatError::MissingRelation {
                sentence: 1,
                head: 1,
                dep: 2
            })
        );
        assert_eq!(write_sdp(&[]).unwrap(), "");
    }

    #[test]
    fn crlf_is_accepted() {
        let text = "1\ta\t_\t_\t+\t-\t_\r\n2\tb\t_\t_\t-\t-\t_\r\n\r\n";
        let s = parse_sdp(text).unwrap();
        assert_eq!(s[0].graph.len(), 2);
        assert_eq!(s[0].graph.node(2).unwrap().form, "b");
    }
}
