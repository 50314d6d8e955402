//! JSON and plain-text renderings of reports. JSON objects use sorted keys.

use std::fmt::Write;

use graph_seqlab_core::{CorpusStats, LabelStats, ScoreReport};
use serde_json::{json, Value};

pub fn score_json(r: &ScoreReport) -> Value {
    let c = &r.counts;
    json!({
        "uf": round2(r.uf),
        "lf": round2(r.lf),
        "um": round2(r.um),
        "lm": round2(r.lm),
        "counts": {
            "gold_arcs": c.gold_arcs,
            "pred_arcs": c.pred_arcs,
            "correct_unlabeled": c.correct_unlabeled,
            "correct_labeled": c.correct_labeled,
            "sentences": c.sentences,
            "exact_unlabeled": c.exact_unlabeled,
            "exact_labeled": c.exact_labeled,
        },
    })
}

pub fn score_text(r: &ScoreReport) -> String {
    format!(
        "UF={:.2} LF={:.2} UM={:.2} LM={:.2}\n",
        r.uf, r.lf, r.um, r.lm
    )
}

pub fn stats_json(s: &CorpusStats) -> Value {
    let planes: serde_json::Map<String, Value> = s
        .plane_histogram
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    json!({
        "n_sents": s.n_sents,
        "mean_len": s.mean_len,
        "plane_histogram": planes,
        "density": s.density,
        "mean_structural": s.mean_structural,
        "n_cycles": s.n_cycles,
    })
}

/// One row in the layout of a treebank statistics table: sentences, mean
/// length, percentage of sentences per relaxed-plane count, density, mean
/// number of structural arcs and cycles.
pub fn stats_text(s: &CorpusStats) -> String {
    let max_planes = s.plane_histogram.keys().copied().max().unwrap_or(0).max(3);
    let mut header = vec![String::from("#sents"), String::from("n")];
    let mut row = vec![s.n_sents.to_string(), format!("{:.2}", s.mean_len)];
    for k in 1..=max_planes {
        header.push(format!("{}pl%", k));
        let fraction = s.plane_histogram.get(&k).copied().unwrap_or(0.0);
        row.push(format!("{:.2}", 100.0 * fraction));
    }
    header.extend(["d".into(), "|R|".into(), "#cycs".into()]);
    row.extend([
        format!("{:.2}", s.density),
        format!("{:.2}", s.mean_structural),
        s.n_cycles.to_string(),
    ]);
    align(&[header, row])
}

pub fn labels_json(s: &LabelStats) -> Value {
    let ranks: Vec<Value> = s
        .rank_frequency
        .iter()
        .map(|(label, count)| json!([label, count]))
        .collect();
    json!({
        "inventory_size": s.inventory_size,
        "unseen": s.unseen,
        "total": s.total,
        "p50": s.p50,
        "rank_frequency": ranks,
    })
}

pub fn labels_text(s: &LabelStats, ranks: usize) -> String {
    let mut out = align(&[
        vec![
            "labels".into(),
            "unseen".into(),
            "total".into(),
            "p50%".into(),
        ],
        vec![
            s.inventory_size.to_string(),
            s.unseen.to_string(),
            s.total.to_string(),
            format!("{:.2}", 100.0 * s.p50),
        ],
    ]);
    if ranks > 0 && !s.rank_frequency.is_empty() {
        out.push('\n');
        let mut rows = vec![vec!["rank".into(), "count".into(), "label".into()]];
        for (i, (label, count)) in s.rank_frequency.iter().take(ranks).enumerate() {
            rows.push(vec![(i + 1).to_string(), count.to_string(), label.clone()]);
        }
        out.push_str(&align(&rows));
    }
    out
}

/// Right-aligns columns, two spaces apart.
pub fn align(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{:>width$}", s, width = widths[c]))
            .collect();
        writeln!(out, "{}", cells.join("  ")).expect("writing to a String cannot fail");
    }
    out
}

fn round2(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_seqlab_core::{score, treebank_stats, DepGraph};

    #[test]
    fn json_keys_are_sorted() {
        let g = DepGraph::from_pairs(3, &[(1, 2)]).unwrap();
        let text = serde_json::to_string(&score_json(
            &score(std::slice::from_ref(&g), std::slice::from_ref(&g)).unwrap(),
        ))
        .unwrap();
        assert!(text.starts_with("{\"counts\":{\"correct_labeled\":1"));
        assert!(text.ends_with("\"lf\":100.0,\"lm\":100.0,\"uf\":100.0,\"um\":100.0}"));
    }

    #[test]
    fn stats_table_has_plane_columns() {
        let g = DepGraph::from_pairs(6, &[(1, 4), (2, 5), (3, 6)]).unwrap();
        let table = stats_text(&treebank_stats(&[g]));
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].contains("3pl%"));
        assert!(lines[1].contains("100.00"));
    }
}
