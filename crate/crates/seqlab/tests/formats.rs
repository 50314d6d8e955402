use std::collections::BTreeSet;

use graph_seqlab::cli::generate_corpus;
use graph_seqlab::{
    parse_conllu_enhanced, parse_sdp, write_conllu_enhanced, write_sdp, Format, LabelFile,
    LabeledSentence, Sentence,
};
use graph_seqlab_core::{Codec, DecodeMode};

const REFERENCE: &str = include_str!("data/reference.sdp");
const ELLIPSIS: &str = include_str!("data/ellipsis.conllu");

fn arc_keys(s: &Sentence) -> BTreeSet<(usize, usize)> {
    s.graph.unlabeled_arcs()
}

#[test]
fn reference_graph_corpus_parses() {
    let corpus = parse_sdp(REFERENCE).unwrap();
    assert_eq!(corpus.len(), 1);
    let want: BTreeSet<(usize, usize)> = [
        (1, 5),
        (1, 8),
        (5, 3),
        (8, 10),
        (2, 6),
        (6, 4),
        (6, 10),
        (6, 9),
    ]
    .into_iter()
    .collect();
    assert_eq!(arc_keys(&corpus[0]), want);
    assert_eq!(corpus[0].comments, ["#20000001"]);
}

#[test]
fn sdp_write_is_a_fixpoint() {
    let corpus = parse_sdp(REFERENCE).unwrap();
    assert_eq!(write_sdp(&corpus).unwrap(), REFERENCE);
}

#[test]
fn generated_sdp_round_trips() {
    for seed in 0..50 {
        let corpus = generate_corpus(20, 1, 15, 1.2, 0.3, 0.3, seed);
        let text = write_sdp(&corpus).unwrap();
        let again = parse_sdp(&text).unwrap();
        assert_eq!(again.len(), corpus.len());
        for (a, b) in corpus.iter().zip(&again) {
            assert_eq!(a.graph.arcs(), b.graph.arcs(), "seed {}", seed);
            assert_eq!(a.comments, b.comments);
        }
        assert_eq!(write_sdp(&again).unwrap(), text, "seed {}", seed);
    }
}

#[test]
fn conllu_parse_write_parse() {
    let corpus = parse_conllu_enhanced(ELLIPSIS).unwrap();
    assert_eq!(corpus.len(), 2);
    assert_eq!(corpus[0].graph.len(), 7);
    assert_eq!(corpus[1].multiword.len(), 1);

    let text = write_conllu_enhanced(&corpus).unwrap();
    assert_eq!(text, ELLIPSIS);
    let again = parse_conllu_enhanced(&text).unwrap();
    assert_eq!(again, corpus);
}

#[test]
fn crlf_input_is_accepted() {
    let crlf = REFERENCE.replace('\n', "\r\n");
    assert_eq!(parse_sdp(&crlf).unwrap(), parse_sdp(REFERENCE).unwrap());
    let crlf = ELLIPSIS.replace('\n', "\r\n");
    assert_eq!(
        parse_conllu_enhanced(&crlf).unwrap(),
        parse_conllu_enhanced(ELLIPSIS).unwrap()
    );
}

#[test]
fn label_files_carry_empty_node_ids() {
    let corpus = Format::Conllu.parse(ELLIPSIS).unwrap();
    for codec in [Codec::Hierarchical, Codec::Planes(2)] {
        let file = LabelFile {
            codec,
            sentences: corpus
                .iter()
                .map(|s| LabeledSentence::encode(&s.graph, codec))
                .collect(),
        };
        let text = file.render();
        assert!(text.contains("#ids=1 2 2.1 3 4 5 6\n"));
        let parsed = LabelFile::parse(&text).unwrap();
        assert_eq!(parsed, file);

        for (s, labeled) in corpus.iter().zip(&parsed.sentences) {
            let template = s.graph.with_arcs([]).unwrap();
            let decoded = codec
                .decode_graph(&template, &labeled.labels, DecodeMode::Strict)
                .unwrap();
            assert_eq!(decoded.unlabeled_arcs(), s.graph.unlabeled_arcs());
            assert_eq!(decoded.nodes(), s.graph.nodes());
        }
    }
}

#[test]
fn syntax_errors_report_lines() {
    // Token 4 sits on line 5, after the sentence id.
    let broken = REFERENCE.replacen("\tARG1\t_\n", "\tARG1\n", 1);
    let err = parse_sdp(&broken).unwrap_err();
    assert_eq!(err.line(), Some(5));

    let broken = ELLIPSIS.replace("2.1\tlikes", "2.x\tlikes");
    let err = parse_conllu_enhanced(&broken).unwrap_err();
    assert_eq!(err.line(), Some(5));
}
