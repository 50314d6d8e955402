//! Sequence-labeling linearizations of dependency graphs.
//!
//! Two bracketing codecs map an arbitrary dependency graph (reentrancies,
//! cycles, several roots, empty nodes) to exactly one label per token and
//! back:
//!
//! * [`hb`]: the hierarchical bracketing encoding, built on the proper rope
//!   cover of the graph ([`rope`]). Every graph is representable.
//! * [`plane`]: the bracketing encoding over `k` relaxed planes. Arcs that do
//!   not fit into `k` planes are lost.
//!
//! [`metrics`] scores predicted graphs and computes coverage, treebank and
//! label-inventory statistics. The crate is `no_std` and only needs `alloc`;
//! file formats and the command-line front end live in the `graph-seqlab`
//! crate.
//!
//! ```
//! use graph_seqlab_core::{Codec, DecodeMode, DepGraph};
//!
//! // A root arc, a reentrant token and a 2-cycle.
//! let g = DepGraph::from_pairs(4, &[(0, 2), (2, 1), (2, 4), (4, 3), (3, 4)]).unwrap();
//! let labels = Codec::Hierarchical.encode(&g);
//! let arcs = Codec::Hierarchical.decode(&labels, DecodeMode::Strict).unwrap();
//! assert_eq!(arcs, g.arcs());
//! ```

#![no_std]

extern crate alloc;

pub mod codec;
pub mod generate;
pub mod graph;
pub mod hb;
pub mod label;
pub mod metrics;
pub mod plane;
pub mod rope;

pub use crate::codec::{Codec, DecodeMode};
pub use crate::generate::{random_graph, GeneratorConfig};
pub use crate::graph::{Arc, DepGraph, Direction, GraphError, Node, Span};
pub use crate::hb::{hb_decode, hb_decode_robust, hb_encode};
pub use crate::label::{BracketSymbol, LabelError, Polarity, Tier, TokenLabel};
pub use crate::metrics::{
    coverage, label_stats, relative_rank_at_half, score, treebank_stats, CorpusStats, LabelStats,
    ScoreError, ScoreReport,
};
pub use crate::plane::{
    assign_relaxed_planes, bk_decode, bk_decode_robust, bk_encode, crosses_same_direction,
    PlaneAssignment,
};
pub use crate::rope::{
    brute_force_rope_cover, is_proper_rope_cover, leans_on, opposite_pairs, proper_rope_cover,
    structural_arc_count, LeanSide, RopeCover, StructuralSet,
};

/// Errors raised by the strict decoders.
#[derive(Clone, Debug, Eq, PartialEq, thiserror::Error)]
pub enum DecodeError {
    #[error("position {position}: `{symbol}` has no matching opening bracket")]
    Unmatched {
        position: usize,
        symbol: BracketSymbol,
    },

    #[error("position {position}: `{symbol}` closes a bracket of the opposite direction")]
    DirectionMismatch {
        position: usize,
        symbol: BracketSymbol,
    },

    #[error("position {position}: `{symbol}` is not valid in this encoding")]
    InvalidSymbol {
        position: usize,
        symbol: BracketSymbol,
    },

    #[error("position {position}: `{symbol}` produces a self-loop")]
    SelfLoop {
        position: usize,
        symbol: BracketSymbol,
    },

    #[error("position {position}: `{symbol}` produces the arc ({head} -> {dep}) twice")]
    DuplicateArc {
        position: usize,
        symbol: BracketSymbol,
        head: usize,
        dep: usize,
    },

    #[error("position {position}: `{symbol}` is never closed")]
    Unclosed {
        position: usize,
        symbol: BracketSymbol,
    },
}

impl DecodeError {
    /// 1-based token position of the offending symbol.
    pub fn position(&self) -> usize {
        match *self {
            DecodeError::Unmatched { position, .. }
            | DecodeError::DirectionMismatch { position, .. }
            | DecodeError::InvalidSymbol { position, .. }
            | DecodeError::SelfLoop { position, .. }
            | DecodeError::DuplicateArc { position, .. }
            | DecodeError::Unclosed { position, .. } => position,
        }
    }
}
