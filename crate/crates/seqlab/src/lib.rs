//! Treebank formats, label files, reports and the command-line front end
//! built on `graph-seqlab-core`.

pub mod cli;
pub mod conllu;
pub mod corpus;
pub mod labels;
pub mod pearson;
pub mod report;
pub mod sdp;

pub use conllu::{parse_conllu_enhanced, write_conllu_enhanced};
pub use corpus::{Format, FormatError, Sentence};
pub use labels::{LabelFile, LabeledSentence};
pub use pearson::{pearson, Correlation, PearsonError};
pub use sdp::{parse_sdp, write_sdp};
