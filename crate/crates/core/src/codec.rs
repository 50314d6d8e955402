//! Common front for both bracketing codecs.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::graph::{Arc, DepGraph, GraphError};
use crate::label::TokenLabel;
use crate::{hb, plane, DecodeError};

#[derive(Clone, Copy, Debug, Eq, Hash, PartialEq)]
pub enum DecodeMode {
    /// Reject ill-formed label sequences.
    Strict,
    /// Repair ill-formed label sequences; never fails.
    Robust,
}

#[derive(Clone, Copy, Debug, Eq, Hash, PartialEq)]
pub enum Codec {
    /// Hierarchical bracketing over the proper rope cover.
    Hierarchical,
    /// Bracketing over at most `k` relaxed planes.
    Planes(usize),
}

impl Codec {
    pub fn encode(&self, g: &DepGraph) -> Vec<TokenLabel> {
        match *self {
            Codec::Hierarchical => hb::hb_encode(g),
            Codec::Planes(k) => plane::bk_encode(g, k),
        }
    }

    /// Decoded arcs, unlabeled and sorted by `(head, dep)`.
    pub fn decode(&self, labels: &[TokenLabel], mode: DecodeMode) -> Result<Vec<Arc>, DecodeError> {
        match *self {
            Codec::Hierarchical => hb::decode(labels, mode),
            Codec::Planes(k) => plane::decode(labels, k, mode),
        }
    }

    /// Decodes onto the nodes of `template`, dropping its arcs.
    pub fn decode_graph(
        &self,
        template: &DepGraph,
        labels: &[TokenLabel],
        mode: DecodeMode,
    ) -> Result<DepGraph, CodecError> {
        if labels.len() != template.len() {
            return Err(CodecError::Length {
                labels: labels.len(),
                nodes: template.len(),
            });
        }
        let arcs = self.decode(labels, mode)?;
        Ok(template.with_arcs(arcs)?)
    }

    /// True when decoding the encoding of `g` gives back its arcs exactly
    /// (ignoring relations).
    pub fn round_trips(&self, g: &DepGraph) -> bool {
        match self.decode(&self.encode(g), DecodeMode::Strict) {
            Ok(arcs) => arcs.iter().map(Arc::key).eq(g.arcs().iter().map(Arc::key)),
            Err(_) => false,
        }
    }
}

impl fmt::Display for Codec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Codec::Hierarchical => f.write_str("hb"),
            Codec::Planes(k) => write!(f, "bk:{}", k),
        }
    }
}

#[derive(Clone, Debug, Eq, PartialEq, thiserror::Error)]
#[error("unknown codec {0:?} (expected `hb` or `bk:<k>` with k >= 1)")]
pub struct UnknownCodec(pub alloc::string::String);

impl FromStr for Codec {
    type Err = UnknownCodec;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "hb" {
            return Ok(Codec::Hierarchical);
        }
        s.strip_prefix("bk:")
            .filter(|k| !k.starts_with(['0', '+']))
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|&k| k >= 1)
            .map(Codec::Planes)
            .ok_or_else(|| UnknownCodec(s.into()))
    }
}

#[derive(Clone, Debug, Eq, PartialEq, thiserror::Error)]
pub enum CodecError {
    #[error("{labels} labels for {nodes} nodes")]
    Length { labels: usize, nodes: usize },

    #[error(transparent)]
    Decode(#[from] DecodeError),

    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn codec_names() {
        assert_eq!("hb".parse(), Ok(Codec::Hierarchical));
        assert_eq!("bk:3".parse(), Ok(Codec::Planes(3)));
        assert!("bk:0".parse::<Codec>().is_err());
        assert!("bk:02".parse::<Codec>().is_err());
        assert!("bk".parse::<Codec>().is_err());
        assert_eq!(Codec::Planes(2).to_string(), "bk:2");
        assert_eq!(Codec::Hierarchical.to_string(), "hb");
    }
}
