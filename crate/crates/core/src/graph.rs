//! Dependency graphs over sentence positions.
//!
//! Position 0 is the virtual root. Nodes occupy positions `1..=n`; empty
//! nodes (CoNLL-U ids such as `3.1`) are ordinary positions too, ordered by
//! `(id, sub_id)`, so the codecs never need to know about them.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Arc direction. An arc is rightward when its head precedes its dependent.
#[derive(Clone, Copy, Debug, Eq, Hash, Ord, PartialEq, PartialOrd)]
pub enum Direction {
    Left,
    Right,
}

#[derive(Clone, Debug, Eq, Hash, PartialEq)]
pub struct Node {
    /// Token number. For an empty node this is the number of the token it
    /// follows (0 when it precedes the first token).
    pub id: usize,
    /// 0 for tokens, `m > 0` for the empty node `id.m`.
    pub sub_id: usize,
    pub form: String,
}

impl Node {
    pub fn token(id: usize, form: impl Into<String>) -> Self {
        Node {
            id,
            sub_id: 0,
            form: form.into(),
        }
    }

    pub fn empty(id: usize, sub_id: usize, form: impl Into<String>) -> Self {
        Node {
            id,
            sub_id,
            form: form.into(),
        }
    }

    pub fn is_empty_node(&self) -> bool {
        self.sub_id > 0
    }
}

/// A directed arc `head -> dep`, optionally carrying a relation.
#[derive(Clone, Debug, Eq, Hash, Ord, PartialEq, PartialOrd)]
pub struct Arc {
    pub head: usize,
    pub dep: usize,
    pub relation: Option<String>,
}

impl Arc {
    pub fn new(head: usize, dep: usize) -> Self {
        Arc {
            head,
            dep,
            relation: None,
        }
    }

    pub fn labeled(head: usize, dep: usize, relation: impl Into<String>) -> Self {
        Arc {
            head,
            dep,
            relation: Some(relation.into()),
        }
    }

    /// True for attachments to the virtual root.
    pub fn is_root(&self) -> bool {
        self.head == 0
    }

    pub fn direction(&self) -> Direction {
        if self.head < self.dep {
            Direction::Right
        } else {
            Direction::Left
        }
    }

    pub fn span(&self) -> Span {
        Span {
            lo: self.head.min(self.dep),
            hi: self.head.max(self.dep),
            direction: self.direction(),
        }
    }

    pub fn key(&self) -> (usize, usize) {
        (self.head, self.dep)
    }

    /// The same arc without its relation.
    pub fn unlabeled(&self) -> Arc {
        Arc::new(self.head, self.dep)
    }
}

/// The interval between the endpoints of an arc.
#[derive(Clone, Copy, Debug, Eq, Hash, PartialEq)]
pub struct Span {
    pub lo: usize,
    pub hi: usize,
    pub direction: Direction,
}

impl Span {
    /// Non-strict containment of `other` in `self`.
    pub fn covers(&self, other: &Span) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo
    }

    /// True only for degenerate spans; arcs never produce one.
    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    /// Order by left endpoint ascending, then right endpoint descending
    /// (outer arcs first), then rightward before leftward.
    pub fn outer_first(&self, other: &Span) -> Ordering {
        self.lo
            .cmp(&other.lo)
            .then(other.hi.cmp(&self.hi))
            .then(other.direction.cmp(&self.direction))
    }
}

#[derive(Clone, Debug, Eq, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("self-loop on position {0}")]
    SelfLoop(usize),

    #[error("duplicate arc ({head} -> {dep})")]
    DuplicateArc { head: usize, dep: usize },

    #[error("arc ({head} -> {dep}) refers to a position outside 0..={len}")]
    OutOfRange { head: usize, dep: usize, len: usize },

    #[error("node at position {0} breaks the (id, sub_id) ordering")]
    NodeOrder(usize),
}

/// A sentence's nodes and a set of arcs between them.
///
/// Connectivity, acyclicity and single-headedness are not required. Arcs
/// are kept sorted by `(head, dep)`.
#[derive(Clone, Debug, Eq, Hash, PartialEq)]
pub struct DepGraph {
    nodes: Vec<Node>,
    arcs: Vec<Arc>,
}

impl DepGraph {
    pub fn new(nodes: Vec<Node>, arcs: impl IntoIterator<Item = Arc>) -> Result<Self, GraphError> {
        check_nodes(&nodes)?;
        let arcs = check_arcs(nodes.len(), arcs)?;
        Ok(DepGraph { nodes, arcs })
    }

    /// A graph of `n` placeholder tokens `w1 .. wn`.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self, GraphError> {
        DepGraph::new(placeholder_nodes(n), arcs)
    }

    /// Unlabeled convenience constructor.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        DepGraph::from_arcs(n, pairs.iter().map(|&(h, d)| Arc::new(h, d)))
    }

    /// Same nodes, different arcs.
    pub fn with_arcs(&self, arcs: impl IntoIterator<Item = Arc>) -> Result<Self, GraphError> {
        let arcs = check_arcs(self.nodes.len(), arcs)?;
        Ok(DepGraph {
            nodes: self.nodes.clone(),
            arcs,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// The node at a 1-based position.
    pub fn node(&self, position: usize) -> Option<&Node> {
        position.checked_sub(1).and_then(|i| self.nodes.get(i))
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Arcs not attached to the virtual root.
    pub fn inner_arcs(&self) -> impl Iterator<Item = &Arc> {
        self.arcs.iter().filter(|a| !a.is_root())
    }

    pub fn arc(&self, head: usize, dep: usize) -> Option<&Arc> {
        self.arcs
            .binary_search_by(|a| a.key().cmp(&(head, dep)))
            .ok()
            .map(|i| &self.arcs[i])
    }

    /// True when `position` is attached to the virtual root.
    pub fn is_top(&self, position: usize) -> bool {
        self.arc(0, position).is_some()
    }

    /// The `(head, dep)` pairs of all arcs.
    pub fn unlabeled_arcs(&self) -> BTreeSet<(usize, usize)> {
        self.arcs.iter().map(Arc::key).collect()
    }

    /// Arcs per node; 0 for a graph without nodes.
    pub fn density(&self) -> f64 {
        if self.nodes.is_empty() {
            0.0
        } else {
            self.arcs.len() as f64 / self.nodes.len() as f64
        }
    }

    pub fn into_parts(self) -> (Vec<Node>, Vec<Arc>) {
        (self.nodes, self.arcs)
    }
}

pub(crate) fn placeholder_nodes(n: usize) -> Vec<Node> {
    (1..=n).map(|i| Node::token(i, format!("w{}", i))).collect()
}

fn check_nodes(nodes: &[Node]) -> Result<(), GraphError> {
    let mut last_token = 0;
    let mut prev: Option<(usize, usize)> = None;
    for (i, node) in nodes.iter().enumerate() {
        let position = i + 1;
        let ok = if node.sub_id == 0 {
            node.id == last_token + 1
        } else {
            node.id == last_token
                && match prev {
                    Some((id, sub)) if id == node.id => node.sub_id == sub + 1,
                    _ => node.sub_id == 1,
                }
        };
        if !ok {
            return Err(GraphError::NodeOrder(position));
        }
        if node.sub_id == 0 {
            last_token = node.id;
        }
        prev = Some((node.id, node.sub_id));
    }
    Ok(())
}

fn check_arcs(len: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Vec<Arc>, GraphError> {
    let mut arcs: Vec<Arc> = arcs.into_iter().collect();
    for arc in &arcs {
        if arc.head > len || arc.dep == 0 || arc.dep > len {
            return Err(GraphError::OutOfRange {
                head: arc.head,
                dep: arc.dep,
                len,
            });
        }
        if arc.head == arc.dep {
            return Err(GraphError::SelfLoop(arc.dep));
        }
    }
    arcs.sort_by_key(|a| a.key());
    if let Some(w) = arcs.windows(2).find(|w| w[0].key() == w[1].key()) {
        return Err(GraphError::DuplicateArc {
            head: w[0].head,
            dep: w[0].dep,
        });
    }
    Ok(arcs)
}
