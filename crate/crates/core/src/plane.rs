//! Bracketing over `k` relaxed planes.
//!
//! A relaxed plane holds arcs of which no two cross in the same direction.
//! Every arc becomes a bracket pair tagged with its plane (`/` at the head
//! and `>` at the dependent of a right arc, `<` at the dependent and `\` at
//! the head of a left arc), and the decoder keeps one stack per plane and
//! direction. Arcs that do not fit into the `k` planes are lost.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::codec::DecodeMode;
use crate::graph::{Arc, DepGraph, Direction};
use crate::label::{BracketSymbol, Polarity, Tier, TokenLabel};
use crate::DecodeError;

/// True iff both arcs point the same way and their spans strictly
/// interleave. Sharing an endpoint is not a crossing.
pub fn crosses_same_direction(a: &Arc, b: &Arc) -> bool {
    if a.is_root() || b.is_root() || a.direction() != b.direction() {
        return false;
    }
    let (a, b) = (a.span(), b.span());
    (a.lo < b.lo && b.lo < a.hi && a.hi < b.hi) || (b.lo < a.lo && a.lo < b.hi && b.hi < a.hi)
}

#[derive(Clone, Debug, Default, Eq, PartialEq)]
pub struct PlaneAssignment {
    /// Arcs of each plane, in assignment order.
    pub planes: Vec<Vec<Arc>>,
    /// Arcs that fit into none of the available planes.
    pub dropped: Vec<Arc>,
}

impl PlaneAssignment {
    pub fn plane_count(&self) -> usize {
        self.planes.len()
    }

    pub fn plane_of(&self, head: usize, dep: usize) -> Option<usize> {
        self.planes
            .iter()
            .position(|p| p.iter().any(|a| a.key() == (head, dep)))
    }

    pub fn is_lossless(&self) -> bool {
        self.dropped.is_empty()
    }
}

/// Greedy plane assignment. Arcs are visited by left endpoint ascending and
/// right endpoint descending; each takes the lowest plane in which it crosses
/// no arc of its own direction. `max_planes = None` never drops an arc.
/// Root arcs are not assigned.
pub fn assign_relaxed_planes(g: &DepGraph, max_planes: Option<usize>) -> PlaneAssignment {
    let mut arcs: Vec<&Arc> = g.inner_arcs().collect();
    arcs.sort_by(|a, b| a.span().outer_first(&b.span()));

    let mut result = PlaneAssignment::default();
    for arc in arcs {
        let arc = arc.unlabeled();
        let free = result
            .planes
            .iter()
            .position(|plane| !plane.iter().any(|b| crosses_same_direction(&arc, b)));
        match free {
            Some(p) => result.planes[p].push(arc),
            None if max_planes.is_none_or(|k| result.planes.len() < k) => {
                result.planes.push(vec![arc])
            }
            None => result.dropped.push(arc),
        }
    }
    result
}

/// Encodes `g` with at most `k` planes. Arcs beyond the budget are omitted.
pub fn bk_encode(g: &DepGraph, k: usize) -> Vec<TokenLabel> {
    let n = g.len();
    let assignment = assign_relaxed_planes(g, Some(k.max(1)));

    // (polarity, plane, matched position, direction) per symbol.
    let mut planned: Vec<Vec<(Polarity, u32, usize, Direction)>> = vec![Vec::new(); n + 1];
    for (plane, arcs) in assignment.planes.iter().enumerate() {
        let plane = plane as u32;
        for arc in arcs {
            let span = arc.span();
            planned[span.lo].push((Polarity::Open, plane, span.hi, span.direction));
            planned[span.hi].push((Polarity::Close, plane, span.lo, span.direction));
        }
    }

    (1..=n)
        .map(|position| {
            let symbols = &mut planned[position];
            symbols.sort_by_key(|&(polarity, plane, matched, direction)| {
                (
                    polarity == Polarity::Open,
                    plane,
                    Reverse(matched),
                    direction,
                )
            });
            TokenLabel::new(
                g.is_top(position),
                symbols
                    .iter()
                    .map(|&(polarity, plane, _, direction)| {
                        BracketSymbol::plain(direction, polarity, plane)
                    })
                    .collect(),
            )
        })
        .collect()
}

pub(crate) fn decode(
    labels: &[TokenLabel],
    k: usize,
    mode: DecodeMode,
) -> Result<Vec<Arc>, DecodeError> {
    let strict = mode == DecodeMode::Strict;
    let mut stacks: BTreeMap<(u32, Direction), Vec<(usize, BracketSymbol)>> = BTreeMap::new();
    let mut arcs = BTreeSet::new();

    for (i, label) in labels.iter().enumerate() {
        let position = i + 1;
        if label.root {
            arcs.insert((0, position));
        }
        for &symbol in &label.symbols {
            if symbol.tier == Tier::Super || symbol.index as usize >= k {
                if strict {
                    return Err(DecodeError::InvalidSymbol { position, symbol });
                }
                continue;
            }
            let stack = stacks.entry((symbol.index, symbol.direction)).or_default();
            if symbol.polarity == Polarity::Open {
                stack.push((position, symbol));
                continue;
            }
            let arc = match (stack.pop(), symbol.direction) {
                (Some((other, _)), Direction::Right) => (other, position),
                (Some((other, _)), Direction::Left) => (position, other),
                (None, _) if strict => return Err(DecodeError::Unmatched { position, symbol }),
                (None, Direction::Right) => (0, position),
                (None, Direction::Left) => continue,
            };
            if arc.0 == arc.1 {
                if strict {
                    return Err(DecodeError::SelfLoop { position, symbol });
                }
                continue;
            }
            if !arcs.insert(arc) && strict {
                return Err(DecodeError::DuplicateArc {
                    position,
                    symbol,
                    head: arc.0,
                    dep: arc.1,
                });
            }
        }
    }

    if strict {
        if let Some(&(position, symbol)) = stacks
            .values()
            .flat_map(|s| s.first())
            .min_by_key(|(position, _)| *position)
        {
            return Err(DecodeError::Unclosed { position, symbol });
        }
    }

    Ok(arcs.into_iter().map(|(h, d)| Arc::new(h, d)).collect())
}

/// Strict decoding with `k` planes.
pub fn bk_decode(labels: &[TokenLabel], k: usize) -> Result<Vec<Arc>, DecodeError> {
    decode(labels, k, DecodeMode::Strict)
}

/// Decoding with the same postprocessing as the hierarchical decoder:
/// unmatched `>` attaches to the virtual root, unmatched `\` and anything
/// left open are discarded, symbols outside the `k` planes are ignored.
pub fn bk_decode_robust(labels: &[TokenLabel], k: usize) -> Vec<Arc> {
    decode(labels, k, DecodeMode::Robust).expect("robust decoding is total")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;

    fn reference_graph() -> DepGraph {
        DepGraph::from_pairs(
            10,
            &[
                (1, 5),
                (1, 8),
                (5, 3),
                (8, 10),
                (2, 6),
                (6, 4),
                (6, 10),
                (6, 9),
            ],
        )
        .unwrap()
    }

    fn labels(s: &str) -> Vec<TokenLabel> {
        s.split_whitespace().map(|l| l.parse().unwrap()).collect()
    }

    fn sorted(mut keys: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
        keys.sort();
        keys
    }

    #[test]
    fn crossing_examples() {
        assert!(crosses_same_direction(&Arc::new(2, 6), &Arc::new(1, 5)));
        assert!(!crosses_same_direction(&Arc::new(1, 5), &Arc::new(1, 8)));
        assert!(!crosses_same_direction(&Arc::new(5, 3), &Arc::new(2, 6)));
    }

    #[test]
    fn reference_graph_planes() {
        let a = assign_relaxed_planes(&reference_graph(), Some(2));
        assert!(a.is_lossless());
        let plane = |p: usize| sorted(a.planes[p].iter().map(Arc::key).collect());
        assert_eq!(plane(0), [(1, 5), (1, 8), (5, 3), (8, 10)]);
        assert_eq!(plane(1), [(2, 6), (6, 4), (6, 9), (6, 10)]);
        assert_eq!(
            assign_relaxed_planes(&reference_graph(), None).plane_count(),
            2
        );
    }

    #[test]
    fn three_mutually_crossing_arcs() {
        let g = DepGraph::from_pairs(6, &[(1, 4), (2, 5), (3, 6)]).unwrap();
        assert_eq!(assign_relaxed_planes(&g, Some(2)).dropped.len(), 1);
        let unlimited = assign_relaxed_planes(&g, None);
        assert_eq!(unlimited.plane_count(), 3);
        assert!(unlimited.is_lossless());

        let decoded = bk_decode(&bk_encode(&g, 2), 2).unwrap();
        assert_eq!(decoded.len(), 2);
    }

    #[test]
    fn encodes_reference_graph() {
        let rendered: Vec<String> = bk_encode(&reference_graph(), 2)
            .iter()
            .map(TokenLabel::render)
            .collect();
        assert_eq!(
            rendered,
            [
                "//",
                "/1",
                "<",
                "<1",
                "\\>",
                "\\1>1/1/1",
                "_",
                ">/",
                ">1",
                ">>1"
            ]
        );
    }

    #[test]
    fn decodes_reference_graph() {
        let arcs = bk_decode(&labels("// /1 < <1 \\> \\1>1/1/1 _ >/ >1 >>1"), 2).unwrap();
        assert_eq!(
            arcs.iter().map(Arc::key).collect::<Vec<_>>(),
            reference_graph()
                .unlabeled_arcs()
                .into_iter()
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn single_left_arc() {
        let g = DepGraph::from_pairs(3, &[(3, 1)]).unwrap();
        let rendered: Vec<String> = bk_encode(&g, 1).iter().map(TokenLabel::render).collect();
        assert_eq!(rendered, ["<", "_", "\\"]);
    }

    #[test]
    fn nested_arcs_pop_innermost() {
        let arcs = bk_decode(&labels("/ / _ _ > _ _ >"), 1).unwrap();
        let keys: Vec<_> = arcs.iter().map(Arc::key).collect();
        assert_eq!(keys, [(1, 8), (2, 5)]);
    }

    #[test]
    fn strict_and_robust_modes() {
        assert!(matches!(
            bk_decode(&labels("> _"), 1),
            Err(DecodeError::Unmatched { position: 1, .. })
        ));
        assert_eq!(bk_decode_robust(&labels("> _"), 1), [Arc::new(0, 1)]);
        assert!(matches!(
            bk_decode(&labels("/ _"), 1),
            Err(DecodeError::Unclosed { position: 1, .. })
        ));
        assert!(bk_decode_robust(&labels("/ _"), 1).is_empty());
        assert!(matches!(
            bk_decode(&labels("/1 >1"), 1),
            Err(DecodeError::InvalidSymbol { .. })
        ));
        assert!(matches!(
            bk_decode(&labels("!/ !>"), 2),
            Err(DecodeError::InvalidSymbol { .. })
        ));
    }
}
