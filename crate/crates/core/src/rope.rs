//! Leaning, proper rope covers and structural sets.
//!
//! An arc leans on another when the other's span covers it and the two share
//! their left or their right endpoint. A rope cover is a set `R` of arcs such
//! that every arc outside `R` leans on some arc in `R`; it is proper when no
//! arc of `R` leans on another arc of `R`. Arcs attached to the virtual root
//! take no part in any of this.

use alloc::vec::Vec;

use crate::graph::{Arc, DepGraph, Direction};

/// Arcs in the exhaustive search are limited to this many.
pub const BRUTE_FORCE_LIMIT: usize = 16;

/// True iff `a` leans on `b`.
///
/// Containment is non-strict, so two arcs over the same span in opposite
/// directions lean on each other. An arc never leans on itself.
pub fn leans_on(a: &Arc, b: &Arc) -> bool {
    if a.key() == b.key() || a.is_root() || b.is_root() {
        return false;
    }
    let (sa, sb) = (a.span(), b.span());
    sb.covers(&sa) && (sa.lo == sb.lo || sa.hi == sb.hi)
}

/// Endpoint of its structural arc that an auxiliary arc shares. The
/// auxiliary is encoded with a single bracket at its other endpoint.
#[derive(Clone, Copy, Debug, Eq, Hash, PartialEq)]
pub enum LeanSide {
    Lo,
    Hi,
}

#[derive(Clone, Debug, Eq, PartialEq)]
pub struct StructuralSet {
    pub structural: Arc,
    pub auxiliaries: Vec<(Arc, LeanSide)>,
}

/// A proper rope cover with every auxiliary arc assigned to one structural
/// set. Sets are ordered by structural span, left endpoint ascending and
/// right endpoint descending.
#[derive(Clone, Debug, Default, Eq, PartialEq)]
pub struct RopeCover {
    pub sets: Vec<StructuralSet>,
}

impl RopeCover {
    /// Builds the structural sets for a given choice of structural arcs.
    /// `arcs` may contain root arcs; they are ignored.
    pub fn from_structural(arcs: &[Arc], structural: &[Arc]) -> RopeCover {
        let mut structural: Vec<Arc> = structural.iter().map(Arc::unlabeled).collect();
        structural.sort_by(|a, b| a.span().outer_first(&b.span()));
        let mut sets: Vec<StructuralSet> = structural
            .into_iter()
            .map(|structural| StructuralSet {
                structural,
                auxiliaries: Vec::new(),
            })
            .collect();

        for arc in arcs.iter().filter(|a| !a.is_root()) {
            if sets.iter().any(|s| s.structural.key() == arc.key()) {
                continue;
            }
            let span = arc.span();
            let chosen = sets
                .iter()
                .enumerate()
                .filter(|(_, s)| leans_on(arc, &s.structural))
                .min_by_key(|(_, s)| {
                    let ss = s.structural.span();
                    (ss.lo != span.lo, ss.len(), ss.lo)
                })
                .map(|(i, _)| i);
            if let Some(i) = chosen {
                let ss = sets[i].structural.span();
                // A same-span auxiliary is anchored at the right endpoint: a
                // plain opener at the left endpoint is still on the stack when
                // the superbracket closes, while a plain closer would come
                // after the close.
                let side = if span.lo == ss.lo && span.hi != ss.hi {
                    LeanSide::Lo
                } else {
                    LeanSide::Hi
                };
                sets[i].auxiliaries.push((arc.unlabeled(), side));
            }
        }
        for set in &mut sets {
            set.auxiliaries
                .sort_by(|(a, _), (b, _)| a.span().outer_first(&b.span()));
        }
        RopeCover { sets }
    }

    pub fn structural(&self) -> impl Iterator<Item = &Arc> {
        self.sets.iter().map(|s| &s.structural)
    }

    pub fn auxiliaries(&self) -> impl Iterator<Item = &(Arc, LeanSide)> {
        self.sets.iter().flat_map(|s| s.auxiliaries.iter())
    }

    pub fn structural_count(&self) -> usize {
        self.sets.len()
    }

    pub fn auxiliary_count(&self) -> usize {
        self.sets.iter().map(|s| s.auxiliaries.len()).sum()
    }
}

/// The proper rope cover of `g`.
///
/// Arcs are visited outer-first; an arc can only lean on arcs covering it, all
/// of which precede it in that order, so each arc is structural exactly when
/// it leans on no structural arc already chosen. For two arcs over the same
/// span the rightward one is visited, and hence kept, first.
pub fn proper_rope_cover(g: &DepGraph) -> RopeCover {
    let mut candidates: Vec<&Arc> = g.inner_arcs().collect();
    candidates.sort_by(|a, b| a.span().outer_first(&b.span()));

    let mut structural: Vec<Arc> = Vec::new();
    for arc in candidates {
        if !structural.iter().any(|s| leans_on(arc, s)) {
            structural.push(arc.unlabeled());
        }
    }
    RopeCover::from_structural(g.arcs(), &structural)
}

pub fn structural_arc_count(g: &DepGraph) -> usize {
    proper_rope_cover(g).structural_count()
}

#[derive(Clone, Debug, Eq, PartialEq, thiserror::Error)]
#[error("exhaustive rope cover search is limited to {limit} arcs, graph has {arcs}")]
pub struct TooManyArcs {
    pub arcs: usize,
    pub limit: usize,
}

/// Checks both rope-cover conditions for `structural` directly from their
/// definitions.
pub fn is_proper_rope_cover(arcs: &[Arc], structural: &[Arc]) -> bool {
    let inner: Vec<&Arc> = arcs.iter().filter(|a| !a.is_root()).collect();
    let in_cover = |a: &Arc| structural.iter().any(|s| s.key() == a.key());

    let total = inner
        .iter()
        .filter(|a| !in_cover(a))
        .all(|a| structural.iter().any(|s| leans_on(a, s)));
    let proper = structural
        .iter()
        .all(|a| !structural.iter().any(|b| leans_on(a, b)));
    let subset = structural
        .iter()
        .all(|s| inner.iter().any(|a| a.key() == s.key()));
    total && proper && subset
}

/// Every proper rope cover of `g`, by enumeration of all arc subsets.
///
/// Covers come out in increasing subset-mask order over the arcs sorted by
/// `(head, dep)`.
pub fn brute_force_rope_cover(g: &DepGraph) -> Result<Vec<RopeCover>, TooManyArcs> {
    let inner: Vec<Arc> = g.inner_arcs().map(Arc::unlabeled).collect();
    if inner.len() > BRUTE_FORCE_LIMIT {
        return Err(TooManyArcs {
            arcs: inner.len(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }

    let n = inner.len();
    let mut leans = alloc::vec![alloc::vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leans[i][j] = leans_on(&inner[i], &inner[j]);
        }
    }

    let mut covers = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let member = |i: usize| mask & (1 << i) != 0;
        let total = (0..n)
            .filter(|&i| !member(i))
            .all(|i| (0..n).any(|j| member(j) && leans[i][j]));
        let proper = (0..n)
            .filter(|&i| member(i))
            .all(|i| !(0..n).any(|j| member(j) && leans[i][j]));
        if total && proper {
            let chosen: Vec<Arc> = (0..n)
                .filter(|&i| member(i))
                .map(|i| inner[i].clone())
                .collect();
            covers.push(RopeCover::from_structural(&inner, &chosen));
        }
    }
    Ok(covers)
}

/// Number of same-span arc pairs in opposite directions. Each such pair that
/// leans on no structural arc doubles the number of proper rope covers.
pub fn opposite_pairs(g: &DepGraph) -> usize {
    g.inner_arcs()
        .filter(|a| a.direction() == Direction::Right && g.arc(a.dep, a.head).is_some())
        .count()
}
