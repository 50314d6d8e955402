//! Hierarchical bracketing encoding.
//!
//! Each structural arc of the proper rope cover becomes a pair of
//! superbrackets, opening at its left endpoint and closing at its right one.
//! Each auxiliary arc becomes one plain bracket at the endpoint it does not
//! share with its structural arc: a plain closer when it shares the left
//! endpoint, a plain opener when it shares the right one.
//!
//! Decoding reads symbols left to right and keeps one stack of open
//! symbols:
//!
//! * openers are pushed; a plain opener's index is the number of
//!   superbracket closes that pass over it before the one it attaches to;
//! * a plain closer with index `k` attaches to the `(k+1)`-th open
//!   superbracket from the top and leaves the stack unchanged;
//! * a superbracket closer with index `k` walks the stack from the top,
//!   popping plain openers whose count has run out (attaching them to the
//!   current position) and counting down those that have not, skips `k`
//!   open superbrackets and pops the next one.
//!
//! Indices are only emitted where crossing material would otherwise make
//! the decoder pick the wrong superbracket. Within a token, symbols are
//! written as superbracket closers, plain closers, superbracket openers and
//! plain openers, each group ordered by the position of the matching
//! endpoint, descending.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::codec::DecodeMode;
use crate::graph::{Arc, DepGraph, Direction};
use crate::label::{BracketSymbol, Polarity, Tier, TokenLabel};
use crate::rope::{proper_rope_cover, LeanSide};
use crate::DecodeError;

#[derive(Clone, Copy, Debug, Eq, Ord, PartialEq, PartialOrd)]
enum Class {
    CloseSuper,
    ClosePlain,
    OpenSuper,
    OpenPlain,
}

#[derive(Clone, Copy, Debug)]
struct Planned {
    class: Class,
    direction: Direction,
    /// Position of the other end of whatever this symbol matches.
    matched: usize,
    /// Structural set the symbol belongs to.
    set: usize,
    index: u32,
}

impl Planned {
    fn symbol(&self) -> BracketSymbol {
        let (tier, polarity) = match self.class {
            Class::CloseSuper => (Tier::Super, Polarity::Close),
            Class::ClosePlain => (Tier::Plain, Polarity::Close),
            Class::OpenSuper => (Tier::Super, Polarity::Open),
            Class::OpenPlain => (Tier::Plain, Polarity::Open),
        };
        BracketSymbol::new(tier, self.direction, polarity, self.index)
    }
}

enum SimEntry {
    Super {
        set: usize,
    },
    Plain {
        set: usize,
        at: (usize, usize),
        passes: u32,
    },
}

/// Encodes `g` as one label per node. Total: every graph is representable.
pub fn hb_encode(g: &DepGraph) -> Vec<TokenLabel> {
    let n = g.len();
    let cover = proper_rope_cover(g);

    let mut planned: Vec<Vec<Planned>> = vec![Vec::new(); n + 1];
    for (set, s) in cover.sets.iter().enumerate() {
        let span = s.structural.span();
        planned[span.lo].push(Planned {
            class: Class::OpenSuper,
            direction: span.direction,
            matched: span.hi,
            set,
            index: 0,
        });
        planned[span.hi].push(Planned {
            class: Class::CloseSuper,
            direction: span.direction,
            matched: span.lo,
            set,
            index: 0,
        });
        for (aux, side) in &s.auxiliaries {
            let a = aux.span();
            let (position, class, matched) = match side {
                LeanSide::Lo => (a.hi, Class::ClosePlain, span.lo),
                LeanSide::Hi => (a.lo, Class::OpenPlain, span.hi),
            };
            planned[position].push(Planned {
                class,
                direction: a.direction,
                matched,
                set,
                index: 0,
            });
        }
    }
    for symbols in &mut planned {
        symbols.sort_by_key(|p| (p.class, Reverse(p.matched), p.direction));
    }

    assign_indices(&mut planned);

    (1..=n)
        .map(|position| {
            TokenLabel::new(
                g.is_top(position),
                planned[position].iter().map(Planned::symbol).collect(),
            )
        })
        .collect()
}

/// Runs the decoder over the planned symbols, knowing which structural set
/// each symbol belongs to, and records the index each symbol needs.
fn assign_indices(planned: &mut [Vec<Planned>]) {
    let mut stack: Vec<SimEntry> = Vec::new();
    for position in 0..planned.len() {
        for i in 0..planned[position].len() {
            let p = planned[position][i];
            match p.class {
                Class::OpenSuper => stack.push(SimEntry::Super { set: p.set }),
                Class::OpenPlain => stack.push(SimEntry::Plain {
                    set: p.set,
                    at: (position, i),
                    passes: 0,
                }),
                Class::ClosePlain => {
                    let (_, skipped) = find_super(&stack, p.set);
                    planned[position][i].index = skipped;
                }
                Class::CloseSuper => {
                    let (anchor, skipped) = find_super(&stack, p.set);
                    planned[position][i].index = skipped;
                    let mut kept = Vec::with_capacity(stack.len() - anchor);
                    for entry in stack.drain(anchor..).skip(1) {
                        match entry {
                            SimEntry::Plain { set, at, passes } if set == p.set => {
                                planned[at.0][at.1].index = passes;
                            }
                            SimEntry::Plain { set, at, passes } => kept.push(SimEntry::Plain {
                                set,
                                at,
                                passes: passes + 1,
                            }),
                            other => kept.push(other),
                        }
                    }
                    stack.extend(kept);
                }
            }
        }
    }
    debug_assert!(stack.is_empty());
}

/// Stack slot of the open superbracket of `set` and the number of open
/// superbrackets above it.
fn find_super(stack: &[SimEntry], set: usize) -> (usize, u32) {
    let mut skipped = 0;
    for (i, entry) in stack.iter().enumerate().rev() {
        if let SimEntry::Super { set: s } = entry {
            if *s == set {
                return (i, skipped);
            }
            skipped += 1;
        }
    }
    unreachable!("structural set {} is not open", set)
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    symbol: BracketSymbol,
    position: usize,
    pending: u32,
}

struct Decoder {
    mode: DecodeMode,
    stack: Vec<Entry>,
    arcs: BTreeSet<(usize, usize)>,
}

impl Decoder {
    fn emit(
        &mut self,
        head: usize,
        dep: usize,
        position: usize,
        symbol: BracketSymbol,
    ) -> Result<(), DecodeError> {
        if head == dep {
            return match self.mode {
                DecodeMode::Strict => Err(DecodeError::SelfLoop { position, symbol }),
                DecodeMode::Robust => Ok(()),
            };
        }
        if !self.arcs.insert((head, dep)) && self.mode == DecodeMode::Strict {
            return Err(DecodeError::DuplicateArc {
                position,
                symbol,
                head,
                dep,
            });
        }
        Ok(())
    }

    /// Arc for a closer at `position` matched with an opener at `other`.
    fn emit_closed(
        &mut self,
        direction: Direction,
        other: usize,
        position: usize,
        symbol: BracketSymbol,
    ) -> Result<(), DecodeError> {
        match direction {
            Direction::Right => self.emit(other, position, position, symbol),
            Direction::Left => self.emit(position, other, position, symbol),
        }
    }

    /// A closer without anything to match. Rightward closers fall back to
    /// the virtual root; a leftward closer would make the root a dependent
    /// and is dropped.
    fn unmatched(&mut self, position: usize, symbol: BracketSymbol) -> Result<(), DecodeError> {
        match self.mode {
            DecodeMode::Strict => Err(DecodeError::Unmatched { position, symbol }),
            DecodeMode::Robust => match symbol.direction {
                Direction::Right => self.emit(0, position, position, symbol),
                Direction::Left => Ok(()),
            },
        }
    }

    /// Stack slots of open superbrackets, top first.
    fn supers(&self) -> Vec<usize> {
        (0..self.stack.len())
            .rev()
            .filter(|&i| self.stack[i].symbol.is_super())
            .collect()
    }

    /// Picks the open superbracket a closer with index `k` refers to.
    fn anchor(
        &self,
        k: u32,
        position: usize,
        symbol: BracketSymbol,
    ) -> Result<Option<usize>, DecodeError> {
        let supers = self.supers();
        match supers.get(k as usize) {
            Some(&slot) => Ok(Some(slot)),
            None if self.mode == DecodeMode::Strict => {
                Err(DecodeError::Unmatched { position, symbol })
            }
            None => Ok(supers.last().copied()),
        }
    }

    fn check_direction(
        &self,
        slot: usize,
        position: usize,
        symbol: BracketSymbol,
    ) -> Result<(), DecodeError> {
        if self.mode == DecodeMode::Strict && self.stack[slot].symbol.direction != symbol.direction
        {
            return Err(DecodeError::DirectionMismatch { position, symbol });
        }
        Ok(())
    }

    fn close_plain(&mut self, position: usize, symbol: BracketSymbol) -> Result<(), DecodeError> {
        match self.anchor(symbol.index, position, symbol)? {
            Some(slot) => {
                let other = self.stack[slot].position;
                self.emit_closed(symbol.direction, other, position, symbol)
            }
            None => self.unmatched(position, symbol),
        }
    }

    fn close_super(&mut self, position: usize, symbol: BracketSymbol) -> Result<(), DecodeError> {
        let anchor = self.anchor(symbol.index, position, symbol)?;
        if let Some(slot) = anchor {
            self.check_direction(slot, position, symbol)?;
        }
        let floor = anchor.unwrap_or(0);

        // Walk from the top down to the anchor, popping exhausted plain
        // openers and counting down the others.
        let mut released = Vec::new();
        let mut i = self.stack.len();
        while i > floor {
            i -= 1;
            let entry = &mut self.stack[i];
            if entry.symbol.is_super() {
                continue;
            }
            if entry.pending == 0 {
                released.push(self.stack.remove(i));
            } else {
                entry.pending -= 1;
            }
        }
        for entry in released {
            self.emit_closed(
                entry.symbol.direction,
                entry.position,
                position,
                entry.symbol,
            )?;
        }

        match anchor {
            Some(slot) => {
                let entry = self.stack.remove(slot);
                self.emit_closed(symbol.direction, entry.position, position, symbol)
            }
            None => self.unmatched(position, symbol),
        }
    }

    fn run(mut self, labels: &[TokenLabel]) -> Result<Vec<Arc>, DecodeError> {
        for (i, label) in labels.iter().enumerate() {
            let position = i + 1;
            if label.root {
                self.arcs.insert((0, position));
            }
            for &symbol in &label.symbols {
                match (symbol.polarity, symbol.tier) {
                    (Polarity::Open, tier) => {
                        if tier == Tier::Super
                            && symbol.index > 0
                            && self.mode == DecodeMode::Strict
                        {
                            return Err(DecodeError::InvalidSymbol { position, symbol });
                        }
                        self.stack.push(Entry {
                            symbol,
                            position,
                            pending: if tier == Tier::Plain { symbol.index } else { 0 },
                        });
                    }
                    (Polarity::Close, Tier::Plain) => self.close_plain(position, symbol)?,
                    (Polarity::Close, Tier::Super) => self.close_super(position, symbol)?,
                }
            }
        }

        if self.mode == DecodeMode::Strict {
            if let Some(entry) = self.stack.first() {
                return Err(DecodeError::Unclosed {
                    position: entry.position,
                    symbol: entry.symbol,
                });
            }
        }

        Ok(self
            .arcs
            .into_iter()
            .map(|(head, dep)| Arc::new(head, dep))
            .collect())
    }
}

pub(crate) fn decode(labels: &[TokenLabel], mode: DecodeMode) -> Result<Vec<Arc>, DecodeError> {
    Decoder {
        mode,
        stack: Vec::new(),
        arcs: BTreeSet::new(),
    }
    .run(labels)
}

/// Strict decoding: any ill-formed sequence is an error. Arcs come back
/// unlabeled and sorted by `(head, dep)`.
pub fn hb_decode(labels: &[TokenLabel]) -> Result<Vec<Arc>, DecodeError> {
    decode(labels, DecodeMode::Strict)
}

/// Decoding with postprocessing: unmatched rightward closers attach to the
/// virtual root, unmatched leftward closers are dropped, out-of-range
/// indices fall back to the deepest open superbracket and whatever is still
/// open at the end is discarded. Never fails.
pub fn hb_decode_robust(labels: &[TokenLabel]) -> Vec<Arc> {
    decode(labels, DecodeMode::Robust).expect("robust decoding is total")
}
