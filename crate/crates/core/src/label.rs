//! Token labels and their ASCII wire format.
//!
//! ```text
//! label   := "_" | "^"? symbol*        (an empty label is written "_")
//! symbol  := "!"? bracket index?
//! bracket := "<" | "\" | "/" | ">"
//! index   := [1-9][0-9]*
//! ```
//!
//! `!` marks a superbracket. The index is a skip count for the hierarchical
//! codec and a plane id for the relaxed-plane codec. `^` attaches the token
//! to the virtual root.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::graph::Direction;

#[derive(Clone, Copy, Debug, Eq, Hash, Ord, PartialEq, PartialOrd)]
pub enum Tier {
    Plain,
    Super,
}

#[derive(Clone, Copy, Debug, Eq, Hash, Ord, PartialEq, PartialOrd)]
pub enum Polarity {
    Open,
    Close,
}

/// One bracket. `<` opens and `\` closes a left arc; `/` opens and `>`
/// closes a right arc.
#[derive(Clone, Copy, Debug, Eq, Hash, Ord, PartialEq, PartialOrd)]
pub struct BracketSymbol {
    pub tier: Tier,
    pub direction: Direction,
    pub polarity: Polarity,
    pub index: u32,
}

impl BracketSymbol {
    pub fn new(tier: Tier, direction: Direction, polarity: Polarity, index: u32) -> Self {
        BracketSymbol {
            tier,
            direction,
            polarity,
            index,
        }
    }

    pub fn plain(direction: Direction, polarity: Polarity, index: u32) -> Self {
        BracketSymbol::new(Tier::Plain, direction, polarity, index)
    }

    pub fn superbracket(direction: Direction, polarity: Polarity, index: u32) -> Self {
        BracketSymbol::new(Tier::Super, direction, polarity, index)
    }

    pub fn is_open(&self) -> bool {
        self.polarity == Polarity::Open
    }

    pub fn is_super(&self) -> bool {
        self.tier == Tier::Super
    }

    fn bracket(&self) -> char {
        match (self.direction, self.polarity) {
            (Direction::Left, Polarity::Open) => '<',
            (Direction::Left, Polarity::Close) => '\\',
            (Direction::Right, Polarity::Open) => '/',
            (Direction::Right, Polarity::Close) => '>',
        }
    }
}

impl fmt::Display for BracketSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_super() {
            f.write_str("!")?;
        }
        write!(f, "{}", self.bracket())?;
        if self.index > 0 {
            write!(f, "{}", self.index)?;
        }
        Ok(())
    }
}

/// The label of one token: an optional root marker and an ordered list of
/// bracket symbols.
#[derive(Clone, Debug, Default, Eq, Hash, Ord, PartialEq, PartialOrd)]
pub struct TokenLabel {
    pub root: bool,
    pub symbols: Vec<BracketSymbol>,
}

impl TokenLabel {
    pub fn new(root: bool, symbols: Vec<BracketSymbol>) -> Self {
        TokenLabel { root, symbols }
    }

    pub fn is_empty(&self) -> bool {
        !self.root && self.symbols.is_empty()
    }

    pub fn render(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        write!(s, "{}", self).expect("writing to a String cannot fail");
        s
    }

    pub fn parse(s: &str) -> Result<TokenLabel, LabelError> {
        s.parse()
    }
}

impl fmt::Display for TokenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("_");
        }
        if self.root {
            f.write_str("^")?;
        }
        for symbol in &self.symbols {
            write!(f, "{}", symbol)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Eq, PartialEq, thiserror::Error)]
pub enum LabelError {
    #[error("empty label string (use `_`)")]
    Empty,

    #[error("column {column}: unexpected character {found:?}")]
    Unexpected { column: usize, found: char },

    #[error("column {column}: `!` must be followed by a bracket")]
    DanglingSuper { column: usize },

    #[error("column {column}: malformed index")]
    BadIndex { column: usize },
}

impl FromStr for TokenLabel {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(LabelError::Empty);
        }
        if s == "_" {
            return Ok(TokenLabel::default());
        }

        let chars: Vec<char> = s.chars().collect();
        let mut label = TokenLabel::default();
        let mut i = 0;
        if chars[0] == '^' {
            label.root = true;
            i = 1;
        }

        while i < chars.len() {
            let column = i + 1;
            let tier = if chars[i] == '!' {
                i += 1;
                Tier::Super
            } else {
                Tier::Plain
            };
            let (direction, polarity) = match chars.get(i) {
                Some('<') => (Direction::Left, Polarity::Open),
                Some('\\') => (Direction::Left, Polarity::Close),
                Some('/') => (Direction::Right, Polarity::Open),
                Some('>') => (Direction::Right, Polarity::Close),
                Some(&c) if tier == Tier::Plain => {
                    return Err(LabelError::Unexpected { column, found: c })
                }
                _ => return Err(LabelError::DanglingSuper { column }),
            };
            i += 1;

            let digits_start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let index = if i == digits_start {
                0
            } else {
                let digits: String = chars[digits_start..i].iter().collect();
                // Indices are written without leading zeros and index 0 is
                // written as no index at all; anything else cannot round-trip.
                if digits.starts_with('0') {
                    return Err(LabelError::BadIndex {
                        column: digits_start + 1,
                    });
                }
                digits.parse::<u32>().map_err(|_| LabelError::BadIndex {
                    column: digits_start + 1,
                })?
            };

            label.symbols.push(BracketSymbol {
                tier,
                direction,
                polarity,
                index,
            });
        }

        Ok(label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn parses_figure_label() {
        let label: TokenLabel = "!>1/".parse().unwrap();
        assert_eq!(
            label.symbols,
            vec![
                BracketSymbol::superbracket(Direction::Right, Polarity::Close, 1),
                BracketSymbol::plain(Direction::Right, Polarity::Open, 0),
            ]
        );
        assert!(!label.root);
    }

    #[test]
    fn underscore_is_empty() {
        let label: TokenLabel = "_".parse().unwrap();
        assert!(label.is_empty());
        assert_eq!(label.render(), "_");
    }

    #[test]
    fn root_marker() {
        let label: TokenLabel = "^".parse().unwrap();
        assert!(label.root);
        assert!(label.symbols.is_empty());
        assert_eq!(label.render(), "^");
        assert_eq!(TokenLabel::parse("^!\\12<").unwrap().render(), "^!\\12<");
    }

    #[test]
    fn errors_report_columns() {
        assert_eq!(
            TokenLabel::parse("/x"),
            Err(LabelError::Unexpected {
                column: 2,
                found: 'x'
            })
        );
        assert_eq!(
            TokenLabel::parse("/!"),
            Err(LabelError::DanglingSuper { column: 2 })
        );
        assert_eq!(
            TokenLabel::parse("<03"),
            Err(LabelError::BadIndex { column: 2 })
        );
        assert_eq!(TokenLabel::parse(""), Err(LabelError::Empty));
        assert!(TokenLabel::parse("_/").is_err());
        assert!(TokenLabel::parse("/^").is_err());
    }
}
