//! Moves, positions and games.
//!
//! A game is described syntactically by a [`GameExpr`]; its legality oracle and move
//! enumerator are computed directly from the connective tree, so games with unbounded
//! plays (exponentials, implications between them) are first-class values.

mod expr;
mod intension;
mod parse;
pub mod trace;

pub use expr::GameExpr;
pub use intension::{build_game, flat_game, positions_up_to, unit_game, Game, GameIntension, DEFAULT_NODE_BUDGET};
pub use parse::parse_dsl;

use std::fmt;
use std::sync::Arc;

use crate::error::{GameError, Result};

/// One step of a move address inside a compound game.
///
/// `L`/`R` select the sides of a binary connective, `I(n)` a product factor and
/// `C(n)` a copy of an exponential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    L,
    R,
    I(u32),
    C(u32),
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::L => write!(f, "l"),
            Tag::R => write!(f, "r"),
            Tag::I(n) => write!(f, "i:{n}"),
            Tag::C(n) => write!(f, "c:{n}"),
        }
    }
}

impl Tag {
    fn parse(text: &str) -> Option<Tag> {
        match text {
            "l" => Some(Tag::L),
            "r" => Some(Tag::R),
            _ => {
                let (kind, n) = text.split_once(':')?;
                let n: u32 = n.parse().ok()?;
                match kind {
                    "i" => Some(Tag::I(n)),
                    "c" => Some(Tag::C(n)),
                    _ => None,
                }
            }
        }
    }
}

/// Name of the unique O-move of a flat game.
pub const QUESTION: &str = "q";

/// A path-addressed move: component tags from the root of the game, then a base move.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub path: Vec<Tag>,
    pub base: Arc<str>,
}

impl Move {
    pub fn new(path: Vec<Tag>, base: impl Into<Arc<str>>) -> Self {
        Move { path, base: base.into() }
    }

    /// A move of a base game, with an empty address.
    pub fn base(base: impl Into<Arc<str>>) -> Self {
        Move { path: Vec::new(), base: base.into() }
    }

    pub fn head(&self) -> Option<Tag> {
        self.path.first().copied()
    }

    /// The same move seen from one level further out.
    pub fn under(&self, tag: Tag) -> Move {
        let mut path = Vec::with_capacity(self.path.len() + 1);
        path.push(tag);
        path.extend_from_slice(&self.path);
        Move { path, base: self.base.clone() }
    }

    /// Prefix a whole address.
    pub fn under_all(&self, tags: &[Tag]) -> Move {
        let mut path = Vec::with_capacity(self.path.len() + tags.len());
        path.extend_from_slice(tags);
        path.extend_from_slice(&self.path);
        Move { path, base: self.base.clone() }
    }

    /// Drop the first tag if it equals `tag`.
    pub fn strip(&self, tag: Tag) -> Option<Move> {
        if self.head() == Some(tag) {
            Some(self.tail())
        } else {
            None
        }
    }

    /// Drop a whole address prefix if present.
    pub fn strip_all(&self, tags: &[Tag]) -> Option<Move> {
        if self.path.starts_with(tags) {
            Some(Move { path: self.path[tags.len()..].to_vec(), base: self.base.clone() })
        } else {
            None
        }
    }

    /// The move with its first tag removed.
    pub fn tail(&self) -> Move {
        Move { path: self.path.get(1..).unwrap_or(&[]).to_vec(), base: self.base.clone() }
    }

    pub fn parse(text: &str) -> Result<Move> {
        let text = text.trim();
        let bad = || GameError::Construction(format!("malformed move `{text}`"));
        if text.is_empty() {
            return Err(bad());
        }
        let mut parts: Vec<&str> = text.split('.').collect();
        let base = parts.pop().ok_or_else(bad)?;
        if base.is_empty() || base.contains(':') {
            return Err(bad());
        }
        let path = parts.into_iter().map(|p| Tag::parse(p).ok_or_else(bad)).collect::<Result<Vec<_>>>()?;
        Ok(Move::new(path, base))
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.path {
            write!(f, "{t}.")?;
        }
        write!(f, "{}", self.base)
    }
}

/// Which player makes a move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Polarity {
    O,
    P,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::O => Polarity::P,
            Polarity::P => Polarity::O,
        }
    }

    /// Polarity of the move that extends a position of the given length.
    pub fn to_move(len: usize) -> Polarity {
        if len.is_multiple_of(2) {
            Polarity::O
        } else {
            Polarity::P
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polarity::O => write!(f, "O"),
            Polarity::P => write!(f, "P"),
        }
    }
}

/// A finite sequence of moves. Positions alternate and start with an O-move.
pub type Position = Vec<Move>;

/// Space-separated rendering used in reports and error messages.
pub fn show_position(s: &[Move]) -> String {
    if s.is_empty() {
        return "ε".to_string();
    }
    s.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn move_text_round_trip() {
        for text in ["q", "r.c:3.q", "l.i:1.x", "l.l.r.*"] {
            assert_eq!(Move::parse(text).unwrap().to_string(), text);
        }
        assert!(Move::parse("r.").is_err());
        assert!(Move::parse("k.q").is_err());
    }

    #[test]
    fn address_helpers() {
        let m = Move::parse("c:2.q").unwrap();
        assert_eq!(m.under(Tag::R).to_string(), "r.c:2.q");
        assert_eq!(m.strip(Tag::C(2)).unwrap().to_string(), "q");
        assert!(m.strip(Tag::C(1)).is_none());
        assert_eq!(m.under_all(&[Tag::L, Tag::R]).strip_all(&[Tag::L, Tag::R]).unwrap(), m);
    }

    #[test]
    fn move_order_is_by_address_then_base() {
        let a = Move::parse("l.q").unwrap();
        let b = Move::parse("r.q").unwrap();
        let c = Move::parse("r.c:0.q").unwrap();
        assert!(a < b && b < c);
    }
}
