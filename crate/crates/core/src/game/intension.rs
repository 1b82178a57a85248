use std::collections::BTreeSet;

use super::{GameExpr, Move, Polarity, Position, Tag, QUESTION};
use crate::error::{GameError, Result};

/// Default cap on the number of positions a bounded enumeration may visit.
pub const DEFAULT_NODE_BUDGET: usize = 2_000_000;

/// The semantic view of a game: a polarity labelling, a legality oracle and a
/// finite-branching enumerator of legal next moves.
pub trait GameIntension {
    fn polarity_of(&self, m: &Move) -> Option<Polarity>;
    fn is_position(&self, s: &[Move]) -> bool;
    /// All `m` with `s·m` a position. `s` must itself be a position.
    fn next_moves(&self, s: &[Move]) -> Vec<Move>;
}

/// A game built from its syntactic description.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Game {
    pub expr: GameExpr,
}

pub fn build_game(e: &GameExpr) -> Game {
    Game { expr: e.clone() }
}

pub fn flat_game<S: AsRef<str>>(values: &[S]) -> Result<Game> {
    Ok(build_game(&GameExpr::flat(values)?))
}

pub fn unit_game() -> Game {
    build_game(&GameExpr::Unit)
}

impl GameIntension for Game {
    fn polarity_of(&self, m: &Move) -> Option<Polarity> {
        self.expr.polarity_of(m)
    }
    fn is_position(&self, s: &[Move]) -> bool {
        self.expr.is_position(s)
    }
    fn next_moves(&self, s: &[Move]) -> Vec<Move> {
        self.expr.next_moves(s)
    }
}

impl GameIntension for GameExpr {
    fn polarity_of(&self, m: &Move) -> Option<Polarity> {
        polarity(self, &m.path, &m.base)
    }

    fn is_position(&self, s: &[Move]) -> bool {
        let views: Vec<View> = s.iter().map(View::new).collect();
        (0..views.len()).all(|i| legal(self, &views[..i], views[i]))
    }

    fn next_moves(&self, s: &[Move]) -> Vec<Move> {
        let views: Vec<View> = s.iter().map(View::new).collect();
        let mut out = next(self, &views);
        out.sort();
        out
    }
}

impl GameExpr {
    /// Whether `s·m` is a position, assuming `s` is one.
    pub fn is_legal_next(&self, s: &[Move], m: &Move) -> bool {
        let views: Vec<View> = s.iter().map(View::new).collect();
        legal(self, &views, View::new(m))
    }

    /// The O-moves available at an O-position.
    pub fn o_moves(&self, s: &[Move]) -> Vec<Move> {
        if Polarity::to_move(s.len()) != Polarity::O {
            return Vec::new();
        }
        self.next_moves(s)
    }
}

/// A move seen through some number of already-consumed address tags.
#[derive(Clone, Copy)]
struct View<'a> {
    m: &'a Move,
    off: usize,
}

impl<'a> View<'a> {
    fn new(m: &'a Move) -> Self {
        View { m, off: 0 }
    }
    fn tags(&self) -> &'a [Tag] {
        &self.m.path[self.off..]
    }
    fn head(&self) -> Option<Tag> {
        self.tags().first().copied()
    }
    fn shift(self) -> View<'a> {
        View { m: self.m, off: self.off + 1 }
    }
}

fn restrict<'a>(s: &[View<'a>], t: Tag) -> Vec<View<'a>> {
    s.iter().filter(|v| v.head() == Some(t)).map(|v| v.shift()).collect()
}

fn opened_copies(s: &[View]) -> u32 {
    let mut seen = BTreeSet::new();
    for v in s {
        if let Some(Tag::C(n)) = v.head() {
            seen.insert(n);
        }
    }
    seen.len() as u32
}

fn polarity(g: &GameExpr, tags: &[Tag], base: &str) -> Option<Polarity> {
    match (g, tags.split_first()) {
        (GameExpr::Unit, _) => None,
        (GameExpr::Flat(vals), None) => {
            if base == QUESTION {
                Some(Polarity::O)
            } else if vals.iter().any(|v| v == base) {
                Some(Polarity::P)
            } else {
                None
            }
        }
        (GameExpr::Flat(_), Some(_)) => None,
        (GameExpr::Tensor(a, b) | GameExpr::Seq(a, b), Some((t, rest))) => match t {
            Tag::L => polarity(a, rest, base),
            Tag::R => polarity(b, rest, base),
            _ => None,
        },
        (GameExpr::Limp(a, b), Some((t, rest))) => match t {
            Tag::L => polarity(a, rest, base).map(Polarity::flip),
            Tag::R => polarity(b, rest, base),
            _ => None,
        },
        (GameExpr::Prod(fs), Some((Tag::I(k), rest))) => polarity(fs.get(*k as usize)?, rest, base),
        (GameExpr::Bang(a), Some((Tag::C(_), rest))) => polarity(a, rest, base),
        _ => None,
    }
}

/// Does the component move keep global alternation? `flip` marks the left of an implication.
fn parity_ok(global_len: usize, local_len: usize, flip: bool) -> bool {
    let same = global_len % 2 == local_len % 2;
    same != flip
}

fn legal(g: &GameExpr, s: &[View], m: View) -> bool {
    match g {
        GameExpr::Unit => false,
        GameExpr::Flat(vals) => {
            if !m.tags().is_empty() {
                return false;
            }
            let base: &str = &m.m.base;
            match s.len() {
                0 => base == QUESTION,
                1 => vals.iter().any(|v| v == base),
                _ => false,
            }
        }
        GameExpr::Tensor(a, b) | GameExpr::Seq(a, b) | GameExpr::Limp(a, b) => {
            let (comp, tag, flip) = match m.head() {
                Some(Tag::L) => (a, Tag::L, matches!(g, GameExpr::Limp(..))),
                Some(Tag::R) => (b, Tag::R, false),
                _ => return false,
            };
            if matches!(g, GameExpr::Seq(..)) && s.is_empty() && tag != Tag::L {
                return false;
            }
            let sub = restrict(s, tag);
            parity_ok(s.len(), sub.len(), flip) && legal(comp, &sub, m.shift())
        }
        GameExpr::Prod(fs) => {
            let Some(Tag::I(k)) = m.head() else {
                return false;
            };
            let Some(f) = fs.get(k as usize) else {
                return false;
            };
            if let Some(first) = s.first() {
                if first.head() != Some(Tag::I(k)) {
                    return false;
                }
            }
            let sub = restrict(s, Tag::I(k));
            sub.len() == s.len() && legal(f, &sub, m.shift())
        }
        GameExpr::Bang(a) => {
            let Some(Tag::C(n)) = m.head() else {
                return false;
            };
            let sub = restrict(s, Tag::C(n));
            if sub.is_empty() && n != opened_copies(s) {
                return false;
            }
            parity_ok(s.len(), sub.len(), false) && legal(a, &sub, m.shift())
        }
    }
}

fn next(g: &GameExpr, s: &[View]) -> Vec<Move> {
    match g {
        GameExpr::Unit => Vec::new(),
        GameExpr::Flat(vals) => match s.len() {
            0 => vec![Move::base(QUESTION)],
            1 => vals.iter().map(|v| Move::base(v.as_str())).collect(),
            _ => Vec::new(),
        },
        GameExpr::Tensor(a, b) | GameExpr::Seq(a, b) | GameExpr::Limp(a, b) => {
            let is_limp = matches!(g, GameExpr::Limp(..));
            let mut out = Vec::new();
            for (tag, comp, flip) in [(Tag::L, a, is_limp), (Tag::R, b, false)] {
                if matches!(g, GameExpr::Seq(..)) && s.is_empty() && tag == Tag::R {
                    continue;
                }
                let sub = restrict(s, tag);
                if parity_ok(s.len(), sub.len(), flip) {
                    out.extend(next(comp, &sub).into_iter().map(|m| m.under(tag)));
                }
            }
            out
        }
        GameExpr::Prod(fs) => match s.first().and_then(|v| v.head()) {
            None => fs
                .iter()
                .enumerate()
                .flat_map(|(k, f)| next(f, &[]).into_iter().map(move |m| m.under(Tag::I(k as u32))))
                .collect(),
            Some(Tag::I(k)) => {
                let sub = restrict(s, Tag::I(k));
                match fs.get(k as usize) {
                    Some(f) if sub.len() == s.len() => next(f, &sub).into_iter().map(|m| m.under(Tag::I(k))).collect(),
                    _ => Vec::new(),
                }
            }
            Some(_) => Vec::new(),
        },
        GameExpr::Bang(a) => {
            let open = opened_copies(s);
            let mut out = Vec::new();
            for n in 0..open {
                let sub = restrict(s, Tag::C(n));
                if parity_ok(s.len(), sub.len(), false) {
                    out.extend(next(a, &sub).into_iter().map(|m| m.under(Tag::C(n))));
                }
            }
            if s.len().is_multiple_of(2) {
                out.extend(next(a, &[]).into_iter().map(|m| m.under(Tag::C(open))));
            }
            out
        }
    }
}

/// All positions of length at most `d`, in breadth-first (length, then move) order.
pub fn positions_up_to(g: &dyn GameIntension, d: usize, node_budget: usize) -> Result<Vec<Position>> {
    let mut out: Vec<Position> = vec![Vec::new()];
    let mut frontier: Vec<Position> = vec![Vec::new()];
    for _ in 0..d {
        let mut next_frontier = Vec::new();
        for s in &frontier {
            for m in g.next_moves(s) {
                let mut t = s.clone();
                t.push(m);
                next_frontier.push(t);
                if out.len() + next_frontier.len() > node_budget {
                    return Err(GameError::Resource(format!("more than {node_budget} positions below depth {d}")));
                }
            }
        }
        out.extend(next_frontier.iter().cloned());
        frontier = next_frontier;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(out)
}
