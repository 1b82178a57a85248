//! Strategies as deterministic response functions.
//!
//! A [`Strategy`] is a host game plus a factory of [`Player`]s. A player is an
//! incremental form of the response function: it is fed O-moves one at a time and
//! answers with an optional P-move, so a play never has to be replayed from the start.
//! Players are cloneable, which is what makes exhaustive exploration cheap.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{GameError, Result};
use crate::game::{show_position, GameExpr, GameIntension, Move, Polarity, Position, Tag, DEFAULT_NODE_BUDGET};

/// Default cap on hidden moves per visible move in a composite.
pub const DEFAULT_BUDGET: usize = 64;

/// Evaluation parameters threaded through nested players.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ctx {
    pub budget: usize,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx { budget: DEFAULT_BUDGET }
    }
}

/// An incremental run of a strategy.
pub trait Player: Send + Sync {
    /// Feed the next O-move; returns P's reply, or `None` if the strategy has none.
    fn play(&mut self, m: &Move, ctx: &Ctx) -> Result<Option<Move>>;
    fn box_clone(&self) -> Box<dyn Player>;
}

impl Clone for Box<dyn Player> {
    fn clone(&self) -> Self {
        self.box_clone()
    }
}

type Factory = Arc<dyn Fn() -> Box<dyn Player> + Send + Sync>;
type RespondFn = Arc<dyn Fn(&[Move], &Move) -> Result<Option<Move>> + Send + Sync>;

/// A strategy on a host game.
#[derive(Clone)]
pub struct Strategy {
    host: GameExpr,
    name: Arc<str>,
    make: Factory,
}

impl fmt::Debug for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Strategy({} on {})", self.name, self.host)
    }
}

impl Strategy {
    pub fn new(
        host: GameExpr,
        name: impl Into<Arc<str>>,
        make: impl Fn() -> Box<dyn Player> + Send + Sync + 'static,
    ) -> Self {
        Strategy { host, name: name.into(), make: Arc::new(make) }
    }

    /// Build from a response function `f(s, o)` giving P's answer to `s·o`.
    pub fn from_fn(
        host: GameExpr,
        name: impl Into<Arc<str>>,
        f: impl Fn(&[Move], &Move) -> Result<Option<Move>> + Send + Sync + 'static,
    ) -> Self {
        let f: RespondFn = Arc::new(f);
        Strategy::new(host, name, move || Box::new(FnPlayer { f: f.clone(), pos: Vec::new(), dead: false }))
    }

    /// The strategy `{ε}` that never answers.
    pub fn undefined(host: GameExpr) -> Self {
        Strategy::from_fn(host, "undefined", |_, _| Ok(None))
    }

    pub fn host(&self) -> &GameExpr {
        &self.host
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<Arc<str>>) -> Self {
        self.name = name.into();
        self
    }

    /// The same behaviour over a different (isomorphic or identical) host.
    pub fn with_host(mut self, host: GameExpr) -> Self {
        self.host = host;
        self
    }

    pub fn player(&self) -> Box<dyn Player> {
        (self.make)()
    }

    /// P's reply at an O-position (odd length), with default evaluation parameters.
    pub fn respond(&self, s: &[Move]) -> Result<Option<Move>> {
        self.respond_with(s, &Ctx::default())
    }

    /// Replays `s`; positions not reached by the strategy get no reply.
    pub fn respond_with(&self, s: &[Move], ctx: &Ctx) -> Result<Option<Move>> {
        if s.len().is_multiple_of(2) {
            return Err(GameError::Type(format!("`{}` is not an O-position", show_position(s))));
        }
        let mut p = self.player();
        let mut i = 0;
        loop {
            let reply = p.play(&s[i], ctx)?;
            if i + 1 == s.len() {
                return Ok(reply);
            }
            if reply.as_ref() != Some(&s[i + 1]) {
                return Ok(None);
            }
            i += 2;
        }
    }

    /// The left and right games of an implication host.
    pub fn sides(&self) -> Result<(GameExpr, GameExpr)> {
        let (a, b) = self.host.as_limp()?;
        Ok((a.clone(), b.clone()))
    }
}

/// Player for a strategy given by a function of the whole position.
struct FnPlayer {
    f: RespondFn,
    pos: Vec<Move>,
    dead: bool,
}

impl Player for FnPlayer {
    fn play(&mut self, m: &Move, _ctx: &Ctx) -> Result<Option<Move>> {
        if self.dead {
            return Ok(None);
        }
        let reply = (self.f)(&self.pos, m)?;
        self.pos.push(m.clone());
        match &reply {
            Some(p) => self.pos.push(p.clone()),
            None => self.dead = true,
        }
        Ok(reply)
    }

    fn box_clone(&self) -> Box<dyn Player> {
        Box::new(FnPlayer { f: self.f.clone(), pos: self.pos.clone(), dead: self.dead })
    }
}

/// Visit every O-move reachable by playing `σ` up to `d` visible moves, in move order.
///
/// The callback receives the O-position `s·o` and the strategy's outcome there.
pub fn explore(
    sigma: &Strategy,
    d: usize,
    ctx: &Ctx,
    node_budget: usize,
    mut visit: impl FnMut(&[Move], &Result<Option<Move>>) -> Result<()>,
) -> Result<usize> {
    let mut count = 0usize;
    let mut pos = Vec::new();
    explore_rec(sigma.host(), sigma.player(), &mut pos, d, ctx, node_budget, &mut count, &mut visit)?;
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn explore_rec(
    host: &GameExpr,
    player: Box<dyn Player>,
    pos: &mut Position,
    d: usize,
    ctx: &Ctx,
    node_budget: usize,
    count: &mut usize,
    visit: &mut impl FnMut(&[Move], &Result<Option<Move>>) -> Result<()>,
) -> Result<()> {
    if pos.len() >= d {
        return Ok(());
    }
    for o in host.o_moves(pos) {
        *count += 1;
        if *count > node_budget {
            return Err(GameError::Resource(format!("exploration exceeded {node_budget} positions")));
        }
        let mut p = player.clone();
        let outcome = p.play(&o, ctx);
        pos.push(o);
        visit(pos, &outcome)?;
        if let Ok(Some(reply)) = outcome {
            if pos.len() < d && host.is_legal_next(pos, &reply) {
                pos.push(reply);
                explore_rec(host, p, pos, d, ctx, node_budget, count, visit)?;
                pos.pop();
            }
        }
        pos.pop();
    }
    Ok(())
}

/// Outcome of [`validate_strategy`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub o_positions_checked: usize,
}

/// Check that every reply up to depth `d` is a legal move of the host.
pub fn validate_strategy(sigma: &Strategy, d: usize) -> Result<ValidationReport> {
    let host = sigma.host().clone();
    let n = explore(sigma, d, &Ctx::default(), DEFAULT_NODE_BUDGET, |s, outcome| match outcome {
        Ok(Some(reply)) if !host.is_legal_next(s, reply) => {
            Err(GameError::IllegalMove { position: show_position(s), mv: reply.to_string() })
        }
        Ok(_) => Ok(()),
        Err(e) => Err(e.clone()),
    })?;
    Ok(ValidationReport { o_positions_checked: n })
}

/// Whether every reply to an opening move lands in the left component of the implication.
pub fn is_strict(sigma: &Strategy, d: usize) -> Result<bool> {
    sigma.host().as_limp()?;
    if d == 0 {
        return Ok(true);
    }
    let mut strict = true;
    explore(sigma, 1, &Ctx::default(), DEFAULT_NODE_BUDGET, |_, outcome| {
        match outcome {
            Ok(Some(reply)) if reply.head() != Some(Tag::L) => strict = false,
            Ok(_) => {}
            Err(e) => return Err(e.clone()),
        }
        Ok(())
    })?;
    Ok(strict)
}

/// The positions of length at most `d` that belong to the strategy (viewed as a set).
pub fn response_set(sigma: &Strategy, d: usize) -> Result<BTreeSet<Position>> {
    let mut set = BTreeSet::new();
    set.insert(Vec::new());
    let host = sigma.host().clone();
    explore(sigma, d, &Ctx::default(), DEFAULT_NODE_BUDGET, |s, outcome| {
        set.insert(s.to_vec());
        if let Ok(Some(reply)) = outcome {
            if s.len() < d && host.is_legal_next(s, reply) {
                let mut t = s.to_vec();
                t.push(reply.clone());
                set.insert(t);
            }
        }
        outcome.clone().map(|_| ())
    })?;
    Ok(set)
}

/// Reasons a set of positions fails to be a strategy.
pub fn check_strategy_set(host: &GameExpr, set: &BTreeSet<Position>, d: usize) -> std::result::Result<(), String> {
    for s in set {
        if !host.is_position(s) {
            return Err(format!("`{}` is not a position", show_position(s)));
        }
        if let Some((_, prefix)) = s.split_last() {
            if !set.contains(prefix) {
                return Err(format!("prefix of `{}` missing", show_position(s)));
            }
        }
        let o_turn = Polarity::to_move(s.len()) == Polarity::O;
        if o_turn && s.len() < d {
            for o in host.next_moves(s) {
                let mut t = s.clone();
                t.push(o);
                if !set.contains(&t) {
                    return Err(format!("O-reply `{}` missing", show_position(&t)));
                }
            }
        }
        if !o_turn {
            let replies = set.iter().filter(|t| t.len() == s.len() + 1 && t.starts_with(s)).count();
            if replies > 1 {
                return Err(format!("two replies at `{}`", show_position(s)));
            }
        }
    }
    Ok(())
}

/// The strategy whose positions are exactly those of a (checked) position set.
pub fn strategy_from_set(host: GameExpr, set: BTreeSet<Position>) -> Strategy {
    let set = Arc::new(set);
    Strategy::from_fn(host, "from-set", move |s, o| {
        let mut t = s.to_vec();
        t.push(o.clone());
        Ok(set
            .range(t.clone()..)
            .take_while(|u| u.starts_with(&t))
            .find(|u| u.len() == t.len() + 1)
            .and_then(|u| u.last().cloned()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma_limp() -> GameExpr {
        GameExpr::limp(GameExpr::sigma(), GameExpr::sigma())
    }

    fn mv(t: &str) -> Move {
        Move::parse(t).unwrap()
    }

    #[test]
    fn illegal_reply_is_named() {
        let bad = Strategy::from_fn(sigma_limp(), "bad", |_, _| Ok(Some(mv("r.q"))));
        match validate_strategy(&bad, 4) {
            Err(GameError::IllegalMove { position, mv }) => {
                assert_eq!(position, "r.q");
                assert_eq!(mv, "r.q");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn undefined_is_strict_and_valid() {
        let u = Strategy::undefined(sigma_limp());
        assert!(is_strict(&u, 4).unwrap());
        assert!(validate_strategy(&u, 4).is_ok());
        assert!(is_strict(&Strategy::undefined(GameExpr::sigma()), 2).is_err());
    }

    #[test]
    fn non_strict_reply_detected() {
        let eager = Strategy::from_fn(sigma_limp(), "eager", |_, _| Ok(Some(mv("r.*"))));
        assert!(!is_strict(&eager, 2).unwrap());
    }

    #[test]
    fn respond_replays_history() {
        let cc = Strategy::from_fn(sigma_limp(), "cc", |_, o| {
            Ok(Some(match o.head() {
                Some(Tag::R) => o.tail().under(Tag::L),
                _ => o.tail().under(Tag::R),
            }))
        });
        assert_eq!(cc.respond(&[mv("r.q")]).unwrap(), Some(mv("l.q")));
        assert_eq!(cc.respond(&[mv("r.q"), mv("l.q"), mv("l.*")]).unwrap(), Some(mv("r.*")));
        // A history the strategy would not have produced gets no answer.
        assert_eq!(cc.respond(&[mv("r.q"), mv("r.*"), mv("l.*")]).unwrap(), None);
        let set = response_set(&cc, 4).unwrap();
        assert!(check_strategy_set(cc.host(), &set, 4).is_ok());
        assert_eq!(set.len(), 5);
    }
}
