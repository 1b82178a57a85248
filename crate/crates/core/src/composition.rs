//! Composition by parallel interaction plus hiding, bounded equivalence, and currying.

use std::fmt;

use crate::connectives::retag;
use crate::error::{GameError, Result};
use crate::game::{show_position, GameExpr, Move, Position, Tag, DEFAULT_NODE_BUDGET};
use crate::strategy::{Ctx, Player, Strategy};

/// `σ;τ` for `σ : A ⊸ B` and `τ : B ⊸ C`, with the default budget carried by the context.
pub fn compose(sigma: &Strategy, tau: &Strategy) -> Result<Strategy> {
    let (a, b) = sigma.sides()?;
    let (b2, c) = tau.sides()?;
    if b != b2 {
        return Err(GameError::Composition(format!(
            "cannot compose `{}` : {} ⊸ {} with `{}` : {} ⊸ {}",
            sigma.name(),
            a,
            b,
            tau.name(),
            b2,
            c
        )));
    }
    let host = GameExpr::limp(a, c);
    let (s, t) = (sigma.clone(), tau.clone());
    let name = format!("{};{}", sigma.name(), tau.name());
    Ok(Strategy::new(host, name, move || {
        Box::new(ComposePlayer { left: s.player(), right: t.player(), visible: Vec::new(), dead: false })
    }))
}

/// `σ;τ` evaluated with a fixed hidden-move budget, independent of the caller's context.
pub fn compose_with_budget(sigma: &Strategy, tau: &Strategy, budget: usize) -> Result<Strategy> {
    let inner = compose(sigma, tau)?;
    let host = inner.host().clone();
    let name = inner.name().to_string();
    Ok(Strategy::new(host, name, move || Box::new(FixedBudget { inner: inner.player(), budget })))
}

#[derive(Clone)]
struct FixedBudget {
    inner: Box<dyn Player>,
    budget: usize,
}

impl Player for FixedBudget {
    fn play(&mut self, m: &Move, _ctx: &Ctx) -> Result<Option<Move>> {
        self.inner.play(m, &Ctx { budget: self.budget })
    }

    fn box_clone(&self) -> Box<dyn Player> {
        Box::new(self.clone())
    }
}

#[derive(Clone)]
struct ComposePlayer {
    left: Box<dyn Player>,
    right: Box<dyn Player>,
    visible: Position,
    dead: bool,
}

enum Side {
    Left,
    Right,
}

impl ComposePlayer {
    fn step(&mut self, m: &Move, ctx: &Ctx, mut hidden: Option<&mut Vec<Move>>) -> Result<Option<Move>> {
        if self.dead {
            return Ok(None);
        }
        self.visible.push(m.clone());
        let (mut side, mut pending) = match m.head() {
            Some(Tag::L) => (Side::Left, m.clone()),
            Some(Tag::R) => (Side::Right, m.clone()),
            _ => {
                self.dead = true;
                return Ok(None);
            }
        };
        let mut internal = 0usize;
        loop {
            let reply = match side {
                Side::Left => self.left.play(&pending, ctx)?,
                Side::Right => self.right.play(&pending, ctx)?,
            };
            let Some(reply) = reply else {
                self.dead = true;
                return Ok(None);
            };
            let visible = match (&side, reply.head()) {
                (Side::Left, Some(Tag::L)) | (Side::Right, Some(Tag::R)) => true,
                (Side::Left, Some(Tag::R)) | (Side::Right, Some(Tag::L)) => false,
                _ => {
                    self.dead = true;
                    return Ok(None);
                }
            };
            if visible {
                self.visible.push(reply.clone());
                return Ok(Some(reply));
            }
            internal += 1;
            if internal > ctx.budget {
                self.dead = true;
                return Err(GameError::Livelock { position: show_position(&self.visible), budget: ctx.budget });
            }
            let b_move = reply.tail();
            if let Some(h) = hidden.as_deref_mut() {
                h.push(b_move.clone());
            }
            (side, pending) = match side {
                Side::Left => (Side::Right, b_move.under(Tag::L)),
                Side::Right => (Side::Left, b_move.under(Tag::R)),
            };
        }
    }
}

impl Player for ComposePlayer {
    fn play(&mut self, m: &Move, ctx: &Ctx) -> Result<Option<Move>> {
        self.step(m, ctx, None)
    }

    fn box_clone(&self) -> Box<dyn Player> {
        Box::new(self.clone())
    }
}

/// Hidden moves in the middle game while `σ;τ` answers the last move of `s`.
///
/// Stops after `limit` hidden moves; the flag says whether the interaction came back out.
pub fn hidden_moves(sigma: &Strategy, tau: &Strategy, s: &[Move], limit: usize) -> Result<(Vec<Move>, bool)> {
    compose(sigma, tau)?;
    if s.len().is_multiple_of(2) {
        return Err(GameError::Type(format!("`{}` is not an O-position", show_position(s))));
    }
    let mut p = ComposePlayer { left: sigma.player(), right: tau.player(), visible: Vec::new(), dead: false };
    let ctx = Ctx { budget: limit };
    let mut i = 0;
    while i + 1 < s.len() {
        if p.step(&s[i], &ctx, None)?.as_ref() != Some(&s[i + 1]) {
            return Err(GameError::Precondition(format!("`{}` is not a play of the composite", show_position(s))));
        }
        i += 2;
    }
    let mut hidden = Vec::new();
    match p.step(&s[i], &ctx, Some(&mut hidden)) {
        Ok(reply) => Ok((hidden, reply.is_some())),
        Err(GameError::Livelock { .. }) => Ok((hidden, false)),
        Err(e) => Err(e),
    }
}

/// Knobs for [`equiv_up_to`].
#[derive(Debug, Clone, Copy)]
pub struct EquivOptions {
    pub budget: usize,
    /// Treat an exhausted hidden-move budget as "no reply" rather than an error.
    pub livelock_as_undefined: bool,
    pub node_budget: usize,
}

impl Default for EquivOptions {
    fn default() -> Self {
        EquivOptions {
            budget: crate::strategy::DEFAULT_BUDGET,
            livelock_as_undefined: false,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// The least O-position (in move order) where two strategies answer differently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub position: Position,
    pub left: Option<Move>,
    pub right: Option<Move>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |m: &Option<Move>| m.as_ref().map_or("nothing".to_string(), |m| m.to_string());
        write!(
            f,
            "at `{}`: left answers {}, right answers {}",
            show_position(&self.position),
            show(&self.left),
            show(&self.right)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equal { o_positions: usize },
    Differ(Counterexample),
}

impl Equivalence {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equivalence::Equal { .. })
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Equivalence::Differ(c) => Some(c),
            Equivalence::Equal { .. } => None,
        }
    }
}

/// Whether `σ` and `τ` contain the same positions of length at most `d`.
pub fn equiv_up_to(sigma: &Strategy, tau: &Strategy, d: usize) -> Result<Equivalence> {
    equiv_up_to_with(sigma, tau, d, &EquivOptions::default())
}

pub fn equiv_up_to_with(sigma: &Strategy, tau: &Strategy, d: usize, opts: &EquivOptions) -> Result<Equivalence> {
    if sigma.host() != tau.host() {
        return Err(GameError::Type(format!(
            "cannot compare `{}` on {} with `{}` on {}",
            sigma.name(),
            sigma.host(),
            tau.name(),
            tau.host()
        )));
    }
    let mut walk = Walk { host: sigma.host(), d, opts, ctx: Ctx { budget: opts.budget }, count: 0 };
    let mut pos = Vec::new();
    match walk.rec(sigma.player(), tau.player(), &mut pos)? {
        Some(c) => Ok(Equivalence::Differ(c)),
        None => Ok(Equivalence::Equal { o_positions: walk.count }),
    }
}

struct Walk<'a> {
    host: &'a GameExpr,
    d: usize,
    opts: &'a EquivOptions,
    ctx: Ctx,
    count: usize,
}

impl Walk<'_> {
    fn outcome(&self, p: &mut Box<dyn Player>, o: &Move) -> Result<Option<Move>> {
        match p.play(o, &self.ctx) {
            Err(GameError::Livelock { .. }) if self.opts.livelock_as_undefined => Ok(None),
            other => other,
        }
    }

    fn rec(
        &mut self,
        left: Box<dyn Player>,
        right: Box<dyn Player>,
        pos: &mut Position,
    ) -> Result<Option<Counterexample>> {
        if pos.len() + 2 > self.d {
            return Ok(None);
        }
        for o in self.host.o_moves(pos) {
            self.count += 1;
            if self.count > self.opts.node_budget {
                return Err(GameError::Resource(format!("comparison exceeded {} positions", self.opts.node_budget)));
            }
            let (mut l, mut r) = (left.clone(), right.clone());
            let a = self.outcome(&mut l, &o)?;
            let b = self.outcome(&mut r, &o)?;
            pos.push(o);
            if a != b {
                return Ok(Some(Counterexample { position: pos.clone(), left: a, right: b }));
            }
            if let Some(reply) = a {
                if self.host.is_legal_next(pos, &reply) {
                    pos.push(reply);
                    let found = self.rec(l, r, pos)?;
                    pos.pop();
                    if found.is_some() {
                        return Ok(found);
                    }
                }
            }
            pos.pop();
        }
        Ok(None)
    }
}

fn curry_in(m: &Move) -> Option<Move> {
    match m.head()? {
        Tag::L => Some(m.tail().under_all(&[Tag::L, Tag::L])),
        Tag::R => {
            let rest = m.tail();
            match rest.head()? {
                Tag::L => Some(rest.tail().under_all(&[Tag::L, Tag::R])),
                Tag::R => Some(rest.tail().under(Tag::R)),
                _ => None,
            }
        }
        _ => None,
    }
}

fn curry_out(m: &Move) -> Option<Move> {
    match m.head()? {
        Tag::L => {
            let rest = m.tail();
            match rest.head()? {
                Tag::L => Some(rest.tail().under(Tag::L)),
                Tag::R => Some(rest.tail().under_all(&[Tag::R, Tag::L])),
                _ => None,
            }
        }
        Tag::R => Some(m.tail().under_all(&[Tag::R, Tag::R])),
        _ => None,
    }
}

/// `Λ(σ) : A ⊸ (B ⊸ C)` for `σ : A⊗B ⊸ C`.
pub fn curry(sigma: &Strategy) -> Result<Strategy> {
    let (ab, c) = sigma.sides()?;
    let (a, b) = ab.as_tensor()?;
    let host = GameExpr::limp(a.clone(), GameExpr::limp(b.clone(), c));
    Ok(retag(sigma, host, &format!("Λ({})", sigma.name()), curry_in, curry_out))
}

/// Inverse of [`curry`].
pub fn uncurry(sigma: &Strategy) -> Result<Strategy> {
    let (a, bc) = sigma.sides()?;
    let (b, c) = bc.as_limp()?;
    let host = GameExpr::limp(GameExpr::tensor(a, b.clone()), c.clone());
    Ok(retag(sigma, host, &format!("Λ⁻¹({})", sigma.name()), curry_out, curry_in))
}
