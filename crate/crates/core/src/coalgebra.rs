//! `!A` as the final coalgebra of `A⊘_`: α, anamorphisms, catamorphisms and fixed points.
//!
//! Anamorphisms and catamorphisms are realised as lazy chains of step instances. Copy `n`
//! of the exponential is served by the `n`-th instance, and neighbouring instances talk
//! through the hidden state game, so the infinite unfolding is never built.

use crate::comonoid::{bang_map, eps};
use crate::composition::{compose, curry};
use crate::connectives::{copycat, copycat_with, map_seq, structural_iso, IsoName};
use crate::error::{GameError, Result};
use crate::game::{show_position, GameExpr, Move, Position, Tag};
use crate::strategy::{Ctx, Player, Strategy};

/// `α_A : !A ⊸ A⊘!A`: copy 0 becomes the head, copy `n+1` becomes copy `n` of the tail.
pub fn alpha(a: &GameExpr) -> Strategy {
    use Tag::{C, L, R};
    let bang = GameExpr::bang(a.clone());
    let host = GameExpr::limp(bang.clone(), GameExpr::seq(a.clone(), bang));
    copycat_with(
        host,
        "α",
        |_, m| match (m.head()?, m.path.get(1)) {
            (L, _) => Some(m.tail().under(C(0))),
            (R, Some(C(n))) => Some(m.tail().tail().under(C(n + 1))),
            _ => None,
        },
        |_, m| match m.head()? {
            C(0) => Some(m.tail().under(L)),
            C(n) => Some(m.tail().under(C(n - 1)).under(R)),
            _ => None,
        },
    )
}

/// The inverse of α written directly as a copycat.
pub fn alpha_inv_copycat(a: &GameExpr) -> Strategy {
    use Tag::{C, L, R};
    let bang = GameExpr::bang(a.clone());
    let host = GameExpr::limp(GameExpr::seq(a.clone(), bang.clone()), bang);
    copycat_with(
        host,
        "α⁻¹",
        |_, m| match m.head()? {
            C(0) => Some(m.tail().under(L)),
            C(n) => Some(m.tail().under(C(n - 1)).under(R)),
            _ => None,
        },
        |_, m| match (m.head()?, m.path.get(1)) {
            (L, _) => Some(m.tail().under(C(0))),
            (R, Some(C(n))) => Some(m.tail().tail().under(C(n + 1))),
            _ => None,
        },
    )
}

/// A coalgebra `B ⊸ A⊘B` for the sequoid functor.
#[derive(Debug, Clone)]
pub struct SequoidCoalgebra {
    pub state_game: GameExpr,
    pub payload_game: GameExpr,
    pub step: Strategy,
}

impl SequoidCoalgebra {
    pub fn new(step: Strategy) -> Result<Self> {
        let (b, ab) = step.sides()?;
        let (a, b2) = ab.as_seq()?;
        if &b != b2 {
            return Err(GameError::Type(format!("coalgebra step must have host B ⊸ A⊘B, got {}", step.host())));
        }
        Ok(SequoidCoalgebra { state_game: b, payload_game: a.clone(), step })
    }
}

/// An algebra `A⊘C ⊸ C` for the sequoid functor.
#[derive(Debug, Clone)]
pub struct SequoidAlgebra {
    pub carrier: GameExpr,
    pub payload_game: GameExpr,
    pub step: Strategy,
}

impl SequoidAlgebra {
    pub fn new(step: Strategy) -> Result<Self> {
        let (ac, c) = step.sides()?;
        let (a, c2) = ac.as_seq()?;
        if &c != c2 {
            return Err(GameError::Type(format!("algebra step must have host A⊘C ⊸ C, got {}", step.host())));
        }
        Ok(SequoidAlgebra { carrier: c, payload_game: a.clone(), step })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Ana,
    Cata,
}

/// Where a message inside the chain goes next.
enum Hop {
    Visible(Move),
    Node(usize, Move),
}

#[derive(Clone)]
struct Chain {
    kind: Kind,
    step: Strategy,
    nodes: Vec<Box<dyn Player>>,
    visible: Position,
    dead: bool,
}

impl Chain {
    fn node(&mut self, k: usize) -> &mut Box<dyn Player> {
        while self.nodes.len() <= k {
            self.nodes.push(self.step.player());
        }
        &mut self.nodes[k]
    }

    /// Route a visible O-move to the node that owns it.
    fn entry(&self, m: &Move) -> Option<(usize, Move)> {
        use Tag::{C, L, R};
        match (self.kind, m.head()?, m.path.get(1)) {
            (Kind::Ana, L, _) => Some((0, m.clone())),
            (Kind::Ana, R, Some(C(n))) => Some((*n as usize, m.tail().tail().under_all(&[R, L]))),
            (Kind::Cata, R, _) => Some((0, m.clone())),
            (Kind::Cata, L, Some(C(n))) => Some((*n as usize, m.tail().tail().under_all(&[L, L]))),
            _ => None,
        }
    }

    /// Route a reply of node `k`.
    fn hop(&self, k: usize, m: &Move) -> Option<Hop> {
        use Tag::{C, L, R};
        let first = m.head()?;
        let rest = m.tail();
        match (self.kind, first) {
            (Kind::Ana, L) if k == 0 => Some(Hop::Visible(m.clone())),
            (Kind::Ana, L) => Some(Hop::Node(k - 1, rest.under_all(&[R, R]))),
            (Kind::Ana, R) => match rest.head()? {
                L => Some(Hop::Visible(rest.tail().under_all(&[R, C(k as u32)]))),
                R => Some(Hop::Node(k + 1, rest.tail().under(L))),
                _ => None,
            },
            (Kind::Cata, R) if k == 0 => Some(Hop::Visible(m.clone())),
            (Kind::Cata, R) => Some(Hop::Node(k - 1, rest.under_all(&[L, R]))),
            (Kind::Cata, L) => match rest.head()? {
                L => Some(Hop::Visible(rest.tail().under_all(&[L, C(k as u32)]))),
                R => Some(Hop::Node(k + 1, rest.tail().under(R))),
                _ => None,
            },
            _ => None,
        }
    }
}

impl Player for Chain {
    fn play(&mut self, m: &Move, ctx: &Ctx) -> Result<Option<Move>> {
        if self.dead {
            return Ok(None);
        }
        self.visible.push(m.clone());
        let Some((mut k, mut pending)) = self.entry(m) else {
            self.dead = true;
            return Ok(None);
        };
        let mut internal = 0usize;
        loop {
            let reply = self.node(k).play(&pending, ctx)?;
            match reply.and_then(|r| self.hop(k, &r)) {
                None => {
                    self.dead = true;
                    return Ok(None);
                }
                Some(Hop::Visible(v)) => {
                    self.visible.push(v.clone());
                    return Ok(Some(v));
                }
                Some(Hop::Node(next, msg)) => {
                    internal += 1;
                    if internal > ctx.budget {
                        self.dead = true;
                        return Err(GameError::Livelock { position: show_position(&self.visible), budget: ctx.budget });
                    }
                    k = next;
                    pending = msg;
                }
            }
        }
    }

    fn box_clone(&self) -> Box<dyn Player> {
        Box::new(self.clone())
    }
}

fn chain(kind: Kind, host: GameExpr, name: String, step: &Strategy) -> Strategy {
    let step = step.clone();
    Strategy::new(host, name, move || {
        Box::new(Chain { kind, step: step.clone(), nodes: Vec::new(), visible: Vec::new(), dead: false })
    })
}

/// The anamorphism `⌊σ⌋ : B ⊸ !A`.
pub fn ana(c: &SequoidCoalgebra) -> Strategy {
    let host = GameExpr::limp(c.state_game.clone(), GameExpr::bang(c.payload_game.clone()));
    chain(Kind::Ana, host, format!("⌊{}⌋", c.step.name()), &c.step)
}

/// The catamorphism `!A ⊸ C` of an algebra `A⊘C ⊸ C`.
pub fn cata(a: &SequoidAlgebra) -> Strategy {
    let host = GameExpr::limp(GameExpr::bang(a.payload_game.clone()), a.carrier.clone());
    chain(Kind::Cata, host, format!("⌈{}⌉", a.step.name()), &a.step)
}

/// `α⁻¹` as the anamorphism of `id⊘α`.
pub fn lambek_inv(a: &GameExpr) -> Result<Strategy> {
    let step = map_seq(&copycat(a), &alpha(a))?;
    Ok(ana(&SequoidCoalgebra::new(step)?).renamed("α⁻¹"))
}

/// The `k`-th approximant `σ;(id⊘u_{k-1});α⁻¹` of the anamorphism, starting from the empty strategy.
pub fn unroll(c: &SequoidCoalgebra, k: usize) -> Result<Strategy> {
    let a = &c.payload_game;
    let mut u = Strategy::undefined(GameExpr::limp(c.state_game.clone(), GameExpr::bang(a.clone())));
    for _ in 0..k {
        u = compose(&compose(&c.step, &map_seq(&copycat(a), &u)?)?, &alpha_inv_copycat(a))?;
    }
    Ok(u.renamed(format!("unroll{k}({})", c.step.name())))
}

/// The evaluation counit `(A⊸A)⊘A ⊸ A`: the output is the function's result and the
/// function's argument is the sequoid's second component.
pub fn eval_counit(a: &GameExpr) -> Strategy {
    use Tag::{L, R};
    let fun = GameExpr::limp(a.clone(), a.clone());
    let host = GameExpr::limp(GameExpr::seq(fun, a.clone()), a.clone());
    let pairs: [(&[Tag], &[Tag]); 4] =
        [(&[R], &[L, L, R]), (&[L, L, R], &[R]), (&[L, L, L], &[L, R]), (&[L, R], &[L, L, L])];
    Strategy::from_fn(host, "ev", move |_, o| {
        Ok(pairs.iter().find_map(|(from, to)| o.strip_all(from).map(|x| x.under_all(to))))
    })
}

/// `Φ_A : !(A⊸A) ⊸ A`, the catamorphism of the evaluation counit.
pub fn phi(a: &GameExpr) -> Result<Strategy> {
    Ok(cata(&SequoidAlgebra::new(eval_counit(a))?).renamed("Φ"))
}

/// `fix(f) = ε; !Λ(f); Φ : I ⊸ A`.
pub fn fix(f: &Strategy) -> Result<Strategy> {
    let (a, a2) = f.sides()?;
    if a != a2 {
        return Err(GameError::Type(format!("fix needs an endomorphism, got {}", f.host())));
    }
    let (lunit, _) = structural_iso(IsoName::Lunit, std::slice::from_ref(&a))?;
    let named = curry(&compose(&lunit, f)?)?;
    let lifted = bang_map(&named)?;
    let s = compose(&compose(&eps(), &lifted)?, &phi(&a)?)?;
    Ok(s.renamed(format!("fix({})", f.name())))
}
