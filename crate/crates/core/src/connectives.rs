//! Copycat strategies for the structural maps, and the action of the connectives on strategies.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::composition::compose;
use crate::error::{GameError, Result};
use crate::game::{GameExpr, Move, Tag};
use crate::strategy::{is_strict, Ctx, Player, Strategy};

type Translate = Arc<dyn Fn(&[Move], &Move) -> Option<Move> + Send + Sync>;

/// Copycat on `L ⊸ R` from translations of O-moves (given locally, without the `l`/`r`
/// tag) on one side into P-moves on the other. Translations see the position so far.
pub fn copycat_with(
    host: GameExpr,
    name: &str,
    to_left: impl Fn(&[Move], &Move) -> Option<Move> + Send + Sync + 'static,
    to_right: impl Fn(&[Move], &Move) -> Option<Move> + Send + Sync + 'static,
) -> Strategy {
    let to_left: Translate = Arc::new(to_left);
    let to_right: Translate = Arc::new(to_right);
    Strategy::from_fn(host, name, move |s, o| {
        Ok(match o.head() {
            Some(Tag::R) => to_left(s, &o.tail()).map(|m| m.under(Tag::L)),
            Some(Tag::L) => to_right(s, &o.tail()).map(|m| m.under(Tag::R)),
            _ => None,
        })
    })
}

/// Copycat given by address-prefix pairs `(left prefix, right prefix)`.
pub fn prefix_copycat(host: GameExpr, name: &str, pairs: Vec<(Vec<Tag>, Vec<Tag>)>) -> Strategy {
    let pairs = Arc::new(pairs);
    let p2 = pairs.clone();
    copycat_with(
        host,
        name,
        move |_, m| pairs.iter().find_map(|(l, r)| m.strip_all(r).map(|x| x.under_all(l))),
        move |_, m| p2.iter().find_map(|(l, r)| m.strip_all(l).map(|x| x.under_all(r))),
    )
}

fn swap_pairs(pairs: &[(Vec<Tag>, Vec<Tag>)]) -> Vec<(Vec<Tag>, Vec<Tag>)> {
    pairs.iter().map(|(l, r)| (r.clone(), l.clone())).collect()
}

/// The identity on `A`.
pub fn copycat(a: &GameExpr) -> Strategy {
    prefix_copycat(GameExpr::limp(a.clone(), a.clone()), "id", vec![(vec![], vec![])])
}

/// The unique (empty) map `A ⊸ I`.
pub fn terminal(a: &GameExpr) -> Strategy {
    Strategy::undefined(GameExpr::limp(a.clone(), GameExpr::Unit)).renamed("*")
}

/// Names of the structural maps of a sequoidal category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IsoName {
    Dist,
    Dec,
    Passoc,
    R,
    Dist0,
    Dec0,
    Sym,
    Assoc,
    Lunit,
    Runit,
    Wk,
}

impl IsoName {
    pub const ALL: [IsoName; 11] = [
        IsoName::Dist,
        IsoName::Dec,
        IsoName::Passoc,
        IsoName::R,
        IsoName::Dist0,
        IsoName::Dec0,
        IsoName::Sym,
        IsoName::Assoc,
        IsoName::Lunit,
        IsoName::Runit,
        IsoName::Wk,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IsoName::Dist => "dist",
            IsoName::Dec => "dec",
            IsoName::Passoc => "passoc",
            IsoName::R => "r",
            IsoName::Dist0 => "dist0",
            IsoName::Dec0 => "dec0",
            IsoName::Sym => "sym",
            IsoName::Assoc => "assoc",
            IsoName::Lunit => "lunit",
            IsoName::Runit => "runit",
            IsoName::Wk => "wk",
        }
    }
}

impl fmt::Display for IsoName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IsoName {
    type Err = GameError;
    fn from_str(s: &str) -> Result<Self> {
        IsoName::ALL
            .iter()
            .copied()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| GameError::Construction(format!("unknown structural map `{s}`")))
    }
}

fn arity(name: IsoName, args: &[GameExpr], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(GameError::Construction(format!("`{name}` takes {n} game arguments, got {}", args.len())));
    }
    Ok(())
}

/// A structural map and, for the isomorphisms, its inverse.
///
/// Argument conventions: `sym, wk, dec: A,B`; `assoc, passoc: A,B,C`; `lunit, runit, r: A`;
/// `dist: A_1,…,A_n,C` for `(∏A_i)⊘C ≅ ∏(A_i⊘C)`; `dist0: C` for `I⊘C ≅ I`; `dec0:` none.
pub fn structural_iso(name: IsoName, args: &[GameExpr]) -> Result<(Strategy, Option<Strategy>)> {
    use GameExpr as G;
    use Tag::{L, R};
    let both = |fwd: Strategy, inv: Strategy| Ok((fwd, Some(inv)));
    match name {
        IsoName::Sym => {
            arity(name, args, 2)?;
            both(sym(&args[0], &args[1]), sym(&args[1], &args[0]))
        }
        IsoName::Assoc | IsoName::Passoc => {
            arity(name, args, 3)?;
            let (a, b, c) = (args[0].clone(), args[1].clone(), args[2].clone());
            let (src, dst) = if name == IsoName::Assoc {
                (G::tensor(G::tensor(a.clone(), b.clone()), c.clone()), G::tensor(a, G::tensor(b, c)))
            } else {
                (G::seq(G::seq(a.clone(), b.clone()), c.clone()), G::seq(a, G::tensor(b, c)))
            };
            let pairs = vec![(vec![L, L], vec![L]), (vec![L, R], vec![R, L]), (vec![R], vec![R, R])];
            let label = name.as_str();
            both(
                prefix_copycat(G::limp(src.clone(), dst.clone()), label, pairs.clone()),
                prefix_copycat(G::limp(dst, src), &format!("{label}⁻¹"), swap_pairs(&pairs)),
            )
        }
        IsoName::Lunit | IsoName::Runit | IsoName::R => {
            arity(name, args, 1)?;
            let a = args[0].clone();
            let (src, tag) = match name {
                IsoName::Lunit => (G::tensor(G::Unit, a.clone()), R),
                IsoName::Runit => (G::tensor(a.clone(), G::Unit), L),
                _ => (G::seq(a.clone(), G::Unit), L),
            };
            let pairs = vec![(vec![tag], vec![])];
            let label = name.as_str();
            both(
                prefix_copycat(G::limp(src.clone(), a.clone()), label, pairs.clone()),
                prefix_copycat(G::limp(a, src), &format!("{label}⁻¹"), swap_pairs(&pairs)),
            )
        }
        IsoName::Wk => {
            arity(name, args, 2)?;
            Ok((wk(&args[0], &args[1]), None))
        }
        IsoName::Dec => {
            arity(name, args, 2)?;
            both(dec(&args[0], &args[1]), dec_inv(&args[0], &args[1]))
        }
        IsoName::Dist => {
            if args.len() < 2 {
                return Err(GameError::Construction("`dist` takes at least one factor and a right game".into()));
            }
            let (c, factors) = args.split_last().expect("checked length");
            both(dist(factors, c)?, dist_inv(factors, c)?)
        }
        IsoName::Dist0 => {
            arity(name, args, 1)?;
            let src = G::seq(G::Unit, args[0].clone());
            both(
                Strategy::undefined(G::limp(src.clone(), G::Unit)).renamed("dist0"),
                Strategy::undefined(G::limp(G::Unit, src)).renamed("dist0⁻¹"),
            )
        }
        IsoName::Dec0 => {
            arity(name, args, 0)?;
            both(copycat(&G::Unit).renamed("dec0"), copycat(&G::Unit).renamed("dec0⁻¹"))
        }
    }
}

/// `sym: A⊗B ⊸ B⊗A`.
pub fn sym(a: &GameExpr, b: &GameExpr) -> Strategy {
    use Tag::{L, R};
    prefix_copycat(
        GameExpr::limp(GameExpr::tensor(a.clone(), b.clone()), GameExpr::tensor(b.clone(), a.clone())),
        "sym",
        vec![(vec![R], vec![L]), (vec![L], vec![R])],
    )
}

/// `wk: A⊗B ⊸ A⊘B`, restricting O to schedules that open `A` first.
pub fn wk(a: &GameExpr, b: &GameExpr) -> Strategy {
    use Tag::{L, R};
    prefix_copycat(
        GameExpr::limp(GameExpr::tensor(a.clone(), b.clone()), GameExpr::seq(a.clone(), b.clone())),
        "wk",
        vec![(vec![L], vec![L]), (vec![R], vec![R])],
    )
}

/// Product index chosen by the first move on one side of an implication position.
fn chosen_factor(s: &[Move], side: Tag, depth: usize) -> Option<u32> {
    s.iter().filter(|m| m.head() == Some(side)).find_map(|m| match m.path.get(depth) {
        Some(Tag::I(k)) => Some(*k),
        _ => None,
    })
}

/// `dec: A⊗B ⊸ (A⊘B)×(B⊘A)`: the factor chosen on the right decides which tensor side leads.
pub fn dec(a: &GameExpr, b: &GameExpr) -> Strategy {
    use Tag::{I, L, R};
    let host = GameExpr::limp(
        GameExpr::tensor(a.clone(), b.clone()),
        GameExpr::pair(GameExpr::seq(a.clone(), b.clone()), GameExpr::seq(b.clone(), a.clone())),
    );
    copycat_with(
        host,
        "dec",
        |_, m| match (m.path.first(), m.path.get(1)) {
            (Some(I(0)), Some(side)) => Some(m.tail().tail().under(*side)),
            (Some(I(1)), Some(L)) => Some(m.tail().tail().under(R)),
            (Some(I(1)), Some(R)) => Some(m.tail().tail().under(L)),
            _ => None,
        },
        |s, m| {
            let k = chosen_factor(s, R, 1)?;
            let side = m.head()?;
            let inner = if k == 0 {
                side
            } else if side == L {
                R
            } else {
                L
            };
            Some(m.tail().under(inner).under(I(k)))
        },
    )
}

/// `dec⁻¹: (A⊘B)×(B⊘A) ⊸ A⊗B`: the tensor side O opens first picks the factor.
pub fn dec_inv(a: &GameExpr, b: &GameExpr) -> Strategy {
    use Tag::{I, L, R};
    let host = GameExpr::limp(
        GameExpr::pair(GameExpr::seq(a.clone(), b.clone()), GameExpr::seq(b.clone(), a.clone())),
        GameExpr::tensor(a.clone(), b.clone()),
    );
    copycat_with(
        host,
        "dec⁻¹",
        |s, m| {
            let side = m.head()?;
            let k = match s.iter().find(|x| x.head() == Some(R)) {
                Some(first) => first.path.get(1).map(|t| if *t == L { 0 } else { 1 })?,
                None => {
                    if side == L {
                        0
                    } else {
                        1
                    }
                }
            };
            let inner = if k == 0 {
                side
            } else if side == L {
                R
            } else {
                L
            };
            Some(m.tail().under(inner).under(I(k)))
        },
        |_, m| match (m.path.first(), m.path.get(1)) {
            (Some(I(0)), Some(side)) => Some(m.tail().tail().under(*side)),
            (Some(I(1)), Some(L)) => Some(m.tail().tail().under(R)),
            (Some(I(1)), Some(R)) => Some(m.tail().tail().under(L)),
            _ => None,
        },
    )
}

fn dist_games(factors: &[GameExpr], c: &GameExpr) -> Result<(GameExpr, GameExpr)> {
    let src = GameExpr::seq(GameExpr::prod(factors.to_vec())?, c.clone());
    let dst = GameExpr::prod(factors.iter().map(|a| GameExpr::seq(a.clone(), c.clone())).collect())?;
    Ok((src, dst))
}

/// `dist: (∏A_i)⊘C ⊸ ∏(A_i⊘C)`.
pub fn dist(factors: &[GameExpr], c: &GameExpr) -> Result<Strategy> {
    use Tag::{I, L, R};
    let (src, dst) = dist_games(factors, c)?;
    Ok(copycat_with(
        GameExpr::limp(src, dst),
        "dist",
        |_, m| match (m.path.first(), m.path.get(1)) {
            (Some(I(k)), Some(L)) => Some(m.tail().tail().under(I(*k)).under(L)),
            (Some(I(_)), Some(R)) => Some(m.tail().tail().under(R)),
            _ => None,
        },
        |s, m| match m.head()? {
            L => {
                let inner = m.tail();
                let k = inner.head()?;
                Some(inner.tail().under(L).under(k))
            }
            R => Some(m.tail().under(R).under(I(chosen_factor(s, R, 1)?))),
            _ => None,
        },
    ))
}

/// `dist⁻¹: ∏(A_i⊘C) ⊸ (∏A_i)⊘C`.
pub fn dist_inv(factors: &[GameExpr], c: &GameExpr) -> Result<Strategy> {
    use Tag::{I, L, R};
    let (src, dst) = dist_games(factors, c)?;
    Ok(copycat_with(
        GameExpr::limp(dst, src),
        "dist⁻¹",
        |s, m| match m.head()? {
            L => {
                let inner = m.tail();
                let k = inner.head()?;
                Some(inner.tail().under(L).under(k))
            }
            R => {
                let k = s.iter().filter(|x| x.head() == Some(R)).find_map(|x| match x.path.get(2) {
                    Some(I(k)) if x.path.get(1) == Some(&L) => Some(*k),
                    _ => None,
                })?;
                Some(m.tail().under(R).under(I(k)))
            }
            _ => None,
        },
        |_, m| match (m.path.first(), m.path.get(1)) {
            (Some(I(k)), Some(L)) => Some(m.tail().tail().under(I(*k)).under(L)),
            (Some(I(_)), Some(R)) => Some(m.tail().tail().under(R)),
            _ => None,
        },
    ))
}

/// Cartesian structural maps used by the coherence diagrams: `assoc_×`, `lunit_× : A ⊸ 1×A`,
/// `runit_× : A ⊸ A×1` and `sym_×`.
pub fn prod_assoc(a: &GameExpr, b: &GameExpr, c: &GameExpr) -> Strategy {
    use Tag::I;
    let src = GameExpr::pair(GameExpr::pair(a.clone(), b.clone()), c.clone());
    let dst = GameExpr::pair(a.clone(), GameExpr::pair(b.clone(), c.clone()));
    prefix_copycat(
        GameExpr::limp(src, dst),
        "assoc×",
        vec![(vec![I(0), I(0)], vec![I(0)]), (vec![I(0), I(1)], vec![I(1), I(0)]), (vec![I(1)], vec![I(1), I(1)])],
    )
}

pub fn prod_lunit(a: &GameExpr) -> Strategy {
    prefix_copycat(
        GameExpr::limp(a.clone(), GameExpr::pair(GameExpr::Unit, a.clone())),
        "lunit×",
        vec![(vec![], vec![Tag::I(1)])],
    )
}

pub fn prod_runit(a: &GameExpr) -> Strategy {
    prefix_copycat(
        GameExpr::limp(a.clone(), GameExpr::pair(a.clone(), GameExpr::Unit)),
        "runit×",
        vec![(vec![], vec![Tag::I(0)])],
    )
}

pub fn prod_sym(a: &GameExpr, b: &GameExpr) -> Strategy {
    use Tag::I;
    prefix_copycat(
        GameExpr::limp(GameExpr::pair(a.clone(), b.clone()), GameExpr::pair(b.clone(), a.clone())),
        "sym×",
        vec![(vec![I(1)], vec![I(0)]), (vec![I(0)], vec![I(1)])],
    )
}

/// Projection `∏A ⊸ A_i`.
pub fn pr(factors: &[GameExpr], i: usize) -> Result<Strategy> {
    let Some(target) = factors.get(i) else {
        return Err(GameError::Construction(format!("projection {i} out of range")));
    };
    let host = GameExpr::limp(GameExpr::prod(factors.to_vec())?, target.clone());
    Ok(prefix_copycat(host, &format!("pr{i}"), vec![(vec![Tag::I(i as u32)], vec![])]))
}

/// Diagonal `B ⊸ B^n` as the pairing of identities.
pub fn diagonal(b: &GameExpr, n: usize) -> Result<Strategy> {
    map_product(&vec![copycat(b); n]).map(|s| s.renamed("Δ"))
}

/// Routes host moves to sub-players and their replies back.
#[derive(Clone)]
struct Parallel {
    subs: Vec<Box<dyn Player>>,
    route_in: fn(&Move) -> Option<(usize, Move)>,
    route_out: fn(usize, &Move) -> Option<Move>,
}

impl Player for Parallel {
    fn play(&mut self, m: &Move, ctx: &Ctx) -> Result<Option<Move>> {
        let Some((k, inner)) = (self.route_in)(m) else {
            return Ok(None);
        };
        match self.subs[k].play(&inner, ctx)? {
            Some(reply) => Ok((self.route_out)(k, &reply)),
            None => Ok(None),
        }
    }

    fn box_clone(&self) -> Box<dyn Player> {
        Box::new(self.clone())
    }
}

fn pair_route_in(m: &Move) -> Option<(usize, Move)> {
    let outer = m.head()?;
    let rest = m.tail();
    let k = match rest.head()? {
        Tag::L => 0,
        Tag::R => 1,
        _ => return None,
    };
    Some((k, rest.tail().under(outer)))
}

fn pair_route_out(k: usize, m: &Move) -> Option<Move> {
    let outer = m.head()?;
    let inner = if k == 0 { Tag::L } else { Tag::R };
    Some(m.tail().under(inner).under(outer))
}

fn parallel_pair(host: GameExpr, name: String, sigma: &Strategy, tau: &Strategy) -> Strategy {
    let (s, t) = (sigma.clone(), tau.clone());
    Strategy::new(host, name, move || {
        Box::new(Parallel { subs: vec![s.player(), t.player()], route_in: pair_route_in, route_out: pair_route_out })
    })
}

/// `σ⊗τ : (A⊗C) ⊸ (B⊗D)`.
pub fn map_tensor(sigma: &Strategy, tau: &Strategy) -> Result<Strategy> {
    let (a, b) = sigma.sides()?;
    let (c, d) = tau.sides()?;
    let host = GameExpr::limp(GameExpr::tensor(a, c), GameExpr::tensor(b, d));
    Ok(parallel_pair(host, format!("({})⊗({})", sigma.name(), tau.name()), sigma, tau))
}

/// `σ⊘τ : (A⊘C) ⊸ (B⊘D)`, defined when `σ` is strict.
pub fn map_seq(sigma: &Strategy, tau: &Strategy) -> Result<Strategy> {
    let (a, b) = sigma.sides()?;
    let (c, d) = tau.sides()?;
    if !is_strict(sigma, 1)? {
        return Err(GameError::Precondition(format!(
            "`{}` is not strict, so `{}`⊘- is undefined",
            sigma.name(),
            sigma.name()
        )));
    }
    let host = GameExpr::limp(GameExpr::seq(a, c), GameExpr::seq(b, d));
    Ok(parallel_pair(host, format!("({})⊘({})", sigma.name(), tau.name()), sigma, tau))
}

#[derive(Clone)]
struct Pairing {
    subs: Vec<Box<dyn Player>>,
    chosen: Option<usize>,
}

impl Player for Pairing {
    fn play(&mut self, m: &Move, ctx: &Ctx) -> Result<Option<Move>> {
        let inner = match (m.head(), self.chosen) {
            (Some(Tag::R), None) => {
                let rest = m.tail();
                let Some(Tag::I(k)) = rest.head() else {
                    return Ok(None);
                };
                if k as usize >= self.subs.len() {
                    return Ok(None);
                }
                self.chosen = Some(k as usize);
                rest.tail().under(Tag::R)
            }
            (Some(Tag::R), Some(k)) => match m.tail().strip(Tag::I(k as u32)) {
                Some(x) => x.under(Tag::R),
                None => return Ok(None),
            },
            (Some(Tag::L), Some(_)) => m.clone(),
            _ => return Ok(None),
        };
        let k = self.chosen.expect("factor chosen");
        Ok(self.subs[k].play(&inner, ctx)?.map(|reply| match reply.head() {
            Some(Tag::R) => reply.tail().under(Tag::I(k as u32)).under(Tag::R),
            _ => reply,
        }))
    }

    fn box_clone(&self) -> Box<dyn Player> {
        Box::new(self.clone())
    }
}

/// Pairing `⟨σ_1,…,σ_n⟩ : B ⊸ ∏A_i`; O's first move selects which `σ_i` plays.
pub fn map_product(sigmas: &[Strategy]) -> Result<Strategy> {
    let Some(first) = sigmas.first() else {
        return Err(GameError::Construction("pairing of an empty list".into()));
    };
    let (b, _) = first.sides()?;
    let mut targets = Vec::new();
    for s in sigmas {
        let (src, tgt) = s.sides()?;
        if src != b {
            return Err(GameError::Type(format!("pairing needs a common source, found `{b}` and `{src}`")));
        }
        targets.push(tgt);
    }
    let host = GameExpr::limp(b, GameExpr::prod(targets)?);
    let subs: Vec<Strategy> = sigmas.to_vec();
    let name = format!("⟨{}⟩", subs.iter().map(|s| s.name().to_string()).collect::<Vec<_>>().join(","));
    Ok(Strategy::new(host, name, move || {
        Box::new(Pairing { subs: subs.iter().map(|s| s.player()).collect(), chosen: None })
    }))
}

/// `σ_1×…×σ_n = ⟨pr_1;σ_1, …, pr_n;σ_n⟩ : ∏A_i ⊸ ∏B_i`.
pub fn map_prod(sigmas: &[Strategy]) -> Result<Strategy> {
    let sources: Vec<GameExpr> = sigmas.iter().map(|s| s.sides().map(|(a, _)| a)).collect::<Result<_>>()?;
    let legs = sigmas.iter().enumerate().map(|(i, s)| compose(&pr(&sources, i)?, s)).collect::<Result<Vec<_>>>()?;
    let name = sigmas.iter().map(|s| s.name().to_string()).collect::<Vec<_>>().join("×");
    Ok(map_product(&legs)?.renamed(name))
}

type MoveMap = Arc<dyn Fn(&Move) -> Option<Move> + Send + Sync>;

/// Re-address a strategy onto another host by translating moves in both directions.
/// Moves that do not translate end the play.
pub fn retag(
    sigma: &Strategy,
    host: GameExpr,
    name: &str,
    outer_to_inner: impl Fn(&Move) -> Option<Move> + Send + Sync + 'static,
    inner_to_outer: impl Fn(&Move) -> Option<Move> + Send + Sync + 'static,
) -> Strategy {
    let inner = sigma.clone();
    let (o2i, i2o): (MoveMap, MoveMap) = (Arc::new(outer_to_inner), Arc::new(inner_to_outer));
    Strategy::new(host, name.to_string(), move || {
        Box::new(Retag { inner: inner.player(), outer_to_inner: o2i.clone(), inner_to_outer: i2o.clone() })
    })
}

#[derive(Clone)]
struct Retag {
    inner: Box<dyn Player>,
    outer_to_inner: MoveMap,
    inner_to_outer: MoveMap,
}

impl Player for Retag {
    fn play(&mut self, m: &Move, ctx: &Ctx) -> Result<Option<Move>> {
        let Some(inner) = (self.outer_to_inner)(m) else {
            return Ok(None);
        };
        Ok(self.inner.play(&inner, ctx)?.and_then(|r| (self.inner_to_outer)(&r)))
    }

    fn box_clone(&self) -> Box<dyn Player> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameIntension;
    use crate::strategy::validate_strategy;

    fn mv(t: &str) -> Move {
        Move::parse(t).unwrap()
    }

    fn s() -> GameExpr {
        GameExpr::sigma()
    }

    #[test]
    fn copycat_mirrors() {
        let id = copycat(&s());
        assert_eq!(id.respond(&[mv("r.q")]).unwrap(), Some(mv("l.q")));
        assert_eq!(id.respond(&[mv("r.q"), mv("l.q"), mv("l.*")]).unwrap(), Some(mv("r.*")));
        let bang = copycat(&GameExpr::bang(s()));
        assert_eq!(bang.respond(&[mv("r.c:0.q")]).unwrap(), Some(mv("l.c:0.q")));
        assert_eq!(
            bang.respond(&[mv("r.c:0.q"), mv("l.c:0.q"), mv("l.c:0.*"), mv("r.c:0.*"), mv("r.c:1.q")]).unwrap(),
            Some(mv("l.c:1.q"))
        );
    }

    #[test]
    fn every_iso_is_a_legal_strategy() {
        let f01 = GameExpr::flat(&["0", "1"]).unwrap();
        let cases: Vec<(IsoName, Vec<GameExpr>)> = vec![
            (IsoName::Sym, vec![s(), f01.clone()]),
            (IsoName::Assoc, vec![s(), f01.clone(), s()]),
            (IsoName::Passoc, vec![s(), f01.clone(), s()]),
            (IsoName::Lunit, vec![f01.clone()]),
            (IsoName::Runit, vec![f01.clone()]),
            (IsoName::R, vec![s()]),
            (IsoName::Dec, vec![s(), f01.clone()]),
            (IsoName::Dist, vec![s(), f01.clone(), s()]),
            (IsoName::Dist0, vec![s()]),
            (IsoName::Dec0, vec![]),
            (IsoName::Wk, vec![s(), s()]),
        ];
        for (name, args) in cases {
            let (fwd, inv) = structural_iso(name, &args).unwrap();
            validate_strategy(&fwd, 6).unwrap_or_else(|e| panic!("{name}: {e}"));
            if let Some(inv) = inv {
                validate_strategy(&inv, 6).unwrap_or_else(|e| panic!("{name}⁻¹: {e}"));
            }
        }
        assert!(structural_iso(IsoName::Sym, &[s()]).is_err());
        assert!("bogus".parse::<IsoName>().is_err());
    }

    #[test]
    fn wk_restricts_to_sequoid_schedules() {
        let w = wk(&s(), &s());
        // O may only open the sequoid on the left; P copies into the tensor.
        assert_eq!(w.host().next_moves(&[]), vec![mv("r.l.q")]);
        assert_eq!(w.respond(&[mv("r.l.q")]).unwrap(), Some(mv("l.l.q")));
        assert!(is_strict(&w, 4).unwrap());
    }

    #[test]
    fn seq_of_non_strict_rejected() {
        let eager = Strategy::from_fn(GameExpr::limp(s(), s()), "eager", |_, _| Ok(Some(mv("r.*"))));
        assert!(matches!(map_seq(&eager, &copycat(&s())), Err(GameError::Precondition(_))));
        let ok = map_seq(&copycat(&s()), &copycat(&s())).unwrap();
        assert!(is_strict(&ok, 4).unwrap());
    }

    #[test]
    fn undefined_tensor_is_undefined_on_its_side() {
        let t = map_tensor(&Strategy::undefined(GameExpr::limp(s(), s())), &copycat(&s())).unwrap();
        assert_eq!(t.respond(&[mv("r.l.q")]).unwrap(), None);
        assert_eq!(t.respond(&[mv("r.r.q")]).unwrap(), Some(mv("l.r.q")));
    }

    #[test]
    fn pairing_routes_by_first_move() {
        let f01 = GameExpr::flat(&["0", "1"]).unwrap();
        let zero = Strategy::from_fn(GameExpr::limp(s(), f01.clone()), "zero", |_, _| Ok(Some(mv("r.0"))));
        let p = map_product(&[copycat(&s()), zero]).unwrap();
        assert_eq!(p.respond(&[mv("r.i:0.q")]).unwrap(), Some(mv("l.q")));
        assert_eq!(p.respond(&[mv("r.i:1.q")]).unwrap(), Some(mv("r.i:1.0")));
        let d = diagonal(&s(), 2).unwrap();
        assert_eq!(d.respond(&[mv("r.i:1.q"), mv("l.q"), mv("l.*")]).unwrap(), Some(mv("r.i:1.*")));
    }
}
