//! Winning labels `ζ` on symbolic positions, read propositionally with `P` as true and `O` as false.

use std::fmt;

use crate::error::{GameError, Result};
use crate::game::GameExpr;
use crate::game::Polarity;

/// How the exponential of a formula treats positions touching infinitely many copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BangMode {
    /// `!A`: the conjunction over all copies.
    Bang,
    /// `¡A`: as `!A`, except that moves in infinitely many copies are a win for `P`.
    Inverted,
}

/// Mirrors a [`GameExpr`], with the exponential carrying a [`BangMode`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ZetaFormula {
    /// A base game; finite plays are labelled by parity.
    Base,
    /// Tensor and sequoid.
    And(Box<ZetaFormula>, Box<ZetaFormula>),
    Implies(Box<ZetaFormula>, Box<ZetaFormula>),
    Prod(Vec<ZetaFormula>),
    Bang(Box<ZetaFormula>, BangMode),
}

impl ZetaFormula {
    /// The formula of `e`, with every exponential in the given mode.
    pub fn from_game(e: &GameExpr, mode: BangMode) -> ZetaFormula {
        match e {
            GameExpr::Unit | GameExpr::Flat(_) => ZetaFormula::Base,
            GameExpr::Tensor(a, b) | GameExpr::Seq(a, b) => {
                ZetaFormula::And(Box::new(Self::from_game(a, mode)), Box::new(Self::from_game(b, mode)))
            }
            GameExpr::Limp(a, b) => {
                ZetaFormula::Implies(Box::new(Self::from_game(a, mode)), Box::new(Self::from_game(b, mode)))
            }
            GameExpr::Prod(fs) => ZetaFormula::Prod(fs.iter().map(|f| Self::from_game(f, mode)).collect()),
            GameExpr::Bang(a) => ZetaFormula::Bang(Box::new(Self::from_game(a, mode)), mode),
        }
    }
}

/// A position described by its restrictions to the components of the game.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SymPos {
    Empty,
    /// A finite play of a base game, given by its length.
    Play(usize),
    /// Restrictions to the two sides of a binary connective.
    Pair(Box<SymPos>, Box<SymPos>),
    /// A play inside one factor of a product.
    Factor(usize, Box<SymPos>),
    /// Restrictions to the first few copies of an exponential; `tail`, when present, is the
    /// restriction to every later copy, of which there are infinitely many.
    Copies {
        finite: Vec<SymPos>,
        tail: Option<Box<SymPos>>,
    },
}

impl SymPos {
    pub fn pair(l: SymPos, r: SymPos) -> SymPos {
        SymPos::Pair(Box::new(l), Box::new(r))
    }

    pub fn factor(i: usize, p: SymPos) -> SymPos {
        SymPos::Factor(i, Box::new(p))
    }

    pub fn copies(finite: Vec<SymPos>, tail: Option<SymPos>) -> SymPos {
        SymPos::Copies { finite, tail: tail.map(Box::new) }
    }

    /// Whether the position has moves in infinitely many copies of some exponential at the top.
    pub fn touches_infinitely_many(&self) -> bool {
        matches!(self, SymPos::Copies { tail: Some(t), .. } if **t != SymPos::Empty)
    }
}

impl fmt::Display for SymPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymPos::Empty => write!(f, "ε"),
            SymPos::Play(n) => write!(f, "play({n})"),
            SymPos::Pair(l, r) => write!(f, "({l}|{r})"),
            SymPos::Factor(i, p) => write!(f, "in{i}({p})"),
            SymPos::Copies { finite, tail } => {
                let parts: Vec<String> = finite.iter().map(|p| p.to_string()).collect();
                write!(f, "[{}", parts.join(","))?;
                if let Some(t) = tail {
                    write!(f, ";{t}...")?;
                }
                write!(f, "]")
            }
        }
    }
}

fn and(a: Polarity, b: Polarity) -> Polarity {
    if a == Polarity::P && b == Polarity::P {
        Polarity::P
    } else {
        Polarity::O
    }
}

fn implies(a: Polarity, b: Polarity) -> Polarity {
    if a == Polarity::P && b == Polarity::O {
        Polarity::O
    } else {
        Polarity::P
    }
}

/// Evaluate `ζ` at a symbolic position.
pub fn zeta_eval(f: &ZetaFormula, pos: &SymPos) -> Result<Polarity> {
    match (f, pos) {
        (_, SymPos::Empty) => Ok(Polarity::P),
        (ZetaFormula::Base, SymPos::Play(n)) => Ok(if n % 2 == 0 { Polarity::P } else { Polarity::O }),
        (ZetaFormula::And(a, b), SymPos::Pair(x, y)) => Ok(and(zeta_eval(a, x)?, zeta_eval(b, y)?)),
        (ZetaFormula::Implies(a, b), SymPos::Pair(x, y)) => Ok(implies(zeta_eval(a, x)?, zeta_eval(b, y)?)),
        (ZetaFormula::Prod(fs), SymPos::Factor(i, x)) => match fs.get(*i) {
            Some(fi) => zeta_eval(fi, x),
            None => Err(GameError::Construction(format!("no factor {i} in a product of {}", fs.len()))),
        },
        (ZetaFormula::Bang(a, mode), SymPos::Copies { finite, tail }) => {
            if *mode == BangMode::Inverted && pos.touches_infinitely_many() {
                return Ok(Polarity::P);
            }
            let mut v = Polarity::P;
            for c in finite.iter().chain(tail.as_deref()) {
                v = and(v, zeta_eval(a, c)?);
            }
            Ok(v)
        }
        (f, p) => Err(GameError::Construction(format!("restriction data missing: position {p} does not fit {f:?}"))),
    }
}

/// A position of `!Σ` with copy 0 at an O-position and every later copy complete:
/// `!` labels it `O`, `¡` labels it `P`.
pub fn inversion_witness() -> SymPos {
    SymPos::copies(vec![SymPos::Play(1)], Some(SymPos::Play(2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bang_sigma(mode: BangMode) -> ZetaFormula {
        ZetaFormula::from_game(&GameExpr::bang(GameExpr::sigma()), mode)
    }

    #[test]
    fn empty_position_is_won_by_p() {
        for g in
            [GameExpr::sigma(), GameExpr::bang(GameExpr::sigma()), GameExpr::limp(GameExpr::sigma(), GameExpr::sigma())]
        {
            assert_eq!(zeta_eval(&ZetaFormula::from_game(&g, BangMode::Bang), &SymPos::Empty).unwrap(), Polarity::P);
        }
    }

    #[test]
    fn connectives_follow_the_table() {
        let t = ZetaFormula::from_game(&GameExpr::tensor(GameExpr::sigma(), GameExpr::sigma()), BangMode::Bang);
        let l = ZetaFormula::from_game(&GameExpr::limp(GameExpr::sigma(), GameExpr::sigma()), BangMode::Bang);
        let open = SymPos::pair(SymPos::Play(1), SymPos::Play(2));
        assert_eq!(zeta_eval(&t, &open).unwrap(), Polarity::O);
        assert_eq!(zeta_eval(&l, &open).unwrap(), Polarity::P);
        assert_eq!(zeta_eval(&l, &SymPos::pair(SymPos::Play(2), SymPos::Play(1))).unwrap(), Polarity::O);
        let p = ZetaFormula::from_game(
            &GameExpr::prod(vec![GameExpr::sigma(), GameExpr::sigma()]).unwrap(),
            BangMode::Bang,
        );
        assert_eq!(zeta_eval(&p, &SymPos::factor(1, SymPos::Play(1))).unwrap(), Polarity::O);
        assert!(zeta_eval(&p, &SymPos::factor(2, SymPos::Play(1))).is_err());
        assert!(zeta_eval(&t, &SymPos::Play(2)).is_err());
    }

    #[test]
    fn infinitely_many_complete_copies() {
        let pos = SymPos::copies(vec![], Some(SymPos::Play(2)));
        assert_eq!(zeta_eval(&bang_sigma(BangMode::Bang), &pos).unwrap(), Polarity::P);
        assert_eq!(zeta_eval(&bang_sigma(BangMode::Inverted), &pos).unwrap(), Polarity::P);
    }

    #[test]
    fn inverted_exponential_differs() {
        let w = inversion_witness();
        assert_eq!(zeta_eval(&bang_sigma(BangMode::Bang), &w).unwrap(), Polarity::O);
        assert_eq!(zeta_eval(&bang_sigma(BangMode::Inverted), &w).unwrap(), Polarity::P);
        let finite = SymPos::copies(vec![SymPos::Play(1), SymPos::Play(2)], None);
        assert_eq!(zeta_eval(&bang_sigma(BangMode::Inverted), &finite).unwrap(), Polarity::O);
    }
}
