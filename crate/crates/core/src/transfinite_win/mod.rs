//! Transfinite plays: ordinals, the rank calculus on copy-index schedules, play-length suprema and
//! winning labels.

pub mod ordinal;
pub mod rank;
pub mod zeta;

pub use ordinal::Ordinal;
pub use rank::{brute_rank_leq, check_rank_props, classify_play, rank, rank_leq, Block, RankPropsReport, SymbolicSeq};
pub use zeta::{inversion_witness, zeta_eval, BangMode, SymPos, ZetaFormula};

use crate::error::{GameError, Result};
use crate::game::GameExpr;

/// Supremum of the lengths of plays of `e`.
///
/// Interleaving connectives take the natural sum of their sides. A sequoid with an empty left
/// side and a linear map into an empty game have only the empty play.
pub fn length_sup(e: &GameExpr) -> Result<Ordinal> {
    Ok(match e {
        GameExpr::Unit => Ordinal::zero(),
        GameExpr::Flat(_) => Ordinal::nat(2),
        GameExpr::Prod(fs) => {
            let mut m = Ordinal::zero();
            for f in fs.iter() {
                m = m.max(length_sup(f)?);
            }
            m
        }
        GameExpr::Tensor(a, b) => length_sup(a)?.natural_add(&length_sup(b)?),
        GameExpr::Seq(a, b) => {
            let la = length_sup(a)?;
            if la.is_zero() {
                la
            } else {
                la.natural_add(&length_sup(b)?)
            }
        }
        GameExpr::Limp(a, b) => {
            let lb = length_sup(b)?;
            if lb.is_zero() {
                lb
            } else {
                length_sup(a)?.natural_add(&lb)
            }
        }
        GameExpr::Bang(a) => {
            let la = length_sup(a)?;
            if la.is_zero() {
                la
            } else if la.is_finite() {
                Ordinal::omega()
            } else {
                return Err(GameError::Unsupported(format!("exponential of the unbounded game {a}")));
            }
        }
    })
}

/// Play-length suprema of `!A ⊗ !B` and `!(A × B)`; they differ whenever both games have a move.
pub fn exponential_length_witness(a: &GameExpr, b: &GameExpr) -> Result<(Ordinal, Ordinal)> {
    let split = GameExpr::tensor(GameExpr::bang(a.clone()), GameExpr::bang(b.clone()));
    let joint = GameExpr::bang(GameExpr::prod(vec![a.clone(), b.clone()])?);
    Ok((length_sup(&split)?, length_sup(&joint)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::parse_dsl;

    fn g(t: &str) -> GameExpr {
        parse_dsl(t).unwrap()
    }

    #[test]
    fn documented_lengths() {
        assert_eq!(length_sup(&g("bang(sigma)")).unwrap(), Ordinal::omega());
        assert_eq!(length_sup(&g("tensor(bang(sigma),bang(sigma))")).unwrap(), Ordinal::monomial(1, 2));
        assert_eq!(length_sup(&g("bang(prod(sigma,sigma))")).unwrap(), Ordinal::omega());
        assert_eq!(length_sup(&g("tensor(sigma,flat{0,1})")).unwrap(), Ordinal::nat(4));
        assert_eq!(length_sup(&g("bang(I)")).unwrap(), Ordinal::zero());
        assert_eq!(length_sup(&g("seq(I,sigma)")).unwrap(), Ordinal::zero());
        assert_eq!(length_sup(&g("limp(sigma,I)")).unwrap(), Ordinal::zero());
        assert_eq!(length_sup(&g("limp(bang(sigma),sigma)")).unwrap(), "w+2".parse().unwrap());
        assert!(length_sup(&g("bang(bang(sigma))")).is_err());
    }

    #[test]
    fn exponential_does_not_split_products() {
        let (split, joint) = exponential_length_witness(&GameExpr::sigma(), &g("flat{0,1}")).unwrap();
        assert_eq!(split, Ordinal::monomial(1, 2));
        assert_eq!(joint, Ordinal::omega());
    }
}
