use std::fmt;
use std::sync::Arc;

use crate::error::{GameError, Result};

/// Syntactic description of a game.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GameExpr {
    /// The empty game, serving both as tensor unit and terminal object.
    Unit,
    /// One O-move `q` answered by one of the listed P-moves.
    Flat(Arc<[String]>),
    Prod(Arc<[GameExpr]>),
    Tensor(Arc<GameExpr>, Arc<GameExpr>),
    Seq(Arc<GameExpr>, Arc<GameExpr>),
    Limp(Arc<GameExpr>, Arc<GameExpr>),
    Bang(Arc<GameExpr>),
}

impl GameExpr {
    pub fn unit() -> Self {
        GameExpr::Unit
    }

    /// The one-answer game `flat{*}`.
    pub fn sigma() -> Self {
        GameExpr::Flat(Arc::from(vec!["*".to_string()]))
    }

    pub fn flat<S: AsRef<str>>(values: &[S]) -> Result<Self> {
        if values.is_empty() {
            return Err(GameError::Construction("flat game needs at least one value".into()));
        }
        let vals: Vec<String> = values.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vals.iter().enumerate() {
            if v == super::QUESTION {
                return Err(GameError::Construction("`q` is reserved for the question move".into()));
            }
            let ok = v == "*" || (!v.is_empty() && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'));
            if !ok {
                return Err(GameError::Construction(format!("invalid value name `{v}`")));
            }
            if vals[..i].contains(v) {
                return Err(GameError::Construction(format!("duplicate value `{v}`")));
            }
        }
        Ok(GameExpr::Flat(Arc::from(vals)))
    }

    pub fn prod(factors: Vec<GameExpr>) -> Result<Self> {
        if factors.is_empty() {
            return Err(GameError::Construction("product needs at least one factor".into()));
        }
        Ok(GameExpr::Prod(Arc::from(factors)))
    }

    pub fn pair(a: GameExpr, b: GameExpr) -> Self {
        GameExpr::Prod(Arc::from(vec![a, b]))
    }

    pub fn tensor(a: GameExpr, b: GameExpr) -> Self {
        GameExpr::Tensor(Arc::new(a), Arc::new(b))
    }

    pub fn seq(a: GameExpr, b: GameExpr) -> Self {
        GameExpr::Seq(Arc::new(a), Arc::new(b))
    }

    pub fn limp(a: GameExpr, b: GameExpr) -> Self {
        GameExpr::Limp(Arc::new(a), Arc::new(b))
    }

    pub fn bang(a: GameExpr) -> Self {
        GameExpr::Bang(Arc::new(a))
    }

    /// Left-nested n-fold tensor `((A⊗A)⊗A)…`; `A^{⊗0}` is `I`.
    pub fn tensor_power_left(a: &GameExpr, n: usize) -> GameExpr {
        match n {
            0 => GameExpr::Unit,
            1 => a.clone(),
            _ => GameExpr::tensor(GameExpr::tensor_power_left(a, n - 1), a.clone()),
        }
    }

    /// `A ⊗ (A ⊗ (… ⊗ A))`, the shape produced by iterating `A ⊗ A^{⊗n}`.
    pub fn tensor_power(a: &GameExpr, n: usize) -> GameExpr {
        match n {
            0 => GameExpr::Unit,
            1 => a.clone(),
            _ => GameExpr::tensor(a.clone(), GameExpr::tensor_power(a, n - 1)),
        }
    }

    /// `A ⊘ (A ⊘ (… ⊘ A))`.
    pub fn seq_power(a: &GameExpr, n: usize) -> GameExpr {
        match n {
            0 => GameExpr::Unit,
            1 => a.clone(),
            _ => GameExpr::seq(a.clone(), GameExpr::seq_power(a, n - 1)),
        }
    }

    /// Split an implication into its two sides.
    pub fn as_limp(&self) -> Result<(&GameExpr, &GameExpr)> {
        match self {
            GameExpr::Limp(a, b) => Ok((a, b)),
            other => Err(GameError::Type(format!("expected an implication, found `{other}`"))),
        }
    }

    pub fn as_tensor(&self) -> Result<(&GameExpr, &GameExpr)> {
        match self {
            GameExpr::Tensor(a, b) => Ok((a, b)),
            other => Err(GameError::Type(format!("expected a tensor, found `{other}`"))),
        }
    }

    pub fn as_seq(&self) -> Result<(&GameExpr, &GameExpr)> {
        match self {
            GameExpr::Seq(a, b) => Ok((a, b)),
            other => Err(GameError::Type(format!("expected a sequoid, found `{other}`"))),
        }
    }

    pub fn as_bang(&self) -> Result<&GameExpr> {
        match self {
            GameExpr::Bang(a) => Ok(a),
            other => Err(GameError::Type(format!("expected an exponential, found `{other}`"))),
        }
    }

    pub fn as_prod(&self) -> Result<&[GameExpr]> {
        match self {
            GameExpr::Prod(fs) => Ok(fs),
            other => Err(GameError::Type(format!("expected a product, found `{other}`"))),
        }
    }
}

impl fmt::Display for GameExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameExpr::Unit => write!(f, "I"),
            GameExpr::Flat(vs) if vs.len() == 1 && vs[0] == "*" => write!(f, "sigma"),
            GameExpr::Flat(vs) => write!(f, "flat{{{}}}", vs.join(",")),
            GameExpr::Prod(fs) => {
                write!(f, "prod(")?;
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ")")
            }
            GameExpr::Tensor(a, b) => write!(f, "tensor({a},{b})"),
            GameExpr::Seq(a, b) => write!(f, "seq({a},{b})"),
            GameExpr::Limp(a, b) => write!(f, "limp({a},{b})"),
            GameExpr::Bang(a) => write!(f, "bang({a})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_rejects_bad_values() {
        assert!(GameExpr::flat::<&str>(&[]).is_err());
        assert!(GameExpr::flat(&["0", "0"]).is_err());
        assert!(GameExpr::flat(&["q"]).is_err());
        assert!(GameExpr::flat(&["a.b"]).is_err());
        assert_eq!(GameExpr::flat(&["*"]).unwrap(), GameExpr::sigma());
    }

    #[test]
    fn display_uses_concrete_syntax() {
        let g = GameExpr::limp(
            GameExpr::bang(GameExpr::sigma()),
            GameExpr::pair(GameExpr::Unit, GameExpr::flat(&["0", "1"]).unwrap()),
        );
        assert_eq!(g.to_string(), "limp(bang(sigma),prod(I,flat{0,1}))");
    }

    #[test]
    fn powers_nest_as_documented() {
        let s = GameExpr::sigma();
        assert_eq!(GameExpr::tensor_power(&s, 3).to_string(), "tensor(sigma,tensor(sigma,sigma))");
        assert_eq!(GameExpr::tensor_power_left(&s, 3).to_string(), "tensor(tensor(sigma,sigma),sigma)");
        assert_eq!(GameExpr::seq_power(&s, 2).to_string(), "seq(sigma,sigma)");
    }
}
