//! Concrete syntax for games.
//!
//! ```text
//! expr := "I" | "sigma" | "flat{" name ("," name)* "}" | "prod(" expr ("," expr)+ ")"
//!       | "tensor(" expr "," expr ")" | "seq(" expr "," expr ")"
//!       | "limp(" expr "," expr ")" | "bang(" expr ")"
//! ```

use super::GameExpr;
use crate::error::{GameError, Result};

/// Parse a game expression; errors carry 1-based line and column.
pub fn parse_dsl(text: &str) -> Result<GameExpr> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn location(&self) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..self.pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error(&self, message: &str) -> GameError {
        let (line, column) = self.location();
        let found = match self.chars.get(self.pos) {
            Some(c) => format!("`{c}`"),
            None => "end of input".to_string(),
        };
        GameError::Syntax { line, column, message: format!("{message}, found {found}") }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn name(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn peek_is(&mut self, c: char) -> bool {
        self.skip_ws();
        self.chars.get(self.pos) == Some(&c)
    }

    fn expr(&mut self) -> Result<GameExpr> {
        self.skip_ws();
        let start = self.pos;
        let Some(word) = self.name() else {
            return Err(self.error("expected a game expression"));
        };
        match word.as_str() {
            "I" => Ok(GameExpr::Unit),
            "sigma" => Ok(GameExpr::sigma()),
            "flat" => {
                self.expect('{')?;
                let mut values = Vec::new();
                loop {
                    let Some(v) = self.name() else {
                        return Err(self.error("expected a value name"));
                    };
                    values.push(v);
                    if self.peek_is(',') {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let before_close = self.pos;
                self.expect('}')?;
                GameExpr::flat(&values).map_err(|e| {
                    self.pos = before_close;
                    self.error(&e.to_string())
                })
            }
            "prod" => {
                self.expect('(')?;
                let mut factors = vec![self.expr()?];
                while self.peek_is(',') {
                    self.pos += 1;
                    factors.push(self.expr()?);
                }
                self.expect(')')?;
                GameExpr::prod(factors)
            }
            "tensor" | "seq" | "limp" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(')')?;
                Ok(match word.as_str() {
                    "tensor" => GameExpr::tensor(a, b),
                    "seq" => GameExpr::seq(a, b),
                    _ => GameExpr::limp(a, b),
                })
            }
            "bang" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(')')?;
                Ok(GameExpr::bang(a))
            }
            _ => {
                self.pos = start;
                Err(self.error(&format!("unknown game constructor `{word}`")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        assert_eq!(parse_dsl("seq(sigma, sigma)").unwrap(), GameExpr::seq(GameExpr::sigma(), GameExpr::sigma()));
        assert_eq!(
            parse_dsl("bang(prod(sigma,sigma))").unwrap(),
            GameExpr::bang(GameExpr::pair(GameExpr::sigma(), GameExpr::sigma()))
        );
        assert_eq!(parse_dsl(" flat{ 0 , 1 } ").unwrap(), GameExpr::flat(&["0", "1"]).unwrap());
    }

    #[test]
    fn reports_line_and_column() {
        match parse_dsl("seq(sigma") {
            Err(GameError::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 10)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_dsl("tensor(sigma,\n  bogus)") {
            Err(GameError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_dsl("flat{}").is_err());
        assert!(parse_dsl("sigma sigma").is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["I", "sigma", "flat{0,1,2}", "prod(sigma,I)", "limp(bang(sigma),seq(sigma,tensor(I,sigma)))"] {
            assert_eq!(parse_dsl(text).unwrap().to_string(), text);
        }
    }
}
