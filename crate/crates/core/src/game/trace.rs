//! Trace files: one move per line, `O <move>` or `P <move>`, newline-terminated.

use super::{Move, Polarity, Position};
use crate::error::{GameError, Result};

pub fn write_trace(s: &[Move]) -> String {
    let mut out = String::new();
    for (i, m) in s.iter().enumerate() {
        out.push_str(&format!("{} {}\n", Polarity::to_move(i), m));
    }
    out
}

/// Parse a trace, checking that the polarity column alternates from O.
pub fn parse_trace(text: &str) -> Result<Position> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (pol, mv) = line.trim().split_once(' ').ok_or_else(|| {
            GameError::Construction(format!("trace line {}: expected `O <move>` or `P <move>`", lineno + 1))
        })?;
        let expected = Polarity::to_move(out.len()).to_string();
        if pol != expected {
            return Err(GameError::Construction(format!(
                "trace line {}: expected polarity {expected}, found `{pol}`",
                lineno + 1
            )));
        }
        out.push(Move::parse(mv)?);
    }
    Ok(out)
}
