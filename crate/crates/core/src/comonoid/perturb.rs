//! Deliberately wrong variants of a map into `!A`, used to show that the cofreeness
//! squares pin the promoted map down.

use crate::connectives::retag;
use crate::error::Result;
use crate::game::{GameExpr, Move, Tag};
use crate::strategy::Strategy;

fn copy_index(m: &Move, side: Tag) -> Option<u32> {
    match m.path.as_slice() {
        [s, Tag::C(n), ..] if *s == side => Some(*n),
        _ => None,
    }
}

/// Answers nothing.
pub fn undefined(sigma: &Strategy) -> Strategy {
    Strategy::undefined(sigma.host().clone()).renamed("undefined")
}

/// Plays like `σ` in copy 0 of the target and stops as soon as O opens another copy.
pub fn truncate_after_copy0(sigma: &Strategy) -> Strategy {
    retag(
        sigma,
        sigma.host().clone(),
        "truncate-after-copy-0",
        |m| match copy_index(m, Tag::R) {
            Some(n) if n > 0 => None,
            _ => Some(m.clone()),
        },
        |m| Some(m.clone()),
    )
}

/// Plays like `σ` but one copy further along in the source exponential.
pub fn shift_copies(sigma: &Strategy) -> Strategy {
    let shift = |m: &Move, delta: i64| -> Option<Move> {
        match copy_index(m, Tag::L) {
            Some(n) => {
                let k = u32::try_from(i64::from(n) + delta).ok()?;
                let mut path = m.path.clone();
                path[1] = Tag::C(k);
                Some(Move::new(path, m.base.clone()))
            }
            None => Some(m.clone()),
        }
    };
    retag(sigma, sigma.host().clone(), "shifted-copies", move |m| shift(m, -1), move |m| shift(m, 1))
}

/// Plays like `σ` but answers `to` instead of `from` in every copy after the first.
pub fn relabel_later_copies(sigma: &Strategy, from: &str, to: &str) -> Strategy {
    let (from, to) = (from.to_string(), to.to_string());
    retag(
        sigma,
        sigma.host().clone(),
        "wrong-constant-in-later-copies",
        |m| Some(m.clone()),
        move |m| match copy_index(m, Tag::R) {
            Some(n) if n > 0 && *m.base == *from => Some(Move::new(m.path.clone(), to.as_str())),
            _ => Some(m.clone()),
        },
    )
}

/// Answers every question in every copy of the target immediately with `answer`.
pub fn eager_constant(host: &GameExpr, answer: &str) -> Result<Strategy> {
    host.as_limp()?;
    let answer = answer.to_string();
    Ok(Strategy::from_fn(host.clone(), "eager-constant", move |_, o| {
        Ok(match o.path.as_slice() {
            [Tag::R, Tag::C(_), ..] if &*o.base == crate::game::QUESTION => {
                Some(Move::new(o.path.clone(), answer.as_str()))
            }
            _ => None,
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectives::copycat;

    fn mv(t: &str) -> Move {
        Move::parse(t).unwrap()
    }

    #[test]
    fn wrappers_change_the_expected_moves() {
        let id = copycat(&GameExpr::bang(GameExpr::sigma()));
        let t = truncate_after_copy0(&id);
        assert_eq!(t.respond(&[mv("r.c:0.q")]).unwrap(), Some(mv("l.c:0.q")));
        let s = shift_copies(&id);
        assert_eq!(s.respond(&[mv("r.c:0.q")]).unwrap(), Some(mv("l.c:1.q")));
        assert_eq!(s.respond(&[mv("r.c:0.q"), mv("l.c:1.q"), mv("l.c:1.*")]).unwrap(), Some(mv("r.c:0.*")));
        let e = eager_constant(id.host(), "*").unwrap();
        assert_eq!(e.respond(&[mv("r.c:0.q")]).unwrap(), Some(mv("r.c:0.*")));
    }
}
