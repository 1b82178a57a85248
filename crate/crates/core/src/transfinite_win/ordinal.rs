//! Ordinals below ω^ω in Cantor normal form.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{GameError, Result};

/// `ω^e₁·c₁ + … + ω^e_k·c_k` with `e₁ > … > e_k` and every `cᵢ ≥ 1`. The empty sum is 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(u32, u64)>,
}

impl Ordinal {
    pub fn zero() -> Ordinal {
        Ordinal::default()
    }

    pub fn nat(n: u64) -> Ordinal {
        Ordinal::from_terms(vec![(0, n)])
    }

    pub fn omega() -> Ordinal {
        Ordinal::from_terms(vec![(1, 1)])
    }

    /// `ω^e·c`.
    pub fn monomial(e: u32, c: u64) -> Ordinal {
        Ordinal::from_terms(vec![(e, c)])
    }

    /// Normalises: drops zero coefficients and merges equal exponents after sorting.
    pub fn from_terms(mut terms: Vec<(u32, u64)>) -> Ordinal {
        terms.retain(|&(_, c)| c > 0);
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut out: Vec<(u32, u64)> = Vec::new();
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        Ordinal { terms: out }
    }

    pub fn terms(&self) -> &[(u32, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The finite part, i.e. the coefficient of `ω⁰`.
    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some(&(0, c)) => c,
            _ => 0,
        }
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(0, c)] => Some(*c),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && self.finite_part() == 0
    }

    pub fn is_successor(&self) -> bool {
        self.finite_part() > 0
    }

    /// `β` with `self = β + 1`.
    pub fn predecessor(&self) -> Option<Ordinal> {
        self.is_successor().then(|| {
            let mut t = self.terms.clone();
            let last = t.last_mut().expect("successor has a finite term");
            last.1 -= 1;
            Ordinal::from_terms(t)
        })
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::nat(1))
    }

    /// The greatest limit (or zero) not above `self`: drop the finite part.
    pub fn limit_part(&self) -> Ordinal {
        Ordinal::from_terms(self.terms.iter().copied().filter(|&(e, _)| e > 0).collect())
    }

    /// The least limit ordinal strictly above `self`.
    pub fn next_limit(&self) -> Ordinal {
        self.limit_part().add(&Ordinal::omega())
    }

    /// Ordinal sum; terms of `self` below the leading exponent of `other` are absorbed.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some(&(e, _)) = other.terms.first() else { return self.clone() };
        let mut t: Vec<(u32, u64)> = self.terms.iter().copied().filter(|&(f, _)| f >= e).collect();
        match (t.last_mut(), other.terms.first()) {
            (Some((f, c)), Some(&(e2, c2))) if *f == e2 => {
                *c += c2;
                t.extend(other.terms.iter().skip(1).copied());
            }
            _ => t.extend(other.terms.iter().copied()),
        }
        Ordinal { terms: t }
    }

    /// Hessenberg natural sum: add coefficients exponent by exponent.
    pub fn natural_add(&self, other: &Ordinal) -> Ordinal {
        Ordinal::from_terms(self.terms.iter().chain(other.terms.iter()).copied().collect())
    }

    /// Additively indecomposable: exactly `ω^e` for some `e` (including `1 = ω⁰`).
    pub fn is_indecomposable(&self) -> bool {
        matches!(self.terms.as_slice(), [(_, 1)])
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Ordinal) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let c = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Ordinal) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(e, c)| {
                let base = match e {
                    0 => return c.to_string(),
                    1 => "w".to_string(),
                    _ => format!("w^{e}"),
                };
                if c == 1 {
                    base
                } else {
                    format!("{base}*{c}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for Ordinal {
    type Err = GameError;

    /// `ord := term ("+" term)*`, `term := nat | "w" ["^" nat] ["*" nat]`; `ω` is accepted for `w`.
    fn from_str(text: &str) -> Result<Ordinal> {
        let bad = |m: String| GameError::Construction(format!("bad ordinal `{text}`: {m}"));
        let mut sum = Ordinal::zero();
        for raw in text.split('+') {
            let term = raw.trim().replace('ω', "w");
            if term.is_empty() {
                return Err(bad("empty term".into()));
            }
            let next = if let Some(rest) = term.strip_prefix('w') {
                let (exp, coeff) = match rest.split_once('*') {
                    Some((e, c)) => (e, Some(c)),
                    None => (rest, None),
                };
                let e = match exp.strip_prefix('^') {
                    Some(n) => n.trim().parse::<u32>().map_err(|_| bad(format!("bad exponent in `{term}`")))?,
                    None if exp.is_empty() => 1,
                    None => return Err(bad(format!("unexpected `{exp}`"))),
                };
                let c = match coeff {
                    Some(c) => c.trim().parse::<u64>().map_err(|_| bad(format!("bad coefficient in `{term}`")))?,
                    None => 1,
                };
                Ordinal::monomial(e, c)
            } else {
                Ordinal::nat(term.parse::<u64>().map_err(|_| bad(format!("`{term}` is not a term")))?)
            };
            sum = sum.add(&next);
        }
        Ok(sum)
    }
}
