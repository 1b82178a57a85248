//! Finite sets and relations, the functor `F(A,S) = (A⊗S)⊕I`, its final coalgebra on
//! words, and the cofree comonoid on `A*`, all truncated at a word-length bound.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{GameError, Result};

/// An element of a finite set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Star,
    Name(String),
    Word(Vec<Atom>),
    Pair(Box<Atom>, Box<Atom>),
    Tagged(String, Box<Atom>),
}

impl Atom {
    pub fn name(s: &str) -> Atom {
        Atom::Name(s.to_string())
    }

    pub fn pair(a: Atom, b: Atom) -> Atom {
        Atom::Pair(Box::new(a), Box::new(b))
    }

    pub fn tagged(tag: &str, a: Atom) -> Atom {
        Atom::Tagged(tag.to_string(), Box::new(a))
    }

    pub fn inl(a: Atom) -> Atom {
        Atom::tagged("inl", a)
    }

    pub fn inr(a: Atom) -> Atom {
        Atom::tagged("inr", a)
    }

    /// The empty word `ε`.
    pub fn epsilon() -> Atom {
        Atom::Word(Vec::new())
    }

    pub fn word_len(&self) -> Option<usize> {
        match self {
            Atom::Word(w) => Some(w.len()),
            _ => None,
        }
    }

    pub fn parse(text: &str) -> Result<Atom> {
        let mut p = AtomParser { chars: text.char_indices().peekable(), text };
        let a = p.atom()?;
        p.skip_ws();
        match p.chars.peek() {
            None => Ok(a),
            Some(&(i, c)) => Err(p.error(i, format!("unexpected `{c}`"))),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Star => write!(f, "*"),
            Atom::Name(n) => write!(f, "{n}"),
            Atom::Word(w) if w.is_empty() => write!(f, "ε"),
            Atom::Word(w) => {
                let letters: Vec<String> = w.iter().map(|a| a.to_string()).collect();
                write!(f, "\"{}\"", letters.join("."))
            }
            Atom::Pair(a, b) => write!(f, "({a},{b})"),
            Atom::Tagged(t, a) => write!(f, "{t}({a})"),
        }
    }
}

struct AtomParser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
}

impl AtomParser<'_> {
    fn error(&self, at: usize, message: String) -> GameError {
        let column = self.text[..at].chars().count() + 1;
        GameError::Syntax { line: 1, column, message }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.chars.next() {
            Some((_, c)) if c == want => Ok(()),
            Some((i, c)) => Err(self.error(i, format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error(self.text.len(), format!("expected `{want}`"))),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        self.skip_ws();
        let Some(&(i, c)) = self.chars.peek() else {
            return Err(self.error(self.text.len(), "expected an atom".into()));
        };
        match c {
            '*' => {
                self.chars.next();
                Ok(Atom::Star)
            }
            'ε' => {
                self.chars.next();
                Ok(Atom::epsilon())
            }
            '(' => {
                self.chars.next();
                let a = self.atom()?;
                self.expect(',')?;
                let b = self.atom()?;
                self.expect(')')?;
                Ok(Atom::pair(a, b))
            }
            '"' => {
                self.chars.next();
                let mut letters = vec![self.atom()?];
                loop {
                    self.skip_ws();
                    match self.chars.next() {
                        Some((_, '.')) => letters.push(self.atom()?),
                        Some((_, '"')) => return Ok(Atom::Word(letters)),
                        Some((j, c)) => return Err(self.error(j, format!("unexpected `{c}` in word"))),
                        None => return Err(self.error(self.text.len(), "unterminated word".into())),
                    }
                }
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, c)) = self.chars.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        name.push(c);
                        self.chars.next();
                    } else {
                        break;
                    }
                }
                if matches!(self.chars.peek(), Some((_, '('))) {
                    self.chars.next();
                    let a = self.atom()?;
                    self.expect(')')?;
                    Ok(Atom::Tagged(name, Box::new(a)))
                } else {
                    Ok(Atom::Name(name))
                }
            }
            c => Err(self.error(i, format!("unexpected `{c}`"))),
        }
    }
}

/// A finite set of atoms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct FinSet(BTreeSet<Atom>);

impl FinSet {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Result<FinSet> {
        let mut set = BTreeSet::new();
        for a in atoms {
            if !set.insert(a.clone()) {
                return Err(GameError::Construction(format!("duplicate atom `{a}`")));
            }
        }
        Ok(FinSet(set))
    }

    pub fn names(names: &[&str]) -> Result<FinSet> {
        FinSet::new(names.iter().map(|n| Atom::name(n)))
    }

    /// The unit `I = {*}`.
    pub fn unit() -> FinSet {
        FinSet(BTreeSet::from([Atom::Star]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.0.contains(a)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> {
        self.0.iter()
    }

    /// `A ⊗ B`, the Cartesian product.
    pub fn product(a: &FinSet, b: &FinSet) -> FinSet {
        FinSet(a.iter().flat_map(|x| b.iter().map(move |y| Atom::pair(x.clone(), y.clone()))).collect())
    }

    /// `A ⊕ B` with the given injection tags.
    pub fn sum_tagged(a: &FinSet, b: &FinSet, left: &str, right: &str) -> FinSet {
        FinSet(
            a.iter()
                .map(|x| Atom::tagged(left, x.clone()))
                .chain(b.iter().map(|y| Atom::tagged(right, y.clone())))
                .collect(),
        )
    }

    pub fn sum(a: &FinSet, b: &FinSet) -> FinSet {
        FinSet::sum_tagged(a, b, "inl", "inr")
    }

    /// Words over `A` of length at most `l`.
    pub fn words(a: &FinSet, l: usize) -> FinSet {
        let mut out = BTreeSet::from([Atom::epsilon()]);
        let mut layer = vec![Vec::new()];
        for _ in 0..l {
            layer = layer
                .iter()
                .flat_map(|w: &Vec<Atom>| {
                    a.iter().map(move |x| {
                        let mut v = w.clone();
                        v.push(x.clone());
                        v
                    })
                })
                .collect();
            out.extend(layer.iter().cloned().map(Atom::Word));
        }
        FinSet(out)
    }

    pub fn to_text(&self) -> String {
        self.iter().map(|a| format!("{a}\n")).collect()
    }
}

/// A relation between finite sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub source: FinSet,
    pub target: FinSet,
    pairs: BTreeSet<(Atom, Atom)>,
}

impl Relation {
    pub fn new(source: FinSet, target: FinSet, pairs: impl IntoIterator<Item = (Atom, Atom)>) -> Result<Relation> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        for (a, b) in &pairs {
            if !source.contains(a) {
                return Err(GameError::Construction(format!("`{a}` is not in the source")));
            }
            if !target.contains(b) {
                return Err(GameError::Construction(format!("`{b}` is not in the target")));
            }
        }
        Ok(Relation { source, target, pairs })
    }

    /// Build from pairs, keeping only those inside `source × target`.
    fn restricted(source: FinSet, target: FinSet, pairs: impl IntoIterator<Item = (Atom, Atom)>) -> Relation {
        let pairs = pairs.into_iter().filter(|(a, b)| source.contains(a) && target.contains(b)).collect();
        Relation { source, target, pairs }
    }

    pub fn identity(a: &FinSet) -> Relation {
        Relation { source: a.clone(), target: a.clone(), pairs: a.iter().map(|x| (x.clone(), x.clone())).collect() }
    }

    pub fn pairs(&self) -> &BTreeSet<(Atom, Atom)> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: &Atom, b: &Atom) -> bool {
        self.pairs.contains(&(a.clone(), b.clone()))
    }

    fn image(&self) -> BTreeMap<&Atom, Vec<&Atom>> {
        let mut m: BTreeMap<&Atom, Vec<&Atom>> = BTreeMap::new();
        for (a, b) in &self.pairs {
            m.entry(a).or_default().push(b);
        }
        m
    }

    /// Same pairs, viewed in a new target containing all of them.
    pub fn with_target(&self, target: &FinSet) -> Result<Relation> {
        Relation::new(self.source.clone(), target.clone(), self.pairs.iter().cloned())
    }

    /// Drop the pairs whose second component lies outside `target`.
    pub fn restrict_target(&self, target: &FinSet) -> Relation {
        Relation::restricted(self.source.clone(), target.clone(), self.pairs.iter().cloned())
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        if self.source != other.source || self.target != other.target {
            return Err(GameError::Composition("union of relations with different types".into()));
        }
        Ok(Relation {
            source: self.source.clone(),
            target: self.target.clone(),
            pairs: self.pairs.union(&other.pairs).cloned().collect(),
        })
    }

    pub fn to_text(&self) -> String {
        self.pairs.iter().map(|(a, b)| format!("{a} -> {b}\n")).collect()
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// `r ; s`: first `r`, then `s`.
pub fn rel_compose(r: &Relation, s: &Relation) -> Result<Relation> {
    if r.target != s.source {
        return Err(GameError::Composition("target of the first relation is not the source of the second".into()));
    }
    let next = s.image();
    let pairs = r
        .pairs
        .iter()
        .flat_map(|(a, b)| next.get(b).into_iter().flatten().map(move |c| (a.clone(), (*c).clone())))
        .collect();
    Ok(Relation { source: r.source.clone(), target: s.target.clone(), pairs })
}

/// `r ⊗ s`.
pub fn rel_tensor(r: &Relation, s: &Relation) -> Relation {
    let pairs = r
        .pairs
        .iter()
        .flat_map(|(a, b)| {
            s.pairs.iter().map(move |(c, d)| (Atom::pair(a.clone(), c.clone()), Atom::pair(b.clone(), d.clone())))
        })
        .collect();
    Relation { source: FinSet::product(&r.source, &s.source), target: FinSet::product(&r.target, &s.target), pairs }
}

fn rel_from_fn(source: &FinSet, target: &FinSet, f: impl Fn(&Atom) -> Option<Atom>) -> Relation {
    Relation::restricted(source.clone(), target.clone(), source.iter().filter_map(|a| f(a).map(|b| (a.clone(), b))))
}

fn split_pair(a: &Atom) -> Option<(&Atom, &Atom)> {
    match a {
        Atom::Pair(x, y) => Some((x, y)),
        _ => None,
    }
}

pub fn rel_sym(a: &FinSet, b: &FinSet) -> Relation {
    rel_from_fn(&FinSet::product(a, b), &FinSet::product(b, a), |p| {
        split_pair(p).map(|(x, y)| Atom::pair(y.clone(), x.clone()))
    })
}

/// `(A⊗B)⊗C → A⊗(B⊗C)`.
pub fn rel_assoc(a: &FinSet, b: &FinSet, c: &FinSet) -> Relation {
    let src = FinSet::product(&FinSet::product(a, b), c);
    let tgt = FinSet::product(a, &FinSet::product(b, c));
    rel_from_fn(&src, &tgt, |p| {
        let (xy, z) = split_pair(p)?;
        let (x, y) = split_pair(xy)?;
        Some(Atom::pair(x.clone(), Atom::pair(y.clone(), z.clone())))
    })
}

/// `I⊗A → A`.
pub fn rel_lunit(a: &FinSet) -> Relation {
    rel_from_fn(&FinSet::product(&FinSet::unit(), a), a, |p| split_pair(p).map(|(_, x)| x.clone()))
}

/// `A⊗I → A`.
pub fn rel_runit(a: &FinSet) -> Relation {
    rel_from_fn(&FinSet::product(a, &FinSet::unit()), a, |p| split_pair(p).map(|(x, _)| x.clone()))
}

/// `F(A,S) = (A⊗S) ⊕ I`.
pub fn f_on_object(a: &FinSet, s: &FinSet) -> FinSet {
    FinSet::sum(&FinSet::product(a, s), &FinSet::unit())
}

/// `F(A,g) : F(A,S) → F(A,T)`.
pub fn f_on_morphism(a: &FinSet, g: &Relation) -> Relation {
    let src = f_on_object(a, &g.source);
    let tgt = f_on_object(a, &g.target);
    let next = g.image();
    let mut pairs = vec![(Atom::inr(Atom::Star), Atom::inr(Atom::Star))];
    for x in a.iter() {
        for (s, ts) in &next {
            for t in ts {
                pairs.push((
                    Atom::inl(Atom::pair(x.clone(), (*s).clone())),
                    Atom::inl(Atom::pair(x.clone(), (*t).clone())),
                ));
            }
        }
    }
    Relation::restricted(src, tgt, pairs)
}

/// `α : A*≤L → F(A, A*≤L−1)`, `ε ↦ inr(*)`, `aw ↦ inl(a,w)`.
pub fn alpha_star(a: &FinSet, l: usize) -> Result<Relation> {
    if l == 0 {
        return Err(GameError::Construction("word bound must be at least 1".into()));
    }
    let words = FinSet::words(a, l);
    let tgt = f_on_object(a, &FinSet::words(a, l - 1));
    Ok(rel_from_fn(&words, &tgt, |w| match w {
        Atom::Word(v) if v.is_empty() => Some(Atom::inr(Atom::Star)),
        Atom::Word(v) => Some(Atom::inl(Atom::pair(v[0].clone(), Atom::Word(v[1..].to_vec())))),
        _ => None,
    }))
}

fn check_coalgebra(a: &FinSet, f: &Relation) -> Result<()> {
    if f.target != f_on_object(a, &f.source) {
        return Err(GameError::Type("coalgebra must have type S → F(A,S)".into()));
    }
    Ok(())
}

/// The anamorphism `S → A*≤L` of a coalgebra `f : S → F(A,S)`: `(s, a₁…a_k)` for every
/// trace `s →f inl(a₁,s₁) →f … s_k →f inr(*)` with `k ≤ L`.
pub fn ana_rel(a: &FinSet, f: &Relation, l: usize) -> Result<Relation> {
    check_coalgebra(a, f)?;
    let stops: BTreeSet<&Atom> = f.pairs.iter().filter(|(_, x)| *x == Atom::inr(Atom::Star)).map(|(s, _)| s).collect();
    let steps: Vec<(&Atom, &Atom, &Atom)> = f
        .pairs
        .iter()
        .filter_map(|(s, x)| match x {
            Atom::Tagged(t, p) if t == "inl" => split_pair(p).map(|(letter, s1)| (s, letter, s1)),
            _ => None,
        })
        .collect();
    // words[s] grows one letter per round.
    let mut words: BTreeMap<&Atom, BTreeSet<Vec<Atom>>> = f
        .source
        .iter()
        .map(|s| (s, if stops.contains(s) { BTreeSet::from([Vec::new()]) } else { BTreeSet::new() }))
        .collect();
    for _ in 0..l {
        let mut next = words.clone();
        for (s, letter, s1) in &steps {
            let tails: Vec<Vec<Atom>> = words[s1].iter().filter(|w| w.len() < l).cloned().collect();
            let set = next.get_mut(s).expect("every state has an entry");
            for w in tails {
                let mut v = vec![(*letter).clone()];
                v.extend(w);
                set.insert(v);
            }
        }
        words = next;
    }
    Ok(Relation::restricted(
        f.source.clone(),
        FinSet::words(a, l),
        words.into_iter().flat_map(|(s, ws)| ws.into_iter().map(move |w| (s.clone(), Atom::Word(w)))),
    ))
}

/// Does `h : S → A*≤L` make the coalgebra square commute on the truncated fragment?
pub fn is_coalgebra_morphism(a: &FinSet, f: &Relation, h: &Relation, l: usize) -> Result<bool> {
    let lhs = rel_compose(h, &alpha_star(a, l)?)?;
    let rhs = rel_compose(f, &f_on_morphism(a, h))?.restrict_target(&lhs.target);
    Ok(lhs.pairs == rhs.pairs)
}

/// `f̃ = f;inl ∪ {(s, inr(*))}` for a state transformer `f : S → A⊗S`.
pub fn encapsulate(a: &FinSet, f: &Relation) -> Result<Relation> {
    if f.target != FinSet::product(a, &f.source) {
        return Err(GameError::Type("state transformer must have type S → A⊗S".into()));
    }
    let pairs = f
        .pairs
        .iter()
        .map(|(s, x)| (s.clone(), Atom::inl(x.clone())))
        .chain(f.source.iter().map(|s| (s.clone(), Atom::inr(Atom::Star))));
    Relation::new(f.source.clone(), f_on_object(a, &f.source), pairs)
}

/// The method set `V ⊕ V` of a cell, tagged `read` and `write`.
pub fn cell_methods(v: &FinSet) -> FinSet {
    FinSet::sum_tagged(v, v, "read", "write")
}

/// `{(i, (read(i), i))} ∪ {(i, (write(j), j))} : V → (V⊕V)⊗V`.
pub fn cell_rel(v: &FinSet) -> Result<Relation> {
    if v.is_empty() {
        return Err(GameError::Construction("cell needs at least one value".into()));
    }
    let tgt = FinSet::product(&cell_methods(v), v);
    let reads = v.iter().map(|i| (i.clone(), Atom::pair(Atom::tagged("read", i.clone()), i.clone())));
    let writes = v
        .iter()
        .flat_map(|i| v.iter().map(move |j| (i.clone(), Atom::pair(Atom::tagged("write", j.clone()), j.clone()))));
    Relation::new(v.clone(), tgt, reads.chain(writes))
}

/// A (not necessarily commutative) comonoid on a finite set.
#[derive(Debug, Clone)]
pub struct RelComonoid {
    pub carrier: FinSet,
    pub delta: Relation,
    pub eps: Relation,
}

impl RelComonoid {
    /// `(A*≤L, δ, ε)` together with `η : A*≤L → A`.
    pub fn words(a: &FinSet, l: usize) -> (RelComonoid, Relation) {
        let (delta, eps, eta) = comonoid_parts(a, l);
        (RelComonoid { carrier: FinSet::words(a, l), delta, eps }, eta)
    }

    pub fn trivial() -> RelComonoid {
        let i = FinSet::unit();
        RelComonoid {
            delta: rel_from_fn(&i, &FinSet::product(&i, &i), |_| Some(Atom::pair(Atom::Star, Atom::Star))),
            eps: Relation::identity(&i),
            carrier: i,
        }
    }

    /// The first failing law, if any.
    pub fn law_violation(&self) -> Result<Option<&'static str>> {
        let b = &self.carrier;
        let i = FinSet::unit();
        let id = Relation::identity(b);
        let bb = FinSet::product(b, b);
        let delta = self.delta.with_target(&bb)?;
        let eps = self.eps.with_target(&i)?;
        let left = rel_compose(&rel_compose(&delta, &rel_tensor(&delta, &id))?, &rel_assoc(b, b, b))?;
        let right = rel_compose(&delta, &rel_tensor(&id, &delta))?;
        if left.pairs != right.pairs {
            return Ok(Some("coassociativity"));
        }
        let lu = rel_compose(&rel_compose(&delta, &rel_tensor(&eps, &id))?, &rel_lunit(b))?;
        if lu.pairs != id.pairs {
            return Ok(Some("left counit"));
        }
        let ru = rel_compose(&rel_compose(&delta, &rel_tensor(&id, &eps))?, &rel_runit(b))?;
        if ru.pairs != id.pairs {
            return Ok(Some("right counit"));
        }
        Ok(None)
    }

    pub fn is_commutative(&self) -> Result<bool> {
        let delta = self.delta.with_target(&FinSet::product(&self.carrier, &self.carrier))?;
        let swapped = rel_compose(&delta, &rel_sym(&self.carrier, &self.carrier))?;
        Ok(swapped.pairs == delta.pairs)
    }
}

/// `δ = {(u·v, (u,v))}`, `ε = {(ε, *)}`, `η = {(a, a)}` on words of length at most `l`.
pub fn comonoid_parts(a: &FinSet, l: usize) -> (Relation, Relation, Relation) {
    let words = FinSet::words(a, l);
    let pairs_tgt = FinSet::product(&words, &words);
    let mut split = Vec::new();
    for w in words.iter() {
        let Atom::Word(v) = w else { continue };
        for k in 0..=v.len() {
            split.push((w.clone(), Atom::pair(Atom::Word(v[..k].to_vec()), Atom::Word(v[k..].to_vec()))));
        }
    }
    let delta = Relation::restricted(words.clone(), pairs_tgt, split);
    let eps = Relation::restricted(words.clone(), FinSet::unit(), [(Atom::epsilon(), Atom::Star)]);
    let eta =
        Relation::restricted(words.clone(), a.clone(), a.iter().map(|x| (Atom::Word(vec![x.clone()]), x.clone())));
    (delta, eps, eta)
}

/// The lifting `f† : B → A*≤L` of `f : B → A` along a comonoid on `B`:
/// `f†(b) ∋ ε` iff `ε_B(b)`, and `f†(b) ∋ a·w` iff `δ_B(b) ∋ (b₁,b₂)`, `f(b₁) ∋ a`, `f†(b₂) ∋ w`.
pub fn lift(a: &FinSet, b: &RelComonoid, f: &Relation, l: usize) -> Relation {
    let splits = b.delta.image();
    let fimg = f.image();
    let mut words: BTreeMap<&Atom, BTreeSet<Vec<Atom>>> = b
        .carrier
        .iter()
        .map(|x| (x, if b.eps.contains(x, &Atom::Star) { BTreeSet::from([Vec::new()]) } else { BTreeSet::new() }))
        .collect();
    for _ in 0..l {
        let mut next = words.clone();
        for (x, targets) in &splits {
            for p in targets {
                let Some((b1, b2)) = split_pair(p) else { continue };
                for letter in fimg.get(b1).into_iter().flatten() {
                    for w in words.get(b2).into_iter().flatten().filter(|w| w.len() < l) {
                        let mut v = vec![(*letter).clone()];
                        v.extend(w.iter().cloned());
                        next.get_mut(x).expect("carrier element").insert(v);
                    }
                }
            }
        }
        words = next;
    }
    Relation::restricted(
        b.carrier.clone(),
        FinSet::words(a, l),
        words.into_iter().flat_map(|(x, ws)| ws.into_iter().map(move |w| (x.clone(), Atom::Word(w)))),
    )
}

/// Whether `g : B → A*≤L` is a comonoid morphism over `f` on the truncated fragment.
fn is_lifting(a: &FinSet, b: &RelComonoid, f: &Relation, g: &Relation, l: usize) -> Result<bool> {
    let (words, eta) = RelComonoid::words(a, l);
    let over_f = rel_compose(g, &eta)?;
    if over_f.pairs != f.pairs {
        return Ok(false);
    }
    let counit = rel_compose(g, &words.eps)?;
    if counit.pairs != b.eps.pairs {
        return Ok(false);
    }
    let lhs = rel_compose(g, &words.delta)?;
    let bb = FinSet::product(&b.carrier, &b.carrier);
    let rhs = rel_compose(&b.delta.with_target(&bb)?, &rel_tensor(g, g))?;
    let fits =
        |p: &Atom| matches!(split_pair(p), Some((u, v)) if u.word_len().unwrap_or(0) + v.word_len().unwrap_or(0) <= l);
    let rhs: BTreeSet<_> = rhs.pairs.into_iter().filter(|(_, p)| fits(p)).collect();
    Ok(lhs.pairs == rhs)
}

/// Largest relation space searched exhaustively (as a number of candidate pairs).
pub const EXHAUSTIVE_PAIRS: usize = 16;

fn all_relations(source: &FinSet, target: &FinSet) -> Option<Vec<Relation>> {
    let cells: Vec<(Atom, Atom)> =
        source.iter().flat_map(|s| target.iter().map(move |t| (s.clone(), t.clone()))).collect();
    if cells.len() > EXHAUSTIVE_PAIRS {
        return None;
    }
    Some(
        (0u32..1 << cells.len())
            .map(|mask| {
                let pairs = cells.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, c)| c.clone());
                Relation::restricted(source.clone(), target.clone(), pairs)
            })
            .collect(),
    )
}

/// Outcome of [`check_universal_property`].
#[derive(Debug, Clone)]
pub struct UniversalReport {
    pub lifting: Relation,
    pub lifting_is_morphism: bool,
    /// Number of liftings found by exhaustive search, when the space was small enough.
    pub solutions: Option<usize>,
}

impl UniversalReport {
    pub fn holds(&self) -> bool {
        self.lifting_is_morphism && self.solutions.is_none_or(|n| n == 1)
    }
}

/// Cofreeness of `(A*, δ, ε)` at `f : B → A`, on words of length at most `l`.
pub fn check_universal_property(a: &FinSet, b: &RelComonoid, f: &Relation, l: usize) -> Result<UniversalReport> {
    if let Some(law) = b.law_violation()? {
        return Err(GameError::Precondition(format!("B is not a comonoid: {law} fails")));
    }
    if f.source != b.carrier || f.target != *a {
        return Err(GameError::Type("f must have type B → A".into()));
    }
    let lifting = lift(a, b, f, l);
    let lifting_is_morphism = is_lifting(a, b, f, &lifting, l)?;
    let solutions = match all_relations(&b.carrier, &FinSet::words(a, l)) {
        Some(cands) => {
            let mut n = 0;
            for g in cands {
                if is_lifting(a, b, f, &g, l)? {
                    n += 1;
                }
            }
            Some(n)
        }
        None => None,
    };
    Ok(UniversalReport { lifting, lifting_is_morphism, solutions })
}

/// Outcome of [`finality_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinalityReport {
    pub coalgebras: usize,
    pub candidates: usize,
    /// Coalgebras whose morphism into `A*≤L` is missing, not unique, or not the anamorphism.
    pub failures: Vec<String>,
}

/// For every coalgebra on `S` and every graded relation `S → A*≤L`, count coalgebra morphisms.
pub fn finality_search(a: &FinSet, s: &FinSet, l: usize) -> Result<FinalityReport> {
    let fs = all_relations(s, &f_on_object(a, s))
        .ok_or_else(|| GameError::Resource("coalgebra space too large for exhaustive search".into()))?;
    let hs = all_relations(s, &FinSet::words(a, l))
        .ok_or_else(|| GameError::Resource("morphism space too large for exhaustive search".into()))?;
    let mut failures = Vec::new();
    for f in &fs {
        let ana = ana_rel(a, f, l)?;
        let mut found = Vec::new();
        for h in &hs {
            if is_coalgebra_morphism(a, f, h, l)? {
                found.push(h);
            }
        }
        if found.len() != 1 || found[0].pairs != ana.pairs {
            failures.push(format!(
                "coalgebra {{{}}}: {} morphisms",
                f.to_text().trim_end().replace('\n', "; "),
                found.len()
            ));
        }
    }
    Ok(FinalityReport { coalgebras: fs.len(), candidates: fs.len() * hs.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Atom {
        Atom::Word(s.chars().map(|c| Atom::name(&c.to_string())).collect())
    }

    #[test]
    fn atoms_print_and_parse() {
        let a = Atom::inl(Atom::pair(Atom::name("a"), word("ab")));
        assert_eq!(a.to_string(), "inl((a,\"a.b\"))");
        assert_eq!(Atom::parse(&a.to_string()).unwrap(), a);
        assert_eq!(Atom::parse("ε").unwrap(), Atom::epsilon());
        assert!(matches!(Atom::parse("(a,"), Err(GameError::Syntax { column: 4, .. })));
    }

    #[test]
    fn composition_basics() {
        let x = FinSet::names(&["x", "y"]).unwrap();
        let r = Relation::new(x.clone(), x.clone(), [(Atom::name("x"), Atom::name("y"))]).unwrap();
        assert_eq!(rel_compose(&Relation::identity(&x), &r).unwrap(), r);
        assert!(rel_compose(&r, &r).unwrap().is_empty());
        let other = FinSet::names(&["z"]).unwrap();
        assert!(rel_compose(&r, &Relation::identity(&other)).is_err());
    }

    #[test]
    fn functor_object_sizes() {
        let empty = FinSet::default();
        assert_eq!(f_on_object(&empty, &empty).len(), 1);
        let a = FinSet::names(&["a", "b"]).unwrap();
        let s = FinSet::names(&["s", "t", "u"]).unwrap();
        assert_eq!(f_on_object(&a, &s).len(), 7);
    }

    #[test]
    fn alpha_pairs() {
        let a = FinSet::names(&["a", "b"]).unwrap();
        let al = alpha_star(&a, 3).unwrap();
        assert_eq!(al.len(), 15);
        assert!(al.contains(&Atom::epsilon(), &Atom::inr(Atom::Star)));
        assert!(al.contains(&word("ab"), &Atom::inl(Atom::pair(Atom::name("a"), word("b")))));
    }

    #[test]
    fn terminating_coalgebra_unfolds_to_empty_word() {
        let a = FinSet::names(&["a"]).unwrap();
        let s = FinSet::names(&["s"]).unwrap();
        let f = Relation::new(s.clone(), f_on_object(&a, &s), [(Atom::name("s"), Atom::inr(Atom::Star))]).unwrap();
        let h = ana_rel(&a, &f, 3).unwrap();
        assert_eq!(h.to_text(), "s -> ε\n");
        assert!(is_coalgebra_morphism(&a, &f, &h, 3).unwrap());
    }

    #[test]
    fn cell_unfolds_to_read_write_histories() {
        let v = FinSet::names(&["0", "1"]).unwrap();
        let m = cell_methods(&v);
        let ct = encapsulate(&m, &cell_rel(&v).unwrap()).unwrap();
        let h = ana_rel(&m, &ct, 3).unwrap();
        let hist = Atom::Word(vec![
            Atom::tagged("read", Atom::name("0")),
            Atom::tagged("write", Atom::name("1")),
            Atom::tagged("read", Atom::name("1")),
        ]);
        assert!(h.contains(&Atom::name("0"), &hist));
        let stale = Atom::Word(vec![Atom::tagged("write", Atom::name("1")), Atom::tagged("read", Atom::name("0"))]);
        assert!(!h.contains(&Atom::name("0"), &stale));
        assert!(is_coalgebra_morphism(&m, &ct, &h, 3).unwrap());
        assert_eq!(cell_rel(&FinSet::names(&["0", "1", "2"]).unwrap()).unwrap().len(), 12);
        assert!(cell_rel(&FinSet::default()).is_err());
    }

    #[test]
    fn delta_splits_words() {
        let a = FinSet::names(&["a", "b"]).unwrap();
        let (delta, eps, _) = comonoid_parts(&a, 2);
        let splits: Vec<_> =
            delta.pairs().iter().filter(|(w, _)| *w == word("ab")).map(|(_, p)| p.to_string()).collect();
        assert_eq!(splits, ["(ε,\"a.b\")", "(\"a\",\"b\")", "(\"a.b\",ε)"]);
        assert_eq!(eps.to_text(), "ε -> *\n");
    }

    #[test]
    fn word_comonoid_laws_and_commutativity() {
        let a1 = FinSet::names(&["a"]).unwrap();
        let a2 = FinSet::names(&["a", "b"]).unwrap();
        let (w1, _) = RelComonoid::words(&a1, 3);
        let (w2, _) = RelComonoid::words(&a2, 3);
        assert_eq!(w1.law_violation().unwrap(), None);
        assert_eq!(w2.law_violation().unwrap(), None);
        // Over a one-letter alphabet every splitting of aⁿ has its swap.
        assert!(w1.is_commutative().unwrap());
        assert!(!w2.is_commutative().unwrap());
    }

    #[test]
    fn finality_by_search() {
        let a = FinSet::names(&["a"]).unwrap();
        let s = FinSet::names(&["s"]).unwrap();
        let r = finality_search(&a, &s, 2).unwrap();
        assert_eq!(r.coalgebras, 4);
        assert_eq!(r.candidates, 32);
        assert!(r.failures.is_empty(), "{:?}", r.failures);
    }

    #[test]
    fn lifting_along_copying_comonoid() {
        let a = FinSet::names(&["a"]).unwrap();
        let b = FinSet::names(&["b"]).unwrap();
        let bb = FinSet::product(&b, &b);
        let (x, y) = (Atom::name("b"), Atom::name("a"));
        let cm = RelComonoid {
            delta: Relation::new(b.clone(), bb, [(x.clone(), Atom::pair(x.clone(), x.clone()))]).unwrap(),
            eps: Relation::new(b.clone(), FinSet::unit(), [(x.clone(), Atom::Star)]).unwrap(),
            carrier: b.clone(),
        };
        let f = Relation::new(b.clone(), a.clone(), [(x, y)]).unwrap();
        let r = check_universal_property(&a, &cm, &f, 3).unwrap();
        assert_eq!(r.lifting.to_text(), "b -> ε\nb -> \"a\"\nb -> \"a.a\"\nb -> \"a.a.a\"\n");
        assert!(r.holds());
        assert_eq!(r.solutions, Some(1));
    }

    #[test]
    fn lifting_from_unit_is_unique() {
        let a = FinSet::names(&["a", "b"]).unwrap();
        let f = Relation::new(FinSet::unit(), a.clone(), [(Atom::Star, Atom::name("a"))]).unwrap();
        let r = check_universal_property(&a, &RelComonoid::trivial(), &f, 2).unwrap();
        assert_eq!(r.lifting.to_text(), "* -> ε\n* -> \"a\"\n* -> \"a.a\"\n");
        assert_eq!(r.solutions, Some(1));
    }

    #[test]
    fn non_comonoid_rejected() {
        let b = FinSet::names(&["b"]).unwrap();
        let cm = RelComonoid {
            delta: Relation::new(b.clone(), FinSet::product(&b, &b), []).unwrap(),
            eps: Relation::new(b.clone(), FinSet::unit(), [(Atom::name("b"), Atom::Star)]).unwrap(),
            carrier: b.clone(),
        };
        let f = Relation::new(b.clone(), FinSet::names(&["a"]).unwrap(), []).unwrap();
        assert!(matches!(
            check_universal_property(&FinSet::names(&["a"]).unwrap(), &cm, &f, 2),
            Err(GameError::Precondition(_))
        ));
    }
}
