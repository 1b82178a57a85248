//! The derivative Δ and the rank predicate `s ≤ γ` on symbolic transfinite sequences.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ordinal::Ordinal;
use crate::error::{GameError, Result};

/// A run of explicit naturals, or `Asc`, the sequence 0,1,2,… of order type ω.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Block {
    Fin(Vec<u64>),
    Asc,
}

/// A finite concatenation of blocks. Kept normalised: no empty `Fin` blocks, no two adjacent `Fin`s.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SymbolicSeq {
    blocks: Vec<Block>,
}

impl SymbolicSeq {
    pub fn new(blocks: impl IntoIterator<Item = Block>) -> SymbolicSeq {
        let mut out: Vec<Block> = Vec::new();
        for b in blocks {
            match (out.last_mut(), b) {
                (_, Block::Fin(xs)) if xs.is_empty() => {}
                (Some(Block::Fin(prev)), Block::Fin(xs)) => prev.extend(xs),
                (_, b) => out.push(b),
            }
        }
        SymbolicSeq { blocks: out }
    }

    pub fn finite(xs: &[u64]) -> SymbolicSeq {
        SymbolicSeq::new([Block::Fin(xs.to_vec())])
    }

    pub fn asc() -> SymbolicSeq {
        SymbolicSeq::new([Block::Asc])
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn as_finite(&self) -> Option<&[u64]> {
        match self.blocks.as_slice() {
            [] => Some(&[]),
            [Block::Fin(xs)] => Some(xs),
            _ => None,
        }
    }

    pub fn concat(&self, other: &SymbolicSeq) -> SymbolicSeq {
        SymbolicSeq::new(self.blocks.iter().chain(&other.blocks).cloned())
    }

    /// Order type of the sequence.
    pub fn length(&self) -> Ordinal {
        self.blocks.iter().fold(Ordinal::zero(), |acc, b| match b {
            Block::Fin(xs) => acc.add(&Ordinal::nat(xs.len() as u64)),
            Block::Asc => acc.add(&Ordinal::omega()),
        })
    }

    fn has_successor_length(&self) -> bool {
        matches!(self.blocks.last(), Some(Block::Fin(_)))
    }

    /// Remove every 0 and subtract 1 from the rest. `Asc` is its own derivative.
    pub fn delta(&self) -> SymbolicSeq {
        SymbolicSeq::new(self.blocks.iter().map(|b| match b {
            Block::Fin(xs) => Block::Fin(xs.iter().filter(|&&x| x > 0).map(|x| x - 1).collect()),
            Block::Asc => Block::Asc,
        }))
    }

    /// The eventual value of `Δⁿ s`, and the least `n` reaching it.
    fn stable_delta(&self) -> (SymbolicSeq, usize) {
        let mut cur = self.clone();
        let mut n = 0;
        loop {
            let next = cur.delta();
            if next == cur {
                return (cur, n);
            }
            cur = next;
            n += 1;
        }
    }
}

impl fmt::Display for SymbolicSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "[]");
        }
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| match b {
                Block::Asc => "asc".to_string(),
                Block::Fin(xs) => format!("[{}]", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
            })
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl FromStr for SymbolicSeq {
    type Err = GameError;

    /// `seq := block (";" block)*`, `block := "asc" | "[" nat ("," nat)* "]" | "[]"`.
    fn from_str(text: &str) -> Result<SymbolicSeq> {
        let bad = |m: String| GameError::Construction(format!("bad sequence `{text}`: {m}"));
        let mut blocks = Vec::new();
        for raw in text.split(';') {
            let b = raw.trim();
            if b == "asc" {
                blocks.push(Block::Asc);
            } else if let Some(inner) = b.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                let xs = if inner.trim().is_empty() {
                    Vec::new()
                } else {
                    inner
                        .split(',')
                        .map(|x| x.trim().parse::<u64>().map_err(|_| bad(format!("`{x}` is not a natural"))))
                        .collect::<Result<Vec<_>>>()?
                };
                blocks.push(Block::Fin(xs));
            } else {
                return Err(bad(format!("unknown block `{b}`")));
            }
        }
        Ok(SymbolicSeq::new(blocks))
    }
}

/// Largest `γ` the decision procedure accepts is strictly below this.
pub fn rank_bound() -> Ordinal {
    Ordinal::monomial(2, 1)
}

/// The least `γ` with `s ≤ γ`.
///
/// Successor-length sequences climb one derivative at a time. A limit-length sequence sits at the
/// least limit above all its successor-length prefixes, unless a derivative gives a smaller
/// successor. The prefixes `P·[0..k]` of an `Asc` block have rank `rank(Δ^{k+1}P) + k + 1`,
/// so beyond the point where `ΔⁿP` stabilises they share one limit bound.
pub fn rank(s: &SymbolicSeq) -> Ordinal {
    if s.is_empty() {
        return Ordinal::zero();
    }
    if s.has_successor_length() {
        return rank(&s.delta()).succ();
    }
    let mut bound = Ordinal::zero();
    for (j, b) in s.blocks.iter().enumerate() {
        let prefix = SymbolicSeq::new(s.blocks[..j].iter().cloned());
        match b {
            Block::Fin(xs) => {
                for i in 1..=xs.len() {
                    let t = prefix.concat(&SymbolicSeq::finite(&xs[..i]));
                    bound = bound.max(rank(&t).next_limit());
                }
            }
            Block::Asc => {
                let (stable, k_stable) = prefix.stable_delta();
                for k in 0..=k_stable as u64 {
                    let t = prefix.concat(&SymbolicSeq::finite(&(0..=k).collect::<Vec<_>>()));
                    bound = bound.max(rank(&t).next_limit());
                }
                bound = bound.max(rank(&stable).next_limit());
            }
        }
    }
    let d = s.delta();
    if d != *s {
        bound.min(rank(&d).succ())
    } else {
        bound
    }
}

/// `s ≤ γ`, for `γ < ω²`.
pub fn rank_leq(s: &SymbolicSeq, gamma: &Ordinal) -> Result<bool> {
    if *gamma >= rank_bound() {
        return Err(GameError::Unsupported(format!("rank bound {gamma} is not below w^2")));
    }
    Ok(rank(s) <= *gamma)
}

/// Membership of a `!A` schedule, given by its copy indices, in `A^{⊘γ}`.
pub fn classify_play(copy_indices: &SymbolicSeq, gamma: &Ordinal) -> Result<bool> {
    rank_leq(copy_indices, gamma)
}

fn delta_vec(s: &[u64]) -> Vec<u64> {
    s.iter().filter(|&&x| x > 0).map(|x| x - 1).collect()
}

/// The definition applied literally to a finite sequence, for `γ < ω²`.
///
/// The limit rule searches witnesses `ω·j + n` below `μ` with `n ≤ |s| + max(s) + 2`.
pub fn brute_rank_leq(s: &[u64], gamma: &Ordinal) -> bool {
    if gamma.is_zero() {
        return s.is_empty();
    }
    if let Some(beta) = gamma.predecessor() {
        return brute_rank_leq(&delta_vec(s), &beta);
    }
    let omegas = gamma.terms().iter().find(|(e, _)| *e == 1).map_or(0, |&(_, c)| c);
    let witness_cap = s.len() as u64 + s.iter().copied().max().unwrap_or(0) + 2;
    (1..=s.len()).all(|i| {
        (0..omegas).any(|j| {
            (0..=witness_cap).any(|n| {
                let w = Ordinal::monomial(1, j).add(&Ordinal::nat(n));
                brute_rank_leq(&s[..i], &w)
            })
        })
    })
}

/// Outcome of [`check_rank_props`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RankPropsReport {
    pub random_sequences: usize,
    pub symbolic_sequences: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl RankPropsReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn gammas() -> Vec<Ordinal> {
    let mut out: Vec<Ordinal> = (0..=8).map(Ordinal::nat).collect();
    for j in 1..=3 {
        for n in [0, 1, 2, 5] {
            out.push(Ordinal::monomial(1, j).add(&Ordinal::nat(n)));
        }
    }
    out
}

/// Sequences named in the documentation plus a few mixed shapes.
pub fn symbolic_corpus() -> Vec<SymbolicSeq> {
    [
        "[]",
        "asc",
        "asc;asc",
        "asc;asc;asc",
        "[0,1];asc",
        "asc;[0,1,2]",
        "asc;[3];asc",
        "[2,0];asc;[1]",
        "[5];asc",
        "asc;[0];asc;[4,4]",
    ]
    .iter()
    .map(|t| t.parse().expect("corpus parses"))
    .collect()
}

/// Subsequences reachable by deleting a block, truncating an `Asc` to `[0..k]`, or deleting one entry.
fn symbolic_subsequences(s: &SymbolicSeq) -> Vec<SymbolicSeq> {
    let mut out = Vec::new();
    let bl = s.blocks();
    for j in 0..bl.len() {
        let with =
            |mid: Vec<Block>| SymbolicSeq::new(bl[..j].iter().cloned().chain(mid).chain(bl[j + 1..].iter().cloned()));
        out.push(with(vec![]));
        match &bl[j] {
            Block::Asc => {
                for k in 0..3u64 {
                    out.push(with(vec![Block::Fin((0..=k).collect())]));
                }
            }
            Block::Fin(xs) => {
                for i in 0..xs.len() {
                    let mut ys = xs.clone();
                    ys.remove(i);
                    out.push(with(vec![Block::Fin(ys)]));
                }
            }
        }
    }
    out
}

/// Check subsequence closure, Δ-closure and upward closure of `≤` on seeded random finite
/// sequences and on the symbolic corpus, agreement with the literal definition on the finite ones,
/// and the length bounds for limit and `μ+n` lengths on the symbolic corpus.
pub fn check_rank_props(trials: usize, seed: u64) -> RankPropsReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gs = gammas();
    let mut r = RankPropsReport::default();
    let fail = |r: &mut RankPropsReport, ok: bool, what: String| {
        r.checks += 1;
        if !ok {
            r.failures.push(what);
        }
    };
    for _ in 0..trials {
        let len = rng.gen_range(0..=7);
        let xs: Vec<u64> = (0..len).map(|_| rng.gen_range(0..=5)).collect();
        let s = SymbolicSeq::finite(&xs);
        r.random_sequences += 1;
        let g = &gs[rng.gen_range(0..gs.len())];
        let holds = rank(&s) <= *g;
        fail(&mut r, holds == brute_rank_leq(&xs, g), format!("{s} <= {g}: evaluator disagrees with definition"));
        if !holds {
            continue;
        }
        let mask: u32 = rng.gen_range(0..(1u32 << len));
        let sub: Vec<u64> = xs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| *x).collect();
        fail(&mut r, rank(&SymbolicSeq::finite(&sub)) <= *g, format!("(i) {s} <= {g} but subsequence {sub:?} is not"));
        fail(&mut r, rank(&s.delta()) <= *g, format!("(ii) {s} <= {g} but its derivative is not"));
        for d in gs.iter().filter(|d| *d >= g) {
            fail(&mut r, rank(&s) <= *d, format!("(iii) {s} <= {g} but not <= {d}"));
        }
    }
    for s in symbolic_corpus() {
        r.symbolic_sequences += 1;
        let rs = rank(&s);
        for g in gs.iter().filter(|g| rs <= **g) {
            for t in symbolic_subsequences(&s) {
                fail(&mut r, rank(&t) <= *g, format!("(i) {s} <= {g} but subsequence {t} is not"));
            }
            fail(&mut r, rank(&s.delta()) <= *g, format!("(ii) {s} <= {g} but its derivative is not"));
            for d in gs.iter().filter(|d| *d >= g) {
                fail(&mut r, rs <= *d, format!("(iii) {s} <= {g} but not <= {d}"));
            }
        }
        let len = s.length();
        let bound = if len.is_limit() { len.clone() } else { len.limit_part().add(&Ordinal::omega()) };
        if !len.is_finite() {
            fail(&mut r, rs <= bound, format!("(iv) {s} has length {len} but rank {rs} exceeds {bound}"));
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> SymbolicSeq {
        t.parse().unwrap()
    }

    fn o(t: &str) -> Ordinal {
        t.parse().unwrap()
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(s("[0,1,0,2]").delta(), s("[0,1]"));
        assert_eq!(s("[]").delta(), s("[]"));
        assert_eq!(s("asc").delta(), s("asc"));
        assert_eq!(s("asc;[0,3]").delta(), s("asc;[2]"));
    }

    #[test]
    fn text_forms() {
        assert_eq!(s("asc;[1,2];[3]").to_string(), "asc;[1,2,3]");
        assert_eq!(s("[]").to_string(), "[]");
        assert!("asc;[x]".parse::<SymbolicSeq>().is_err());
        assert!("desc".parse::<SymbolicSeq>().is_err());
        assert_eq!(s("asc;[0,1,2]").length(), o("w+3"));
        assert_eq!(s("[4];asc").length(), o("w"));
    }

    #[test]
    fn documented_ranks() {
        assert!(rank_leq(&s("[]"), &o("0")).unwrap());
        assert!(rank_leq(&s("[0,0,0]"), &o("1")).unwrap());
        assert!(rank_leq(&s("asc"), &o("w")).unwrap());
        for n in 0..=5 {
            assert!(!rank_leq(&s("asc"), &Ordinal::nat(n)).unwrap());
        }
        assert!(rank_leq(&s("asc;asc"), &o("w*2")).unwrap());
        assert!(!rank_leq(&s("asc;asc"), &o("w+5")).unwrap());
        assert!(rank_leq(&s("asc;[0,1,2]"), &o("w*2")).unwrap());
        assert_eq!(rank(&s("asc;[0,1,2]")), o("w+3"));
        assert!(rank_leq(&s("asc"), &o("w^2")).is_err());
    }

    #[test]
    fn schedules_and_the_final_sequence() {
        for k in 0..6u64 {
            let sched = SymbolicSeq::finite(&(0..=k).collect::<Vec<_>>());
            assert!(classify_play(&sched, &Ordinal::nat(k + 1)).unwrap());
            assert!(!classify_play(&sched, &Ordinal::nat(k)).unwrap());
        }
        assert!(classify_play(&s("asc;asc"), &o("w*2")).unwrap());
        assert!(!classify_play(&s("asc;asc"), &o("w+1")).unwrap());
    }

    #[test]
    fn finite_ranks_match_definition_exhaustively() {
        // All sequences of length ≤ 4 over 0..=4 here; the acceptance test runs the full ≤ 6 range.
        let gs = gammas();
        let mut seqs = vec![vec![]];
        for _ in 0..4 {
            let next: Vec<Vec<u64>> = seqs
                .iter()
                .filter(|v: &&Vec<u64>| v.len() < 4)
                .flat_map(|v| (0..=4).map(move |x| [v.clone(), vec![x]].concat()))
                .collect();
            seqs.extend(next);
            seqs.sort();
            seqs.dedup();
        }
        for xs in &seqs {
            for g in &gs {
                assert_eq!(rank(&SymbolicSeq::finite(xs)) <= *g, brute_rank_leq(xs, g), "{xs:?} <= {g}");
            }
        }
    }

    #[test]
    fn properties_hold_on_seeded_samples() {
        let r = check_rank_props(300, 7);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.random_sequences, 300);
    }
}
