//! Acceptance run: one PASS/FAIL line per criterion, then a summary.
//!
//! Criterion 11 asks for `sym∘δ ≠ δ` on words over a one-letter alphabet, which is false: every
//! split of `aⁿ` into `(aⁱ, aʲ)` has its swap `(aʲ, aⁱ)` as another split. That line stays FAIL.
//! The run asserts the true facts instead (symmetric for |A| = 1, not for |A| = 2), and exits
//! non-zero only if some other criterion fails or those facts change.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use seqgames::coalgebra::fix;
use seqgames::comonoid::{endomorphism_corpus, run_law_suite, sym_power, LawReport};
use seqgames::composition::{compose, equiv_up_to_with, EquivOptions};
use seqgames::game::{parse_dsl, GameExpr, Polarity};
use seqgames::rel_model::{cell_rel, finality_search, FinSet, RelComonoid};
use seqgames::stateful::{cell, combinatorial_cell, read_coherence_violation, VarSpec};
use seqgames::strategy::Strategy;
use seqgames::transfinite_win::{
    brute_rank_leq, check_rank_props, exponential_length_witness, inversion_witness, length_sup, rank, rank_leq,
    zeta_eval, BangMode, Ordinal, SymbolicSeq, ZetaFormula,
};
use seqgames::Result;

/// Criteria whose statement is false; their lines print FAIL by design.
const UNATTAINABLE: &[u32] = &[11];

struct Outcome {
    pass: bool,
    detail: String,
    /// For unattainable criteria: whether the facts that replace the false claim still hold.
    pinned: bool,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Outcome {
        Outcome { pass, detail: detail.into(), pinned: true }
    }
}

fn games(names: &[&str]) -> Vec<GameExpr> {
    names.iter().map(|g| parse_dsl(g).expect("corpus game parses")).collect()
}

fn corpus() -> Vec<GameExpr> {
    seqgames::comonoid::default_corpus()
}

fn summarize(r: &LawReport) -> String {
    let failed: Vec<String> = r.failures().take(3).map(|c| c.line()).collect();
    if failed.is_empty() {
        format!("{} checks", r.results.len())
    } else {
        format!("{} checks, {} failed, e.g. {}", r.results.len(), r.failures().count(), failed.join("; "))
    }
}

fn diagrams(r: &LawReport) -> BTreeSet<String> {
    r.results.iter().map(|c| c.diagram.clone()).collect()
}

fn c1_category() -> Result<Outcome> {
    let t = Instant::now();
    let r = run_law_suite("category", &corpus(), 6)?;
    let strategies: BTreeSet<String> = corpus()
        .iter()
        .flat_map(|g| endomorphism_corpus(g).into_iter().map(move |s| format!("{} on {g}", s.name())))
        .collect();
    let quick = t.elapsed() < Duration::from_secs(60);
    Ok(Outcome::new(
        r.all_passed() && strategies.len() >= 10 && quick,
        format!("{}, {} strategies", summarize(&r), strategies.len()),
    ))
}

fn c2_isos() -> Result<Outcome> {
    let r = run_law_suite("iso", &corpus(), 6)?;
    let ds = diagrams(&r);
    let missing: Vec<&str> = ["dist", "dec", "passoc", "r", "sym", "assoc", "lunit", "runit", "dist0", "dec0"]
        .into_iter()
        .filter(|n| !ds.contains(&format!("{n};{n}⁻¹=id")) || !ds.contains(&format!("{n}⁻¹;{n}=id")))
        .collect();
    Ok(Outcome::new(r.all_passed() && missing.is_empty(), format!("{}, missing {missing:?}", summarize(&r))))
}

fn c3_final_coalgebra() -> Result<Outcome> {
    let r = run_law_suite("coalgebra", &games(&["sigma", "flat{0,1}"]), 6)?;
    let ds = diagrams(&r);
    let needed = ["ana(α)=id", "cata(α⁻¹)=id", "α;α⁻¹=id", "α⁻¹;α=id", "ana(α);α=step;(id⊘ana)"];
    let has_all = needed.iter().all(|d| ds.contains(*d));
    Ok(Outcome::new(r.all_passed() && has_all, summarize(&r)))
}

fn c4_alpha_formula() -> Result<Outcome> {
    let r = run_law_suite("alpha-formula", &games(&["sigma", "flat{0,1}"]), 6)?;
    Ok(Outcome::new(r.all_passed() && r.results.len() == 2, summarize(&r)))
}

fn c5_strong_monoidal() -> Result<Outcome> {
    let r = run_law_suite("comonoid", &games(&["sigma", "flat{0,1}"]), 6)?;
    let pairs = ["sigma,sigma", "sigma,flat{0,1}"];
    let wanted = ["∫;∫⁻¹=id", "∫⁻¹;∫=id", "∫=copycat"];
    let relevant: Vec<_> =
        r.results.iter().filter(|c| wanted.contains(&c.diagram.as_str()) && pairs.contains(&c.game.as_str())).collect();
    let pass = relevant.len() == 6 && relevant.iter().all(|c| c.passed());
    Ok(Outcome::new(pass, format!("{} relevant checks", relevant.len())))
}

fn c6_comonoid() -> Result<Outcome> {
    let laws = run_law_suite("comonoid", &corpus(), 6)?;
    let law_names = ["μ coassociative", "μ cocommutative", "μ left-counit", "μ right-counit"];
    let law_checks = laws.results.iter().filter(|c| law_names.contains(&c.diagram.as_str())).count();
    let cofree = run_law_suite("cofree", &corpus(), 6)?;
    let cases: BTreeSet<&str> = cofree
        .results
        .iter()
        .filter(|c| c.diagram.ends_with("f†;der=f"))
        .map(|c| c.diagram.trim_end_matches(" f†;der=f"))
        .collect();
    let rejected = cofree.results.iter().filter(|c| c.diagram.contains(" rejects ") && c.passed()).count();
    let pass = laws.all_passed() && law_checks >= 4 && cofree.all_passed() && cases.len() >= 3 && rejected >= 5;
    Ok(Outcome::new(
        pass,
        format!("{law_checks} law checks, {} (f, cm) pairs, {rejected} perturbations rejected", cases.len()),
    ))
}

fn c7_monoidal_coherence() -> Result<Outcome> {
    let r = run_law_suite("monoidal-coherence", &games(&["sigma"]), 4)?;
    let ds = diagrams(&r);
    let shapes = ["assoc", "lunit", "runit", "sym"];
    let covered = shapes.iter().all(|s| ds.iter().any(|d| d.contains(s)));
    Ok(Outcome::new(r.all_passed() && covered, summarize(&r)))
}

fn c8_sym_powers() -> Result<Outcome> {
    let mut total = LawReport::default();
    for n in [2, 3] {
        let (_, _, r) = sym_power(&GameExpr::sigma(), n, 4)?;
        total.extend(r);
    }
    // 2 + 6 permutations, three equations each.
    Ok(Outcome::new(total.all_passed() && total.results.len() == 24, summarize(&total)))
}

fn c9_cell() -> Result<Outcome> {
    let t = Instant::now();
    let mut ok = true;
    let mut checked = Vec::new();
    for (values, default) in [(vec!["0", "1"], "0"), (vec!["0", "1", "2"], "1")] {
        let v = VarSpec::new(&values, default)?;
        let eq = equiv_up_to_with(&cell(&v)?, &combinatorial_cell(&v), 8, &EquivOptions::default())?;
        let coherent = read_coherence_violation(&cell(&v)?, &v, 8)?.is_none();
        ok &= eq.is_equal() && coherent;
        checked.push(format!("X={{{}}} d={default}", values.join(",")));
    }
    ok &= t.elapsed() < Duration::from_secs(120);
    Ok(Outcome::new(ok, format!("depth 8 on {}", checked.join(" and "))))
}

fn c10_fixed_points() -> Result<Outcome> {
    let opts = EquivOptions { livelock_as_undefined: true, ..EquivOptions::default() };
    let mut n = 0;
    let mut ok = true;
    for g in games(&["sigma", "flat{0,1}", "flat{0,1,2}"]) {
        for f in endomorphism_corpus(&g) {
            let x = fix(&f)?;
            ok &= equiv_up_to_with(&compose(&x, &f)?, &x, 6, &opts)?.is_equal();
            n += 1;
        }
    }
    let s = GameExpr::sigma();
    let bottom = Strategy::undefined(GameExpr::limp(GameExpr::Unit, s.clone()));
    let id_fix = fix(&seqgames::connectives::copycat(&s))?;
    let id_is_bottom = equiv_up_to_with(&id_fix, &bottom, 6, &opts)?.is_equal();
    Ok(Outcome::new(ok && id_is_bottom, format!("{n} endomorphisms, fix(id_Σ) ≡ {{ε}}: {id_is_bottom}")))
}

fn c11_rel() -> Result<Outcome> {
    let a1 = FinSet::names(&["a"])?;
    let a2 = FinSet::names(&["a", "b"])?;
    let fin = finality_search(&a1, &FinSet::names(&["s"])?, 2)?;
    let laws_ok =
        [&a1, &a2].iter().all(|a| RelComonoid::words(a, 3).0.law_violation().map(|v| v.is_none()).unwrap_or(false));
    let cell_pairs = cell_rel(&FinSet::names(&["0", "1", "2"])?)?.len();
    let symmetric_1 = RelComonoid::words(&a1, 3).0.is_commutative()?;
    let symmetric_2 = RelComonoid::words(&a2, 3).0.is_commutative()?;
    let rest = fin.failures.is_empty() && fin.coalgebras > 0 && laws_ok && cell_pairs == 12;
    Ok(Outcome {
        pass: rest && !symmetric_1,
        detail: format!(
            "finality exact over {} coalgebras, laws {laws_ok}, cell pairs {cell_pairs}; sym∘δ = δ for |A|=1: {symmetric_1} (claimed false), for |A|=2: {symmetric_2}",
            fin.coalgebras
        ),
        pinned: rest && symmetric_1 && !symmetric_2,
    })
}

fn all_finite(max_len: usize, max_entry: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer =
            layer.iter().flat_map(|v: &Vec<u64>| (0..=max_entry).map(move |x| [v.as_slice(), &[x]].concat())).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn c12_rank() -> Result<Outcome> {
    let props = check_rank_props(1000, 2024);
    let s = |t: &str| t.parse::<SymbolicSeq>();
    let o = |t: &str| t.parse::<Ordinal>();
    let exact = rank_leq(&s("asc")?, &o("w")?)?
        && !rank_leq(&s("asc")?, &o("5")?)?
        && rank_leq(&s("asc;asc")?, &o("w*2")?)?
        && !rank_leq(&s("asc;asc")?, &o("w+5")?)?;
    let gammas: Vec<Ordinal> =
        (0..=8).map(Ordinal::nat).chain(["w", "w+1", "w+4", "w*2"].iter().map(|t| o(t).expect("ordinal"))).collect();
    let seqs = all_finite(6, 6);
    let disagreements: Vec<String> = seqs
        .par_iter()
        .flat_map_iter(|xs| {
            let r = rank(&SymbolicSeq::finite(xs));
            gammas.iter().filter(move |g| (r <= **g) != brute_rank_leq(xs, g)).map(move |g| format!("{xs:?} <= {g}"))
        })
        .collect();
    Ok(Outcome::new(
        props.passed() && exact && disagreements.is_empty(),
        format!(
            "{} property checks, {} failed; exact values {exact}; {} finite sequences × {} bounds, {} disagreements",
            props.checks,
            props.failures.len(),
            seqs.len(),
            gammas.len(),
            disagreements.len()
        ),
    ))
}

fn c13_exponential_witness() -> Result<Outcome> {
    let split = length_sup(&parse_dsl("tensor(bang(sigma),bang(sigma))")?)?;
    let joint = length_sup(&parse_dsl("bang(prod(sigma,sigma))")?)?;
    let (s2, j2) = exponential_length_witness(&GameExpr::sigma(), &parse_dsl("flat{0,1}")?)?;
    let bang = GameExpr::bang(GameExpr::sigma());
    let w = inversion_witness();
    let z_bang = zeta_eval(&ZetaFormula::from_game(&bang, BangMode::Bang), &w)?;
    let z_inv = zeta_eval(&ZetaFormula::from_game(&bang, BangMode::Inverted), &w)?;
    let pass = split == Ordinal::monomial(1, 2)
        && joint == Ordinal::omega()
        && s2 > j2
        && z_bang == Polarity::O
        && z_inv == Polarity::P;
    Ok(Outcome::new(pass, format!("lengths {split} vs {joint}; ζ at {w}: ! = {z_bang}, ¡ = {z_inv}")))
}

fn c14_whole_run() -> Result<Outcome> {
    let t = Instant::now();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_seqgames"))
            .args(["check", "--suite", "all", "--depth", "6"])
            .env_remove("SEQGAMES_CORPUS")
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    let elapsed = t.elapsed();
    let tail = String::from_utf8_lossy(&first.stdout).lines().last().unwrap_or_default().to_string();
    let pass = first.status.success() && first.stdout == second.stdout && elapsed < Duration::from_secs(600);
    Ok(Outcome::new(pass, format!("{tail}; identical output twice; {:.1}s for both runs", elapsed.as_secs_f64())))
}

type Criterion = (u32, &'static str, fn() -> Result<Outcome>);

fn main() {
    let criteria: [Criterion; 14] = [
        (1, "category laws", c1_category),
        (2, "structural isomorphisms", c2_isos),
        (3, "final coalgebra", c3_final_coalgebra),
        (4, "α as μ;(der⊗id);wk", c4_alpha_formula),
        (5, "strong monoidal ∫", c5_strong_monoidal),
        (6, "comonoid and cofreeness", c6_comonoid),
        (7, "monoidal coherence", c7_monoidal_coherence),
        (8, "symmetric powers", c8_sym_powers),
        (9, "cell", c9_cell),
        (10, "fixed points", c10_fixed_points),
        (11, "relational model", c11_rel),
        (12, "rank calculus", c12_rank),
        (13, "exponential witness", c13_exponential_witness),
        (14, "whole check run", c14_whole_run),
    ];
    let mut unexpected = Vec::new();
    for (n, title, f) in criteria {
        let t = Instant::now();
        let outcome = f().unwrap_or_else(|e| Outcome { pass: false, detail: format!("error: {e}"), pinned: false });
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{status} {n:>2} {title}: {} ({:.2}s)", outcome.detail, t.elapsed().as_secs_f64());
        let expected_fail = UNATTAINABLE.contains(&n);
        if outcome.pass == expected_fail || !outcome.pinned {
            unexpected.push(n);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria as expected; unattainable: {UNATTAINABLE:?}");
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
