//! Bounded-depth law suites and their reports.

use rayon::prelude::*;
use serde::Serialize;

use super::{
    bang_map, chain, cofree_squares, der, eps, eta, int_fwd, int_fwd_oracle, int_inv, iso, mu, mu_via_cata, perturb,
    promote, sigma, ComonoidPresentation,
};
use crate::coalgebra::{alpha, alpha_inv_copycat, ana, cata, lambek_inv, unroll, SequoidAlgebra, SequoidCoalgebra};
use crate::composition::{compose, equiv_up_to_with, EquivOptions, Equivalence};
use crate::connectives::{
    copycat, dec, diagonal, dist, map_prod, map_product, map_seq, map_tensor, pr, prod_assoc, prod_lunit, prod_runit,
    prod_sym, structural_iso, sym, wk, IsoName,
};
use crate::error::{GameError, Result};
use crate::game::{show_position, trace::write_trace, GameExpr, Move};
use crate::strategy::Strategy;

/// Suite names in the order `all` runs them.
pub const SUITES: [&str; 10] = [
    "category",
    "sequoid-coherence",
    "iso",
    "coalgebra",
    "alpha-formula",
    "comonoid",
    "monoidal-coherence",
    "cofree",
    "functoriality",
    "stateful",
];

type Build = Box<dyn Fn() -> Result<(Strategy, Strategy)> + Send + Sync>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Expect {
    Equal,
    Differ,
}

/// One diagram: two parallel composites and whether they should agree.
pub struct Check {
    suite: String,
    diagram: String,
    game: String,
    depth: usize,
    expect: Expect,
    build: Build,
}

impl Check {
    pub fn equal(
        suite: &str,
        diagram: impl Into<String>,
        game: impl Into<String>,
        depth: usize,
        build: impl Fn() -> Result<(Strategy, Strategy)> + Send + Sync + 'static,
    ) -> Check {
        Check {
            suite: suite.into(),
            diagram: diagram.into(),
            game: game.into(),
            depth,
            expect: Expect::Equal,
            build: Box::new(build),
        }
    }

    /// Passes when the two sides are told apart.
    pub fn differ(
        suite: &str,
        diagram: impl Into<String>,
        game: impl Into<String>,
        depth: usize,
        build: impl Fn() -> Result<(Strategy, Strategy)> + Send + Sync + 'static,
    ) -> Check {
        Check { expect: Expect::Differ, ..Check::equal(suite, diagram, game, depth, build) }
    }

    fn run(&self, opts: &EquivOptions) -> CheckResult {
        let outcome = (self.build)().and_then(|(l, r)| equiv_up_to_with(&l, &r, self.depth, opts));
        let outcome = match (outcome, self.expect) {
            (Ok(Equivalence::Equal { .. }), Expect::Equal) => CheckOutcome::Pass,
            (Ok(Equivalence::Differ(_)), Expect::Differ) => CheckOutcome::Pass,
            (Ok(Equivalence::Differ(c)), Expect::Equal) => CheckOutcome::Fail {
                position: show_position(&c.position),
                left: show_reply(&c.left),
                right: show_reply(&c.right),
                trace: write_trace(&c.position),
            },
            (Ok(Equivalence::Equal { .. }), Expect::Differ) => {
                CheckOutcome::Error { message: format!("expected a difference within depth {}", self.depth) }
            }
            (Err(e), _) => CheckOutcome::Error { message: e.to_string() },
        };
        CheckResult {
            suite: self.suite.clone(),
            diagram: self.diagram.clone(),
            depth: self.depth,
            game: self.game.clone(),
            outcome,
        }
    }
}

fn show_reply(m: &Option<Move>) -> String {
    m.as_ref().map_or_else(|| "none".to_string(), |m| m.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CheckOutcome {
    Pass,
    Fail { position: String, left: String, right: String, trace: String },
    Error { message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub diagram: String,
    pub depth: usize,
    pub game: String,
    pub outcome: CheckOutcome,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.outcome == CheckOutcome::Pass
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        format!("{status} {}/{} depth={} game={}", self.suite, self.diagram, self.depth, self.game)
    }
}

/// Results of a batch of checks, in the order the checks were listed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub results: Vec<CheckResult>,
}

impl LawReport {
    pub fn run(checks: Vec<Check>) -> LawReport {
        LawReport::run_with(checks, &EquivOptions::default())
    }

    pub fn run_with(checks: Vec<Check>, opts: &EquivOptions) -> LawReport {
        LawReport { results: checks.par_iter().map(|c| c.run(opts)).collect() }
    }

    pub fn all_passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed())
    }

    pub fn text(&self) -> String {
        self.results.iter().map(|r| r.line() + "\n").collect()
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn extend(&mut self, other: LawReport) {
        self.results.extend(other.results);
    }
}

type CoalgebraBuilder = Box<dyn Fn(&GameExpr) -> Result<SequoidCoalgebra> + Send + Sync>;

/// The default game corpus.
pub fn default_corpus() -> Vec<GameExpr> {
    let s = GameExpr::sigma();
    vec![
        GameExpr::Unit,
        s.clone(),
        GameExpr::flat(&["0", "1"]).expect("valid flat game"),
        GameExpr::flat(&["0", "1", "2"]).expect("valid flat game"),
        GameExpr::pair(s.clone(), s.clone()),
        GameExpr::tensor(s.clone(), s.clone()),
        GameExpr::seq(s.clone(), s),
    ]
}

fn flat_values(g: &GameExpr) -> Option<Vec<String>> {
    match g {
        GameExpr::Flat(vs) => Some(vs.to_vec()),
        _ => None,
    }
}

fn endo(g: &GameExpr) -> GameExpr {
    GameExpr::limp(g.clone(), g.clone())
}

/// `r.q ↦ r.v` without consulting the argument.
pub fn constant(g: &GameExpr, v: &str) -> Strategy {
    let reply = Move::new(vec![crate::game::Tag::R], v);
    Strategy::from_fn(endo(g), format!("const{v}"), move |_, _| Ok(Some(reply.clone())))
}

/// Asks the argument, then maps its answer through `f`.
pub fn strict_map(g: &GameExpr, name: &str, f: impl Fn(&str) -> String + Send + Sync + 'static) -> Strategy {
    use crate::game::Tag::{L, R};
    Strategy::from_fn(endo(g), name.to_string(), move |_, o| {
        Ok(Some(match o.head() {
            Some(R) => Move::new(vec![L], crate::game::QUESTION),
            _ => Move::new(vec![R], f(&o.base).as_str()),
        }))
    })
}

/// A small, fixed family of endomorphisms of `g` used by the category and functoriality suites.
pub fn endomorphism_corpus(g: &GameExpr) -> Vec<Strategy> {
    let mut out = vec![copycat(g), Strategy::undefined(endo(g))];
    if let Some(vs) = flat_values(g) {
        for v in &vs {
            out.push(constant(g, v));
        }
        let v0 = vs[0].clone();
        out.push(strict_map(g, &format!("strict-const{v0}"), move |_| v0.clone()));
        if vs.len() > 1 {
            let vs2 = vs.clone();
            out.push(strict_map(g, "shift", move |x| {
                let i = vs2.iter().position(|v| v == x).unwrap_or(0);
                vs2[(i + 1) % vs2.len()].clone()
            }));
        }
    }
    match g {
        GameExpr::Tensor(a, b) if a == b => {
            out.push(sym(a, b));
            out.extend(map_tensor(&Strategy::undefined(endo(a)), &copycat(b)));
        }
        GameExpr::Prod(fs) if fs.len() == 2 && fs[0] == fs[1] => {
            out.push(prod_sym(&fs[0], &fs[1]));
            if let Ok(p0) = pr(fs, 0) {
                out.extend(map_product(&[p0.clone(), p0]));
            }
        }
        GameExpr::Seq(a, b) => {
            out.extend(map_seq(&copycat(a), &Strategy::undefined(endo(b))));
        }
        _ => {}
    }
    out
}

/// Strict endomorphisms from the corpus (those that may be placed left of `⊘`).
fn strict_endos(g: &GameExpr) -> Vec<Strategy> {
    endomorphism_corpus(g).into_iter().filter(|s| crate::strategy::is_strict(s, 1).unwrap_or(false)).take(3).collect()
}

fn pairs(corpus: &[GameExpr]) -> Vec<(GameExpr, GameExpr)> {
    let small: Vec<_> = corpus.iter().take(4).cloned().collect();
    small.iter().flat_map(|a| small.iter().map(move |b| (a.clone(), b.clone()))).collect()
}

fn triples(corpus: &[GameExpr]) -> Vec<(GameExpr, GameExpr, GameExpr)> {
    let small: Vec<_> = corpus.iter().filter(|g| **g != GameExpr::Unit).take(3).cloned().collect();
    let mut out = Vec::new();
    for a in &small {
        for b in &small {
            for c in &small {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}

fn category(corpus: &[GameExpr], d: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for g in corpus {
        let sts = endomorphism_corpus(g);
        for s in &sts {
            let (g1, s1) = (g.clone(), s.clone());
            checks.push(Check::equal(
                "category",
                format!("id;{}={}", s.name(), s.name()),
                g.to_string(),
                d,
                move || Ok((compose(&copycat(&g1), &s1)?, s1.clone())),
            ));
            let (g1, s1) = (g.clone(), s.clone());
            checks.push(Check::equal(
                "category",
                format!("{};id={}", s.name(), s.name()),
                g.to_string(),
                d,
                move || Ok((compose(&s1, &copycat(&g1))?, s1.clone())),
            ));
        }
        for a in &sts {
            for b in &sts {
                for c in &sts {
                    let (a, b, c) = (a.clone(), b.clone(), c.clone());
                    let name = format!("({0};{1});{2}={0};({1};{2})", a.name(), b.name(), c.name());
                    checks.push(Check::equal("category", name, g.to_string(), d, move || {
                        Ok((compose(&compose(&a, &b)?, &c)?, compose(&a, &compose(&b, &c)?)?))
                    }));
                }
            }
        }
    }
    checks
}

fn sequoid_coherence(corpus: &[GameExpr], d: usize) -> Vec<Check> {
    const S: &str = "sequoid-coherence";
    let mut checks = Vec::new();
    for a in corpus {
        let a1 = a.clone();
        checks.push(Check::equal(S, "wk;r=runit", a.to_string(), d, move || {
            let i = GameExpr::Unit;
            Ok((
                compose(&wk(&a1, &i), &iso(IsoName::R, std::slice::from_ref(&a1))?)?,
                iso(IsoName::Runit, std::slice::from_ref(&a1))?,
            ))
        }));
    }
    for (a, b) in pairs(corpus) {
        let game = format!("{a},{b}");
        let (a1, b1) = (a.clone(), b.clone());
        checks.push(Check::equal(S, "dec=⟨wk,sym;wk⟩", game.clone(), d, move || {
            let pairing = map_product(&[wk(&a1, &b1), compose(&sym(&a1, &b1), &wk(&b1, &a1))?])?;
            Ok((dec(&a1, &b1), pairing))
        }));
        let (a1, b1) = (a.clone(), b.clone());
        checks.push(Check::equal(S, "dist=⟨pr⊘id⟩", format!("{game},sigma"), d, move || {
            let c = GameExpr::sigma();
            let fs = [a1.clone(), b1.clone()];
            let legs = [map_seq(&pr(&fs, 0)?, &copycat(&c))?, map_seq(&pr(&fs, 1)?, &copycat(&c))?];
            Ok((dist(&fs, &c)?, map_product(&legs)?))
        }));
        for s in strict_endos(&a) {
            for t in endomorphism_corpus(&b).into_iter().take(3) {
                let (a1, b1, s, t) = (a.clone(), b.clone(), s.clone(), t.clone());
                let name = format!("({}⊗{});wk=wk;({}⊘{})", s.name(), t.name(), s.name(), t.name());
                checks.push(Check::equal(S, name, game.clone(), d, move || {
                    Ok((compose(&map_tensor(&s, &t)?, &wk(&a1, &b1))?, compose(&wk(&a1, &b1), &map_seq(&s, &t)?)?))
                }));
            }
        }
    }
    for (a, b, c) in triples(corpus) {
        checks.push(Check::equal(S, "(wk⊗id);wk;passoc=assoc;wk", format!("{a},{b},{c}"), d, move || {
            let lhs = chain(&[
                map_tensor(&wk(&a, &b), &copycat(&c))?,
                wk(&GameExpr::seq(a.clone(), b.clone()), &c),
                iso(IsoName::Passoc, &[a.clone(), b.clone(), c.clone()])?,
            ])?;
            let rhs = compose(
                &iso(IsoName::Assoc, &[a.clone(), b.clone(), c.clone()])?,
                &wk(&a, &GameExpr::tensor(b.clone(), c.clone())),
            )?;
            Ok((lhs, rhs))
        }));
    }
    checks
}

fn iso_round_trips(checks: &mut Vec<Check>, name: IsoName, args: Vec<GameExpr>, d: usize) {
    let game = args.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",");
    let a1 = args.clone();
    checks.push(Check::equal("iso", format!("{name};{name}⁻¹=id"), game.clone(), d, move || {
        let (f, g) = structural_iso(name, &a1)?;
        let g = g.ok_or_else(|| GameError::Construction(format!("`{name}` has no inverse")))?;
        let (src, _) = f.sides()?;
        Ok((compose(&f, &g)?, copycat(&src)))
    }));
    checks.push(Check::equal("iso", format!("{name}⁻¹;{name}=id"), game, d, move || {
        let (f, g) = structural_iso(name, &args)?;
        let g = g.ok_or_else(|| GameError::Construction(format!("`{name}` has no inverse")))?;
        let (_, tgt) = f.sides()?;
        Ok((compose(&g, &f)?, copycat(&tgt)))
    }));
}

fn isos(corpus: &[GameExpr], d: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for a in corpus {
        for name in [IsoName::Lunit, IsoName::Runit, IsoName::R, IsoName::Dist0] {
            iso_round_trips(&mut checks, name, vec![a.clone()], d);
        }
    }
    iso_round_trips(&mut checks, IsoName::Dec0, vec![], d);
    for (a, b) in pairs(corpus) {
        for name in [IsoName::Sym, IsoName::Dec] {
            iso_round_trips(&mut checks, name, vec![a.clone(), b.clone()], d);
        }
    }
    for (a, b, c) in triples(corpus) {
        for name in [IsoName::Assoc, IsoName::Passoc, IsoName::Dist] {
            iso_round_trips(&mut checks, name, vec![a.clone(), b.clone(), c.clone()], d);
        }
    }
    checks
}

fn coalgebra(corpus: &[GameExpr], d: usize) -> Vec<Check> {
    const S: &str = "coalgebra";
    let mut checks = Vec::new();
    for a in corpus {
        let game = a.to_string();
        let ba = GameExpr::bang(a.clone());
        let a1 = a.clone();
        checks.push(Check::equal(S, "α;α⁻¹=id", game.clone(), d, move || {
            Ok((compose(&alpha(&a1), &lambek_inv(&a1)?)?, copycat(&GameExpr::bang(a1.clone()))))
        }));
        let a1 = a.clone();
        checks.push(Check::equal(S, "α⁻¹;α=id", game.clone(), d, move || {
            Ok((
                compose(&lambek_inv(&a1)?, &alpha(&a1))?,
                copycat(&GameExpr::seq(a1.clone(), GameExpr::bang(a1.clone()))),
            ))
        }));
        let a1 = a.clone();
        checks.push(Check::equal(S, "α⁻¹=copycat", game.clone(), d, move || {
            Ok((lambek_inv(&a1)?, alpha_inv_copycat(&a1)))
        }));
        let (a1, b1) = (a.clone(), ba.clone());
        checks.push(Check::equal(S, "ana(α)=id", game.clone(), d, move || {
            Ok((ana(&SequoidCoalgebra::new(alpha(&a1))?), copycat(&b1)))
        }));
        let (a1, b1) = (a.clone(), ba.clone());
        checks.push(Check::equal(S, "cata(α⁻¹)=id", game.clone(), d, move || {
            Ok((cata(&SequoidAlgebra::new(lambek_inv(&a1)?)?), copycat(&b1)))
        }));
        let coalgebras: Vec<(&str, CoalgebraBuilder)> = vec![
            ("α", Box::new(|a: &GameExpr| SequoidCoalgebra::new(alpha(a)))),
            (
                "α;Δ;dist⁻¹",
                Box::new(|a: &GameExpr| {
                    let ba = GameExpr::bang(a.clone());
                    let step = chain(&[
                        alpha(a),
                        diagonal(&GameExpr::seq(a.clone(), ba.clone()), 2)?,
                        crate::connectives::dist_inv(&[a.clone(), a.clone()], &ba)?,
                    ])?;
                    SequoidCoalgebra::new(step)
                }),
            ),
            ("id⊘α", Box::new(|a: &GameExpr| SequoidCoalgebra::new(map_seq(&copycat(a), &alpha(a))?))),
        ];
        for (cname, make) in coalgebras {
            let make = std::sync::Arc::new(make);
            let (a1, m1) = (a.clone(), make.clone());
            checks.push(Check::equal(S, format!("ana({cname});α=step;(id⊘ana)"), game.clone(), d, move || {
                let c = m1(&a1)?;
                let u = ana(&c);
                let p = c.payload_game.clone();
                Ok((compose(&u, &alpha(&p))?, compose(&c.step, &map_seq(&copycat(&p), &u)?)?))
            }));
            let (a1, m1) = (a.clone(), make.clone());
            checks.push(Check::equal(S, format!("ana({cname})=unroll"), game.clone(), d, move || {
                let c = m1(&a1)?;
                Ok((ana(&c), unroll(&c, d.div_ceil(2))?))
            }));
        }
        let a1 = a.clone();
        checks.push(Check::equal(S, "α⁻¹;cata(a)=(id⊘cata(a));a", game.clone(), d, move || {
            let alg = SequoidAlgebra::new(alpha_inv_copycat(&a1))?;
            let c = cata(&alg);
            Ok((compose(&alpha_inv_copycat(&a1), &c)?, compose(&map_seq(&copycat(&a1), &c)?, &alg.step)?))
        }));
    }
    checks
}

fn alpha_formula(corpus: &[GameExpr], d: usize) -> Vec<Check> {
    corpus
        .iter()
        .map(|a| {
            let a1 = a.clone();
            Check::equal("alpha-formula", "α=μ;(der⊗id);wk", a.to_string(), d, move || {
                let ba = GameExpr::bang(a1.clone());
                let rhs = chain(&[mu(&a1)?, map_tensor(&der(&a1)?, &copycat(&ba))?, wk(&a1, &ba)])?;
                Ok((alpha(&a1), rhs))
            })
        })
        .collect()
}

fn comonoid(corpus: &[GameExpr], d: usize) -> Vec<Check> {
    const S: &str = "comonoid";
    let mut checks = Vec::new();
    for a in corpus {
        let game = a.to_string();
        for law in ["coassociative", "cocommutative", "left-counit", "right-counit"] {
            let a1 = a.clone();
            checks.push(Check::equal(S, format!("μ {law}"), game.clone(), d, move || {
                let cm = ComonoidPresentation::exponential(&a1)?;
                let (_, l, r) = cm.law_diagrams()?.into_iter().find(|(n, _, _)| *n == law).expect("known law");
                Ok((l, r))
            }));
        }
        let a1 = a.clone();
        checks.push(Check::equal(S, "μ=μ(cata)", game.clone(), d, move || Ok((mu(&a1)?, mu_via_cata(&a1)?))));
        let a1 = a.clone();
        checks.push(Check::equal(S, "μ=σ;∫⁻¹", game.clone(), d, move || {
            Ok((mu(&a1)?, compose(&sigma(&a1)?, &int_inv(&a1, &a1)?)?))
        }));
    }
    for (a, b) in pairs(corpus) {
        let game = format!("{a},{b}");
        let (a1, b1) = (a.clone(), b.clone());
        checks.push(Check::equal(S, "∫;∫⁻¹=id", game.clone(), d, move || {
            let x = GameExpr::tensor(GameExpr::bang(a1.clone()), GameExpr::bang(b1.clone()));
            Ok((compose(&int_fwd(&a1, &b1)?, &int_inv(&a1, &b1)?)?, copycat(&x)))
        }));
        let (a1, b1) = (a.clone(), b.clone());
        checks.push(Check::equal(S, "∫⁻¹;∫=id", game.clone(), d, move || {
            let y = GameExpr::bang(GameExpr::pair(a1.clone(), b1.clone()));
            Ok((compose(&int_inv(&a1, &b1)?, &int_fwd(&a1, &b1)?)?, copycat(&y)))
        }));
        let (a1, b1) = (a.clone(), b.clone());
        checks
            .push(Check::equal(S, "∫=copycat", game, d, move || Ok((int_fwd(&a1, &b1)?, int_fwd_oracle(&a1, &b1)))));
    }
    checks.push(Check::equal(S, "ε;η=id", "I", d, || {
        Ok((compose(&eps(), &eta(&GameExpr::Unit))?, copycat(&GameExpr::Unit)))
    }));
    checks.push(Check::equal(S, "η;ε=id", "I", d, || {
        Ok((compose(&eta(&GameExpr::Unit), &eps())?, copycat(&GameExpr::bang(GameExpr::Unit))))
    }));
    checks
}

fn monoidal_coherence(corpus: &[GameExpr], d: usize) -> Vec<Check> {
    const S: &str = "monoidal-coherence";
    let mut checks = Vec::new();
    for a in corpus.iter().filter(|g| **g != GameExpr::Unit).take(2) {
        let game = format!("{a},{a},{a}");
        let a1 = a.clone();
        checks.push(Check::equal(S, "(∫⊗id);∫;!assoc×=assoc;(id⊗∫);∫", game.clone(), d, move || {
            let (x, y, z) = (a1.clone(), a1.clone(), a1.clone());
            let (bx, by, bz) = (GameExpr::bang(x.clone()), GameExpr::bang(y.clone()), GameExpr::bang(z.clone()));
            let lhs = chain(&[
                map_tensor(&int_fwd(&x, &y)?, &copycat(&bz))?,
                int_fwd(&GameExpr::pair(x.clone(), y.clone()), &z)?,
                bang_map(&prod_assoc(&x, &y, &z))?,
            ])?;
            let rhs = chain(&[
                iso(IsoName::Assoc, &[bx.clone(), by, bz])?,
                map_tensor(&copycat(&bx), &int_fwd(&y, &z)?)?,
                int_fwd(&x, &GameExpr::pair(y.clone(), z.clone()))?,
            ])?;
            Ok((lhs, rhs))
        }));
        let game2 = format!("{a},{a}");
        let a1 = a.clone();
        checks.push(Check::equal(S, "∫;!sym×=sym;∫", game2.clone(), d, move || {
            let ba = GameExpr::bang(a1.clone());
            Ok((
                compose(&int_fwd(&a1, &a1)?, &bang_map(&prod_sym(&a1, &a1))?)?,
                compose(&sym(&ba, &ba), &int_fwd(&a1, &a1)?)?,
            ))
        }));
        let a1 = a.clone();
        checks.push(Check::equal(S, "lunit=(ε⊗id);∫;!lunit×⁻¹", a.to_string(), d, move || {
            let ba = GameExpr::bang(a1.clone());
            let i = GameExpr::Unit;
            let lhs = chain(&[
                map_tensor(&eps(), &copycat(&ba))?,
                int_fwd(&i, &a1)?,
                bang_map(&pr(&[i.clone(), a1.clone()], 1)?)?,
            ])?;
            Ok((lhs, iso(IsoName::Lunit, std::slice::from_ref(&ba))?))
        }));
        let a1 = a.clone();
        checks.push(Check::equal(S, "runit=(id⊗ε);∫;!runit×⁻¹", a.to_string(), d, move || {
            let ba = GameExpr::bang(a1.clone());
            let i = GameExpr::Unit;
            let lhs = chain(&[
                map_tensor(&copycat(&ba), &eps())?,
                int_fwd(&a1, &i)?,
                bang_map(&pr(&[a1.clone(), i.clone()], 0)?)?,
            ])?;
            Ok((lhs, iso(IsoName::Runit, std::slice::from_ref(&ba))?))
        }));
        let a1 = a.clone();
        checks.push(Check::equal(S, "!lunit×;!pr1=id", a.to_string(), d, move || {
            let i = GameExpr::Unit;
            Ok((
                compose(&bang_map(&prod_lunit(&a1))?, &bang_map(&pr(&[i, a1.clone()], 1)?)?)?,
                copycat(&GameExpr::bang(a1.clone())),
            ))
        }));
        let a1 = a.clone();
        checks.push(Check::equal(S, "!runit×;!pr0=id", a.to_string(), d, move || {
            let i = GameExpr::Unit;
            Ok((
                compose(&bang_map(&prod_runit(&a1))?, &bang_map(&pr(&[a1.clone(), i], 0)?)?)?,
                copycat(&GameExpr::bang(a1.clone())),
            ))
        }));
    }
    checks
}

/// A promotion problem together with wrong candidates the squares must reject.
struct CofreeCase {
    name: String,
    f: Strategy,
    cm: ComonoidPresentation,
    perturbed: Vec<Strategy>,
}

fn cofree_cases(corpus: &[GameExpr]) -> Result<Vec<CofreeCase>> {
    let mut cases = Vec::new();
    for a in corpus.iter().filter(|g| flat_values(g).is_some()).take(2) {
        let f = der(a)?;
        let cm = ComonoidPresentation::exponential(a)?;
        let good = promote(&f, &cm)?;
        let v0 = flat_values(a).expect("flat")[0].clone();
        let perturbed = vec![
            perturb::undefined(&good),
            perturb::truncate_after_copy0(&good),
            perturb::shift_copies(&good),
            perturb::eager_constant(good.host(), &v0)?,
        ];
        cases.push(CofreeCase { name: format!("der on {a}"), f, cm, perturbed });
    }
    let s = GameExpr::sigma();
    let bits = GameExpr::flat(&["0", "1"])?;
    let zero = Strategy::from_fn(GameExpr::limp(GameExpr::bang(s.clone()), bits), "const0", |_, _| {
        Ok(Some(Move::parse("r.0")?))
    });
    let cm = ComonoidPresentation::exponential(&s)?;
    let good = promote(&zero, &cm)?;
    let perturbed = vec![
        perturb::undefined(&good),
        perturb::truncate_after_copy0(&good),
        perturb::relabel_later_copies(&good, "0", "1"),
    ];
    cases.push(CofreeCase { name: "const0 from !sigma".into(), f: zero, cm, perturbed });
    cases.push(CofreeCase {
        name: "undefined on I".into(),
        f: Strategy::undefined(GameExpr::limp(GameExpr::Unit, s)),
        cm: ComonoidPresentation::trivial(),
        perturbed: Vec::new(),
    });
    Ok(cases)
}

fn cofree(corpus: &[GameExpr], d: usize) -> Vec<Check> {
    const S: &str = "cofree";
    let cases = match cofree_cases(corpus) {
        Ok(c) => c,
        Err(e) => {
            let msg = e.to_string();
            return vec![Check::equal(S, "construct-cases", "-", d, move || Err(GameError::Construction(msg.clone())))];
        }
    };
    let mut checks = Vec::new();
    for case in cases {
        let game = case.cm.carrier.to_string();
        for (i, label) in ["f†;der=f", "f†;μ=δ;(f†⊗f†)"].into_iter().enumerate() {
            let (f, cm) = (case.f.clone(), case.cm.clone());
            checks.push(Check::equal(S, format!("{} {label}", case.name), game.clone(), d, move || {
                let good = promote(&f, &cm)?;
                let [a, b] = cofree_squares(&good, &f, &cm)?;
                Ok(if i == 0 { a } else { b })
            }));
        }
        for bad in case.perturbed {
            // A wrong candidate must break at least one of the two squares.
            let (f, cm) = (case.f.clone(), case.cm.clone());
            let name = format!("{} rejects {}", case.name, bad.name());
            checks.push(Check::differ(S, name, game.clone(), d, move || {
                let [(l1, r1), (l2, r2)] = cofree_squares(&bad, &f, &cm)?;
                let opts = EquivOptions::default();
                if equiv_up_to_with(&l1, &r1, d, &opts)?.is_equal() {
                    Ok((l2, r2))
                } else {
                    Ok((l1, r1))
                }
            }));
        }
    }
    checks
}

fn functoriality(corpus: &[GameExpr], d: usize) -> Vec<Check> {
    const S: &str = "functoriality";
    let mut checks = Vec::new();
    for a in corpus.iter().filter(|g| flat_values(g).is_some()).take(2) {
        let game = a.to_string();
        let a1 = a.clone();
        checks.push(Check::equal(S, "!id=id", game.clone(), d, move || {
            Ok((bang_map(&copycat(&a1))?, copycat(&GameExpr::bang(a1.clone()))))
        }));
        let fs: Vec<Strategy> = endomorphism_corpus(a).into_iter().skip(1).take(4).collect();
        for f in &fs {
            let (a1, f1) = (a.clone(), f.clone());
            checks.push(Check::equal(S, format!("!{};der=der;{}", f.name(), f.name()), game.clone(), d, move || {
                Ok((compose(&bang_map(&f1)?, &der(&a1)?)?, compose(&der(&a1)?, &f1)?))
            }));
            let (a1, f1) = (a.clone(), f.clone());
            checks.push(Check::equal(S, format!("!{0};μ=μ;(!{0}⊗!{0})", f.name()), game.clone(), d, move || {
                let bf = bang_map(&f1)?;
                Ok((compose(&bf, &mu(&a1)?)?, compose(&mu(&a1)?, &map_tensor(&bf, &bf)?)?))
            }));
            if crate::strategy::is_strict(f, 1).unwrap_or(false) {
                let (a1, f1) = (a.clone(), f.clone());
                checks.push(Check::equal(
                    S,
                    format!("!{0};α=α;({0}⊘id);(id⊘!{0})", f.name()),
                    game.clone(),
                    d,
                    move || {
                        let bf = bang_map(&f1)?;
                        let ba = GameExpr::bang(a1.clone());
                        let rhs = chain(&[alpha(&a1), map_seq(&f1, &copycat(&ba))?, map_seq(&copycat(&a1), &bf)?])?;
                        Ok((compose(&bf, &alpha(&a1))?, rhs))
                    },
                ));
            }
            for g in fs.iter().take(2) {
                let (f1, g1) = (f.clone(), g.clone());
                checks.push(Check::equal(
                    S,
                    format!("!({0};{1})=!{0};!{1}", f.name(), g.name()),
                    game.clone(),
                    d,
                    move || Ok((bang_map(&compose(&f1, &g1)?)?, compose(&bang_map(&f1)?, &bang_map(&g1)?)?)),
                ));
            }
        }
        let a1 = a.clone();
        checks
            .push(Check::equal(S, "!Δ=σ", game.clone(), d, move || Ok((bang_map(&diagonal(&a1, 2)?)?, sigma(&a1)?))));
        let a1 = a.clone();
        checks.push(Check::equal(S, "!(f×g) on pairs", game, d, move || {
            let p = GameExpr::pair(a1.clone(), a1.clone());
            Ok((bang_map(&map_prod(&[copycat(&a1), copycat(&a1)])?)?, copycat(&GameExpr::bang(p))))
        }));
    }
    checks
}

/// The checks making up a named suite.
pub fn suite_checks(suite: &str, corpus: &[GameExpr], d: usize) -> Result<Vec<Check>> {
    Ok(match suite {
        "category" => category(corpus, d),
        "sequoid-coherence" => sequoid_coherence(corpus, d),
        "iso" => isos(corpus, d),
        "coalgebra" => coalgebra(corpus, d),
        "alpha-formula" => alpha_formula(corpus, d),
        "comonoid" => comonoid(corpus, d),
        "monoidal-coherence" => monoidal_coherence(corpus, d),
        "cofree" => cofree(corpus, d),
        "functoriality" => functoriality(corpus, d),
        "stateful" => crate::stateful::stateful_checks(d),
        "all" => {
            let mut all = Vec::new();
            for s in SUITES {
                all.extend(suite_checks(s, corpus, d)?);
            }
            all
        }
        _ => {
            return Err(GameError::Construction(format!("unknown suite `{suite}`; known: all, {}", SUITES.join(", "))))
        }
    })
}

/// Run every diagram of a suite as a bounded equivalence check.
pub fn run_law_suite(suite: &str, corpus: &[GameExpr], d: usize) -> Result<LawReport> {
    run_law_suite_with(suite, corpus, d, &EquivOptions::default())
}

pub fn run_law_suite_with(suite: &str, corpus: &[GameExpr], d: usize, opts: &EquivOptions) -> Result<LawReport> {
    Ok(LawReport::run_with(suite_checks(suite, corpus, d)?, opts))
}
