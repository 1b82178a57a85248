//! Reference cells and stacks as anamorphisms of state transformers.

use crate::coalgebra::{alpha, ana, SequoidCoalgebra};
use crate::comonoid::Check;
use crate::comonoid::{bang_map, chain, eps};
use crate::composition::compose;
use crate::connectives::{copycat, dist_inv, map_product, map_seq, map_tensor, structural_iso, terminal, wk, IsoName};
use crate::error::{GameError, Result};
use crate::game::{GameExpr, Move, Tag, QUESTION};
use crate::strategy::{explore, Ctx, Strategy};

/// Default bound on stack depth.
pub const DEFAULT_STACK_BOUND: usize = 8;

/// Value returned by `pop` on an empty stack.
pub const EMPTY: &str = "empty";

/// A finite value set with a default element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSpec {
    values: Vec<String>,
    default: usize,
}

impl VarSpec {
    pub fn new<S: AsRef<str>>(values: &[S], default: &str) -> Result<VarSpec> {
        let values: Vec<String> = values.iter().map(|v| v.as_ref().to_string()).collect();
        // Validates names and distinctness.
        GameExpr::flat(&values)?;
        let default = values
            .iter()
            .position(|v| v == default)
            .ok_or_else(|| GameError::Construction(format!("default `{default}` is not among the values")))?;
        Ok(VarSpec { values, default })
    }

    pub fn values(&self) -> &[String] {
        &self.values
    }

    pub fn default_value(&self) -> &str {
        &self.values[self.default]
    }

    pub fn value_game(&self) -> GameExpr {
        GameExpr::flat(&self.values).expect("validated in VarSpec::new")
    }

    fn index(&self, v: &str) -> Result<usize> {
        self.values
            .iter()
            .position(|x| x == v)
            .ok_or_else(|| GameError::Construction(format!("`{v}` is not among the values {:?}", self.values)))
    }
}

/// `Var[X] = Σ^X × ⟨X⟩`: factor `i:k` is `write` of the k-th value, the last factor is `read`.
pub fn var_game(v: &VarSpec) -> GameExpr {
    let mut factors = vec![GameExpr::sigma(); v.values.len()];
    factors.push(v.value_game());
    GameExpr::Prod(factors.into())
}

/// The point `⟨x⟩ : I ⊸ G` of a flat game.
pub fn point(g: &GameExpr, x: &str) -> Result<Strategy> {
    match g {
        GameExpr::Flat(vs) if vs.iter().any(|v| v == x) => {
            let reply = Move::new(vec![Tag::R], x);
            Ok(Strategy::from_fn(GameExpr::limp(GameExpr::Unit, g.clone()), format!("⟨{x}⟩"), move |_, _| {
                Ok(Some(reply.clone()))
            }))
        }
        _ => Err(GameError::Construction(format!("`{x}` is not a value of {g}"))),
    }
}

/// `!⟨x⟩ : I ⊸ !G`, through `I ≅ !I`.
pub fn bang_point(g: &GameExpr, x: &str) -> Result<Strategy> {
    Ok(compose(&eps(), &bang_map(&point(g, x)?)?)?.renamed(format!("!⟨{x}⟩")))
}

fn ok() -> Strategy {
    point(&GameExpr::sigma(), "*").expect("sigma has *").renamed("OK")
}

/// `!S → I → I⊗I → Σ⊗!S → Σ⊘!S` with `!⟨x⟩` as the new state.
fn overwrite(state: &GameExpr, x: &str) -> Result<Strategy> {
    let bs = GameExpr::bang(state.clone());
    let i = GameExpr::Unit;
    let (_, runit_inv) = structural_iso(IsoName::Runit, std::slice::from_ref(&i))?;
    chain(&[
        terminal(&bs),
        runit_inv.expect("runit is invertible"),
        map_tensor(&ok(), &bang_point(state, x)?)?,
        wk(&GameExpr::sigma(), &bs),
    ])
}

/// `write_x : !⟨X⟩ ⊸ Σ⊘!⟨X⟩`, discarding the old state.
pub fn write(v: &VarSpec, x: &str) -> Result<Strategy> {
    v.index(x)?;
    Ok(overwrite(&v.value_game(), x)?.renamed(format!("write_{x}")))
}

/// `read = α_⟨X⟩`.
pub fn read(v: &VarSpec) -> Strategy {
    alpha(&v.value_game()).renamed("read")
}

/// `cell_ST = ⟨write_x, read⟩; dist⁻¹ : !⟨X⟩ ⊸ Var[X] ⊘ !⟨X⟩`.
pub fn cell_transformer(v: &VarSpec) -> Result<SequoidCoalgebra> {
    let mut methods = v.values.iter().map(|x| write(v, x)).collect::<Result<Vec<_>>>()?;
    methods.push(read(v));
    let GameExpr::Prod(factors) = var_game(v) else { unreachable!() };
    let step = chain(&[map_product(&methods)?, dist_inv(&factors, &GameExpr::bang(v.value_game()))?])?;
    SequoidCoalgebra::new(step.renamed("cell_ST"))
}

/// `cell_init = ana(cell_ST) : !⟨X⟩ ⊸ !Var[X]`.
pub fn cell_init(v: &VarSpec) -> Result<Strategy> {
    Ok(ana(&cell_transformer(v)?).renamed("cell_init"))
}

/// `cell = !⟨d⟩; cell_init : I ⊸ !Var[X]`.
pub fn cell(v: &VarSpec) -> Result<Strategy> {
    let init = bang_point(&v.value_game(), v.default_value())?;
    Ok(compose(&init, &cell_init(v)?)?.renamed("cell"))
}

fn copy_method(m: &Move) -> Option<(u32, usize, &str)> {
    match m.path.as_slice() {
        [Tag::R, Tag::C(n), Tag::I(k)] => Some((*n, *k as usize, &m.base)),
        _ => None,
    }
}

/// The history-scanning cell: `read` answers the most recently written value, or the default.
pub fn combinatorial_cell(v: &VarSpec) -> Strategy {
    let v = v.clone();
    let host = GameExpr::limp(GameExpr::Unit, GameExpr::bang(var_game(&v)));
    Strategy::from_fn(host, "combinatorial-cell", move |s, o| {
        let Some((n, k, base)) = copy_method(o) else { return Ok(None) };
        if base != QUESTION {
            return Ok(None);
        }
        let answer = if k < v.values.len() {
            "*".to_string()
        } else {
            s.iter()
                .rev()
                .filter_map(copy_method)
                .find(|(_, j, b)| *j < v.values.len() && *b == QUESTION)
                .map_or_else(|| v.default_value().to_string(), |(_, j, _)| v.values[j].clone())
        };
        Ok(Some(Move::new(vec![Tag::R, Tag::C(n), Tag::I(k as u32)], answer.as_str())))
    })
}

/// Bounded stacks over `X`, encoded as flat values `s`, `s_i_j…` (value indices, top first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackSpec {
    pub values: VarSpec,
    pub bound: usize,
}

impl StackSpec {
    pub fn new(values: VarSpec, bound: usize) -> Result<StackSpec> {
        if values.values.iter().any(|v| v == EMPTY) {
            return Err(GameError::Construction(format!("`{EMPTY}` is reserved for pop on an empty stack")));
        }
        if bound == 0 {
            return Err(GameError::Construction("stack bound must be at least 1".into()));
        }
        Ok(StackSpec { values, bound })
    }

    pub fn encode(stack: &[usize]) -> String {
        std::iter::once("s".to_string()).chain(stack.iter().map(|i| i.to_string())).collect::<Vec<_>>().join("_")
    }

    pub fn decode(name: &str) -> Option<Vec<usize>> {
        let mut parts = name.split('_');
        (parts.next()? == "s").then_some(())?;
        parts.map(|p| p.parse().ok()).collect()
    }

    fn all_stacks(&self) -> Vec<Vec<usize>> {
        let n = self.values.values.len();
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..self.bound {
            layer = layer
                .iter()
                .flat_map(|s: &Vec<usize>| {
                    (0..n).map(move |i| {
                        let mut t = vec![i];
                        t.extend(s);
                        t
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    /// The state game `⟨X*≤K⟩`.
    pub fn state_game(&self) -> GameExpr {
        let names: Vec<String> = self.all_stacks().iter().map(|s| StackSpec::encode(s)).collect();
        GameExpr::flat(&names).expect("encoded names are valid")
    }

    /// `Σ^X × ⟨X + empty⟩`: `push_x` factors, then `pop`.
    pub fn method_game(&self) -> GameExpr {
        let mut factors = vec![GameExpr::sigma(); self.values.values.len()];
        let mut pops = self.values.values.clone();
        pops.push(EMPTY.to_string());
        factors.push(GameExpr::flat(&pops).expect("validated values"));
        GameExpr::Prod(factors.into())
    }
}

fn strict_state_map(
    from: &GameExpr,
    to: &GameExpr,
    name: String,
    f: impl Fn(&[usize]) -> String + Send + Sync + 'static,
) -> Strategy {
    Strategy::from_fn(GameExpr::limp(from.clone(), to.clone()), name, move |_, o| {
        Ok(Some(match o.head() {
            Some(Tag::R) => Move::new(vec![Tag::L], QUESTION),
            _ => {
                let s = StackSpec::decode(&o.base)
                    .ok_or_else(|| GameError::Construction(format!("bad stack `{}`", o.base)))?;
                Move::new(vec![Tag::R], f(&s).as_str())
            }
        }))
    })
}

/// `push_x = lunit⁻¹; OK⊗!cons_x; wk`; a push onto a full stack leaves it unchanged.
fn push(st: &StackSpec, k: usize) -> Result<Strategy> {
    let sg = st.state_game();
    let bs = GameExpr::bang(sg.clone());
    let bound = st.bound;
    let cons = strict_state_map(&sg, &sg, format!("cons_{k}"), move |s| {
        if s.len() >= bound {
            StackSpec::encode(s)
        } else {
            let mut t = vec![k];
            t.extend(s);
            StackSpec::encode(&t)
        }
    });
    let (_, lunit_inv) = structural_iso(IsoName::Lunit, std::slice::from_ref(&bs))?;
    Ok(chain(&[
        lunit_inv.expect("lunit is invertible"),
        map_tensor(&ok(), &bang_map(&cons)?)?,
        wk(&GameExpr::sigma(), &bs),
    ])?
    .renamed(format!("push_{}", st.values.values[k])))
}

/// `pop = α; head⊘!tail`.
fn pop(st: &StackSpec) -> Result<Strategy> {
    let sg = st.state_game();
    let GameExpr::Prod(fs) = st.method_game() else { unreachable!() };
    let out = fs.last().expect("pop factor").clone();
    let names = st.values.values.clone();
    let head = strict_state_map(&sg, &out, "head".into(), move |s| {
        s.first().map_or_else(|| EMPTY.to_string(), |i| names[*i].clone())
    });
    let tail = strict_state_map(&sg, &sg, "tail".into(), |s| StackSpec::encode(s.get(1..).unwrap_or(&[])));
    Ok(compose(&alpha(&sg), &map_seq(&head, &bang_map(&tail)?)?)?.renamed("pop"))
}

/// `⟨push_x, pop⟩; dist⁻¹ : !S ⊸ Stack[X] ⊘ !S`.
pub fn stack_transformer(st: &StackSpec) -> Result<SequoidCoalgebra> {
    let mut methods = (0..st.values.values.len()).map(|k| push(st, k)).collect::<Result<Vec<_>>>()?;
    methods.push(pop(st)?);
    let GameExpr::Prod(factors) = st.method_game() else { unreachable!() };
    let step = chain(&[map_product(&methods)?, dist_inv(&factors, &GameExpr::bang(st.state_game()))?])?;
    SequoidCoalgebra::new(step.renamed("stack_ST"))
}

/// An initially empty stack, `I ⊸ !Stack[X]`.
pub fn stack(st: &StackSpec) -> Result<Strategy> {
    let init = bang_point(&st.state_game(), &StackSpec::encode(&[]))?;
    Ok(compose(&init, &ana(&stack_transformer(st)?))?.renamed("stack"))
}

/// One step of a method script, e.g. `write 1`, `read`, `push 2`, `pop`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptStep {
    pub method: String,
    pub arg: Option<String>,
    pub result: String,
}

impl std::fmt::Display for ScriptStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.arg {
            Some(a) => write!(f, "{} {} -> {}", self.method, a, self.result),
            None => write!(f, "{} -> {}", self.method, self.result),
        }
    }
}

/// Drive a strategy on `I ⊸ !(Σ^X × ⟨Y⟩)` through a `;`-separated script, one copy per call.
///
/// `setter` names the `Σ` methods (`write` or `push`) and `getter` the final factor.
pub fn run_script(
    sigma: &Strategy,
    values: &VarSpec,
    setter: &str,
    getter: &str,
    script: &str,
    ctx: &Ctx,
) -> Result<(Vec<ScriptStep>, Vec<Move>)> {
    let mut player = sigma.player();
    let mut trace = Vec::new();
    let mut steps = Vec::new();
    for (n, cmd) in script.split(';').map(str::trim).filter(|c| !c.is_empty()).enumerate() {
        let words: Vec<&str> = cmd.split_whitespace().collect();
        let (k, method, arg) = match words.as_slice() {
            [m, x] if *m == setter => (values.index(x)?, *m, Some(x.to_string())),
            [m] if *m == getter => (values.values.len(), *m, None),
            _ => {
                return Err(GameError::Construction(format!(
                    "unknown script command `{cmd}`; expected `{setter} <value>` or `{getter}`"
                )))
            }
        };
        let o = Move::new(vec![Tag::R, Tag::C(n as u32), Tag::I(k as u32)], QUESTION);
        trace.push(o.clone());
        let reply = player.play(&o, ctx)?;
        let result = match &reply {
            Some(p) if p.path == o.path => {
                if k < values.values.len() {
                    "ok".to_string()
                } else {
                    p.base.to_string()
                }
            }
            Some(p) => {
                return Err(GameError::IllegalMove { position: crate::game::show_position(&trace), mv: p.to_string() })
            }
            None => "no answer".to_string(),
        };
        trace.extend(reply);
        steps.push(ScriptStep { method: method.to_string(), arg, result });
    }
    Ok((steps, trace))
}

/// Explore `σ` to depth `d` and return the first read whose answer is not the last write (or the default).
pub fn read_coherence_violation(sigma: &Strategy, v: &VarSpec, d: usize) -> Result<Option<Vec<Move>>> {
    let mut bad = None;
    explore(sigma, d, &Ctx::default(), usize::MAX, |s, outcome| {
        if bad.is_some() {
            return Ok(());
        }
        let Some((_, k, _)) = s.last().and_then(copy_method) else { return Ok(()) };
        if k != v.values.len() {
            return Ok(());
        }
        let mut expected = v.default_value();
        for m in &s[..s.len() - 1] {
            if let Some((_, j, b)) = copy_method(m) {
                if j < v.values.len() && b == "*" {
                    expected = &v.values[j];
                }
            }
        }
        let answered = matches!(outcome, Ok(Some(m)) if &*m.base == expected);
        if !answered {
            let mut p = s.to_vec();
            if let Ok(Some(m)) = outcome {
                p.push(m.clone());
            }
            bad = Some(p);
        }
        Ok(())
    })?;
    Ok(bad)
}

/// Bounded checks of the cell and stack constructions.
pub fn stateful_checks(d: usize) -> Vec<Check> {
    const S: &str = "stateful";
    let specs = [("0", vec!["0", "1"]), ("1", vec!["0", "1", "2"])];
    let mut checks = Vec::new();
    for (default, values) in specs {
        let v = VarSpec::new(&values, default).expect("valid spec");
        let game = var_game(&v).to_string();
        let v1 = v.clone();
        checks.push(Check::equal(
            S,
            format!("cell=combinatorial-cell(d={default})"),
            game.clone(),
            d.max(8),
            move || Ok((cell(&v1)?, combinatorial_cell(&v1))),
        ));
        let v1 = v.clone();
        checks.push(Check::equal(S, "ana(cell_ST);α=cell_ST;(id⊘ana)", game.clone(), d, move || {
            let c = cell_transformer(&v1)?;
            let u = ana(&c);
            let p = c.payload_game.clone();
            Ok((compose(&u, &alpha(&p))?, compose(&c.step, &map_seq(&copycat(&p), &u)?)?))
        }));
    }
    let st = StackSpec::new(VarSpec::new(&["0", "1"], "0").expect("valid spec"), 3).expect("valid stack");
    let game = st.method_game().to_string();
    let st1 = st.clone();
    checks.push(Check::equal(S, "ana(stack_ST);α=stack_ST;(id⊘ana)", game, d.min(6), move || {
        let c = stack_transformer(&st1)?;
        let u = ana(&c);
        let p = c.payload_game.clone();
        Ok((compose(&u, &alpha(&p))?, compose(&c.step, &map_seq(&copycat(&p), &u)?)?))
    }));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::equiv_up_to;
    use crate::strategy::is_strict;

    fn bits() -> VarSpec {
        VarSpec::new(&["0", "1"], "0").unwrap()
    }

    #[test]
    fn var_game_shape() {
        let g = var_game(&bits());
        assert_eq!(g.to_string(), "prod(sigma,sigma,flat{0,1})");
        assert_eq!(g.o_moves(&[]).len(), 3);
        assert!(VarSpec::new(&["0", "1"], "2").is_err());
        assert!(VarSpec::new(&["0", "0"], "0").is_err());
    }

    #[test]
    fn cell_answers_scripts() {
        let c = cell(&bits()).unwrap();
        let ctx = Ctx::default();
        let run = |script| {
            run_script(&c, &bits(), "write", "read", script, &ctx)
                .unwrap()
                .0
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(run("read"), ["read -> 0"]);
        assert_eq!(run("write 1; read"), ["write 1 -> ok", "read -> 1"]);
        assert_eq!(run("write 1; write 0; read; read"), ["write 1 -> ok", "write 0 -> ok", "read -> 0", "read -> 0"]);
    }

    #[test]
    fn read_is_strict_writes_are_not() {
        let v = bits();
        assert!(is_strict(&read(&v), 4).unwrap());
        assert!(!is_strict(&write(&v, "1").unwrap(), 4).unwrap());
        let st = cell_transformer(&v).unwrap();
        let reply = st.step.respond(&[Move::parse("r.l.i:2.q").unwrap()]).unwrap();
        assert_eq!(reply.unwrap().to_string(), "l.c:0.q");
    }

    #[test]
    fn cell_matches_oracle() {
        let v = bits();
        assert!(equiv_up_to(&cell(&v).unwrap(), &combinatorial_cell(&v), 8).unwrap().is_equal());
    }

    #[test]
    fn stack_pushes_and_pops() {
        let st = StackSpec::new(bits(), 3).unwrap();
        let s = stack(&st).unwrap();
        let ctx = Ctx::default();
        let (steps, _) = run_script(&s, &st.values, "push", "pop", "pop; push 1; push 0; pop; pop; pop", &ctx).unwrap();
        let results: Vec<_> = steps.iter().map(|s| s.result.as_str()).collect();
        assert_eq!(results, ["empty", "ok", "ok", "0", "1", "empty"]);
    }

    #[test]
    fn reads_see_last_write() {
        let v = VarSpec::new(&["0", "1", "2"], "1").unwrap();
        assert_eq!(read_coherence_violation(&cell(&v).unwrap(), &v, 8).unwrap(), None);
        let stale = crate::comonoid::perturb::undefined(&combinatorial_cell(&v));
        assert!(read_coherence_violation(&stale, &v, 8).unwrap().is_some());
    }

    #[test]
    fn stack_codec() {
        assert_eq!(StackSpec::encode(&[]), "s");
        assert_eq!(StackSpec::encode(&[1, 0]), "s_1_0");
        assert_eq!(StackSpec::decode("s_1_0"), Some(vec![1, 0]));
        assert_eq!(StackSpec::decode("t"), None);
        assert_eq!(StackSpec::new(bits(), 2).unwrap().all_stacks().len(), 7);
    }
}
