use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use seqgames::comonoid::{default_corpus, endomorphism_corpus, run_law_suite_with, SUITES};
use seqgames::composition::EquivOptions;
use seqgames::game::trace::write_trace;
use seqgames::game::{parse_dsl, GameExpr, Move};
use seqgames::rel_model::{
    ana_rel, cell_methods, cell_rel, check_universal_property, encapsulate, finality_search, Atom, FinSet, RelComonoid,
    Relation,
};
use seqgames::stateful::{cell, run_script, stack, StackSpec, VarSpec, DEFAULT_STACK_BOUND};
use seqgames::strategy::{Ctx, Strategy};
use seqgames::transfinite_win::{check_rank_props, length_sup, rank, rank_leq, Ordinal, SymbolicSeq};
use seqgames::{GameError, Result};

#[derive(Parser)]
#[command(name = "seqgames", version, about = "Sequoidal game semantics: law checks, plays and ranks")]
struct Cli {
    /// Seed for randomised checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Hidden-move budget per visible move.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a law suite on a corpus of games.
    Check(CheckArgs),
    /// Play O-moves against a named strategy, one per line on stdin.
    Explore(ExploreArgs),
    /// Finite relational model demonstrations.
    Rel {
        #[command(subcommand)]
        demo: RelDemo,
    },
    /// Rank and play-length queries.
    Ordinal {
        #[command(subcommand)]
        query: OrdinalQuery,
    },
    /// Replay method scripts against the cell or the stack.
    Demo {
        #[command(subcommand)]
        demo: Demo,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// A game expression, or `@path` for a corpus file. Repeatable.
    #[arg(long)]
    game: Vec<String>,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    depth: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExploreArgs {
    /// Strategy name: `cell`, `stack`, or an endomorphism of `--game` (`id`, `undefined`, ...).
    #[arg(long)]
    strategy: String,
    #[arg(long, default_value = "sigma")]
    game: String,
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    values: Vec<String>,
    #[arg(long, default_value = "0")]
    default: String,
}

#[derive(Subcommand)]
enum RelDemo {
    /// The cell relation and its encapsulation.
    Cell {
        #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
        values: Vec<String>,
        #[arg(long, default_value_t = 2)]
        length: usize,
    },
    /// Comonoid laws and cofreeness of words over an alphabet.
    Comonoid {
        #[arg(long, value_delimiter = ',', default_value = "a,b")]
        alphabet: Vec<String>,
        #[arg(long, default_value_t = 2)]
        length: usize,
    },
    /// Exhaustive finality check of the graded words coalgebra.
    Finality {
        #[arg(long, value_delimiter = ',', default_value = "a")]
        alphabet: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "s")]
        states: Vec<String>,
        #[arg(long, default_value_t = 2)]
        length: usize,
    },
}

#[derive(Subcommand)]
enum OrdinalQuery {
    /// Whether a sequence satisfies `s ≤ γ`.
    Rank { seq: String, ordinal: String },
    /// The least `γ` with `s ≤ γ`.
    MinRank { seq: String },
    /// Supremum of play lengths of a game.
    Length { game: String },
    /// Check closure properties of the rank predicate on seeded samples.
    Props {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

#[derive(Subcommand)]
enum Demo {
    Cell {
        #[arg(long, value_delimiter = ',', default_value = "0,1")]
        values: Vec<String>,
        #[arg(long, default_value = "0")]
        default: String,
        #[arg(long, default_value = "write 1; read")]
        script: String,
        /// Print the move trace after the results.
        #[arg(long)]
        trace: bool,
    },
    Stack {
        #[arg(long, value_delimiter = ',', default_value = "0,1")]
        values: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_STACK_BOUND)]
        bound: usize,
        #[arg(long, default_value = "push 1; push 0; pop; pop; pop")]
        script: String,
        #[arg(long)]
        trace: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { budget: cli.budget as usize };
    match run(cli.cmd, cli.seed, &ctx) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command, seed: u64, ctx: &Ctx) -> Result<bool> {
    match cmd {
        Command::Check(a) => check(a, ctx),
        Command::Explore(a) => explore(a, ctx),
        Command::Rel { demo } => rel(demo),
        Command::Ordinal { query } => ordinal(query, seed),
        Command::Demo { demo } => demo_script(demo, ctx),
    }
}

fn read_corpus(path: &str) -> Result<Vec<GameExpr>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| GameError::Construction(format!("cannot read {path}: {e}")))?;
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(parse_dsl).collect()
}

fn corpus(args: &[String]) -> Result<Vec<GameExpr>> {
    if args.is_empty() {
        return match std::env::var("SEQGAMES_CORPUS") {
            Ok(path) => read_corpus(&path),
            Err(_) => Ok(default_corpus()),
        };
    }
    let mut out = Vec::new();
    for a in args {
        match a.strip_prefix('@') {
            Some(path) => out.extend(read_corpus(path)?),
            None => out.push(parse_dsl(a)?),
        }
    }
    Ok(out)
}

fn check(a: CheckArgs, ctx: &Ctx) -> Result<bool> {
    if a.suite != "all" && !SUITES.contains(&a.suite.as_str()) {
        return Err(GameError::Construction(format!("unknown suite `{}`; known: all, {}", a.suite, SUITES.join(", "))));
    }
    let games = corpus(&a.game)?;
    let opts = EquivOptions { budget: ctx.budget, ..EquivOptions::default() };
    let report = run_law_suite_with(&a.suite, &games, a.depth as usize, &opts)?;
    if a.json {
        println!("{}", report.json());
    } else {
        print!("{}", report.text());
        let failed = report.failures().count();
        println!("{} checks, {} failed", report.results.len(), failed);
    }
    Ok(report.all_passed())
}

fn named_strategy(a: &ExploreArgs) -> Result<Strategy> {
    match a.strategy.as_str() {
        "cell" => cell(&VarSpec::new(&a.values, &a.default)?),
        "stack" => stack(&StackSpec::new(VarSpec::new(&a.values, &a.values[0])?, DEFAULT_STACK_BOUND)?),
        name => {
            let g = parse_dsl(&a.game)?;
            let all = endomorphism_corpus(&g);
            let names: Vec<String> = all.iter().map(|s| s.name().to_string()).collect();
            all.into_iter().find(|s| s.name() == name).ok_or_else(|| {
                GameError::Construction(format!(
                    "unknown strategy `{name}` on {g}; known: cell, stack, {}",
                    names.join(", ")
                ))
            })
        }
    }
}

fn explore(a: ExploreArgs, ctx: &Ctx) -> Result<bool> {
    let sigma = named_strategy(&a)?;
    let game = sigma.host().clone();
    println!("{} on {}", sigma.name(), sigma.host());
    println!("enter O-moves; :trace, :reset, :quit");
    let mut player = sigma.player();
    let mut trace: Vec<Move> = Vec::new();
    let mut out = io::stdout();
    for line in io::stdin().lock().lines() {
        let line = line.map_err(|e| GameError::Construction(e.to_string()))?;
        match line.trim() {
            "" => continue,
            ":quit" => break,
            ":trace" => print!("{}", write_trace(&trace)),
            ":reset" => {
                player = sigma.player();
                trace.clear();
            }
            text => {
                let m = match Move::parse(text) {
                    Ok(m) => m,
                    Err(e) => {
                        println!("error: {e}");
                        continue;
                    }
                };
                if trace.len() % 2 == 1 || !game.is_legal_next(&trace, &m) {
                    println!("error: `{m}` is not a legal O-move here");
                    continue;
                }
                let mut next = player.clone();
                match next.play(&m, ctx) {
                    Ok(reply) => {
                        player = next;
                        trace.push(m);
                        match reply {
                            Some(p) => {
                                println!("P {p}");
                                trace.push(p);
                            }
                            None => println!("P -"),
                        }
                    }
                    Err(e) => println!("error: {e}"),
                }
            }
        }
        out.flush().ok();
    }
    Ok(true)
}

fn names(xs: &[String]) -> Result<FinSet> {
    FinSet::names(&xs.iter().map(String::as_str).collect::<Vec<_>>())
}

fn rel(demo: RelDemo) -> Result<bool> {
    match demo {
        RelDemo::Cell { values, length } => {
            let v = names(&values)?;
            let c = cell_rel(&v)?;
            println!("cell: {} pairs", c.len());
            print!("{}", c.to_text());
            let methods = cell_methods(&v);
            let traces = ana_rel(&methods, &encapsulate(&methods, &c)?, length)?;
            println!("terminating traces up to length {length}: {} pairs", traces.len());
            print!("{}", traces.to_text());
            Ok(true)
        }
        RelDemo::Comonoid { alphabet, length } => {
            let a = names(&alphabet)?;
            let (cm, eta) = RelComonoid::words(&a, length);
            let law = cm.law_violation()?;
            println!("carrier: {} words", cm.carrier.len());
            println!("laws: {}", law.map_or("hold".to_string(), |l| format!("{l} fails")));
            println!("commutative: {}", cm.is_commutative()?);
            let f = Relation::new(FinSet::unit(), a.clone(), a.iter().map(|x| (Atom::Star, x.clone())))?;
            let report = check_universal_property(&a, &RelComonoid::trivial(), &f, length)?;
            println!(
                "lifting of I -> A: {} pairs, morphism: {}, unique: {}",
                report.lifting.len(),
                report.lifting_is_morphism,
                report.solutions.map_or("not searched".to_string(), |n| (n == 1).to_string())
            );
            println!("eta: {} pairs", eta.len());
            Ok(law.is_none() && report.holds())
        }
        RelDemo::Finality { alphabet, states, length } => {
            let r = finality_search(&names(&alphabet)?, &names(&states)?, length)?;
            println!("coalgebras: {}, candidate morphisms: {}", r.coalgebras, r.candidates);
            for f in &r.failures {
                println!("FAIL {f}");
            }
            println!("{}", if r.failures.is_empty() { "final" } else { "not final" });
            Ok(r.failures.is_empty())
        }
    }
}

fn ordinal(q: OrdinalQuery, seed: u64) -> Result<bool> {
    match q {
        OrdinalQuery::Rank { seq, ordinal } => {
            let s: SymbolicSeq = seq.parse()?;
            let g: Ordinal = ordinal.parse()?;
            println!("{}", rank_leq(&s, &g)?);
        }
        OrdinalQuery::MinRank { seq } => println!("{}", rank(&seq.parse()?)),
        OrdinalQuery::Length { game } => println!("{}", length_sup(&parse_dsl(&game)?)?),
        OrdinalQuery::Props { trials } => {
            let r = check_rank_props(trials, seed);
            println!(
                "{} random and {} symbolic sequences, {} checks, {} failed",
                r.random_sequences,
                r.symbolic_sequences,
                r.checks,
                r.failures.len()
            );
            for f in &r.failures {
                println!("FAIL {f}");
            }
            return Ok(r.passed());
        }
    }
    Ok(true)
}

fn demo_script(demo: Demo, ctx: &Ctx) -> Result<bool> {
    let (sigma, values, setter, getter, script, show) = match demo {
        Demo::Cell { values, default, script, trace } => {
            let v = VarSpec::new(&values, &default)?;
            (cell(&v)?, v, "write", "read", script, trace)
        }
        Demo::Stack { values, bound, script, trace } => {
            let first = values.first().cloned().unwrap_or_default();
            let st = StackSpec::new(VarSpec::new(&values, &first)?, bound)?;
            (stack(&st)?, st.values, "push", "pop", script, trace)
        }
    };
    let (steps, moves) = run_script(&sigma, &values, setter, getter, &script, ctx)?;
    for s in &steps {
        println!("{s}");
    }
    if show {
        print!("{}", write_trace(&moves));
    }
    Ok(true)
}
