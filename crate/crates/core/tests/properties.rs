use proptest::prelude::*;

use seqgames::comonoid::endomorphism_corpus;
use seqgames::composition::{compose, equiv_up_to};
use seqgames::connectives::{copycat, map_tensor};
use seqgames::game::{parse_dsl, positions_up_to, GameExpr, GameIntension, Polarity, Tag};
use seqgames::rel_model::{Atom, FinSet, RelComonoid};
use seqgames::stateful::{cell, run_script, VarSpec};
use seqgames::strategy::{check_strategy_set, is_strict, response_set, strategy_from_set, Ctx, Strategy as Play};
use seqgames::transfinite_win::{length_sup, rank, rank_leq, Block, Ordinal, SymbolicSeq};

fn ordinal() -> impl Strategy<Value = Ordinal> {
    prop::collection::vec((0u32..4, 0u64..5), 0..4).prop_map(Ordinal::from_terms)
}

fn below_omega_squared() -> impl Strategy<Value = Ordinal> {
    (0u64..4, 0u64..8).prop_map(|(j, n)| Ordinal::monomial(1, j).add(&Ordinal::nat(n)))
}

fn symbolic() -> impl Strategy<Value = SymbolicSeq> {
    let block = prop_oneof![Just(Block::Asc), prop::collection::vec(0u64..5, 0..4).prop_map(Block::Fin),];
    prop::collection::vec(block, 0..4).prop_map(SymbolicSeq::new)
}

fn atom() -> impl Strategy<Value = Atom> {
    let leaf = prop_oneof![Just(Atom::Star), "[a-z][a-z0-9_]{0,2}".prop_map(|s| Atom::name(&s))];
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..3).prop_map(Atom::Word),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Atom::pair(a, b)),
            ("[a-z]{1,5}", inner).prop_map(|(t, a)| Atom::tagged(&t, a)),
        ]
    })
}

fn game() -> impl Strategy<Value = GameExpr> {
    let leaf = prop_oneof![Just(GameExpr::Unit), Just(GameExpr::sigma()), Just(GameExpr::flat(&["0", "1"]).unwrap()),];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| GameExpr::tensor(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| GameExpr::seq(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| GameExpr::limp(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| GameExpr::prod(vec![a, b]).unwrap()),
            inner.prop_map(GameExpr::bang),
        ]
    })
}

fn small_game() -> impl Strategy<Value = GameExpr> {
    prop::sample::select(vec![
        "I",
        "sigma",
        "flat{0,1}",
        "flat{0,1,2}",
        "prod(sigma,sigma)",
        "tensor(sigma,sigma)",
        "seq(sigma,sigma)",
    ])
    .prop_map(|g| parse_dsl(g).unwrap())
}

/// A game with three endomorphisms drawn from its corpus.
fn endo_triple() -> impl Strategy<Value = (GameExpr, Play, Play, Play)> {
    small_game().prop_flat_map(|g| {
        let fs = endomorphism_corpus(&g);
        let pick = prop::sample::select(fs);
        (Just(g), pick.clone(), pick.clone(), pick)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ordinal_sum_is_associative(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn ordinal_sum_is_monotone_on_the_right(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(b.cmp(&c), a.add(&b).cmp(&a.add(&c)));
        prop_assert!(a.add(&b) >= a);
        prop_assert_eq!(a.add(&Ordinal::zero()), a.clone());
        prop_assert_eq!(Ordinal::zero().add(&a), a);
    }

    #[test]
    fn natural_sum_commutes_and_dominates(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.natural_add(&b), b.natural_add(&a));
        prop_assert_eq!(a.natural_add(&b).natural_add(&c), a.natural_add(&b.natural_add(&c)));
        prop_assert!(a.natural_add(&b) >= a.add(&b));
    }

    #[test]
    fn ordinal_text_round_trips(a in ordinal()) {
        prop_assert_eq!(a.to_string().parse::<Ordinal>().unwrap(), a);
    }

    #[test]
    fn sequence_text_round_trips(s in symbolic()) {
        prop_assert_eq!(s.to_string().parse::<SymbolicSeq>().unwrap(), s);
    }

    #[test]
    fn derivative_never_raises_rank(s in symbolic(), g in below_omega_squared()) {
        prop_assert!(rank(&s.delta()) <= rank(&s));
        if rank_leq(&s, &g).unwrap() {
            prop_assert!(rank_leq(&s.delta(), &g).unwrap());
        }
    }

    #[test]
    fn rank_is_upward_closed(s in symbolic(), g in below_omega_squared(), h in below_omega_squared()) {
        if rank_leq(&s, &g).unwrap() && g <= h {
            prop_assert!(rank_leq(&s, &h).unwrap());
        }
    }

    #[test]
    fn finite_rank_is_one_above_the_maximum(xs in prop::collection::vec(0u64..8, 0..8), mask in any::<u8>()) {
        let expected = xs.iter().max().map_or(0, |m| m + 1);
        let s = SymbolicSeq::finite(&xs);
        prop_assert_eq!(rank(&s), Ordinal::nat(expected));
        let sub: Vec<u64> = xs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| *x).collect();
        prop_assert!(rank(&SymbolicSeq::finite(&sub)) <= rank(&s));
    }

    #[test]
    fn atom_text_round_trips(a in atom()) {
        prop_assert_eq!(Atom::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn word_comonoid_laws_hold(n in 1usize..4, l in 0usize..4) {
        let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
        let a = FinSet::names(&names.iter().map(String::as_str).collect::<Vec<_>>()).unwrap();
        let (cm, _) = RelComonoid::words(&a, l);
        prop_assert_eq!(cm.law_violation().unwrap(), None);
        prop_assert_eq!(cm.is_commutative().unwrap(), n == 1 || l < 2);
    }

    #[test]
    fn game_text_round_trips(g in game()) {
        prop_assert_eq!(parse_dsl(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn enumerated_positions_are_alternating_positions(g in game()) {
        for s in positions_up_to(&g, 4, 20_000).unwrap() {
            for (i, m) in s.iter().enumerate() {
                prop_assert_eq!(g.polarity_of(m), Some(Polarity::to_move(i)));
            }
            for m in g.next_moves(&s) {
                let mut t = s.clone();
                t.push(m);
                prop_assert!(g.is_position(&t));
            }
        }
    }

    #[test]
    fn sequoid_positions_open_on_the_left(a in game(), b in game()) {
        let seq = GameExpr::seq(a.clone(), b.clone());
        let tensor = GameExpr::tensor(a, b);
        for s in positions_up_to(&seq, 4, 20_000).unwrap() {
            if let Some(first) = s.first() {
                prop_assert_eq!(first.head(), Some(Tag::L));
            }
            prop_assert!(tensor.is_position(&s));
        }
    }

    #[test]
    fn copies_open_in_order(a in game()) {
        let g = GameExpr::bang(a);
        for s in positions_up_to(&g, 5, 20_000).unwrap() {
            let mut opened = 0u32;
            for m in &s {
                let Some(Tag::C(n)) = m.head() else { return Err(TestCaseError::fail("untagged move in !A")) };
                prop_assert!(n <= opened);
                if n == opened {
                    opened += 1;
                }
            }
        }
    }

    #[test]
    fn response_sets_represent_strategies((g, f, _, _) in endo_triple()) {
        let set = response_set(&f, 6).unwrap();
        prop_assert!(check_strategy_set(f.host(), &set, 6).is_ok());
        let back = strategy_from_set(f.host().clone(), set);
        prop_assert!(equiv_up_to(&back, &f, 6).unwrap().is_equal(), "{} on {}", f.name(), g);
    }

    #[test]
    fn composition_is_associative_and_unital((g, f, h, k) in endo_triple()) {
        let left = compose(&compose(&f, &h).unwrap(), &k).unwrap();
        let right = compose(&f, &compose(&h, &k).unwrap()).unwrap();
        prop_assert!(equiv_up_to(&left, &right, 6).unwrap().is_equal());
        let id = copycat(&g);
        prop_assert!(equiv_up_to(&compose(&id, &f).unwrap(), &f, 6).unwrap().is_equal());
        prop_assert!(equiv_up_to(&compose(&f, &id).unwrap(), &f, 6).unwrap().is_equal());
    }

    #[test]
    fn tensor_is_functorial((_, f, h, _) in endo_triple(), (_, f2, h2, _) in endo_triple()) {
        let left = map_tensor(&compose(&f, &h).unwrap(), &compose(&f2, &h2).unwrap()).unwrap();
        let right = compose(&map_tensor(&f, &f2).unwrap(), &map_tensor(&h, &h2).unwrap()).unwrap();
        prop_assert!(equiv_up_to(&left, &right, 4).unwrap().is_equal());
    }

    #[test]
    fn strict_composites_stay_strict((_, f, h, _) in endo_triple()) {
        if is_strict(&f, 6).unwrap() && is_strict(&h, 6).unwrap() {
            prop_assert!(is_strict(&compose(&f, &h).unwrap(), 6).unwrap());
        }
    }

    #[test]
    fn reads_return_the_last_write(ops in prop::collection::vec(prop::option::of(0usize..3), 1..6), default in 0usize..3) {
        let values = ["0", "1", "2"];
        let v = VarSpec::new(&values, values[default]).unwrap();
        let script: Vec<String> = ops
            .iter()
            .map(|op| op.map_or("read".to_string(), |x| format!("write {}", values[x])))
            .collect();
        let (steps, _) = run_script(&cell(&v).unwrap(), &v, "write", "read", &script.join("; "), &Ctx::default()).unwrap();
        let mut current = values[default];
        for (op, step) in ops.iter().zip(&steps) {
            match op {
                Some(x) => {
                    prop_assert_eq!(step.result.as_str(), "ok");
                    current = values[*x];
                }
                None => prop_assert_eq!(step.result.as_str(), current),
            }
        }
    }

    #[test]
    fn exponentials_of_bounded_games_do_not_split_products(a in small_game(), b in small_game()) {
        let split = length_sup(&GameExpr::tensor(GameExpr::bang(a.clone()), GameExpr::bang(b.clone()))).unwrap();
        let joint = length_sup(&GameExpr::bang(GameExpr::prod(vec![a.clone(), b.clone()]).unwrap())).unwrap();
        if a != GameExpr::Unit && b != GameExpr::Unit {
            prop_assert_eq!(split, Ordinal::monomial(1, 2));
            prop_assert_eq!(joint, Ordinal::omega());
        }
    }
}
