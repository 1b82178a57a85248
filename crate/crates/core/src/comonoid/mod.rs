//! The exponential as a cofree commutative comonoid.
//!
//! Everything here is assembled from the structural copycats, composition and the
//! coalgebra machinery: `κ`, `∫` and its catamorphic inverse, `σ`, `μ`, `der`, `ε`,
//! the functor action `!f` and promotion `f†`.

mod laws;
pub mod perturb;
mod sympow;

pub use laws::{
    constant, default_corpus, endomorphism_corpus, run_law_suite, run_law_suite_with, strict_map, suite_checks, Check,
    CheckOutcome, CheckResult, LawReport, SUITES,
};
pub use sympow::{eq_n, sym_power, tensor_perm, wk_n, SymPowerReport};

use crate::coalgebra::{alpha, alpha_inv_copycat, ana, cata, SequoidAlgebra, SequoidCoalgebra};
use crate::composition::{compose, equiv_up_to, Equivalence};
use crate::connectives::{
    copycat, copycat_with, dec, dec_inv, diagonal, dist, dist_inv, map_prod, map_seq, map_tensor, structural_iso, sym,
    terminal, wk, IsoName,
};
use crate::error::{GameError, Result};
use crate::game::{GameExpr, Move, Tag};
use crate::strategy::Strategy;

/// Depth at which [`promote`] re-checks the comonoid laws of its argument.
pub const PROMOTE_CHECK_DEPTH: usize = 4;

fn iso(name: IsoName, args: &[GameExpr]) -> Result<Strategy> {
    Ok(structural_iso(name, args)?.0)
}

fn iso_inv(name: IsoName, args: &[GameExpr]) -> Result<Strategy> {
    structural_iso(name, args)?.1.ok_or_else(|| GameError::Construction(format!("`{name}` has no inverse")))
}

/// Compose a non-empty list of strategies left to right.
pub fn chain(parts: &[Strategy]) -> Result<Strategy> {
    let (first, rest) = parts.split_first().ok_or_else(|| GameError::Construction("empty composite".into()))?;
    rest.iter().try_fold(first.clone(), |acc, s| compose(&acc, s))
}

fn bang(a: &GameExpr) -> GameExpr {
    GameExpr::bang(a.clone())
}

/// `κ_{A,B} = dec; (α⊘id)×(α⊘id); passoc×passoc; id×(id⊘sym)`.
pub fn kappa(a: &GameExpr, b: &GameExpr) -> Result<Strategy> {
    let (ba, bb) = (bang(a), bang(b));
    let stage2 = map_prod(&[map_seq(&alpha(a), &copycat(&bb))?, map_seq(&alpha(b), &copycat(&ba))?])?;
    let stage3 = map_prod(&[
        iso(IsoName::Passoc, &[a.clone(), ba.clone(), bb.clone()])?,
        iso(IsoName::Passoc, &[b.clone(), bb.clone(), ba.clone()])?,
    ])?;
    let stage4 = map_prod(&[
        copycat(&GameExpr::seq(a.clone(), GameExpr::tensor(ba.clone(), bb.clone()))),
        map_seq(&copycat(b), &sym(&bb, &ba))?,
    ])?;
    Ok(chain(&[dec(&ba, &bb), stage2, stage3, stage4])?.renamed("κ"))
}

/// `∫_{A,B} : !A⊗!B ⊸ !(A×B)`, the anamorphism of `κ;dist⁻¹`.
pub fn int_fwd(a: &GameExpr, b: &GameExpr) -> Result<Strategy> {
    let x = GameExpr::tensor(bang(a), bang(b));
    let step = compose(&kappa(a, b)?, &dist_inv(&[a.clone(), b.clone()], &x)?)?;
    Ok(ana(&SequoidCoalgebra::new(step)?).renamed("∫"))
}

/// `∫⁻¹ : !(A×B) ⊸ !A⊗!B`, the catamorphism of the inverse of `κ;dist⁻¹`.
pub fn int_inv(a: &GameExpr, b: &GameExpr) -> Result<Strategy> {
    let (ba, bb) = (bang(a), bang(b));
    let x = GameExpr::tensor(ba.clone(), bb.clone());
    let step = chain(&[
        dist(&[a.clone(), b.clone()], &x)?,
        map_prod(&[copycat(&GameExpr::seq(a.clone(), x.clone())), map_seq(&copycat(b), &sym(&ba, &bb))?])?,
        map_prod(&[
            iso_inv(IsoName::Passoc, &[a.clone(), ba.clone(), bb.clone()])?,
            iso_inv(IsoName::Passoc, &[b.clone(), bb.clone(), ba.clone()])?,
        ])?,
        map_prod(&[map_seq(&alpha_inv_copycat(a), &copycat(&bb))?, map_seq(&alpha_inv_copycat(b), &copycat(&ba))?])?,
        dec_inv(&ba, &bb),
    ])?;
    Ok(cata(&SequoidAlgebra::new(step)?).renamed("∫⁻¹"))
}

/// The copycat description of `∫`: the `m`-th copy of `A` opened on the right is served
/// by copy `m` of `!A` on the left, and likewise for `B`.
pub fn int_fwd_oracle(a: &GameExpr, b: &GameExpr) -> Strategy {
    use Tag::{C, I, L, R};
    let host = GameExpr::limp(GameExpr::tensor(bang(a), bang(b)), bang(&GameExpr::pair(a.clone(), b.clone())));
    // Right copies in opening order, with their factor.
    fn opened(s: &[Move]) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for m in s {
            if let [R, C(n), I(k), ..] = m.path.as_slice() {
                if !out.iter().any(|(c, _)| c == n) {
                    out.push((*n, *k));
                }
            }
        }
        out
    }
    copycat_with(
        host,
        "∫ (copycat)",
        |s, m| {
            let [C(n), I(k), ..] = m.path.as_slice() else {
                return None;
            };
            let table = opened(s);
            let rank = match table.iter().position(|(c, _)| c == n) {
                Some(p) => table[..p].iter().filter(|(_, f)| f == k).count(),
                None => table.iter().filter(|(_, f)| f == k).count(),
            };
            let side = if *k == 0 { L } else { R };
            Some(m.tail().tail().under(C(rank as u32)).under(side))
        },
        |s, m| {
            let k = match m.head()? {
                L => 0,
                R => 1,
                _ => return None,
            };
            let rest = m.tail();
            let Some(C(j)) = rest.head() else { return None };
            let (n, _) = *opened(s).iter().filter(|(_, f)| *f == k).nth(j as usize)?;
            Some(rest.tail().under(I(k)).under(C(n)))
        },
    )
}

/// `σ_A : !A ⊸ !(A×A)`, the anamorphism of `α;Δ;dist⁻¹`.
pub fn sigma(a: &GameExpr) -> Result<Strategy> {
    let ba = bang(a);
    let step = chain(&[
        alpha(a),
        diagonal(&GameExpr::seq(a.clone(), ba.clone()), 2)?,
        dist_inv(&[a.clone(), a.clone()], &ba)?,
    ])?;
    Ok(ana(&SequoidCoalgebra::new(step)?).renamed("σ"))
}

/// The comultiplication `μ_A = σ_A;∫⁻¹ : !A ⊸ !A⊗!A`.
pub fn mu(a: &GameExpr) -> Result<Strategy> {
    Ok(compose(&sigma(a)?, &int_inv(a, a)?)?.renamed("μ"))
}

/// `μ` obtained directly as a catamorphism, without going through products of exponentials.
pub fn mu_via_cata(a: &GameExpr) -> Result<Strategy> {
    let ba = bang(a);
    let x = GameExpr::tensor(ba.clone(), ba.clone());
    let head = GameExpr::seq(a.clone(), x);
    let unfold = |pre: Strategy| -> Result<Strategy> {
        chain(&[
            pre,
            iso_inv(IsoName::Passoc, &[a.clone(), ba.clone(), ba.clone()])?,
            map_seq(&alpha_inv_copycat(a), &copycat(&ba))?,
        ])
    };
    let step = chain(&[
        diagonal(&head, 2)?,
        map_prod(&[unfold(copycat(&head))?, unfold(map_seq(&copycat(a), &sym(&ba, &ba))?)?])?,
        dec_inv(&ba, &ba),
    ])?;
    Ok(cata(&SequoidAlgebra::new(step)?).renamed("μ (cata)"))
}

/// Dereliction `der_A = α;(id⊘*);r : !A ⊸ A`.
pub fn der(a: &GameExpr) -> Result<Strategy> {
    let ba = bang(a);
    Ok(chain(&[alpha(a), map_seq(&copycat(a), &terminal(&ba))?, iso(IsoName::R, std::slice::from_ref(a))?])?
        .renamed("der"))
}

/// The counit `η_A : !A ⊸ I`.
pub fn eta(a: &GameExpr) -> Strategy {
    terminal(&bang(a)).renamed("η")
}

/// `ε : I ⊸ !I`, the anamorphism of `runit⁻¹; *⊗id; wk`.
pub fn eps() -> Strategy {
    let i = GameExpr::Unit;
    let step = chain(&[
        iso_inv(IsoName::Runit, std::slice::from_ref(&i)).expect("unit iso"),
        map_tensor(&terminal(&i), &copycat(&i)).expect("unit tensor"),
        wk(&i, &i),
    ])
    .expect("unit composite");
    ana(&SequoidCoalgebra::new(step).expect("unit coalgebra")).renamed("ε")
}

/// `!f`, the anamorphism of `μ; der⊗id; f⊗id; wk`.
pub fn bang_map(f: &Strategy) -> Result<Strategy> {
    let (a, b) = f.sides()?;
    let ba = bang(&a);
    let step = chain(&[mu(&a)?, map_tensor(&der(&a)?, &copycat(&ba))?, map_tensor(f, &copycat(&ba))?, wk(&b, &ba)])?;
    Ok(ana(&SequoidCoalgebra::new(step)?).renamed(format!("!({})", f.name())))
}

/// A comonoid `(B, δ, e)` for the tensor.
#[derive(Debug, Clone)]
pub struct ComonoidPresentation {
    pub carrier: GameExpr,
    pub comult: Strategy,
    pub counit: Strategy,
}

impl ComonoidPresentation {
    pub fn new(carrier: GameExpr, comult: Strategy, counit: Strategy) -> Result<Self> {
        let expect_comult = GameExpr::limp(carrier.clone(), GameExpr::tensor(carrier.clone(), carrier.clone()));
        let expect_counit = GameExpr::limp(carrier.clone(), GameExpr::Unit);
        if comult.host() != &expect_comult || counit.host() != &expect_counit {
            return Err(GameError::Type(format!("comonoid maps on `{carrier}` have the wrong hosts")));
        }
        Ok(ComonoidPresentation { carrier, comult, counit })
    }

    /// `(!A, μ, η)`.
    pub fn exponential(a: &GameExpr) -> Result<Self> {
        ComonoidPresentation::new(bang(a), mu(a)?, eta(a))
    }

    /// The unit with its canonical (empty) structure.
    pub fn trivial() -> Self {
        let i = GameExpr::Unit;
        let comult = iso_inv(IsoName::Runit, std::slice::from_ref(&i)).expect("unit iso");
        ComonoidPresentation { carrier: i.clone(), comult, counit: copycat(&i) }
    }

    /// The laws as named pairs of parallel strategies.
    pub fn law_diagrams(&self) -> Result<Vec<(&'static str, Strategy, Strategy)>> {
        let b = &self.carrier;
        let id = copycat(b);
        let d = &self.comult;
        let coassoc_l =
            chain(&[d.clone(), map_tensor(d, &id)?, iso(IsoName::Assoc, &[b.clone(), b.clone(), b.clone()])?])?;
        let coassoc_r = compose(d, &map_tensor(&id, d)?)?;
        let comm = compose(d, &sym(b, b))?;
        let left = chain(&[d.clone(), map_tensor(&self.counit, &id)?, iso(IsoName::Lunit, std::slice::from_ref(b))?])?;
        let right = chain(&[d.clone(), map_tensor(&id, &self.counit)?, iso(IsoName::Runit, std::slice::from_ref(b))?])?;
        Ok(vec![
            ("coassociative", coassoc_l, coassoc_r),
            ("cocommutative", comm, d.clone()),
            ("left-counit", left, id.clone()),
            ("right-counit", right, id),
        ])
    }

    /// First failing law at depth `d`, if any.
    pub fn check_laws(&self, d: usize) -> Result<Option<(String, Equivalence)>> {
        for (name, lhs, rhs) in self.law_diagrams()? {
            let eq = equiv_up_to(&lhs, &rhs, d)?;
            if !eq.is_equal() {
                return Ok(Some((name.to_string(), eq)));
            }
        }
        Ok(None)
    }
}

/// Promotion `f† : B ⊸ !A`, the anamorphism of `δ; f⊗id; wk`.
pub fn promote(f: &Strategy, cm: &ComonoidPresentation) -> Result<Strategy> {
    let (b, a) = f.sides()?;
    if b != cm.carrier {
        return Err(GameError::Type(format!("`{}` starts at {b}, but the comonoid lives on {}", f.name(), cm.carrier)));
    }
    if let Some((law, eq)) = cm.check_laws(PROMOTE_CHECK_DEPTH)? {
        let detail = eq.counterexample().map(|c| c.to_string()).unwrap_or_default();
        return Err(GameError::Precondition(format!("comonoid on {b} is not {law}: {detail}")));
    }
    let step = chain(&[cm.comult.clone(), map_tensor(f, &copycat(&b))?, wk(&a, &b)])?;
    Ok(ana(&SequoidCoalgebra::new(step)?).renamed(format!("({})†", f.name())))
}

/// The two squares characterising `f†`: `f†;der ≡ f` and `f†;μ ≡ δ;(f†⊗f†)`.
pub fn cofree_squares(
    candidate: &Strategy,
    f: &Strategy,
    cm: &ComonoidPresentation,
) -> Result<[(Strategy, Strategy); 2]> {
    let (_, a) = f.sides()?;
    let counit_sq = (compose(candidate, &der(&a)?)?, f.clone());
    let comult_sq = (compose(candidate, &mu(&a)?)?, compose(&cm.comult, &map_tensor(candidate, candidate)?)?);
    Ok([counit_sq, comult_sq])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::equiv_up_to;

    fn mv(t: &str) -> Move {
        Move::parse(t).unwrap()
    }

    fn s() -> GameExpr {
        GameExpr::sigma()
    }

    #[test]
    fn der_reads_copy_zero() {
        let d = der(&s()).unwrap();
        assert_eq!(d.respond(&[mv("r.q")]).unwrap(), Some(mv("l.c:0.q")));
        assert_eq!(d.respond(&[mv("r.q"), mv("l.c:0.q"), mv("l.c:0.*")]).unwrap(), Some(mv("r.*")));
        assert!(crate::strategy::is_strict(&d, 2).unwrap());
    }

    #[test]
    fn int_matches_copycat_oracle() {
        let f = GameExpr::flat(&["0", "1"]).unwrap();
        let fwd = int_fwd(&s(), &f).unwrap();
        assert_eq!(fwd.respond(&[mv("r.c:0.i:1.q")]).unwrap(), Some(mv("l.r.c:0.q")));
        assert!(equiv_up_to(&fwd, &int_fwd_oracle(&s(), &f), 6).unwrap().is_equal());
    }

    #[test]
    fn int_round_trips() {
        let fwd = int_fwd(&s(), &s()).unwrap();
        let inv = int_inv(&s(), &s()).unwrap();
        let x = GameExpr::tensor(bang(&s()), bang(&s()));
        let y = bang(&GameExpr::pair(s(), s()));
        assert!(equiv_up_to(&compose(&fwd, &inv).unwrap(), &copycat(&x), 6).unwrap().is_equal());
        assert!(equiv_up_to(&compose(&inv, &fwd).unwrap(), &copycat(&y), 6).unwrap().is_equal());
    }

    #[test]
    fn mu_constructions_agree() {
        let m = mu(&s()).unwrap();
        assert_eq!(m.respond(&[mv("r.r.c:0.q")]).unwrap(), Some(mv("l.c:0.q")));
        assert!(equiv_up_to(&m, &mu_via_cata(&s()).unwrap(), 6).unwrap().is_equal());
    }

    #[test]
    fn bang_of_identity_is_identity() {
        let b = bang_map(&copycat(&s())).unwrap();
        assert!(equiv_up_to(&b, &copycat(&bang(&s())), 6).unwrap().is_equal());
    }

    #[test]
    fn promote_der_is_identity() {
        let cm = ComonoidPresentation::exponential(&s()).unwrap();
        let p = promote(&der(&s()).unwrap(), &cm).unwrap();
        assert!(equiv_up_to(&p, &copycat(&bang(&s())), 6).unwrap().is_equal());
    }

    #[test]
    fn non_comonoid_rejected() {
        let b = bang(&s());
        let left_only = crate::connectives::prefix_copycat(
            GameExpr::limp(b.clone(), GameExpr::tensor(b.clone(), b.clone())),
            "left-only",
            vec![(vec![], vec![Tag::L])],
        );
        let cm = ComonoidPresentation::new(b.clone(), left_only, eta(&s())).unwrap();
        assert!(matches!(promote(&der(&s()).unwrap(), &cm), Err(GameError::Precondition(_))));
    }
}
