//! Symmetric tensor powers as equalisers of the permutation symmetries.

use super::chain;
use super::laws::{Check, LawReport};
use crate::composition::compose;
use crate::connectives::{copycat, copycat_with, map_product, map_seq, map_tensor, prefix_copycat, wk};
use crate::error::{GameError, Result};
use crate::game::{GameExpr, Move, Tag};
use crate::strategy::Strategy;

/// Largest power for which all permutations are enumerated.
pub const MAX_POWER: usize = 4;

pub type SymPowerReport = LawReport;

/// Address of component `j` in the right-nested `m`-fold power.
fn power_addr(m: usize, j: usize) -> Vec<Tag> {
    if j + 1 < m {
        let mut p = vec![Tag::R; j];
        p.push(Tag::L);
        p
    } else {
        vec![Tag::R; m - 1]
    }
}

/// Component of a right-nested `m`-fold power addressed by `path`, and the address length.
fn power_component(m: usize, path: &[Tag]) -> Option<(usize, usize)> {
    let mut r = 0;
    while r + 1 < m && path.get(r) == Some(&Tag::R) {
        r += 1;
    }
    if r + 1 == m {
        Some((r, r))
    } else if path.get(r) == Some(&Tag::L) {
        Some((r, r + 1))
    } else {
        None
    }
}

/// The symmetry of `A^{⊗n}` under which right component `j` mirrors left component `π(j)`.
pub fn tensor_perm(a: &GameExpr, n: usize, pi: &[usize]) -> Result<Strategy> {
    let mut seen = vec![false; n];
    for &p in pi {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(GameError::Construction(format!("{pi:?} is not a permutation of {n} elements")));
        }
    }
    if pi.len() != n {
        return Err(GameError::Construction(format!("{pi:?} is not a permutation of {n} elements")));
    }
    let g = GameExpr::tensor_power(a, n);
    let pairs = (0..n).map(|j| (power_addr(n, pi[j]), power_addr(n, j))).collect();
    Ok(prefix_copycat(GameExpr::limp(g.clone(), g), &format!("sym{pi:?}"), pairs))
}

/// `wk^1 = id`, `wk^{n+1} = wk_{A,A^{⊗n}}; (id⊘wk^n)`.
pub fn wk_n(a: &GameExpr, n: usize) -> Result<Strategy> {
    if n == 0 {
        return Err(GameError::Construction("zeroth power".into()));
    }
    if n == 1 {
        return Ok(copycat(a));
    }
    let step = wk(a, &GameExpr::tensor_power(a, n - 1));
    Ok(compose(&step, &map_seq(&copycat(a), &wk_n(a, n - 1)?)?)?.renamed(format!("wk{n}")))
}

/// `∏_k (A ⊘ A^{⊗(n-1)}) ⊸ A^{⊗n}`: the tensor component O opens first picks the factor,
/// and factor `k` puts component `k` in front of the others.
fn undecompose(a: &GameExpr, n: usize) -> Result<Strategy> {
    use Tag::{I, L, R};
    let rest = GameExpr::tensor_power(a, n - 1);
    let factor = GameExpr::seq(a.clone(), rest);
    let host = GameExpr::limp(GameExpr::prod(vec![factor; n])?, GameExpr::tensor_power(a, n));
    let first_component = move |s: &[Move]| {
        s.iter().find(|m| m.head() == Some(R)).and_then(|m| power_component(n, &m.path[1..]).map(|(j, _)| j))
    };
    Ok(copycat_with(
        host,
        "dec⁻¹",
        move |s, m| {
            let (j, len) = power_component(n, &m.path)?;
            let k = first_component(s).unwrap_or(j);
            let local = Move::new(m.path[len..].to_vec(), m.base.clone());
            let inner = if j == k {
                local.under(L)
            } else {
                let t = if j == 0 { k - 1 } else { j - 1 };
                local.under_all(&power_addr(n - 1, t)).under(R)
            };
            Some(inner.under(I(k as u32)))
        },
        move |_, m| {
            let [I(k), side, ..] = m.path.as_slice() else {
                return None;
            };
            let k = *k as usize;
            let body = &m.path[2..];
            let (j, len) = if *side == L {
                (k, 0)
            } else {
                let (t, len) = power_component(n - 1, body)?;
                (if t + 1 == k { 0 } else { t + 1 }, len)
            };
            Some(Move::new(body[len..].to_vec(), m.base.clone()).under_all(&power_addr(n, j)))
        },
    ))
}

/// `eq_n = ⟨id⊘eq_{n-1}, …, id⊘eq_{n-1}⟩` followed by the decomposition of `A^{⊗n}`.
pub fn eq_n(a: &GameExpr, n: usize) -> Result<Strategy> {
    if n == 0 {
        return Err(GameError::Construction("zeroth power".into()));
    }
    if n == 1 {
        return Ok(copycat(a));
    }
    let inner = map_seq(&copycat(a), &eq_n(a, n - 1)?)?;
    let pairing = map_product(&vec![inner; n])?;
    Ok(compose(&pairing, &undecompose(a, n)?)?.renamed(format!("eq{n}")))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// `wk_n`, `eq_n`, and a report on the equaliser equations at depth `d`, including their
/// images under `B⊗_` for `B = Σ`.
pub fn sym_power(a: &GameExpr, n: usize, d: usize) -> Result<(Strategy, Strategy, SymPowerReport)> {
    if n > MAX_POWER {
        return Err(GameError::Resource(format!("symmetric power {n} exceeds the limit of {MAX_POWER}")));
    }
    let w = wk_n(a, n)?;
    let e = eq_n(a, n)?;
    let b = GameExpr::sigma();
    let id_b = copycat(&b);
    let seqs = GameExpr::seq_power(a, n);
    let game = format!("{a}^{n}");
    let mut checks = Vec::new();
    for pi in permutations(n) {
        let label: String = pi.iter().map(|i| i.to_string()).collect();
        let (w1, e1, a1, p1, seqs) = (w.clone(), e.clone(), a.clone(), pi.clone(), seqs.clone());
        checks.push(Check::equal("sym-power", format!("eq;sym({label});wk=id"), game.clone(), d, move || {
            Ok((chain(&[e1.clone(), tensor_perm(&a1, n, &p1)?, w1.clone()])?, copycat(&seqs)))
        }));
        let (e1, a1, p1) = (e.clone(), a.clone(), pi.clone());
        checks.push(Check::equal("sym-power", format!("eq;sym({label})=eq"), game.clone(), d, move || {
            Ok((compose(&e1, &tensor_perm(&a1, n, &p1)?)?, e1.clone()))
        }));
        let (w1, e1, a1, b1, id_b) = (w.clone(), e.clone(), a.clone(), b.clone(), id_b.clone());
        checks.push(Check::equal("sym-power", format!("B⊗(eq;sym({label});wk)=id"), game.clone(), d, move || {
            let lhs = chain(&[
                map_tensor(&id_b, &e1)?,
                map_tensor(&id_b, &tensor_perm(&a1, n, &pi)?)?,
                map_tensor(&id_b, &w1)?,
            ])?;
            Ok((lhs, copycat(&GameExpr::tensor(b1.clone(), GameExpr::seq_power(&a1, n)))))
        }));
    }
    let report = LawReport::run(checks);
    Ok((w, e, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::equiv_up_to;

    #[test]
    fn addressing_round_trips() {
        for m in 1..5 {
            for j in 0..m {
                assert_eq!(power_component(m, &power_addr(m, j)), Some((j, power_addr(m, j).len())));
            }
        }
        assert_eq!(permutations(3).len(), 6);
    }

    #[test]
    fn first_powers_are_trivial() {
        let s = GameExpr::sigma();
        assert!(equiv_up_to(&wk_n(&s, 1).unwrap(), &copycat(&s), 4).unwrap().is_equal());
        assert!(equiv_up_to(&eq_n(&s, 1).unwrap(), &copycat(&s), 4).unwrap().is_equal());
    }

    #[test]
    fn eq_is_a_one_sided_inverse() {
        let s = GameExpr::sigma();
        let (w, e) = (wk_n(&s, 2).unwrap(), eq_n(&s, 2).unwrap());
        let seq = GameExpr::seq_power(&s, 2);
        let ten = GameExpr::tensor_power(&s, 2);
        assert!(equiv_up_to(&compose(&e, &w).unwrap(), &copycat(&seq), 4).unwrap().is_equal());
        assert!(!equiv_up_to(&compose(&w, &e).unwrap(), &copycat(&ten), 4).unwrap().is_equal());
        assert!(tensor_perm(&s, 2, &[0, 0]).is_err());
        assert!(matches!(sym_power(&s, 5, 2), Err(GameError::Resource(_))));
    }
}
