//! Abstraction of substitutions into the `SS` lattice.
//!
//! Both abstraction functions quantify over every variable. Only variables in
//! `U ∪ vars(σ)` can contribute a group not already produced: any other `v`
//! is free and unaliased, so its group is `{v} ∩ U = ∅`.

use crate::error::{Error, Result};
use crate::lattice::{SharingGroup, SharingSet, SsElement, SsPair};
use crate::term::{Subst, Var, VarSet};

fn scope(sigma: &Subst, v: Var) -> VarSet {
    let mut out = sigma.vars();
    out.insert(v);
    out
}

/// The sharing group function `{y | v ∈ vars(yσ)}` of an idempotent `σ`.
pub fn sg(sigma: &Subst, v: Var) -> Result<VarSet> {
    if !sigma.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    Ok(sg_unchecked(sigma, v))
}

/// [`sg`] evaluated on any substitution. Outside idempotent substitutions
/// the result need not describe the sharing of `σ`.
pub fn sg_unchecked(sigma: &Subst, v: Var) -> VarSet {
    scope(sigma, v).into_iter().filter(|&y| sigma.apply_var(y).contains_var(v)).collect()
}

fn collect_groups(universe: &VarSet, sigma: &Subst, mut group_of: impl FnMut(Var) -> VarSet) -> SsPair {
    let mut candidates = universe.clone();
    candidates.extend(sigma.vars());
    let sharing: SharingSet = candidates
        .into_iter()
        .filter_map(|v| {
            let g: VarSet = group_of(v).intersection(universe).copied().collect();
            SharingGroup::new(g).ok()
        })
        .collect();
    SsPair::new(sharing, universe.clone()).expect("groups are intersected with the universe")
}

/// The classical abstraction of an idempotent substitution.
pub fn alpha_classical(sigma: &Subst, universe: &VarSet) -> Result<SsPair> {
    if !sigma.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    Ok(alpha_classical_unchecked(sigma, universe))
}

/// [`alpha_classical`] evaluated on any substitution.
pub fn alpha_classical_unchecked(sigma: &Subst, universe: &VarSet) -> SsPair {
    collect_groups(universe, sigma, |v| sg_unchecked(sigma, v))
}

fn occ_step(sigma: &Subst, v: Var, prev: &VarSet) -> VarSet {
    scope(sigma, v)
        .into_iter()
        .filter(|&y| sigma.apply_var(y).vars().iter().any(|w| prev.contains(w)))
        .collect()
}

fn occ_0(sigma: &Subst, v: Var) -> VarSet {
    if sigma.in_domain(v) {
        VarSet::new()
    } else {
        VarSet::from([v])
    }
}

/// The occurrence function of index `n`.
pub fn occ_n(sigma: &Subst, v: Var, n: usize) -> Result<VarSet> {
    if !sigma.is_rsubst() {
        return Err(Error::NotRationalSolvedForm);
    }
    let mut current = occ_0(sigma, v);
    for _ in 0..n {
        let next = occ_step(sigma, v, &current);
        if next == current {
            break;
        }
        current = next;
    }
    Ok(current)
}

/// The occurrence operator: the limit of the increasing chain `occ_n`.
pub fn occ(sigma: &Subst, v: Var) -> Result<VarSet> {
    if !sigma.is_rsubst() {
        return Err(Error::NotRationalSolvedForm);
    }
    let cap = sigma.vars().len() + 2;
    let mut current = occ_0(sigma, v);
    for _ in 0..cap {
        let next = occ_step(sigma, v, &current);
        if next == current {
            return Ok(current);
        }
        current = next;
    }
    panic!("occurrence chain for {v} in {sigma} did not stabilise within {cap} steps");
}

/// Abstraction of a substitution in rational solved form.
pub fn alpha(sigma: &Subst, universe: &VarSet) -> Result<SsPair> {
    if !sigma.is_rsubst() {
        return Err(Error::NotRationalSolvedForm);
    }
    Ok(collect_groups(universe, sigma, |v| occ(sigma, v).expect("checked above")))
}

/// Join of the abstractions of a finite set of substitutions. Empty input
/// gives bottom.
pub fn alpha_set<'a>(sigmas: impl IntoIterator<Item = &'a Subst>, universe: &VarSet) -> Result<SsElement> {
    sigmas.into_iter().try_fold(SsElement::Bottom, |acc, s| Ok(acc.lub(&alpha(s, universe)?.into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Term;

    fn v(i: u32) -> Var {
        Var::new(i)
    }
    fn tv(i: u32) -> Term {
        Term::Var(v(i))
    }
    fn a() -> Term {
        Term::constant("a")
    }
    fn f(x: Term) -> Term {
        Term::app("f", vec![x])
    }
    fn g(x: Term, y: Term) -> Term {
        Term::app("g", vec![x, y])
    }
    fn subst(pairs: Vec<(u32, Term)>) -> Subst {
        Subst::from_pairs(pairs.into_iter().map(|(i, t)| (v(i), t))).unwrap()
    }
    fn vs(ids: &[u32]) -> VarSet {
        ids.iter().map(|&i| v(i)).collect()
    }
    fn u4() -> VarSet {
        vs(&[0, 1, 2, 3])
    }
    fn pair(groups: &[&[u32]]) -> SsPair {
        let sh = SharingSet::from_groups(groups.iter().map(|g| g.iter().map(|&i| v(i)))).unwrap();
        SsPair::new(sh, u4()).unwrap()
    }

    fn sigma0() -> Subst {
        subst(vec![(0, f(tv(1))), (1, g(tv(2), tv(3))), (2, tv(0))])
    }

    #[test]
    fn sharing_group_function() {
        let sigma = subst(vec![(0, Term::app("f", vec![tv(1), tv(2)])), (3, a())]);
        assert_eq!(sg(&sigma, v(1)).unwrap(), vs(&[0, 1]));
        assert_eq!(sg(&Subst::new(), v(5)).unwrap(), vs(&[5]));
        assert_eq!(sg(&subst(vec![(3, a())]), v(3)).unwrap(), VarSet::new());
        assert_eq!(sg(&subst(vec![(0, f(tv(0)))]), v(0)), Err(Error::NotIdempotent));
    }

    #[test]
    fn classical_abstraction_examples() {
        let sigma = subst(vec![(0, Term::app("f", vec![tv(1), tv(2)])), (3, a())]);
        assert_eq!(alpha_classical(&sigma, &u4()).unwrap(), pair(&[&[0, 1], &[0, 2]]));
        assert_eq!(alpha_classical(&Subst::new(), &u4()).unwrap(), pair(&[&[0], &[1], &[2], &[3]]));
        assert_eq!(alpha_classical(&subst(vec![(2, tv(3))]), &u4()).unwrap(), pair(&[&[0], &[1], &[2, 3]]));
        let sigma4 = subst(vec![(0, tv(3)), (1, tv(3)), (2, tv(3))]);
        assert_eq!(alpha_classical(&sigma4, &u4()).unwrap(), pair(&[&[0, 1, 2, 3]]));
    }

    #[test]
    fn classical_abstraction_loses_precision_outside_isubst() {
        let sigma1 = subst(vec![(0, f(tv(0)))]);
        assert_eq!(alpha_classical(&sigma1, &u4()), Err(Error::NotIdempotent));
        assert_eq!(alpha_classical_unchecked(&sigma1, &u4()), pair(&[&[0], &[1], &[2], &[3]]));
        let sigma3 = subst(vec![(0, tv(1)), (1, tv(2)), (2, tv(3))]);
        assert_eq!(alpha_classical_unchecked(&sigma3, &u4()), pair(&[&[0], &[1], &[2, 3]]));
    }

    #[test]
    fn occurrence_chain() {
        let s = sigma0();
        assert_eq!(occ_n(&s, v(3), 0).unwrap(), vs(&[3]));
        assert_eq!(occ_n(&s, v(3), 1).unwrap(), vs(&[1, 3]));
        assert_eq!(occ_n(&s, v(3), 2).unwrap(), vs(&[0, 1, 3]));
        assert_eq!(occ_n(&s, v(3), 3).unwrap(), vs(&[0, 1, 2, 3]));
        assert_eq!(occ(&s, v(3)).unwrap(), vs(&[0, 1, 2, 3]));
        assert_eq!(occ_n(&s, v(0), 0).unwrap(), VarSet::new());
        for n in 0..4 {
            assert_eq!(occ_n(&Subst::new(), v(2), n).unwrap(), vs(&[2]));
        }
    }

    #[test]
    fn occurrence_on_the_transformed_substitution() {
        let s3 = crate::vsubst::to_vsubst(&sigma0()).unwrap();
        assert_eq!(occ_n(&s3, v(3), 1).unwrap(), vs(&[0, 1, 2, 3]));
        assert_eq!(occ(&s3, v(3)).unwrap(), vs(&[0, 1, 2, 3]));
    }

    #[test]
    fn occ_generalises_sg() {
        let sigma = subst(vec![(0, Term::app("f", vec![tv(1), tv(2)]))]);
        assert_eq!(occ(&sigma, v(1)).unwrap(), vs(&[0, 1]));
        assert_eq!(sg(&sigma, v(1)).unwrap(), vs(&[0, 1]));
    }

    #[test]
    fn abstraction_examples() {
        assert_eq!(alpha(&sigma0(), &u4()).unwrap(), pair(&[&[0, 1, 2, 3]]));
        let grounded = subst(vec![(0, f(tv(0))), (1, tv(0)), (2, tv(0)), (3, tv(1))]);
        assert_eq!(alpha(&grounded, &u4()).unwrap(), pair(&[]));
        assert_eq!(alpha(&subst(vec![(0, f(tv(0)))]), &u4()).unwrap(), pair(&[&[1], &[2], &[3]]));
    }

    #[test]
    fn abstraction_of_sets() {
        assert_eq!(alpha_set([], &u4()).unwrap(), SsElement::Bottom);
        let s2 = subst(vec![(2, tv(3))]);
        assert_eq!(alpha_set([&s2], &u4()).unwrap(), alpha(&s2, &u4()).unwrap().into());
        let s4 = subst(vec![(0, tv(3)), (1, tv(3)), (2, tv(3))]);
        assert_eq!(alpha_set([&s2, &s4], &u4()).unwrap(), pair(&[&[0], &[1], &[2, 3], &[0, 1, 2, 3]]).into());
    }

    #[test]
    fn circular_input_is_rejected() {
        let mut s = Subst::new();
        s.set_unchecked(v(0), tv(1));
        s.set_unchecked(v(1), tv(0));
        assert_eq!(occ(&s, v(0)), Err(Error::NotRationalSolvedForm));
        assert_eq!(alpha(&s, &u4()), Err(Error::NotRationalSolvedForm));
    }
}
