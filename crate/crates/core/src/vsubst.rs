//! Variable-idempotent substitutions and the S-transformation.
//!
//! A substitution `σ` in rational solved form is variable-idempotent when
//! `vars(tσσ) \ dom(σ) = vars(tσ) \ dom(σ)` for every term `t`. It suffices
//! to check the right-hand sides of its bindings.

use crate::error::{Error, Result};
use crate::term::{Subst, Term, Var, VarSet};

fn free_vars(t: &Term, dom: &VarSet) -> VarSet {
    let mut out = t.vars();
    out.retain(|v| !dom.contains(v));
    out
}

/// True iff every binding `x -> r` has `vars(rσ) \ dom(σ) = vars(r) \ dom(σ)`.
pub fn is_var_idempotent(sigma: &Subst) -> Result<bool> {
    if !sigma.is_rsubst() {
        return Err(Error::NotRationalSolvedForm);
    }
    let dom = sigma.dom();
    Ok(sigma.iter().all(|(_, r)| free_vars(&r.apply(sigma), &dom) == free_vars(r, &dom)))
}

/// One S-step: the binding of `into`, `y -> s`, becomes `y -> s[x/t]` where
/// `x -> t` is the binding of `from`.
pub fn s_step(sigma: &Subst, from: Var, into: Var) -> Result<Subst> {
    if !sigma.is_rsubst() {
        return Err(Error::NotRationalSolvedForm);
    }
    if from == into {
        return Err(Error::SameBinding(from));
    }
    let t = sigma.get(from).ok_or(Error::NotInDomain(from))?;
    let s = sigma.get(into).ok_or(Error::NotInDomain(into))?;
    let mut out = sigma.clone();
    out.set_unchecked(into, s.replace(from, t));
    Ok(out)
}

/// Rewrites `σ` by S-steps into a substitution all of whose subsets are
/// variable-idempotent.
///
/// With `dom(σ) = {x1 < ... < xn}`, pass `j` substitutes the current
/// right-hand side of `xj` into every other binding. Domain, variables and
/// abstraction are preserved.
pub fn to_vsubst(sigma: &Subst) -> Result<Subst> {
    if !sigma.is_rsubst() {
        return Err(Error::NotRationalSolvedForm);
    }
    let mut current = sigma.clone();
    for xj in sigma.dom() {
        let tj = current.get(xj).expect("domain is preserved").clone();
        let others: Vec<(Var, Term)> = current
            .iter()
            .filter(|(xi, _)| *xi != xj)
            .map(|(xi, ti)| (xi, ti.replace(xj, &tj)))
            .collect();
        for (xi, ti) in others {
            current.set_unchecked(xi, ti);
        }
    }
    Ok(current)
}

fn unordered_bindings(sigma: &Subst) -> Vec<(Var, Var)> {
    let param = sigma.param();
    sigma
        .iter()
        .filter_map(|(v, t)| t.as_var().filter(|w| param.contains(w) && *w > v).map(|w| (v, w)))
        .collect()
}

/// Exchanges variables until every binding `v -> w` into a parameter has
/// `w < v`. The unordered binding with the smallest left-hand side is fixed
/// first.
pub fn order_vsubst(sigma: &Subst) -> Result<Subst> {
    if !is_var_idempotent(sigma)? {
        return Err(Error::NotVariableIdempotent);
    }
    let mut current = sigma.clone();
    let mut pending = unordered_bindings(&current);
    while let Some(&(v, w)) = pending.first() {
        current = current.swap_vars(v, w);
        let next = unordered_bindings(&current);
        assert!(next.len() < pending.len(), "variable exchange did not reduce unordered bindings");
        pending = next;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Var {
        Var::new(i)
    }
    fn tv(i: u32) -> Term {
        Term::Var(v(i))
    }
    fn a() -> Term {
        Term::constant("a")
    }
    fn f(args: Vec<Term>) -> Term {
        Term::app("f", args)
    }
    fn g(args: Vec<Term>) -> Term {
        Term::app("g", args)
    }
    fn subst(pairs: Vec<(u32, Term)>) -> Subst {
        Subst::from_pairs(pairs.into_iter().map(|(i, t)| (v(i), t))).unwrap()
    }

    const X: u32 = 0;
    const Y: u32 = 1;
    const Z: u32 = 2;

    #[test]
    fn variable_idempotence_examples() {
        let sigma1 = subst(vec![(X, f(vec![tv(X)]))]);
        assert!(is_var_idempotent(&sigma1).unwrap() && !sigma1.is_idempotent());
        assert!(!is_var_idempotent(&subst(vec![(X, f(vec![tv(Y)])), (Y, tv(Z))])).unwrap());
        let sigma3 = subst(vec![(X, f(vec![tv(Z)])), (Y, tv(Z))]);
        assert!(sigma3.is_idempotent() && is_var_idempotent(&sigma3).unwrap());
        assert!(!is_var_idempotent(&subst(vec![(X, tv(Z)), (Y, f(vec![tv(X), tv(Y)]))])).unwrap());
        let sigma5 = subst(vec![(X, tv(Z)), (Y, f(vec![tv(Z), tv(Y)]))]);
        assert!(is_var_idempotent(&sigma5).unwrap() && !sigma5.is_idempotent());
    }

    #[test]
    fn subsets_need_not_be_variable_idempotent() {
        let sigma1 = subst(vec![(0, tv(1)), (1, g(vec![tv(2)])), (2, f(vec![tv(2)]))]);
        let sigma2 = subst(vec![(2, f(vec![tv(2)]))]);
        let sigma3 = subst(vec![(0, tv(1)), (1, g(vec![tv(2)]))]);
        assert!(is_var_idempotent(&sigma1).unwrap());
        assert!(is_var_idempotent(&sigma2).unwrap());
        assert!(!is_var_idempotent(&sigma3).unwrap());
    }

    #[test]
    fn circular_input_is_rejected() {
        let mut s = Subst::new();
        s.set_unchecked(v(0), tv(1));
        s.set_unchecked(v(1), tv(0));
        assert_eq!(is_var_idempotent(&s), Err(Error::NotRationalSolvedForm));
        assert_eq!(to_vsubst(&s), Err(Error::NotRationalSolvedForm));
    }

    fn sigma0() -> Subst {
        subst(vec![(0, f(vec![tv(1)])), (1, g(vec![tv(2), tv(3)])), (2, tv(0))])
    }

    #[test]
    fn s_step_pivots_one_binding() {
        let got = s_step(&sigma0(), v(0), v(2)).unwrap();
        assert_eq!(got, subst(vec![(0, f(vec![tv(1)])), (1, g(vec![tv(2), tv(3)])), (2, f(vec![tv(1)]))]));
        // x1 does not occur in x2's right-hand side.
        assert_eq!(s_step(&sigma0(), v(0), v(1)).unwrap(), sigma0());
        let sigma = subst(vec![(X, a()), (Y, g(vec![tv(X), tv(X)]))]);
        assert_eq!(s_step(&sigma, v(X), v(Y)).unwrap(), subst(vec![(X, a()), (Y, g(vec![a(), a()]))]));
    }

    #[test]
    fn s_step_preconditions() {
        assert_eq!(s_step(&sigma0(), v(0), v(0)), Err(Error::SameBinding(v(0))));
        assert_eq!(s_step(&sigma0(), v(3), v(0)), Err(Error::NotInDomain(v(3))));
    }

    #[test]
    fn transformation_of_sigma0() {
        let x3 = || tv(2);
        let x4 = || tv(3);
        let expected = subst(vec![
            (0, f(vec![g(vec![f(vec![g(vec![x3(), x4()])]), x4()])])),
            (1, g(vec![f(vec![g(vec![x3(), x4()])]), x4()])),
            (2, f(vec![g(vec![x3(), x4()])])),
        ]);
        let got = to_vsubst(&sigma0()).unwrap();
        assert_eq!(got, expected);
        assert!(is_var_idempotent(&got).unwrap());
    }

    #[test]
    fn transformation_fixes_idempotent_input() {
        let sigma = subst(vec![(X, a()), (Y, a())]);
        assert_eq!(to_vsubst(&sigma).unwrap(), sigma);
        assert_eq!(to_vsubst(&subst(vec![(X, tv(Y)), (Y, a())])).unwrap(), subst(vec![(X, a()), (Y, a())]));
    }

    #[test]
    fn ordering_swaps_variables() {
        assert_eq!(order_vsubst(&subst(vec![(0, tv(1))])).unwrap(), subst(vec![(1, tv(0))]));
        let ordered = subst(vec![(1, tv(0))]);
        assert_eq!(order_vsubst(&ordered).unwrap(), ordered);
        let sigma = subst(vec![(0, tv(3)), (1, tv(3)), (2, f(vec![tv(3)]))]);
        let got = order_vsubst(&sigma).unwrap();
        assert_eq!(got, subst(vec![(1, tv(0)), (2, f(vec![tv(0)])), (3, tv(0))]));
        assert!(got.is_ordered());
    }

    #[test]
    fn ordering_requires_variable_idempotence() {
        let sigma = subst(vec![(X, f(vec![tv(Y)])), (Y, tv(Z))]);
        assert_eq!(order_vsubst(&sigma), Err(Error::NotVariableIdempotent));
    }
}
