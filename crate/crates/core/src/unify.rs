//! Concrete unification producing substitutions in rational solved form.
//!
//! Both theories share one Martelli-Montanari loop over a FIFO equation
//! queue. In the rational-trees theory a new binding is applied to the
//! pending equations only, never to the bindings already recorded, so the
//! solution may be "lazy" (non-idempotent, possibly cyclic through non-variable
//! terms). In the Herbrand theory the occurs-check rejects cyclic bindings and
//! each new binding is also pushed through the recorded ones, which keeps
//! solutions idempotent.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::term::{EqualityMode, Subst, Term, Var, VarSet};

/// `lhs = rhs`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    pub fn vars(&self) -> VarSet {
        let mut out = self.lhs.vars();
        self.rhs.collect_vars(&mut out);
        out
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Why an equation set has no solution.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Error)]
pub enum UnifyFailure {
    /// Distinct functors or arities: unsolvable in every syntactic theory.
    #[error("clash")]
    Clash,
    /// `x = t` with `x` occurring in non-variable `t`; Herbrand only.
    #[error("occurs_check")]
    OccursCheck,
}

pub fn equations_vars(eqs: &[Equation]) -> VarSet {
    let mut out = VarSet::new();
    for e in eqs {
        e.lhs.collect_vars(&mut out);
        e.rhs.collect_vars(&mut out);
    }
    out
}

/// Computes a relevant most general solution of `eqs` in `mode`.
///
/// Equations are processed front to back; decomposed argument equations are
/// pushed to the front left to right, `t = x` is flipped to `x = t`, and for
/// `x = y` the left variable is bound.
pub fn unify(eqs: &[Equation], mode: EqualityMode) -> Result<Subst, UnifyFailure> {
    let mut queue: VecDeque<(Term, Term)> = eqs.iter().map(|e| (e.lhs.clone(), e.rhs.clone())).collect();
    let mut mu = Subst::new();
    // Rational mode only: `x = t` pairs already reduced through the binding
    // of `x`. Meeting one again closes a cycle and is consistent by the
    // uniqueness axioms.
    let mut assumed: HashSet<(Var, Term)> = HashSet::new();

    while let Some((lhs, rhs)) = queue.pop_front() {
        match (lhs, rhs) {
            (Term::Var(x), Term::Var(y)) if x == y => {}
            (Term::App(f, ss), Term::App(g, ts)) => {
                if f != g || ss.len() != ts.len() {
                    return Err(UnifyFailure::Clash);
                }
                for pair in ss.into_iter().zip(ts).rev() {
                    queue.push_front(pair);
                }
            }
            (t @ Term::App(..), Term::Var(x)) => queue.push_front((Term::Var(x), t)),
            (Term::Var(x), t) => {
                if let Some(bound) = mu.get(x) {
                    debug_assert_eq!(mode, EqualityMode::RationalTrees);
                    if assumed.insert((x, t.clone())) {
                        queue.push_front((bound.clone(), t));
                    }
                    continue;
                }
                if mode == EqualityMode::Herbrand && t.contains_var(x) {
                    return Err(UnifyFailure::OccursCheck);
                }
                let single = Subst::from_pairs([(x, t.clone())]).expect("x = x is dropped above");
                for (l, r) in queue.iter_mut() {
                    *l = l.apply(&single);
                    *r = r.apply(&single);
                }
                if mode == EqualityMode::Herbrand {
                    let resolved: Vec<(Var, Term)> = mu.iter().map(|(y, s)| (y, s.apply(&single))).collect();
                    for (y, s) in resolved {
                        mu.set_unchecked(y, s);
                    }
                }
                mu.set_unchecked(x, t);
            }
        }
    }

    assert!(mu.is_rsubst(), "unifier produced a circular substitution: {mu}");
    Ok(mu)
}

/// Whether `sigma` has a solution in `mode`. Every substitution in rational
/// solved form is satisfiable over rational trees; over finite trees it is
/// iff unification with the occurs-check succeeds.
pub fn satisfiable(sigma: &Subst, mode: EqualityMode) -> Result<bool> {
    if !sigma.is_rsubst() {
        return Err(Error::NotRationalSolvedForm);
    }
    Ok(match mode {
        EqualityMode::RationalTrees => true,
        EqualityMode::Herbrand => unify(&sigma.to_equations(), EqualityMode::Herbrand).is_ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::EqualityMode::{Herbrand, RationalTrees};

    fn tv(i: u32) -> Term {
        Term::Var(Var::new(i))
    }
    fn app(name: &str, args: Vec<Term>) -> Term {
        Term::app(name, args)
    }
    fn eq(l: Term, r: Term) -> Equation {
        Equation::new(l, r)
    }

    const X: u32 = 0;
    const Y: u32 = 1;
    const Z: u32 = 2;

    #[test]
    fn reproduces_the_lazy_trace() {
        let e = vec![eq(
            app("p", vec![tv(Z), app("f", vec![tv(X), tv(Y)])]),
            app("p", vec![app("f", vec![tv(Z), tv(Y)]), tv(Z)]),
        )];
        let mu = unify(&e, RationalTrees).unwrap();
        let expected = Subst::from_pairs([
            (Var::new(Z), app("f", vec![tv(Z), tv(Y)])),
            (Var::new(X), tv(Z)),
        ])
        .unwrap();
        assert_eq!(mu, expected);
        assert!(!mu.is_idempotent());
    }

    #[test]
    fn same_problem_fails_the_occurs_check() {
        let e = vec![eq(
            app("p", vec![tv(Z), app("f", vec![tv(X), tv(Y)])]),
            app("p", vec![app("f", vec![tv(Z), tv(Y)]), tv(Z)]),
        )];
        assert_eq!(unify(&e, Herbrand), Err(UnifyFailure::OccursCheck));
    }

    #[test]
    fn occurs_check_is_herbrand_only() {
        let e = vec![eq(tv(X), app("f", vec![tv(X)]))];
        assert_eq!(unify(&e, Herbrand), Err(UnifyFailure::OccursCheck));
        let mu = unify(&e, RationalTrees).unwrap();
        assert_eq!(mu, Subst::from_pairs([(Var::new(X), app("f", vec![tv(X)]))]).unwrap());
    }

    #[test]
    fn reflexive_equation_has_empty_solution() {
        for mode in [Herbrand, RationalTrees] {
            assert_eq!(unify(&[eq(tv(X), tv(X))], mode), Ok(Subst::new()));
        }
    }

    #[test]
    fn clash_on_functor_or_arity() {
        let a = Term::constant("a");
        for mode in [Herbrand, RationalTrees] {
            assert_eq!(unify(&[eq(a.clone(), app("f", vec![tv(X)]))], mode), Err(UnifyFailure::Clash));
            assert_eq!(
                unify(&[eq(app("f", vec![tv(X)]), app("f", vec![tv(X), tv(Y)]))], mode),
                Err(UnifyFailure::Clash)
            );
        }
    }

    #[test]
    fn binds_the_left_variable() {
        let mu = unify(&[eq(tv(Y), tv(X))], RationalTrees).unwrap();
        assert_eq!(mu, Subst::from_pairs([(Var::new(Y), tv(X))]).unwrap());
    }

    #[test]
    fn herbrand_solutions_are_resolved() {
        let a = Term::constant("a");
        let e = vec![eq(tv(X), tv(Y)), eq(tv(Y), a.clone())];
        let lazy = unify(&e, RationalTrees).unwrap();
        assert_eq!(lazy, Subst::from_pairs([(Var::new(X), tv(Y)), (Var::new(Y), a.clone())]).unwrap());
        let eager = unify(&e, Herbrand).unwrap();
        assert_eq!(eager, Subst::from_pairs([(Var::new(X), a.clone()), (Var::new(Y), a)]).unwrap());
        assert!(eager.is_idempotent());
    }

    #[test]
    fn rational_mode_terminates_on_cyclic_reentry() {
        // x = f(x), y = f(y), x = y: both sides unfold forever without the
        // assumption set.
        let e = vec![
            eq(tv(X), app("f", vec![tv(X)])),
            eq(tv(Y), app("f", vec![tv(Y)])),
            eq(tv(X), tv(Y)),
        ];
        let mu = unify(&e, RationalTrees).unwrap();
        assert!(mu.is_rsubst());
        assert_eq!(mu.dom(), [Var::new(X), Var::new(Y)].into_iter().collect());

        let e = vec![eq(tv(X), app("f", vec![tv(X)])), eq(tv(X), app("f", vec![app("f", vec![tv(X)])]))];
        assert_eq!(unify(&e, RationalTrees).unwrap(), Subst::from_pairs([(Var::new(X), app("f", vec![tv(X)]))]).unwrap());

        let e = vec![eq(tv(X), app("f", vec![tv(X)])), eq(tv(X), Term::constant("a"))];
        assert_eq!(unify(&e, RationalTrees), Err(UnifyFailure::Clash));
    }

    #[test]
    fn satisfiability_by_mode() {
        let cyclic = Subst::from_pairs([(Var::new(X), app("f", vec![tv(X)]))]).unwrap();
        assert_eq!(satisfiable(&cyclic, RationalTrees), Ok(true));
        assert_eq!(satisfiable(&cyclic, Herbrand), Ok(false));
        for mode in [Herbrand, RationalTrees] {
            assert_eq!(satisfiable(&Subst::new(), mode), Ok(true));
        }
        let mut circular = Subst::new();
        circular.set_unchecked(Var::new(X), tv(Y));
        circular.set_unchecked(Var::new(Y), tv(X));
        assert_eq!(satisfiable(&circular, Herbrand), Err(Error::NotRationalSolvedForm));
    }

    #[test]
    fn solutions_are_relevant() {
        let e = vec![eq(app("g", vec![tv(X), tv(Y)]), app("g", vec![tv(Y), app("f", vec![tv(Z)])]))];
        for mode in [Herbrand, RationalTrees] {
            let mu = unify(&e, mode).unwrap();
            assert!(mu.vars().is_subset(&equations_vars(&e)));
        }
    }
}
