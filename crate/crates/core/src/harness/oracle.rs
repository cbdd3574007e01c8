//! Brute-force reference implementations for small instances.
//!
//! None of these share code with the operations they check beyond the basic
//! term and set types.

use std::collections::BTreeSet;
use std::fmt;

use crate::abstraction::alpha;
use crate::aunify::aunify;
use crate::error::{Error, Result};
use crate::lattice::{SharingGroup, SharingSet, SsElement, SsPair};
use crate::term::{Binding, EqualityMode, Subst, Term, Var, VarSet};
use crate::unify::unify;

pub const MAX_ORACLE_GROUPS: usize = 12;
pub const MAX_ORACLE_VARS: usize = 6;

/// Every union of a nonempty subfamily of `sh`.
pub fn oracle_star(sh: &SharingSet) -> Result<SharingSet> {
    let groups: Vec<&SharingGroup> = sh.iter().collect();
    if groups.len() > MAX_ORACLE_GROUPS {
        return Err(Error::InstanceTooLarge(format!("{} groups", groups.len())));
    }
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << groups.len()) {
        let union: VarSet = groups
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .flat_map(|(_, g)| g.vars().iter().copied())
            .collect();
        out.insert(union);
    }
    Ok(out.into_iter().map(|g| SharingGroup::new(g).expect("nonempty union")).collect())
}

/// `amgu` evaluated from its definition with [`oracle_star`] and explicit
/// filters.
pub fn oracle_amgu(sh: &SharingSet, b: &Binding) -> Result<SharingSet> {
    let x = b.var();
    let rvars = b.term().vars();
    let a: SharingSet = sh.iter().filter(|g| g.vars().contains(&x)).cloned().collect();
    let bb: SharingSet = sh.iter().filter(|g| g.vars().iter().any(|v| rvars.contains(v))).cloned().collect();
    let a_star = oracle_star(&a)?;
    let b_star = oracle_star(&bb)?;
    let mut out: SharingSet = sh.iter().filter(|g| !a.contains(g) && !bb.contains(g)).cloned().collect();
    for s in a_star.iter() {
        for t in b_star.iter() {
            out.insert(s.union(t));
        }
    }
    Ok(out)
}

fn occ_literal(sigma: &Subst, v: Var, n: usize, scope: &VarSet) -> VarSet {
    if n == 0 {
        return if sigma.get(v).is_some() { VarSet::new() } else { VarSet::from([v]) };
    }
    let prev = occ_literal(sigma, v, n - 1, scope);
    scope
        .iter()
        .copied()
        .filter(|&y| {
            let yt = match sigma.get(y) {
                Some(t) => t.clone(),
                None => Term::Var(y),
            };
            yt.vars().iter().any(|w| prev.contains(w))
        })
        .collect()
}

/// `occ(σ, v)` as `occ_N(σ, v)` with `N = |vars(σ)| + 2`, every level
/// evaluated from the definition.
pub fn oracle_occ(sigma: &Subst, v: Var) -> Result<VarSet> {
    if !sigma.is_rsubst() {
        return Err(Error::NotRationalSolvedForm);
    }
    let mut scope = sigma.vars();
    scope.insert(v);
    if scope.len() > MAX_ORACLE_VARS + 1 {
        return Err(Error::InstanceTooLarge(format!("{} variables", scope.len())));
    }
    Ok(occ_literal(sigma, v, sigma.vars().len() + 2, &scope))
}

/// Herbrand satisfiability of a substitution in rational solved form: it
/// fails iff following bindings from some variable returns to it.
pub fn oracle_herbrand_satisfiable(sigma: &Subst) -> Result<bool> {
    if !sigma.is_rsubst() {
        return Err(Error::NotRationalSolvedForm);
    }
    let reaches_itself = |start: Var| {
        let mut seen = VarSet::new();
        let mut stack: Vec<Var> = sigma.get(start).map(|t| t.vars().into_iter().collect()).unwrap_or_default();
        while let Some(y) = stack.pop() {
            if y == start {
                return true;
            }
            if seen.insert(y) {
                if let Some(t) = sigma.get(y) {
                    stack.extend(t.vars());
                }
            }
        }
        false
    };
    Ok(!sigma.dom().into_iter().any(reaches_itself))
}

/// One run of the pipeline `unify(σ ∪ ν) -> α` against `aunify`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SoundnessOutcome {
    /// `σ ∪ ν` has no solution; nothing to check.
    NoSolution,
    Holds { concrete: SsPair, abstract_result: SsElement },
    Violated { concrete: SsPair, abstract_result: SsElement },
}

impl SoundnessOutcome {
    pub fn is_violation(&self) -> bool {
        matches!(self, SoundnessOutcome::Violated { .. })
    }
}

/// A soundness counterexample.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub sigma: Subst,
    pub nu: Subst,
    pub start: SsPair,
    pub mode: EqualityMode,
    pub mu: Subst,
    pub concrete: SsPair,
    pub abstract_result: SsElement,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sigma = {}, nu = {}, start = {}, mode = {:?}: mu = {}, alpha(mu) = {} not below aunify = {}",
            self.sigma, self.nu, self.start, self.mode, self.mu, self.concrete, self.abstract_result
        )
    }
}

/// Checks `α(μ, U ∪ vars(ν)) ≼ aunify(start, ν)` where `μ` solves `σ ∪ ν`
/// and `α(σ, U) ≼ start`, `U` being the universe of `start`.
pub fn oracle_soundness_from(
    sigma: &Subst,
    nu: &Subst,
    start: &SsPair,
    mode: EqualityMode,
) -> Result<(SoundnessOutcome, Option<Counterexample>)> {
    let universe = start.universe();
    if !sigma.vars().is_subset(universe) {
        return Err(Error::Precondition("vars(sigma) must lie within the universe"));
    }
    if !alpha(sigma, universe)?.leq(start) {
        return Err(Error::Precondition("start must describe sigma"));
    }
    if !nu.is_rsubst() {
        return Err(Error::NotRationalSolvedForm);
    }
    let mut eqs = sigma.to_equations();
    eqs.extend(nu.to_equations());
    let Ok(mu) = unify(&eqs, mode) else {
        return Ok((SoundnessOutcome::NoSolution, None));
    };
    let mut target = universe.clone();
    target.extend(nu.vars());
    let concrete = alpha(&mu, &target)?;
    let abstract_result = aunify(&start.clone().into(), nu, mode)?;
    if SsElement::from(concrete.clone()).leq(&abstract_result) {
        return Ok((SoundnessOutcome::Holds { concrete, abstract_result }, None));
    }
    let cx = Counterexample {
        sigma: sigma.clone(),
        nu: nu.clone(),
        start: start.clone(),
        mode,
        mu,
        concrete: concrete.clone(),
        abstract_result: abstract_result.clone(),
    };
    Ok((SoundnessOutcome::Violated { concrete, abstract_result }, Some(cx)))
}

/// [`oracle_soundness_from`] starting from `α(σ, U)` itself.
pub fn oracle_soundness(
    sigma: &Subst,
    nu: &Subst,
    universe: &VarSet,
    mode: EqualityMode,
) -> Result<(SoundnessOutcome, Option<Counterexample>)> {
    let start = alpha(sigma, universe)?;
    oracle_soundness_from(sigma, nu, &start, mode)
}
