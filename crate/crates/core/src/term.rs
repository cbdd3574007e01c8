//! First-order terms and substitutions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A variable, identified by its position in the denumerable universe.
///
/// The derived `Ord` is the total order on variables used by ordered
/// substitutions.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(u32);

impl Var {
    pub const fn new(id: u32) -> Self {
        Var(id)
    }

    pub const fn id(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0 + 1)
    }
}

pub type VarSet = BTreeSet<Var>;

/// Which equality theory unification and satisfiability are decided in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum EqualityMode {
    /// Clark's theory: identity axioms plus the occurs-check axioms.
    Herbrand,
    /// Rational trees: identity axioms plus uniqueness axioms, no occurs-check.
    #[default]
    RationalTrees,
}

/// A function symbol together with its arity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Functor {
    pub name: Arc<str>,
    pub arity: usize,
}

impl Functor {
    pub fn new(name: &str, arity: usize) -> Self {
        Functor { name: name.into(), arity }
    }
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// A set of function symbols with at least two distinct members, one of
/// which is a constant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    functors: Vec<Functor>,
}

impl Alphabet {
    pub fn new(functors: impl IntoIterator<Item = Functor>) -> Result<Self> {
        let set: BTreeSet<Functor> = functors.into_iter().collect();
        if set.len() < 2 || !set.iter().any(|f| f.arity == 0) {
            return Err(Error::InvalidAlphabet);
        }
        Ok(Alphabet { functors: set.into_iter().collect() })
    }

    /// `{a/0, f/1, g/2}`.
    pub fn standard() -> Self {
        Alphabet::new([Functor::new("a", 0), Functor::new("f", 1), Functor::new("g", 2)])
            .expect("standard alphabet is valid")
    }

    pub fn functors(&self) -> &[Functor] {
        &self.functors
    }

    pub fn constants(&self) -> impl Iterator<Item = &Functor> {
        self.functors.iter().filter(|f| f.arity == 0)
    }

    pub fn contains(&self, functor: &Functor) -> bool {
        self.functors.contains(functor)
    }
}

/// A finite first-order term. Constants are applications with no arguments.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    Var(Var),
    App(Arc<str>, Vec<Term>),
}

impl Term {
    pub fn var(v: Var) -> Self {
        Term::Var(v)
    }

    pub fn constant(name: &str) -> Self {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Self {
        Term::App(name.into(), args)
    }

    pub fn as_var(&self) -> Option<Var> {
        match self {
            Term::Var(v) => Some(*v),
            Term::App(..) => None,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn functor(&self) -> Option<Functor> {
        match self {
            Term::Var(_) => None,
            Term::App(name, args) => Some(Functor { name: name.clone(), arity: args.len() }),
        }
    }

    pub fn vars(&self) -> VarSet {
        let mut out = VarSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut VarSet) {
        match self {
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        match self {
            Term::Var(w) => *w == v,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    /// Variables and constants have depth one.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// `tσ`: one simultaneous application of `sigma`.
    pub fn apply(&self, sigma: &Subst) -> Term {
        match self {
            Term::Var(v) => sigma.get(*v).cloned().unwrap_or_else(|| self.clone()),
            Term::App(name, args) => Term::App(name.clone(), args.iter().map(|a| a.apply(sigma)).collect()),
        }
    }

    /// `tσ^n`; `n = 0` leaves the term unchanged.
    pub fn apply_n(&self, sigma: &Subst, n: usize) -> Term {
        (0..n).fold(self.clone(), |t, _| t.apply(sigma))
    }

    /// `t[x/s]`: every occurrence of `x` replaced by `s`.
    pub fn replace(&self, x: Var, s: &Term) -> Term {
        match self {
            Term::Var(v) if *v == x => s.clone(),
            Term::Var(_) => self.clone(),
            Term::App(name, args) => Term::App(name.clone(), args.iter().map(|a| a.replace(x, s)).collect()),
        }
    }

    pub fn rename(&self, f: &impl Fn(Var) -> Var) -> Term {
        match self {
            Term::Var(v) => Term::Var(f(*v)),
            Term::App(name, args) => Term::App(name.clone(), args.iter().map(|a| a.rename(f)).collect()),
        }
    }
}

impl From<Var> for Term {
    fn from(v: Var) -> Self {
        Term::Var(v)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(name, args) if args.is_empty() => write!(f, "{name}"),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// `x -> t` with `t` different from `x`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Binding {
    var: Var,
    term: Term,
}

impl Binding {
    pub fn new(var: Var, term: Term) -> Result<Self> {
        if term == Term::Var(var) {
            return Err(Error::TrivialBinding(var));
        }
        Ok(Binding { var, term })
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn term(&self) -> &Term {
        &self.term
    }

    /// `vars(x -> t) = {x} ∪ vars(t)`.
    pub fn vars(&self) -> VarSet {
        let mut out = self.term.vars();
        out.insert(self.var);
        out
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.var, self.term)
    }
}

/// Which of the structural classes a substitution belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Classification {
    /// No circular subset of variable-to-variable bindings.
    pub rsubst: bool,
    pub idempotent: bool,
    /// Only meaningful when `rsubst` holds; `false` otherwise.
    pub var_idempotent: bool,
    pub ordered: bool,
}

/// A finite set of bindings with pairwise distinct left-hand sides.
///
/// Bindings are kept sorted by variable so equal substitutions compare and
/// iterate identically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Subst {
    map: BTreeMap<Var, Term>,
}

impl Subst {
    pub fn new() -> Self {
        Subst::default()
    }

    pub fn from_bindings(bindings: impl IntoIterator<Item = Binding>) -> Result<Self> {
        let mut s = Subst::new();
        for b in bindings {
            s.insert(b)?;
        }
        Ok(s)
    }

    /// Convenience constructor from `(var, term)` pairs.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, Term)>) -> Result<Self> {
        Subst::from_bindings(pairs.into_iter().map(|(v, t)| Binding::new(v, t)).collect::<Result<Vec<_>>>()?)
    }

    /// Adds a binding. Re-adding an identical binding is a no-op.
    pub fn insert(&mut self, b: Binding) -> Result<()> {
        match self.map.get(&b.var) {
            Some(t) if *t != b.term => Err(Error::ConflictingBinding(b.var)),
            _ => {
                self.map.insert(b.var, b.term);
                Ok(())
            }
        }
    }

    /// Inserts or replaces without checks; callers guarantee `term != var`.
    pub(crate) fn set_unchecked(&mut self, var: Var, term: Term) {
        debug_assert!(term != Term::Var(var));
        self.map.insert(var, term);
    }

    pub fn get(&self, v: Var) -> Option<&Term> {
        self.map.get(&v)
    }

    pub fn binding(&self, v: Var) -> Option<Binding> {
        self.map.get(&v).map(|t| Binding { var: v, term: t.clone() })
    }

    pub fn contains_binding(&self, b: &Binding) -> bool {
        self.map.get(&b.var) == Some(&b.term)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &Term)> + '_ {
        self.map.iter().map(|(v, t)| (*v, t))
    }

    pub fn bindings(&self) -> impl Iterator<Item = Binding> + '_ {
        self.map.iter().map(|(v, t)| Binding { var: *v, term: t.clone() })
    }

    pub fn in_domain(&self, v: Var) -> bool {
        self.map.contains_key(&v)
    }

    pub fn dom(&self) -> VarSet {
        self.map.keys().copied().collect()
    }

    pub fn vars(&self) -> VarSet {
        let mut out = self.dom();
        self.map.values().for_each(|t| t.collect_vars(&mut out));
        out
    }

    /// `param(σ) = vars(σ) \ dom(σ)`.
    pub fn param(&self) -> VarSet {
        let mut out = VarSet::new();
        self.map.values().for_each(|t| t.collect_vars(&mut out));
        out.retain(|v| !self.map.contains_key(v));
        out
    }

    /// `xσ` for a single variable.
    pub fn apply_var(&self, v: Var) -> Term {
        self.map.get(&v).cloned().unwrap_or(Term::Var(v))
    }

    pub fn without(&self, v: Var) -> Subst {
        let mut map = self.map.clone();
        map.remove(&v);
        Subst { map }
    }

    /// The subset of bindings whose left-hand side satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(Var) -> bool) -> Subst {
        Subst { map: self.map.iter().filter(|(v, _)| keep(**v)).map(|(v, t)| (*v, t.clone())).collect() }
    }

    /// `σ ∪ τ`, failing if the two bind a variable differently.
    pub fn union(&self, other: &Subst) -> Result<Subst> {
        let mut out = self.clone();
        for b in other.bindings() {
            out.insert(b)?;
        }
        Ok(out)
    }

    /// Exchanges `v` and `w` on both sides of every binding:
    /// `{xρ -> tρ | x -> t ∈ σ}` with `ρ = {v -> w, w -> v}`.
    pub fn swap_vars(&self, v: Var, w: Var) -> Subst {
        let rho = |x: Var| {
            if x == v {
                w
            } else if x == w {
                v
            } else {
                x
            }
        };
        Subst { map: self.map.iter().map(|(x, t)| (rho(*x), t.rename(&rho))).collect() }
    }

    /// The substitution read as the equation set `{x = t | x -> t ∈ σ}`.
    pub fn to_equations(&self) -> Vec<crate::unify::Equation> {
        self.iter().map(|(v, t)| crate::unify::Equation::new(Term::Var(v), t.clone())).collect()
    }

    /// True iff no subset has the form `{x1 -> x2, ..., xn -> x1}`, `n > 1`.
    pub fn is_rsubst(&self) -> bool {
        // Variable-to-variable bindings form a functional graph; it is
        // acyclic iff following every chain terminates.
        let next = |v: Var| self.map.get(&v).and_then(Term::as_var);
        let mut done = VarSet::new();
        for &start in self.map.keys() {
            let mut path = VarSet::new();
            let mut cur = start;
            loop {
                if done.contains(&cur) {
                    break;
                }
                if !path.insert(cur) {
                    return false;
                }
                match next(cur) {
                    Some(n) => cur = n,
                    None => break,
                }
            }
            done.extend(path);
        }
        true
    }

    /// `tσσ = tσ` for all `t`; checking `dom(σ) ∪ param(σ)` suffices.
    pub fn is_idempotent(&self) -> bool {
        self.dom().into_iter().chain(self.param()).all(|x| {
            let once = self.apply_var(x);
            once.apply(self) == once
        })
    }

    /// Every binding `v -> w` with `w ∈ param(σ)` has `w < v`.
    pub fn is_ordered(&self) -> bool {
        let param = self.param();
        self.iter().all(|(v, t)| match t.as_var() {
            Some(w) if param.contains(&w) => w < v,
            _ => true,
        })
    }

    pub fn classify(&self) -> Classification {
        let rsubst = self.is_rsubst();
        Classification {
            rsubst,
            idempotent: self.is_idempotent(),
            var_idempotent: rsubst && crate::vsubst::is_var_idempotent(self).unwrap_or(false),
            ordered: self.is_ordered(),
        }
    }
}

impl fmt::Display for Subst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} -> {t}")?;
        }
        f.write_str("}")
    }
}

/// `τ ∘ σ`, the substitution with `t(τ ∘ σ) = (tσ)τ`:
///
/// `{x -> xστ | x ∈ dom(σ), x ≠ xστ} ∪ {x -> xτ | x ∈ dom(τ) \ dom(σ)}`.
pub fn compose(tau: &Subst, sigma: &Subst) -> Subst {
    let mut out = Subst::new();
    for (x, t) in sigma.iter() {
        let image = t.apply(tau);
        if image != Term::Var(x) {
            out.set_unchecked(x, image);
        }
    }
    for (x, t) in tau.iter() {
        if !sigma.in_domain(x) {
            out.set_unchecked(x, t.clone());
        }
    }
    out
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
    fn f(t: Term) -> Term {
        Term::app("f", vec![t])
    }
    fn g(s: Term, t: Term) -> Term {
        Term::app("g", vec![s, t])
    }
    fn subst(pairs: Vec<(u32, Term)>) -> Subst {
        Subst::from_pairs(pairs.into_iter().map(|(i, t)| (v(i), t))).unwrap()
    }

    // x, y, z as x1, x2, x3.
    const X: u32 = 0;
    const Y: u32 = 1;
    const Z: u32 = 2;

    #[test]
    fn empty_substitution_is_identity() {
        assert_eq!(tv(X).apply(&Subst::new()), tv(X));
    }

    #[test]
    fn lazy_unifier_output_is_not_idempotent() {
        let sigma = subst(vec![(Z, Term::app("f", vec![tv(Z), tv(Y)])), (X, tv(Z))]);
        assert_eq!(tv(X).apply(&sigma), tv(Z));
        assert_eq!(tv(X).apply(&sigma).apply(&sigma), Term::app("f", vec![tv(Z), tv(Y)]));
        assert_eq!(tv(X).apply_n(&sigma, 2), Term::app("f", vec![tv(Z), tv(Y)]));
        assert_eq!(tv(X).apply_n(&sigma, 0), tv(X));
    }

    #[test]
    fn apply_maps_arguments() {
        let sigma = subst(vec![(X, f(tv(Y)))]);
        assert_eq!(Term::app("g", vec![tv(X), a()]).apply(&sigma), g(f(tv(Y)), a()));
    }

    #[test]
    fn compose_with_empty_is_unit() {
        let sigma = subst(vec![(X, f(tv(Y))), (Y, tv(Z))]);
        assert_eq!(compose(&Subst::new(), &sigma), sigma);
        assert_eq!(compose(&sigma, &Subst::new()), sigma);
    }

    #[test]
    fn compose_adds_outer_bindings() {
        let tau = subst(vec![(Y, a())]);
        let sigma = subst(vec![(X, tv(Y))]);
        let got = compose(&tau, &sigma);
        assert_eq!(got, subst(vec![(X, a()), (Y, a())]));
        for var in [X, Y, Z] {
            assert_eq!(tv(var).apply(&got), tv(var).apply(&sigma).apply(&tau));
        }
    }

    #[test]
    fn compose_drops_bindings_that_become_identity() {
        // τ = {x1 -> x2, x2 -> x1}, σ = {x1 -> x2, x2 -> g(x3), x3 -> f(x3)}.
        let tau = subst(vec![(0, tv(1)), (1, tv(0))]);
        let sigma = subst(vec![(0, tv(1)), (1, Term::app("g", vec![tv(2)])), (2, f(tv(2)))]);
        let got = compose(&tau, &sigma);
        assert_eq!(got, subst(vec![(1, Term::app("g", vec![tv(2)])), (2, f(tv(2)))]));
        for var in 0..4 {
            assert_eq!(tv(var).apply(&got), tv(var).apply(&sigma).apply(&tau));
        }
    }

    #[test]
    fn swap_renames_both_sides() {
        let sigma = subst(vec![(0, tv(1)), (1, Term::app("g", vec![tv(2)])), (2, f(tv(2)))]);
        let got = sigma.swap_vars(v(0), v(1));
        assert_eq!(got, subst(vec![(1, tv(0)), (0, Term::app("g", vec![tv(2)])), (2, f(tv(2)))]));
    }

    #[test]
    fn classification_of_small_substitutions() {
        let c = subst(vec![(X, tv(Y)), (Y, a())]).classify();
        assert!(c.rsubst && !c.idempotent);
        let c = subst(vec![(X, a()), (Y, a())]).classify();
        assert!(c.rsubst && c.idempotent);
        let c = subst(vec![(X, tv(Y)), (Y, Term::app("g", vec![tv(Y)]))]).classify();
        assert!(c.rsubst && !c.idempotent);
        let c = subst(vec![(X, tv(Y)), (Y, Term::app("g", vec![tv(X)]))]).classify();
        assert!(c.rsubst && !c.idempotent);
        assert!(!subst(vec![(X, tv(Y)), (Y, tv(X))]).is_rsubst());
        assert!(!subst(vec![(X, tv(Y)), (Y, tv(X)), (Z, a())]).is_rsubst());
    }

    #[test]
    fn long_variable_cycle_is_circular() {
        let sigma = subst(vec![(0, tv(1)), (1, tv(2)), (2, tv(3)), (3, tv(0)), (4, a())]);
        assert!(!sigma.is_rsubst());
        assert!(sigma.without(v(2)).is_rsubst());
    }

    #[test]
    fn ordered_substitutions() {
        assert!(!subst(vec![(0, tv(1))]).is_ordered());
        assert!(subst(vec![(1, tv(0))]).is_ordered());
        // x2 is in the domain, so x1 -> x2 is not constrained.
        assert!(subst(vec![(0, tv(1)), (1, a())]).is_ordered());
    }

    #[test]
    fn trivial_and_conflicting_bindings_are_rejected() {
        assert_eq!(Binding::new(v(0), tv(0)), Err(Error::TrivialBinding(v(0))));
        let mut s = subst(vec![(0, a())]);
        assert!(s.insert(Binding::new(v(0), a()).unwrap()).is_ok());
        assert_eq!(s.insert(Binding::new(v(0), tv(1)).unwrap()), Err(Error::ConflictingBinding(v(0))));
    }

    #[test]
    fn alphabet_needs_a_constant_and_two_symbols() {
        assert_eq!(Alphabet::new([Functor::new("a", 0)]), Err(Error::InvalidAlphabet));
        assert_eq!(Alphabet::new([Functor::new("f", 1), Functor::new("g", 2)]), Err(Error::InvalidAlphabet));
        assert!(Alphabet::new([Functor::new("a", 0), Functor::new("a", 1)]).is_ok());
        assert_eq!(Alphabet::standard().functors().len(), 3);
    }

    #[test]
    fn display_uses_one_based_names() {
        let sigma = subst(vec![(0, Term::app("f", vec![tv(1), a()]))]);
        assert_eq!(sigma.to_string(), "{x1 -> f(x2,a)}");
        assert_eq!(sigma.param(), [v(1)].into_iter().collect());
    }
}
