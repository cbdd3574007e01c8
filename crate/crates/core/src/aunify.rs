//! Abstract unification on `Sharing` and `SS`.

use crate::error::Result;
use crate::lattice::{SharingSet, SsElement, SsPair};
use crate::term::{Binding, EqualityMode, Subst, VarSet};
use crate::unify::satisfiable;

/// Abstract effect of one binding `x -> r` on a sharing set.
pub fn amgu(sh: &SharingSet, b: &Binding) -> SharingSet {
    let a = sh.rel(&VarSet::from([b.var()]));
    let r = sh.rel(&b.term().vars());
    sh.difference(&a.union(&r)).union(&a.star().bin(&r.star()))
}

impl SsPair {
    /// Extends the universe with the variables of `b`, each fresh variable
    /// free and unaliased, then applies [`amgu`].
    pub fn amgu(&self, b: &Binding) -> SsPair {
        let fresh: VarSet = b.vars().difference(self.universe()).copied().collect();
        let mut universe = self.universe().clone();
        universe.extend(fresh.iter().copied());
        let sh = self.sharing().union(&SharingSet::singletons(&fresh));
        SsPair::new(amgu(&sh, b), universe).expect("amgu only joins groups of the extended universe")
    }
}

/// Abstract unification of a description with a whole substitution.
/// Bindings are processed in increasing order of their left-hand side.
pub fn aunify(e: &SsElement, nu: &Subst, mode: EqualityMode) -> Result<SsElement> {
    let bindings: Vec<Binding> = nu.bindings().collect();
    aunify_in_order(e, &bindings, mode)
}

/// As [`aunify`], with the bindings of the substitution given in an explicit
/// processing order.
pub fn aunify_in_order(e: &SsElement, bindings: &[Binding], mode: EqualityMode) -> Result<SsElement> {
    let nu = Subst::from_bindings(bindings.iter().cloned())?;
    let start = match e {
        SsElement::Bottom | SsElement::Top => return Ok(e.clone()),
        SsElement::Pair(p) => p,
    };
    if !satisfiable(&nu, mode)? {
        return Ok(SsElement::Bottom);
    }
    Ok(bindings.iter().fold(start.clone(), |acc, b| acc.amgu(b)).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::term::{Term, Var};

    const X: u32 = 0;
    const Y: u32 = 1;
    const Z: u32 = 2;

    fn v(i: u32) -> Var {
        Var::new(i)
    }
    fn tv(i: u32) -> Term {
        Term::Var(v(i))
    }
    fn vs(ids: &[u32]) -> VarSet {
        ids.iter().map(|&i| v(i)).collect()
    }
    fn sh(groups: &[&[u32]]) -> SharingSet {
        SharingSet::from_groups(groups.iter().map(|g| g.iter().map(|&i| v(i)))).unwrap()
    }
    fn pair(groups: &[&[u32]], u: &[u32]) -> SsPair {
        SsPair::new(sh(groups), vs(u)).unwrap()
    }
    fn bind(x: u32, t: Term) -> Binding {
        Binding::new(v(x), t).unwrap()
    }

    #[test]
    fn amgu_examples() {
        let b = bind(X, Term::app("g", vec![tv(Y), tv(Z)]));
        assert_eq!(amgu(&sh(&[&[X], &[Y], &[Z]]), &b), sh(&[&[X, Y], &[X, Z], &[X, Y, Z]]));
        let untouched = sh(&[&[3], &[3, 4]]);
        assert_eq!(amgu(&untouched, &b), untouched);
        assert_eq!(amgu(&sh(&[&[X], &[Y]]), &bind(X, tv(Y))), sh(&[&[X, Y]]));
    }

    #[test]
    fn amgu_with_universe_extension() {
        assert_eq!(pair(&[&[X]], &[X]).amgu(&bind(X, tv(Y))), pair(&[&[X, Y]], &[X, Y]));
        let p = pair(&[&[X], &[X, Y]], &[X, Y]);
        assert_eq!(p.amgu(&bind(X, tv(Y))).sharing(), &amgu(p.sharing(), &bind(X, tv(Y))));
        assert_eq!(pair(&[], &[]).amgu(&bind(X, Term::constant("a"))), pair(&[], &[X]));
    }

    #[test]
    fn aunify_examples() {
        let e: SsElement = pair(&[&[X], &[Y]], &[X, Y]).into();
        let nu = Subst::from_pairs([(v(X), tv(Y))]).unwrap();
        let want: SsElement = pair(&[&[X, Y]], &[X, Y]).into();
        assert_eq!(aunify(&e, &nu, EqualityMode::RationalTrees).unwrap(), want);

        let cyclic = Subst::from_pairs([(v(X), Term::app("f", vec![tv(X)]))]).unwrap();
        assert_eq!(aunify(&e, &cyclic, EqualityMode::Herbrand).unwrap(), SsElement::Bottom);
        assert_ne!(aunify(&e, &cyclic, EqualityMode::RationalTrees).unwrap(), SsElement::Bottom);

        for mode in [EqualityMode::Herbrand, EqualityMode::RationalTrees] {
            assert_eq!(aunify(&e, &Subst::new(), mode).unwrap(), e);
            assert_eq!(aunify(&SsElement::Bottom, &nu, mode).unwrap(), SsElement::Bottom);
            assert_eq!(aunify(&SsElement::Top, &cyclic, mode).unwrap(), SsElement::Top);
        }
    }

    #[test]
    fn explicit_order_rejects_conflicting_bindings() {
        let e: SsElement = pair(&[], &[]).into();
        let bs = [bind(X, tv(Y)), bind(X, tv(Z))];
        assert_eq!(aunify_in_order(&e, &bs, EqualityMode::RationalTrees), Err(Error::ConflictingBinding(v(X))));
    }
}
