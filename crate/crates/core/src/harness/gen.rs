//! Seeded random generators for terms, substitutions and sharing sets.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{SharingGroup, SharingSet, SsPair};
use crate::term::{Alphabet, Binding, Functor, Subst, Term, Var, VarSet};
use crate::vsubst::to_vsubst;

/// Which class of substitutions [`gen_substitution`] draws from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenMode {
    /// Any substitution in rational solved form.
    Unrestricted,
    /// Idempotent substitutions.
    Idempotent,
    /// Variable-idempotent substitutions produced by the S-transformation,
    /// so every subset is variable-idempotent too.
    VarIdempotent,
}

#[derive(Clone, Debug)]
pub struct GenConfig {
    /// Variables are drawn from `x1 .. x{max_vars}`; at most 6.
    pub max_vars: usize,
    /// Maximum right-hand side depth; at most 3.
    pub max_depth: usize,
    pub alphabet: Alphabet,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { max_vars: 6, max_depth: 3, alphabet: Alphabet::standard() }
    }
}

impl GenConfig {
    pub fn new(max_vars: usize, max_depth: usize) -> Self {
        assert!((1..=6).contains(&max_vars), "max_vars must be in 1..=6");
        assert!((1..=3).contains(&max_depth), "max_depth must be in 1..=3");
        GenConfig { max_vars, max_depth, ..GenConfig::default() }
    }

    pub fn vars(&self) -> Vec<Var> {
        (0..self.max_vars as u32).map(Var::new).collect()
    }
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A term of depth at most `depth` over `vars` and the alphabet. With no
/// variables available only ground terms are produced.
pub fn gen_term<R: Rng + ?Sized>(rng: &mut R, vars: &[Var], depth: usize, alphabet: &Alphabet) -> Term {
    let leaves: Vec<&Functor> = alphabet.constants().collect();
    let compound: Vec<&Functor> = alphabet.functors().iter().filter(|f| f.arity > 0).collect();
    let pick_leaf = |rng: &mut R| -> Term {
        if !vars.is_empty() && rng.gen_bool(0.6) {
            Term::Var(*vars.choose(rng).expect("nonempty"))
        } else {
            Term::constant(&leaves.choose(rng).expect("alphabet has a constant").name)
        }
    };
    if depth <= 1 || compound.is_empty() || rng.gen_bool(0.35) {
        return pick_leaf(rng);
    }
    let f = compound.choose(rng).expect("nonempty");
    let args = (0..f.arity).map(|_| gen_term(rng, vars, depth - 1, alphabet)).collect();
    Term::app(&f.name, args)
}

fn gen_candidate<R: Rng + ?Sized>(rng: &mut R, pool: &[Var], cfg: &GenConfig, idempotent: bool) -> Option<Subst> {
    if pool.is_empty() {
        return Some(Subst::new());
    }
    let n = rng.gen_range(1..=pool.len());
    let mut vars = pool.to_vec();
    vars.shuffle(rng);
    vars.truncate(n);
    vars.sort();
    let dom: Vec<Var> = vars.iter().copied().filter(|_| rng.gen_bool(0.55)).collect();
    let rhs_vars: Vec<Var> = if idempotent {
        vars.iter().copied().filter(|v| !dom.contains(v)).collect()
    } else {
        vars.clone()
    };
    let mut sigma = Subst::new();
    for &x in &dom {
        let depth = rng.gen_range(1..=cfg.max_depth);
        let t = gen_term(rng, &rhs_vars, depth, &cfg.alphabet);
        // x -> x is not a binding; such draws leave x unbound.
        if let Ok(b) = Binding::new(x, t) {
            sigma.insert(b).expect("each variable is bound once");
        }
    }
    sigma.is_rsubst().then_some(sigma)
}

/// Draws a substitution of the requested class. Circular candidates are
/// rejected and redrawn.
pub fn gen_substitution_with<R: Rng + ?Sized>(rng: &mut R, cfg: &GenConfig, mode: GenMode) -> Subst {
    gen_substitution_over(rng, &cfg.vars(), cfg, mode)
}

/// As [`gen_substitution_with`], drawing variables from `pool` only.
pub fn gen_substitution_over<R: Rng + ?Sized>(rng: &mut R, pool: &[Var], cfg: &GenConfig, mode: GenMode) -> Subst {
    loop {
        let Some(sigma) = gen_candidate(rng, pool, cfg, mode == GenMode::Idempotent) else { continue };
        match mode {
            GenMode::Unrestricted => return sigma,
            GenMode::Idempotent => {
                assert!(sigma.is_idempotent(), "generator produced non-idempotent {sigma}");
                return sigma;
            }
            GenMode::VarIdempotent => return to_vsubst(&sigma).expect("candidate is in rational solved form"),
        }
    }
}

/// [`gen_substitution_with`] driven by a fresh generator seeded with `seed`.
pub fn gen_substitution(cfg: &GenConfig, mode: GenMode, seed: u64) -> Subst {
    gen_substitution_with(&mut rng_for(seed), cfg, mode)
}

/// A random subset of `vars`.
pub fn gen_subset<R: Rng + ?Sized>(rng: &mut R, vars: &[Var], p: f64) -> VarSet {
    vars.iter().copied().filter(|_| rng.gen_bool(p)).collect()
}

/// A random sharing set whose groups lie within `universe`.
pub fn gen_sharing_set<R: Rng + ?Sized>(rng: &mut R, universe: &VarSet) -> SharingSet {
    let vars: Vec<Var> = universe.iter().copied().collect();
    if vars.is_empty() {
        return SharingSet::new();
    }
    let count = rng.gen_range(0..=2 * vars.len());
    (0..count)
        .filter_map(|_| {
            let size = rng.gen_range(1..=vars.len().min(3));
            SharingGroup::new(vars.choose_multiple(rng, size).copied()).ok()
        })
        .collect()
}

/// `sh` plus a few random groups of `universe`.
pub fn gen_superset<R: Rng + ?Sized>(rng: &mut R, sh: &SharingSet, universe: &VarSet) -> SharingSet {
    sh.union(&gen_sharing_set(rng, universe))
}

/// A random pair with the given universe.
pub fn gen_pair<R: Rng + ?Sized>(rng: &mut R, universe: &VarSet) -> SsPair {
    SsPair::new(gen_sharing_set(rng, universe), universe.clone()).expect("groups are drawn from the universe")
}

/// A random binding `x -> r` over `vars`, never `x -> x`.
pub fn gen_binding<R: Rng + ?Sized>(rng: &mut R, vars: &[Var], max_depth: usize, alphabet: &Alphabet) -> Binding {
    loop {
        let x = *vars.choose(rng).expect("nonempty");
        let depth = rng.gen_range(1..=max_depth);
        if let Ok(b) = Binding::new(x, gen_term(rng, vars, depth, alphabet)) {
            return b;
        }
    }
}

/// All terms of depth at most `depth` over `vars` and the alphabet.
pub fn enumerate_terms(vars: &[Var], depth: usize, alphabet: &Alphabet) -> Vec<Term> {
    let mut out: Vec<Term> = vars.iter().map(|&v| Term::Var(v)).collect();
    out.extend(alphabet.constants().map(|c| Term::constant(&c.name)));
    if depth <= 1 {
        return out;
    }
    let smaller = enumerate_terms(vars, depth - 1, alphabet);
    for f in alphabet.functors().iter().filter(|f| f.arity > 0) {
        let mut tuples: Vec<Vec<Term>> = vec![Vec::new()];
        for _ in 0..f.arity {
            tuples = tuples
                .into_iter()
                .flat_map(|prefix| {
                    smaller.iter().map(move |t| {
                        let mut next = prefix.clone();
                        next.push(t.clone());
                        next
                    })
                })
                .collect();
        }
        out.extend(tuples.into_iter().map(|args| Term::app(&f.name, args)));
    }
    out
}

/// All sharing sets over `universe`: every subset of its nonempty subsets.
pub fn enumerate_sharing_sets(universe: &VarSet) -> Vec<SharingSet> {
    let vars: Vec<Var> = universe.iter().copied().collect();
    assert!(vars.len() <= 4, "2^(2^n - 1) sharing sets is too many beyond 4 variables");
    let groups: Vec<SharingGroup> = (1u32..1 << vars.len())
        .map(|mask| {
            SharingGroup::new(vars.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, v)| *v))
                .expect("mask is nonzero")
        })
        .collect();
    (0u64..1 << groups.len())
        .map(|mask| groups.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, g)| g.clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_honour_their_contracts() {
        let cfg = GenConfig::default();
        for seed in 0..300 {
            let s = gen_substitution(&cfg, GenMode::Unrestricted, seed);
            assert!(s.is_rsubst());
            assert!(s.vars().iter().all(|v| v.id() < 6));
            assert!(s.iter().all(|(_, t)| t.depth() <= 3));
            assert!(gen_substitution(&cfg, GenMode::Idempotent, seed).is_idempotent());
            let v = gen_substitution(&cfg, GenMode::VarIdempotent, seed);
            assert!(crate::vsubst::is_var_idempotent(&v).unwrap());
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let cfg = GenConfig::default();
        for seed in 0..20 {
            assert_eq!(
                gen_substitution(&cfg, GenMode::Unrestricted, seed),
                gen_substitution(&cfg, GenMode::Unrestricted, seed)
            );
        }
    }

    #[test]
    fn the_three_variable_enumeration() {
        let vars: Vec<Var> = (0..3).map(Var::new).collect();
        let terms = enumerate_terms(&vars, 2, &Alphabet::standard());
        // 3 variables + a, f(t) and g(t, t) over those 4 leaves.
        assert_eq!(terms.len(), 4 + 4 + 16);
        assert!(terms.iter().all(|t| t.depth() <= 2));
        let universe: VarSet = vars.iter().copied().collect();
        let all = enumerate_sharing_sets(&universe);
        assert_eq!(all.len(), 128);
        assert_eq!(all.iter().collect::<std::collections::BTreeSet<_>>().len(), 128);
    }

    #[test]
    fn generated_sharing_sets_stay_in_the_universe() {
        let mut rng = rng_for(7);
        let universe: VarSet = (0..4).map(Var::new).collect();
        for _ in 0..100 {
            let sh = gen_sharing_set(&mut rng, &universe);
            assert!(sh.vars().is_subset(&universe));
            assert!(sh.is_subset(&gen_superset(&mut rng, &sh, &universe)));
        }
    }
}
