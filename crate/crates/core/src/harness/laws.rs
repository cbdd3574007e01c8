//! The catalogue of algebraic laws, one named and seedable check per law.
//!
//! A law draws a [`Case`] from a per-case seed and evaluates a deterministic
//! predicate on it. Cases whose preconditions fail are vacuous and do not
//! count towards the requested number. A failing case is shrunk by removing
//! bindings, groups, variables and equations while it keeps failing.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::abstraction::{alpha, alpha_classical, occ, occ_n, sg};
use crate::aunify::{amgu, aunify, aunify_in_order};
use crate::harness::gen::{
    gen_binding, gen_sharing_set, gen_subset, gen_substitution_over, gen_substitution_with, gen_term, rng_for,
    GenConfig, GenMode,
};
use crate::harness::oracle::{oracle_amgu, oracle_herbrand_satisfiable, oracle_occ, oracle_soundness_from, oracle_star};
use crate::lattice::{SharingSet, SsElement, SsPair};
use crate::term::{compose, Binding, EqualityMode, Subst, Var, VarSet};
use crate::unify::{equations_vars, satisfiable, unify, Equation};
use crate::vsubst::{is_var_idempotent, order_vsubst, s_step, to_vsubst};

/// Outcome of one case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Vacuous,
    Fail(String),
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail(msg())
    }
}

/// Every ingredient a law may draw. Unused fields stay empty.
#[derive(Clone, Debug, Default)]
pub struct Case {
    pub mode: EqualityMode,
    pub sigma: Subst,
    pub nu: Subst,
    pub universe: VarSet,
    pub sh1: SharingSet,
    pub sh2: SharingSet,
    pub v1: VarSet,
    pub v2: VarSet,
    pub bindings: Vec<Binding>,
    pub eqs: Vec<Equation>,
}

fn show_vars(vs: &VarSet) -> String {
    let names: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", names.join(","))
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mode={:?}", self.mode)?;
        if !self.sigma.is_empty() {
            write!(f, " sigma={}", self.sigma)?;
        }
        if !self.nu.is_empty() {
            write!(f, " nu={}", self.nu)?;
        }
        if !self.universe.is_empty() {
            write!(f, " U={}", show_vars(&self.universe))?;
        }
        if !self.sh1.is_empty() {
            write!(f, " sh1={}", self.sh1)?;
        }
        if !self.sh2.is_empty() {
            write!(f, " sh2={}", self.sh2)?;
        }
        if !self.v1.is_empty() {
            write!(f, " V1={}", show_vars(&self.v1))?;
        }
        if !self.v2.is_empty() {
            write!(f, " V2={}", show_vars(&self.v2))?;
        }
        if !self.bindings.is_empty() {
            let bs: Vec<String> = self.bindings.iter().map(|b| b.to_string()).collect();
            write!(f, " bindings=[{}]", bs.join(", "))?;
        }
        if !self.eqs.is_empty() {
            let es: Vec<String> = self.eqs.iter().map(|e| e.to_string()).collect();
            write!(f, " eqs=[{}]", es.join(", "))?;
        }
        Ok(())
    }
}

impl Case {
    /// Cases one element smaller than `self`.
    pub fn shrink_candidates(&self) -> Vec<Case> {
        let mut out = Vec::new();
        for v in self.sigma.dom() {
            out.push(Case { sigma: self.sigma.without(v), ..self.clone() });
        }
        for v in self.nu.dom() {
            out.push(Case { nu: self.nu.without(v), ..self.clone() });
        }
        for g in self.sh1.iter() {
            let sh1 = self.sh1.iter().filter(|h| *h != g).cloned().collect();
            out.push(Case { sh1, ..self.clone() });
        }
        for g in self.sh2.iter() {
            let sh2 = self.sh2.iter().filter(|h| *h != g).cloned().collect();
            out.push(Case { sh2, ..self.clone() });
        }
        for v in &self.v1 {
            let mut v1 = self.v1.clone();
            v1.remove(v);
            out.push(Case { v1, ..self.clone() });
        }
        for v in &self.v2 {
            let mut v2 = self.v2.clone();
            v2.remove(v);
            out.push(Case { v2, ..self.clone() });
        }
        for i in 0..self.bindings.len() {
            let mut bindings = self.bindings.clone();
            bindings.remove(i);
            out.push(Case { bindings, ..self.clone() });
        }
        for i in 0..self.eqs.len() {
            let mut eqs = self.eqs.clone();
            eqs.remove(i);
            out.push(Case { eqs, ..self.clone() });
        }
        out
    }
}

/// Greedily shrinks `case` while `fails` keeps holding.
pub fn shrink(case: Case, fails: impl Fn(&Case) -> bool) -> Case {
    let mut current = case;
    'outer: loop {
        for candidate in current.shrink_candidates() {
            if fails(&candidate) {
                current = candidate;
                continue 'outer;
            }
        }
        return current;
    }
}

/// A named law.
#[derive(Clone, Copy)]
pub struct Law {
    pub name: &'static str,
    pub statement: &'static str,
    /// Number of non-vacuous cases the suites run by default.
    pub default_cases: usize,
    generate: fn(&mut ChaCha8Rng) -> Case,
    predicate: fn(&Case) -> Verdict,
}

impl fmt::Debug for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Law").field("name", &self.name).finish()
    }
}

impl Law {
    pub fn generate(&self, case_seed: u64) -> Case {
        (self.generate)(&mut rng_for(case_seed))
    }

    pub fn evaluate(&self, case: &Case) -> Verdict {
        (self.predicate)(case)
    }

    /// Runs one case; a failure is reported on the shrunk case.
    pub fn run_case(&self, case_seed: u64) -> Verdict {
        let case = self.generate(case_seed);
        match self.evaluate(&case) {
            Verdict::Fail(_) => {
                let small = shrink(case, |c| matches!(self.evaluate(c), Verdict::Fail(_)));
                match self.evaluate(&small) {
                    Verdict::Fail(msg) => Verdict::Fail(format!("{msg}; case: {small}")),
                    _ => unreachable!("shrinking keeps the failure"),
                }
            }
            v => v,
        }
    }
}

fn name_hash(name: &str) -> u64 {
    // FNV-1a, so every law draws its own stream from a shared suite seed.
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// The seed of case `index` of `law` in a run seeded with `seed`.
pub fn case_seed(law: &Law, seed: u64, index: u64) -> u64 {
    (seed ^ name_hash(law.name)).wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(index)
}

#[derive(Clone, Debug)]
pub struct Failure {
    pub case_seed: u64,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct LawReport {
    pub name: &'static str,
    pub statement: &'static str,
    pub seed: u64,
    pub requested: usize,
    pub checked: usize,
    pub vacuous: usize,
    pub failure: Option<Failure>,
    pub elapsed: Duration,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.checked >= self.requested
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {:<40} checked {:>6}/{:<6} vacuous {:>6} seed {} ({:.2?})",
            self.name, self.checked, self.requested, self.vacuous, self.seed, self.elapsed
        )?;
        if let Some(fail) = &self.failure {
            write!(f, "\n     case seed {}: {}", fail.case_seed, fail.message)?;
        } else if self.checked < self.requested {
            write!(f, "\n     too many vacuous cases")?;
        }
        Ok(())
    }
}

/// Runs `law` until `cases` non-vacuous cases pass, one fails, or twenty
/// times as many cases have been drawn. Work is spread over all cores; the
/// reported failure is the one with the smallest case index.
pub fn run_law(law: &Law, seed: u64, cases: usize) -> LawReport {
    let start = Instant::now();
    let max_attempts = cases.saturating_mul(20) + 100;
    let next = AtomicUsize::new(0);
    let checked = AtomicUsize::new(0);
    let vacuous = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let failures: Mutex<Vec<(usize, Failure)>> = Mutex::new(Vec::new());
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(16);

    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                if stop.load(Ordering::Relaxed) || checked.load(Ordering::Relaxed) >= cases {
                    return;
                }
                let index = next.fetch_add(1, Ordering::Relaxed);
                if index >= max_attempts {
                    return;
                }
                let cs = case_seed(law, seed, index as u64);
                match law.run_case(cs) {
                    Verdict::Pass => {
                        checked.fetch_add(1, Ordering::Relaxed);
                    }
                    Verdict::Vacuous => {
                        vacuous.fetch_add(1, Ordering::Relaxed);
                    }
                    Verdict::Fail(message) => {
                        failures.lock().expect("no panics while held").push((index, Failure { case_seed: cs, message }));
                        stop.store(true, Ordering::Relaxed);
                    }
                }
            });
        }
    });

    let failure = failures.into_inner().expect("threads joined").into_iter().min_by_key(|(i, _)| *i).map(|(_, f)| f);
    LawReport {
        name: law.name,
        statement: law.statement,
        seed,
        requested: cases,
        checked: checked.into_inner(),
        vacuous: vacuous.into_inner(),
        failure,
        elapsed: start.elapsed(),
    }
}

pub fn find_law(name: &str) -> Option<Law> {
    catalogue().into_iter().find(|l| l.name == name)
}

/// Runs every law with its default number of cases, or `cases` if given.
pub fn run_all(seed: u64, cases: Option<usize>) -> Vec<LawReport> {
    catalogue().iter().map(|law| run_law(law, seed, cases.unwrap_or(law.default_cases))).collect()
}

// ---------------------------------------------------------------------------
// Generators.

const LAW_CASES: usize = 10_000;
const SOUNDNESS_CASES: usize = 5_000;

fn cfg() -> GenConfig {
    GenConfig::default()
}

fn all_vars() -> Vec<Var> {
    cfg().vars()
}

fn random_mode(rng: &mut ChaCha8Rng) -> EqualityMode {
    if rng.gen_bool(0.5) {
        EqualityMode::Herbrand
    } else {
        EqualityMode::RationalTrees
    }
}

/// A universe containing `vars` and some extra variables.
fn universe_around(rng: &mut ChaCha8Rng, vars: &VarSet) -> VarSet {
    let mut u = gen_subset(rng, &all_vars(), 0.3);
    u.extend(vars.iter().copied());
    u
}

fn gen_subst_case(rng: &mut ChaCha8Rng, mode: GenMode) -> Case {
    let sigma = gen_substitution_with(rng, &cfg(), mode);
    let universe = gen_subset(rng, &all_vars(), 0.6);
    Case { sigma, universe, ..Case::default() }
}

fn gen_unrestricted(rng: &mut ChaCha8Rng) -> Case {
    gen_subst_case(rng, GenMode::Unrestricted)
}

fn gen_idempotent(rng: &mut ChaCha8Rng) -> Case {
    gen_subst_case(rng, GenMode::Idempotent)
}

fn gen_var_idempotent(rng: &mut ChaCha8Rng) -> Case {
    gen_subst_case(rng, GenMode::VarIdempotent)
}

fn five_vars() -> VarSet {
    (0..5).map(Var::new).collect()
}

fn gen_sharing_case(rng: &mut ChaCha8Rng) -> Case {
    let universe = five_vars();
    let vars: Vec<Var> = universe.iter().copied().collect();
    Case {
        sh1: gen_sharing_set(rng, &universe),
        sh2: gen_sharing_set(rng, &universe),
        v1: gen_subset(rng, &vars, 0.4),
        v2: gen_subset(rng, &vars, 0.4),
        universe,
        ..Case::default()
    }
}

fn gen_amgu_case(rng: &mut ChaCha8Rng) -> Case {
    let universe = five_vars();
    let vars: Vec<Var> = universe.iter().copied().collect();
    let bindings = (0..2).map(|_| gen_binding(rng, &vars, 3, &cfg().alphabet)).collect();
    Case {
        sh1: gen_sharing_set(rng, &universe),
        sh2: gen_sharing_set(rng, &universe),
        bindings,
        universe,
        ..Case::default()
    }
}

/// A start pair `(sh1, U)`, a substitution `ν` as a shuffled binding list, a
/// second substitution `σ` and one extra binding.
fn gen_aunify_case(rng: &mut ChaCha8Rng) -> Case {
    let universe = gen_subset(rng, &all_vars(), 0.5);
    let nu = gen_substitution_with(rng, &cfg(), GenMode::Unrestricted);
    let sigma = gen_substitution_with(rng, &cfg(), GenMode::Unrestricted);
    let mut bindings: Vec<Binding> = nu.bindings().collect();
    bindings.shuffle(rng);
    bindings.push(gen_binding(rng, &all_vars(), 3, &cfg().alphabet));
    Case {
        mode: random_mode(rng),
        sh1: gen_sharing_set(rng, &universe),
        universe,
        sigma,
        bindings,
        ..Case::default()
    }
}

fn gen_equations(rng: &mut ChaCha8Rng) -> Case {
    let vars = all_vars();
    let n = rng.gen_range(1..=3);
    let eqs = (0..n)
        .map(|_| {
            let l = gen_term(rng, &vars, 3, &cfg().alphabet);
            let r = gen_term(rng, &vars, 3, &cfg().alphabet);
            Equation::new(l, r)
        })
        .collect();
    Case { mode: random_mode(rng), eqs, ..Case::default() }
}

fn gen_two_substs(rng: &mut ChaCha8Rng) -> Case {
    let sigma = gen_substitution_with(rng, &cfg(), GenMode::Unrestricted);
    let nu = gen_substitution_with(rng, &cfg(), GenMode::Unrestricted);
    Case { sigma, nu, ..Case::default() }
}

fn gen_composable(rng: &mut ChaCha8Rng) -> Case {
    let sigma = gen_substitution_with(rng, &cfg(), GenMode::VarIdempotent);
    let pool: Vec<Var> = all_vars().into_iter().filter(|v| !sigma.in_domain(*v)).collect();
    let nu = gen_substitution_over(rng, &pool, &cfg(), GenMode::VarIdempotent);
    Case { sigma, nu, ..Case::default() }
}

fn gen_soundness(rng: &mut ChaCha8Rng, mode: EqualityMode, superset: bool) -> Case {
    let sigma = gen_substitution_with(rng, &cfg(), GenMode::Unrestricted);
    let nu = gen_substitution_with(rng, &cfg(), GenMode::Unrestricted);
    let universe = universe_around(rng, &sigma.vars());
    let sh2 = if superset { gen_sharing_set(rng, &universe) } else { SharingSet::new() };
    Case { mode, sigma, nu, universe, sh2, ..Case::default() }
}

fn gen_soundness_rational(rng: &mut ChaCha8Rng) -> Case {
    gen_soundness(rng, EqualityMode::RationalTrees, false)
}
fn gen_soundness_herbrand(rng: &mut ChaCha8Rng) -> Case {
    gen_soundness(rng, EqualityMode::Herbrand, false)
}
fn gen_soundness_superset_rational(rng: &mut ChaCha8Rng) -> Case {
    gen_soundness(rng, EqualityMode::RationalTrees, true)
}
fn gen_soundness_superset_herbrand(rng: &mut ChaCha8Rng) -> Case {
    gen_soundness(rng, EqualityMode::Herbrand, true)
}

fn gen_herbrand_unsat(rng: &mut ChaCha8Rng) -> Case {
    let nu = gen_substitution_with(rng, &cfg(), GenMode::Unrestricted);
    let universe = gen_subset(rng, &all_vars(), 0.5);
    Case { mode: EqualityMode::Herbrand, nu, sh1: gen_sharing_set(rng, &universe), universe, ..Case::default() }
}

// ---------------------------------------------------------------------------
// Predicates.

/// `U ∪ vars(σ)`: the variables whose occurrence sets matter.
fn relevant(c: &Case, sigma: &Subst) -> VarSet {
    let mut vs = c.universe.clone();
    vs.extend(sigma.vars());
    vs
}

fn alpha_of(sigma: &Subst, u: &VarSet) -> Result<SsPair, Verdict> {
    alpha(sigma, u).map_err(|e| Verdict::Fail(format!("alpha({sigma}) failed: {e}")))
}

fn p_compose_sequential(c: &Case) -> Verdict {
    let comp = compose(&c.nu, &c.sigma);
    let mut vars = c.sigma.vars();
    vars.extend(c.nu.vars());
    vars.insert(Var::new(7));
    for v in vars {
        let lhs = comp.apply_var(v);
        let rhs = c.sigma.apply_var(v).apply(&c.nu);
        if lhs != rhs {
            return Verdict::Fail(format!("{v}: composed gives {lhs}, sequential gives {rhs}"));
        }
    }
    Verdict::Pass
}

fn p_composition_properties(c: &Case) -> Verdict {
    let (tau, sigma) = (&c.nu, &c.sigma);
    if !c.sigma.is_rsubst() || !c.nu.is_rsubst() || !is_var_idempotent(sigma).unwrap_or(false)
        || !is_var_idempotent(tau).unwrap_or(false)
        || !sigma.dom().is_disjoint(&tau.vars())
    {
        return Verdict::Vacuous;
    }
    let comp = compose(tau, sigma);
    let union = tau.union(sigma).expect("domains are disjoint");
    if comp.dom() != union.dom() {
        return Verdict::Fail(format!("dom(compose) = {} but dom(union) = {}", show_vars(&comp.dom()), show_vars(&union.dom())));
    }
    if !comp.is_rsubst() || !is_var_idempotent(&comp).unwrap_or(false) {
        return Verdict::Fail(format!("compose = {comp} is not variable-idempotent"));
    }
    let mut u = comp.vars();
    u.extend(union.vars());
    let (a, b) = match (alpha_of(&comp, &u), alpha_of(&union, &u)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(v), _) | (_, Err(v)) => return v,
    };
    check(a == b, || format!("alpha(compose) = {a} but alpha(union) = {b}"))
}

fn p_unify_solutions(c: &Case) -> Verdict {
    let Ok(mu) = unify(&c.eqs, c.mode) else { return Verdict::Vacuous };
    if !mu.is_rsubst() {
        return Verdict::Fail(format!("solution {mu} is circular"));
    }
    let ev = equations_vars(&c.eqs);
    if !mu.vars().is_subset(&ev) {
        return Verdict::Fail(format!("solution {mu} is not relevant"));
    }
    match c.mode {
        EqualityMode::Herbrand => {
            if !mu.is_idempotent() {
                return Verdict::Fail(format!("Herbrand solution {mu} is not idempotent"));
            }
            for e in &c.eqs {
                if e.lhs.apply(&mu) != e.rhs.apply(&mu) {
                    return Verdict::Fail(format!("{mu} does not unify {e}"));
                }
            }
            Verdict::Pass
        }
        EqualityMode::RationalTrees => {
            // The equations follow from the solution: adding them changes
            // neither solvability nor the abstraction.
            let mut both = mu.to_equations();
            both.extend(c.eqs.iter().cloned());
            match unify(&both, EqualityMode::RationalTrees) {
                Err(f) => Verdict::Fail(format!("{mu} together with the equations fails: {f}")),
                Ok(again) => {
                    let (a, b) = match (alpha_of(&mu, &ev), alpha_of(&again, &ev)) {
                        (Ok(a), Ok(b)) => (a, b),
                        (Err(v), _) | (_, Err(v)) => return v,
                    };
                    check(a == b, || format!("re-solving changed the abstraction from {a} to {b}"))
                }
            }
        }
    }
}

fn p_unify_mode_agreement(c: &Case) -> Verdict {
    let Ok(h) = unify(&c.eqs, EqualityMode::Herbrand) else { return Verdict::Vacuous };
    let r = match unify(&c.eqs, EqualityMode::RationalTrees) {
        Ok(r) => r,
        Err(f) => return Verdict::Fail(format!("Herbrand solves with {h} but rational unification fails: {f}")),
    };
    let ev = equations_vars(&c.eqs);
    let (a, b) = match (alpha_of(&h, &ev), alpha_of(&r, &ev)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(v), _) | (_, Err(v)) => return v,
    };
    check(a == b, || format!("alpha of Herbrand solution {h} is {a}, of rational solution {r} is {b}"))
}

fn p_alternative_mgu(c: &Case) -> Verdict {
    let Ok(mu) = unify(&c.eqs, c.mode) else { return Verdict::Vacuous };
    let flipped: Vec<Equation> = c.eqs.iter().rev().map(|e| Equation::new(e.rhs.clone(), e.lhs.clone())).collect();
    let other = match unify(&flipped, c.mode) {
        Ok(m) => m,
        Err(f) => return Verdict::Fail(format!("reordered equations fail: {f}")),
    };
    let ev = equations_vars(&c.eqs);
    let (a, b) = match (alpha_of(&mu, &ev), alpha_of(&other, &ev)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(v), _) | (_, Err(v)) => return v,
    };
    check(a == b, || format!("solutions {mu} and {other} have abstractions {a} and {b}"))
}

fn subsets(sigma: &Subst) -> impl Iterator<Item = Subst> + '_ {
    let dom: Vec<Var> = sigma.dom().into_iter().collect();
    (0u32..1 << dom.len()).map(move |mask| {
        sigma.restrict(|v| dom.iter().position(|d| *d == v).is_some_and(|i| mask & (1 << i) != 0))
    })
}

fn p_to_vsubst_subsets(c: &Case) -> Verdict {
    if !c.sigma.is_rsubst() {
        return Verdict::Vacuous;
    }
    let t = to_vsubst(&c.sigma).expect("input is in rational solved form");
    if t.dom() != c.sigma.dom() || t.vars() != c.sigma.vars() {
        return Verdict::Fail(format!("{t} changes the domain or the variables"));
    }
    for tau in subsets(&t) {
        if !tau.is_rsubst() || !is_var_idempotent(&tau).unwrap_or(false) {
            return Verdict::Fail(format!("subset {tau} of {t} is not variable-idempotent"));
        }
    }
    Verdict::Pass
}

fn same_alpha(label: &str, before: &Subst, after: &Subst, u: &VarSet) -> Verdict {
    let (a, b) = match (alpha_of(before, u), alpha_of(after, u)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(v), _) | (_, Err(v)) => return v,
    };
    check(a == b, || format!("{label}: alpha({before}) = {a} but alpha({after}) = {b}"))
}

fn p_alpha_to_vsubst(c: &Case) -> Verdict {
    if !c.sigma.is_rsubst() {
        return Verdict::Vacuous;
    }
    same_alpha("to_vsubst", &c.sigma, &to_vsubst(&c.sigma).expect("rational solved form"), &c.universe)
}

fn p_alpha_s_step(c: &Case) -> Verdict {
    if !c.sigma.is_rsubst() || c.sigma.len() < 2 {
        return Verdict::Vacuous;
    }
    for x in c.sigma.dom() {
        for y in c.sigma.dom() {
            if x == y {
                continue;
            }
            let stepped = s_step(&c.sigma, x, y).expect("distinct domain variables");
            if !stepped.is_rsubst() || stepped.dom() != c.sigma.dom() || stepped.vars() != c.sigma.vars() {
                return Verdict::Fail(format!("S-step {x} into {y} gives {stepped}"));
            }
            let v = same_alpha(&format!("S-step {x} into {y}"), &c.sigma, &stepped, &c.universe);
            if v != Verdict::Pass {
                return v;
            }
        }
    }
    Verdict::Pass
}

fn p_alpha_rho_swap(c: &Case) -> Verdict {
    if !c.sigma.is_rsubst() || !is_var_idempotent(&c.sigma).unwrap_or(false) {
        return Verdict::Vacuous;
    }
    let swaps: Vec<(Var, Var)> = c.sigma.iter().filter_map(|(v, t)| t.as_var().map(|w| (v, w))).collect();
    if swaps.is_empty() {
        return Verdict::Vacuous;
    }
    for (v, w) in swaps {
        let swapped = c.sigma.swap_vars(v, w);
        if !swapped.is_rsubst() || !is_var_idempotent(&swapped).unwrap_or(false) {
            return Verdict::Fail(format!("exchanging {v} and {w} gives {swapped}, not variable-idempotent"));
        }
        if swapped.vars() != c.sigma.vars() {
            return Verdict::Fail(format!("exchanging {v} and {w} changes the variables"));
        }
        let verdict = same_alpha(&format!("exchange {v},{w}"), &c.sigma, &swapped, &c.universe);
        if verdict != Verdict::Pass {
            return verdict;
        }
    }
    Verdict::Pass
}

fn p_order_vsubst(c: &Case) -> Verdict {
    if !c.sigma.is_rsubst() || !is_var_idempotent(&c.sigma).unwrap_or(false) {
        return Verdict::Vacuous;
    }
    let o = order_vsubst(&c.sigma).expect("input is variable-idempotent");
    if !o.is_ordered() || !is_var_idempotent(&o).unwrap_or(false) || o.vars() != c.sigma.vars() {
        return Verdict::Fail(format!("ordering gives {o}"));
    }
    same_alpha("order_vsubst", &c.sigma, &o, &c.universe)
}

fn p_occ_sg(c: &Case) -> Verdict {
    if !c.sigma.is_idempotent() || !c.sigma.is_rsubst() {
        return Verdict::Vacuous;
    }
    for v in relevant(c, &c.sigma) {
        let (o, s) = (occ(&c.sigma, v).expect("rsubst"), sg(&c.sigma, v).expect("idempotent"));
        if o != s {
            return Verdict::Fail(format!("occ({v}) = {} but sg({v}) = {}", show_vars(&o), show_vars(&s)));
        }
    }
    let a = alpha(&c.sigma, &c.universe).expect("rsubst");
    let b = alpha_classical(&c.sigma, &c.universe).expect("idempotent");
    check(a == b, || format!("alpha = {a} but classical alpha = {b}"))
}

fn p_occ_occ1(c: &Case) -> Verdict {
    if !c.sigma.is_rsubst() || !is_var_idempotent(&c.sigma).unwrap_or(false) {
        return Verdict::Vacuous;
    }
    for v in relevant(c, &c.sigma) {
        let (o, o1) = (occ(&c.sigma, v).expect("rsubst"), occ_n(&c.sigma, v, 1).expect("rsubst"));
        if o != o1 {
            return Verdict::Fail(format!("occ({v}) = {} but occ_1({v}) = {}", show_vars(&o), show_vars(&o1)));
        }
    }
    Verdict::Pass
}

fn p_occ_domain(c: &Case) -> Verdict {
    if !c.sigma.is_rsubst() || c.sigma.is_empty() {
        return Verdict::Vacuous;
    }
    for v in c.sigma.dom() {
        let o = occ(&c.sigma, v).expect("rsubst");
        if !o.is_empty() {
            return Verdict::Fail(format!("{v} is bound but occ({v}) = {}", show_vars(&o)));
        }
    }
    Verdict::Pass
}

fn p_occ_chain(c: &Case) -> Verdict {
    if !c.sigma.is_rsubst() {
        return Verdict::Vacuous;
    }
    let cap = c.sigma.vars().len() + 2;
    for v in relevant(c, &c.sigma) {
        let mut prev = occ_n(&c.sigma, v, 0).expect("rsubst");
        for n in 1..=cap {
            let cur = occ_n(&c.sigma, v, n).expect("rsubst");
            if !prev.is_subset(&cur) {
                return Verdict::Fail(format!("occ_{}({v}) is not contained in occ_{n}({v})", n - 1));
            }
            prev = cur;
        }
        if prev != occ(&c.sigma, v).expect("rsubst") {
            return Verdict::Fail(format!("occ_{cap}({v}) differs from occ({v})"));
        }
    }
    Verdict::Pass
}

fn p_occ_oracle(c: &Case) -> Verdict {
    if !c.sigma.is_rsubst() {
        return Verdict::Vacuous;
    }
    for v in relevant(c, &c.sigma) {
        let (o, want) = (occ(&c.sigma, v).expect("rsubst"), oracle_occ(&c.sigma, v).expect("small instance"));
        if o != want {
            return Verdict::Fail(format!("occ({v}) = {} but the oracle gives {}", show_vars(&o), show_vars(&want)));
        }
    }
    Verdict::Pass
}

fn p_star_idempotent(c: &Case) -> Verdict {
    let s = c.sh1.star();
    check(s.star() == s, || format!("star is not idempotent: {s} vs {}", s.star()))
}

fn p_star_oracle(c: &Case) -> Verdict {
    let Ok(want) = oracle_star(&c.sh1) else { return Verdict::Vacuous };
    let got = c.sh1.star();
    check(got == want, || format!("star = {got} but enumeration gives {want}"))
}

fn p_star_rel_monotone(c: &Case) -> Verdict {
    let big = c.sh1.union(&c.sh2);
    if !c.sh1.star().is_subset(&big.star()) {
        return Verdict::Fail("star is not monotone".into());
    }
    check(c.sh1.rel(&c.v1).is_subset(&big.rel(&c.v1)), || "rel is not monotone".into())
}

fn p_bin_star(c: &Case) -> Verdict {
    let lhs = c.sh1.bin(&c.sh2).star();
    let rhs = c.sh1.star().bin(&c.sh2.star());
    check(lhs == rhs, || format!("bin(sh1,sh2)* = {lhs} but bin(sh1*,sh2*) = {rhs}"))
}

fn p_irel_star(c: &Case) -> Verdict {
    let lhs = c.sh1.star().irel(&c.v1);
    let rhs = c.sh1.irel(&c.v1).star();
    check(lhs == rhs, || format!("irel(V, sh*) = {lhs} but irel(V, sh)* = {rhs}"))
}

fn p_rel_star(c: &Case) -> Verdict {
    let big = c.sh1.star().rel(&c.v1);
    let small = c.sh1.rel(&c.v1).star();
    check(small.is_subset(&big), || format!("rel(V, sh)* = {small} is not within rel(V, sh*) = {big}"))
}

/// Both sides of the rel-union-star biconditional as sets of variable sets,
/// the empty set included.
pub fn rel_union_star_sides(v: &VarSet, sh1: &SharingSet, sh2: &SharingSet) -> (Vec<VarSet>, Vec<VarSet>) {
    let with_empty = |sh: SharingSet| -> Vec<VarSet> {
        let mut out: Vec<VarSet> = sh.into_iter().map(|g| g.vars().clone()).collect();
        out.push(VarSet::new());
        out.sort();
        out
    };
    let lhs = with_empty(sh1.union(sh2).rel(v).star());
    let s1 = with_empty(sh1.rel(v).star());
    let s2 = with_empty(sh2.rel(v).star());
    let mut rhs: Vec<VarSet> = s1.iter().flat_map(|a| s2.iter().map(move |b| a.union(b).copied().collect())).collect();
    rhs.sort();
    rhs.dedup();
    (lhs, rhs)
}

fn p_rel_union_star(c: &Case) -> Verdict {
    let (lhs, rhs) = rel_union_star_sides(&c.v1, &c.sh1, &c.sh2);
    check(lhs == rhs, || format!("sides differ: {} vs {} members", lhs.len(), rhs.len()))
}

fn p_rel_irel(c: &Case) -> Verdict {
    let lhs = c.sh1.irel(&c.v2).rel(&c.v1);
    let rhs = c.sh1.rel(&c.v1).irel(&c.v2);
    check(lhs == rhs, || format!("rel(V1, irel(V2, sh)) = {lhs} but irel(V2, rel(V1, sh)) = {rhs}"))
}

fn two_bindings(c: &Case) -> Option<(&Binding, &Binding)> {
    match c.bindings.as_slice() {
        [b1, b2, ..] => Some((b1, b2)),
        _ => None,
    }
}

fn p_amgu_oracle(c: &Case) -> Verdict {
    let Some(b) = c.bindings.first() else { return Verdict::Vacuous };
    let Ok(want) = oracle_amgu(&c.sh1, b) else { return Verdict::Vacuous };
    let got = amgu(&c.sh1, b);
    if got != want {
        return Verdict::Fail(format!("amgu = {got} but the definition gives {want}"));
    }
    let vx = VarSet::from([b.var()]);
    let vr = b.term().vars();
    let vxr: VarSet = vx.union(&vr).copied().collect();
    let alt = c.sh1.irel(&vxr).union(&c.sh1.rel(&vx).star().bin(&c.sh1.rel(&vr).star()));
    check(got == alt, || format!("amgu = {got} but the irel form gives {alt}"))
}

fn p_amgu_idempotent(c: &Case) -> Verdict {
    let Some(b) = c.bindings.first() else { return Verdict::Vacuous };
    let once = amgu(&c.sh1, b);
    let twice = amgu(&once, b);
    check(once == twice, || format!("amgu once = {once}, twice = {twice}"))
}

fn p_amgu_commutative(c: &Case) -> Verdict {
    let Some((b1, b2)) = two_bindings(c) else { return Verdict::Vacuous };
    let l = amgu(&amgu(&c.sh1, b1), b2);
    let r = amgu(&amgu(&c.sh1, b2), b1);
    check(l == r, || format!("{b1} then {b2} gives {l}; reversed gives {r}"))
}

fn p_amgu_monotone(c: &Case) -> Verdict {
    let Some(b) = c.bindings.first() else { return Verdict::Vacuous };
    let big = c.sh1.union(&c.sh2);
    let (l, r) = (amgu(&c.sh1, b), amgu(&big, b));
    check(l.is_subset(&r), || format!("amgu(sh1) = {l} is not within amgu(sh1 ∪ sh2) = {r}"))
}

fn start_pair(c: &Case) -> Option<SsPair> {
    SsPair::new(c.sh1.clone(), c.universe.clone()).ok()
}

fn p_lifted_idempotent(c: &Case) -> Verdict {
    let (Some(p), Some(b)) = (start_pair(c), c.bindings.first()) else { return Verdict::Vacuous };
    let once = p.amgu(b);
    let twice = once.amgu(b);
    check(once == twice, || format!("Amgu once = {once}, twice = {twice}"))
}

fn p_lifted_commutative(c: &Case) -> Verdict {
    let (Some(p), Some((b1, b2))) = (start_pair(c), two_bindings(c)) else { return Verdict::Vacuous };
    let l = p.amgu(b1).amgu(b2);
    let r = p.amgu(b2).amgu(b1);
    check(l == r, || format!("{b1} then {b2} gives {l}; reversed gives {r}"))
}

/// `ν` of an aunify case: every binding but the last, which is the extra one.
fn nu_of(c: &Case) -> Option<(Subst, Vec<Binding>, Option<&Binding>)> {
    let (extra, rest) = match c.bindings.split_last() {
        Some((e, rest)) => (Some(e), rest.to_vec()),
        None => (None, Vec::new()),
    };
    let nu = Subst::from_bindings(rest.iter().cloned()).ok()?;
    nu.is_rsubst().then_some((nu, rest, extra))
}

fn p_aunify_idempotent(c: &Case) -> Verdict {
    let (Some(p), Some((nu, _, _))) = (start_pair(c), nu_of(c)) else { return Verdict::Vacuous };
    let once = aunify(&p.into(), &nu, c.mode).expect("rsubst");
    let twice = aunify(&once, &nu, c.mode).expect("rsubst");
    check(once == twice, || format!("aunify once = {once}, twice = {twice}"))
}

fn p_aunify_order(c: &Case) -> Verdict {
    let (Some(p), Some((nu, order, _))) = (start_pair(c), nu_of(c)) else { return Verdict::Vacuous };
    let e: SsElement = p.into();
    let sorted = aunify(&e, &nu, c.mode).expect("rsubst");
    let shuffled = aunify_in_order(&e, &order, c.mode).expect("rsubst");
    check(sorted == shuffled, || format!("sorted order gives {sorted}, shuffled order gives {shuffled}"))
}

fn p_aunify_commutative(c: &Case) -> Verdict {
    let (Some(p), Some((nu, _, _))) = (start_pair(c), nu_of(c)) else { return Verdict::Vacuous };
    if !c.sigma.is_rsubst() {
        return Verdict::Vacuous;
    }
    let e: SsElement = p.into();
    let l = aunify(&aunify(&e, &nu, c.mode).expect("rsubst"), &c.sigma, c.mode).expect("rsubst");
    let r = aunify(&aunify(&e, &c.sigma, c.mode).expect("rsubst"), &nu, c.mode).expect("rsubst");
    check(l == r, || format!("nu then sigma gives {l}; sigma then nu gives {r}"))
}

fn p_aunify_amgu(c: &Case) -> Verdict {
    let (Some(p), Some((nu, _, Some(b)))) = (start_pair(c), nu_of(c)) else { return Verdict::Vacuous };
    let after = aunify(&p.clone().into(), &nu, c.mode).expect("rsubst");
    let SsElement::Pair(q) = after else {
        // Amgu is only defined on pairs.
        return Verdict::Vacuous;
    };
    let l = aunify(&p.amgu(b).into(), &nu, c.mode).expect("rsubst");
    let r: SsElement = q.amgu(b).into();
    check(l == r, || format!("aunify(Amgu(e, {b}), nu) = {l} but Amgu(aunify(e, nu), {b}) = {r}"))
}

fn p_soundness(c: &Case) -> Verdict {
    if !c.sigma.is_rsubst() || !c.nu.is_rsubst() || !c.sigma.vars().is_subset(&c.universe) {
        return Verdict::Vacuous;
    }
    let base = alpha(&c.sigma, &c.universe).expect("rsubst");
    let Ok(start) = SsPair::new(base.sharing().union(&c.sh2), c.universe.clone()) else { return Verdict::Vacuous };
    match oracle_soundness_from(&c.sigma, &c.nu, &start, c.mode) {
        Err(e) => Verdict::Fail(format!("oracle error: {e}")),
        Ok((_, Some(cx))) => Verdict::Fail(cx.to_string()),
        Ok((crate::harness::oracle::SoundnessOutcome::NoSolution, None)) => Verdict::Vacuous,
        Ok((_, None)) => Verdict::Pass,
    }
}

fn p_herbrand_unsat(c: &Case) -> Verdict {
    if !c.nu.is_rsubst() {
        return Verdict::Vacuous;
    }
    let want = oracle_herbrand_satisfiable(&c.nu).expect("rsubst");
    let got = satisfiable(&c.nu, EqualityMode::Herbrand).expect("rsubst");
    if got != want {
        return Verdict::Fail(format!("satisfiable({}) = {got} but reachability gives {want}", c.nu));
    }
    if want {
        return Verdict::Vacuous;
    }
    let Some(p) = start_pair(c) else { return Verdict::Vacuous };
    let r = aunify(&p.into(), &c.nu, EqualityMode::Herbrand).expect("rsubst");
    check(r == SsElement::Bottom, || format!("unsatisfiable nu gives {r}, not bottom"))
}

// ---------------------------------------------------------------------------

macro_rules! law {
    ($name:expr, $statement:expr, $cases:expr, $gen:expr, $pred:expr) => {
        Law { name: $name, statement: $statement, default_cases: $cases, generate: $gen, predicate: $pred }
    };
}

/// Every law, in catalogue order.
pub fn catalogue() -> Vec<Law> {
    vec![
        law!("compose-sequential-application", "v(tau o sigma) = (v sigma) tau", LAW_CASES, gen_two_substs, p_compose_sequential),
        law!(
            "composition-properties",
            "tau, sigma in VSubst, dom(sigma) disjoint from vars(tau): tau o sigma in VSubst, same domain and abstraction as tau u sigma",
            LAW_CASES,
            gen_composable,
            p_composition_properties
        ),
        law!("unify-solutions", "solutions are relevant, in rational solved form, and solve the equations", LAW_CASES, gen_equations, p_unify_solutions),
        law!("unify-mode-agreement", "Herbrand success implies rational success with the same abstraction", LAW_CASES, gen_equations, p_unify_mode_agreement),
        law!("alpha-invariant-alternative-mgu", "two most general solutions have the same abstraction", LAW_CASES, gen_equations, p_alternative_mgu),
        law!("to-vsubst-all-subsets-var-idempotent", "every subset of to_vsubst(sigma) is variable-idempotent", LAW_CASES, gen_unrestricted, p_to_vsubst_subsets),
        law!("alpha-invariant-to-vsubst", "alpha(to_vsubst(sigma)) = alpha(sigma)", LAW_CASES, gen_unrestricted, p_alpha_to_vsubst),
        law!("alpha-invariant-s-step", "S-steps preserve dom, vars and alpha", LAW_CASES, gen_unrestricted, p_alpha_s_step),
        law!("alpha-invariant-rho-swap", "exchanging v and w for v -> w preserves VSubst, vars and alpha", LAW_CASES, gen_var_idempotent, p_alpha_rho_swap),
        law!("alpha-invariant-order-vsubst", "order_vsubst gives an ordered VSubst with the same vars and alpha", LAW_CASES, gen_var_idempotent, p_order_vsubst),
        law!("occ-generalises-sg", "occ = sg and alpha = alpha_I on idempotent substitutions", LAW_CASES, gen_idempotent, p_occ_sg),
        law!("occ-equals-occ1-on-vsubst", "occ = occ_1 on variable-idempotent substitutions", LAW_CASES, gen_var_idempotent, p_occ_occ1),
        law!("occ-empty-on-domain", "occ(sigma, v) is empty for v in dom(sigma)", LAW_CASES, gen_unrestricted, p_occ_domain),
        law!("occ-chain-monotone", "occ_(n-1) is contained in occ_n and the chain ends at occ", LAW_CASES, gen_unrestricted, p_occ_chain),
        law!("occ-matches-oracle", "occ agrees with literal iteration of the occurrence functions", LAW_CASES, gen_unrestricted, p_occ_oracle),
        law!("star-idempotent", "(sh*)* = sh*", LAW_CASES, gen_sharing_case, p_star_idempotent),
        law!("star-matches-oracle", "star agrees with subfamily enumeration", LAW_CASES, gen_sharing_case, p_star_oracle),
        law!("star-rel-monotone", "star and rel are monotone", LAW_CASES, gen_sharing_case, p_star_rel_monotone),
        law!("bin-star", "bin(sh1, sh2)* = bin(sh1*, sh2*)", LAW_CASES, gen_sharing_case, p_bin_star),
        law!("irel-star-commute", "irel(V, sh*) = irel(V, sh)*", LAW_CASES, gen_sharing_case, p_irel_star),
        law!("rel-star-semicommute", "rel(V, sh)* is contained in rel(V, sh*)", LAW_CASES, gen_sharing_case, p_rel_star),
        law!("rel-union-star", "rel(V, sh1 u sh2)* u {{}} = {S1 u S2 | Si in rel(V, shi)* u {{}}}", LAW_CASES, gen_sharing_case, p_rel_union_star),
        law!("rel-irel", "rel(V1, irel(V2, sh)) = irel(V2, rel(V1, sh))", LAW_CASES, gen_sharing_case, p_rel_irel),
        law!("amgu-matches-definition", "amgu agrees with its definition and its irel form", LAW_CASES, gen_amgu_case, p_amgu_oracle),
        law!("amgu-idempotent", "amgu(amgu(sh, b), b) = amgu(sh, b)", LAW_CASES, gen_amgu_case, p_amgu_idempotent),
        law!("amgu-commutative", "amgu(amgu(sh, b1), b2) = amgu(amgu(sh, b2), b1)", LAW_CASES, gen_amgu_case, p_amgu_commutative),
        law!("amgu-monotone", "sh1 within sh2 implies amgu(sh1, b) within amgu(sh2, b)", LAW_CASES, gen_amgu_case, p_amgu_monotone),
        law!("Amgu-idempotent", "Amgu(Amgu(e, b), b) = Amgu(e, b)", LAW_CASES, gen_aunify_case, p_lifted_idempotent),
        law!("Amgu-commutative", "Amgu(Amgu(e, b1), b2) = Amgu(Amgu(e, b2), b1)", LAW_CASES, gen_aunify_case, p_lifted_commutative),
        law!("aunify-idempotent", "aunify(aunify(e, nu), nu) = aunify(e, nu)", LAW_CASES, gen_aunify_case, p_aunify_idempotent),
        law!("aunify-binding-order", "aunify does not depend on the order bindings are processed in", LAW_CASES, gen_aunify_case, p_aunify_order),
        law!("aunify-commutative", "aunify(aunify(e, nu1), nu2) = aunify(aunify(e, nu2), nu1)", LAW_CASES, gen_aunify_case, p_aunify_commutative),
        law!("aunify-Amgu-interchange", "aunify(Amgu(e, b), nu) = Amgu(aunify(e, nu), b)", LAW_CASES, gen_aunify_case, p_aunify_amgu),
        law!("soundness-rational", "alpha(mu) below aunify(alpha(sigma), nu), rational trees", SOUNDNESS_CASES, gen_soundness_rational, p_soundness),
        law!("soundness-herbrand", "alpha(mu) below aunify(alpha(sigma), nu), Herbrand", SOUNDNESS_CASES, gen_soundness_herbrand, p_soundness),
        law!("soundness-superset-rational", "soundness from a description above alpha(sigma), rational trees", SOUNDNESS_CASES, gen_soundness_superset_rational, p_soundness),
        law!("soundness-superset-herbrand", "soundness from a description above alpha(sigma), Herbrand", SOUNDNESS_CASES, gen_soundness_superset_herbrand, p_soundness),
        law!("herbrand-unsatisfiable-bottom", "Herbrand-unsatisfiable nu gives bottom", SOUNDNESS_CASES, gen_herbrand_unsat, p_herbrand_unsat),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn law_names_are_unique() {
        let mut names: Vec<&str> = catalogue().iter().map(|l| l.name).collect();
        let n = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), n);
    }

    #[test]
    fn every_law_passes_a_short_run() {
        for law in catalogue() {
            let report = run_law(&law, 1, 50);
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn cases_are_reproducible() {
        let law = find_law("alpha-invariant-s-step").unwrap();
        let s = case_seed(&law, 3, 17);
        assert_eq!(law.generate(s).to_string(), law.generate(s).to_string());
    }

    #[test]
    fn a_broken_law_is_shrunk() {
        fn never_bind(c: &Case) -> Verdict {
            check(c.sigma.len() < 2, || format!("{} bindings", c.sigma.len()))
        }
        let law = Law {
            name: "broken",
            statement: "substitutions have fewer than two bindings",
            default_cases: 10,
            generate: gen_unrestricted,
            predicate: never_bind,
        };
        let report = run_law(&law, 0, 200);
        let failure = report.failure.expect("some substitution has two bindings");
        assert!(failure.message.starts_with("2 bindings"), "{}", failure.message);
    }

    #[test]
    fn vacuous_cases_are_not_counted() {
        fn always_vacuous(_: &Case) -> Verdict {
            Verdict::Vacuous
        }
        let law = Law { name: "vacuous", statement: "", default_cases: 1, generate: gen_unrestricted, predicate: always_vacuous };
        let report = run_law(&law, 0, 5);
        assert!(!report.passed());
        assert_eq!(report.checked, 0);
    }
}
