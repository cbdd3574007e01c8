//! Exhaustive checks over the three-variable universe `{x1, x2, x3}`: all 128
//! sharing sets, all variable subsets, and every binding `x -> r` with `r` of
//! depth at most 2 over `{a/0, f/1, g/2}`.

use std::fmt;
use std::time::{Duration, Instant};

use crate::aunify::amgu;
use crate::harness::gen::{enumerate_sharing_sets, enumerate_terms};
use crate::harness::laws::rel_union_star_sides;
use crate::harness::oracle::{oracle_amgu, oracle_star};
use crate::lattice::SharingSet;
use crate::term::{Alphabet, Binding, Var, VarSet};

#[derive(Clone, Debug)]
pub struct ExhaustiveReport {
    pub name: &'static str,
    pub checks: usize,
    pub failure: Option<String>,
    pub elapsed: Duration,
}

impl ExhaustiveReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for ExhaustiveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {:<28} {:>8} checks ({:.2?})", self.name, self.checks, self.elapsed)?;
        if let Some(msg) = &self.failure {
            write!(f, "\n     {msg}")?;
        }
        Ok(())
    }
}

/// The enumerated domain, with every sharing set indexed by a 7-bit mask
/// over the seven nonempty groups.
pub struct Universe3 {
    pub universe: VarSet,
    pub subsets: Vec<VarSet>,
    pub sets: Vec<SharingSet>,
    pub bindings: Vec<Binding>,
}

impl Universe3 {
    pub fn new() -> Self {
        let vars: Vec<Var> = (0..3).map(Var::new).collect();
        let universe: VarSet = vars.iter().copied().collect();
        let subsets = (0u8..8)
            .map(|m| vars.iter().enumerate().filter(|(i, _)| m & (1 << i) != 0).map(|(_, v)| *v).collect())
            .collect();
        let sets = enumerate_sharing_sets(&universe);
        let terms = enumerate_terms(&vars, 2, &Alphabet::standard());
        let bindings = vars
            .iter()
            .flat_map(|&x| terms.iter().filter_map(move |t| Binding::new(x, t.clone()).ok()))
            .collect();
        Universe3 { universe, subsets, sets, bindings }
    }

    pub fn index_of(&self, sh: &SharingSet) -> usize {
        self.sets.binary_search(sh).unwrap_or_else(|_| panic!("{sh} is not over the three-variable universe"))
    }
}

impl Default for Universe3 {
    fn default() -> Self {
        Universe3::new()
    }
}

fn run(name: &'static str, body: impl FnOnce() -> (usize, Option<String>)) -> ExhaustiveReport {
    let start = Instant::now();
    let (checks, failure) = body();
    ExhaustiveReport { name, checks, failure, elapsed: start.elapsed() }
}

/// Runs every exhaustive check.
// Loops index the precomputed tables by set and binding number.
#[allow(clippy::needless_range_loop)]
pub fn exhaustive_suite() -> Vec<ExhaustiveReport> {
    let mut u = Universe3::new();
    u.sets.sort();
    let n = u.sets.len();
    let nb = u.bindings.len();

    // amgu_table[s][b] is the index of amgu(sets[s], bindings[b]).
    let amgu_table: Vec<Vec<usize>> =
        u.sets.iter().map(|sh| u.bindings.iter().map(|b| u.index_of(&amgu(sh, b))).collect()).collect();
    let star_table: Vec<usize> = u.sets.iter().map(|sh| u.index_of(&sh.star())).collect();
    let subset = |a: usize, b: usize| u.sets[a].is_subset(&u.sets[b]);

    let mut reports = Vec::new();

    reports.push(run("enumeration", || {
        let ok = n == 128 && nb == 69;
        (1, (!ok).then(|| format!("expected 128 sharing sets and 69 bindings, got {n} and {nb}")))
    }));

    reports.push(run("amgu-matches-definition", || {
        for (s, sh) in u.sets.iter().enumerate() {
            for (b, bind) in u.bindings.iter().enumerate() {
                let want = oracle_amgu(sh, bind).expect("at most seven groups");
                if u.sets[amgu_table[s][b]] != want {
                    return (s * nb + b, Some(format!("amgu({sh}, {bind}) = {} but the definition gives {want}", u.sets[amgu_table[s][b]])));
                }
            }
        }
        (n * nb, None)
    }));

    reports.push(run("amgu-idempotent", || {
        for s in 0..n {
            for b in 0..nb {
                let once = amgu_table[s][b];
                if amgu_table[once][b] != once {
                    return (s * nb + b, Some(format!("amgu not idempotent on {} with {}", u.sets[s], u.bindings[b])));
                }
            }
        }
        (n * nb, None)
    }));

    reports.push(run("amgu-commutative", || {
        for s in 0..n {
            for b1 in 0..nb {
                for b2 in 0..nb {
                    if amgu_table[amgu_table[s][b1]][b2] != amgu_table[amgu_table[s][b2]][b1] {
                        return (0, Some(format!("amgu does not commute on {} with {} and {}", u.sets[s], u.bindings[b1], u.bindings[b2])));
                    }
                }
            }
        }
        (n * nb * nb, None)
    }));

    reports.push(run("amgu-monotone", || {
        let mut checks = 0;
        for s1 in 0..n {
            for s2 in 0..n {
                if !subset(s1, s2) {
                    continue;
                }
                for b in 0..nb {
                    checks += 1;
                    if !subset(amgu_table[s1][b], amgu_table[s2][b]) {
                        return (checks, Some(format!("amgu not monotone: {} within {} with {}", u.sets[s1], u.sets[s2], u.bindings[b])));
                    }
                }
            }
        }
        (checks, None)
    }));

    reports.push(run("star-idempotent", || {
        for s in 0..n {
            let want = oracle_star(&u.sets[s]).expect("at most seven groups");
            if u.sets[star_table[s]] != want || star_table[star_table[s]] != star_table[s] {
                return (s, Some(format!("star wrong or not idempotent on {}", u.sets[s])));
            }
        }
        (n, None)
    }));

    reports.push(run("bin-star", || {
        for s1 in 0..n {
            for s2 in 0..n {
                let (a, b) = (&u.sets[s1], &u.sets[s2]);
                let lhs = a.bin(b).star();
                let rhs = u.sets[star_table[s1]].bin(&u.sets[star_table[s2]]);
                if lhs != rhs {
                    return (s1 * n + s2, Some(format!("bin-star fails on {a}, {b}")));
                }
            }
        }
        (n * n, None)
    }));

    reports.push(run("irel-star-commute", || {
        for v in &u.subsets {
            for s in 0..n {
                if u.sets[star_table[s]].irel(v) != u.sets[s].irel(v).star() {
                    return (0, Some(format!("irel-star fails on {} with V of size {}", u.sets[s], v.len())));
                }
            }
        }
        (u.subsets.len() * n, None)
    }));

    reports.push(run("rel-star-semicommute", || {
        for v in &u.subsets {
            for s in 0..n {
                if !u.sets[s].rel(v).star().is_subset(&u.sets[star_table[s]].rel(v)) {
                    return (0, Some(format!("rel-star fails on {}", u.sets[s])));
                }
            }
        }
        (u.subsets.len() * n, None)
    }));

    reports.push(run("rel-union-star", || {
        for v in &u.subsets {
            for s1 in &u.sets {
                for s2 in &u.sets {
                    let (lhs, rhs) = rel_union_star_sides(v, s1, s2);
                    if lhs != rhs {
                        return (0, Some(format!("rel-union-star fails on {s1}, {s2}")));
                    }
                }
            }
        }
        (u.subsets.len() * n * n, None)
    }));

    reports.push(run("rel-irel", || {
        for v1 in &u.subsets {
            for v2 in &u.subsets {
                for sh in &u.sets {
                    if sh.irel(v2).rel(v1) != sh.rel(v1).irel(v2) {
                        return (0, Some(format!("rel-irel fails on {sh}")));
                    }
                }
            }
        }
        (u.subsets.len() * u.subsets.len() * n, None)
    }));

    debug_assert!(u.universe.len() == 3);
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharing_sets_are_indexed() {
        let mut u = Universe3::new();
        u.sets.sort();
        for (i, sh) in u.sets.iter().enumerate() {
            assert_eq!(u.index_of(sh), i);
        }
        assert_eq!(u.bindings.len(), 69);
    }
}
