//! Test support shipped with the library: generators, oracles, and the law
//! catalogue used by the property suites and the `laws` command.

pub mod exhaustive;
pub mod gen;
pub mod laws;
pub mod oracle;

pub use exhaustive::{exhaustive_suite, ExhaustiveReport};
pub use gen::{gen_substitution, GenConfig, GenMode};
pub use laws::{catalogue, find_law, run_all, run_law, Law, LawReport, Verdict};
pub use oracle::{oracle_occ, oracle_soundness, oracle_star, SoundnessOutcome};
