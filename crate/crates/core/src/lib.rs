//! Set-sharing analysis over substitutions in rational solved form.
//!
//! The crate covers the whole pipeline an analyzer needs for the `Sharing`
//! domain when the analysed language may omit the occurs-check:
//!
//! * [`term`]: terms, substitutions, composition and structural classes
//!   (rational solved form, idempotent, ordered).
//! * [`unify`]: Martelli-Montanari style unification in the Herbrand theory
//!   and in the theory of rational trees.
//! * [`vsubst`]: variable-idempotence, S-steps and the normalising
//!   S-transformation.
//! * [`lattice`]: sharing groups, sharing sets and the `SS` lattice.
//! * [`abstraction`]: the classical `sg`-based abstraction and the
//!   occurrence-operator abstraction valid on every substitution in rational
//!   solved form.
//! * [`aunify`]: `amgu`, `Amgu` and `aunify`.
//! * [`harness`]: seeded generators, brute-force oracles and the catalogue of
//!   algebraic laws checked by the test suites.

pub mod abstraction;
pub mod aunify;
mod error;
pub mod harness;
pub mod lattice;
pub mod term;
pub mod unify;
pub mod vsubst;

pub use abstraction::{alpha, alpha_classical, alpha_classical_unchecked, alpha_set, occ, occ_n, sg, sg_unchecked};
pub use aunify::{amgu, aunify, aunify_in_order};
pub use error::{Error, Result};
pub use lattice::{SharingGroup, SharingSet, SsElement, SsPair};
pub use term::{compose, Alphabet, Binding, Classification, EqualityMode, Functor, Subst, Term, Var, VarSet};
pub use unify::{satisfiable, unify, Equation, UnifyFailure};
pub use vsubst::{is_var_idempotent, order_vsubst, s_step, to_vsubst};
