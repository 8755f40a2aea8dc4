//! Proof kernel, script checker and bounded prover for extensional
//! higher-order RUE-resolution.
//!
//! The kernel ([`term`], [`clause`], [`calculus`]) works on β-normal simply
//! typed λ-terms; [`checker`] replays derivation scripts against it and
//! [`prover`] searches for refutations with a given-clause loop.

pub mod calculus;
pub mod checker;
pub mod clause;
pub mod cli;
pub mod dot;
pub mod problem;
pub mod prover;
pub mod signature;
pub mod subst;
pub mod syntax;
pub mod term;
pub mod types;

pub use clause::{clause_variant_equal, rename_apart, Clause, Literal, Polarity};
pub use problem::Problem;
pub use signature::Signature;
pub use subst::{substitute, Substitution};
pub use term::{alpha_equal, Const, Term, TypeError, Var};
pub use types::SimpleType;
