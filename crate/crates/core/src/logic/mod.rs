//! Terms, literals, clauses and substitutions.

mod clause;
pub mod notation;
mod subst;
mod symbol;
mod term;

pub(crate) use clause::is_flat_atom;
pub use clause::{
    clause_matcher, is_instance_of, is_proper_instance, is_variant, literal_variant_key,
    rename_apart, rename_literal, variant_key, Clause, ClauseId, ClauseRef, Literal, Origin,
    VarSupply,
};
pub use subst::Substitution;
pub use symbol::Symbol;
pub use term::{Term, TermKind, Var};
