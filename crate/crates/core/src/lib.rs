//! A given-clause prover with paramodulation, demodulation and
//! UR-resolution, built to explore combinatory logic with pairing.
//!
//! Input follows the classic list format (`set(...)`, `assign(...)`,
//! `list(sos). ... end_of_list.`); proofs come out as numbered clause
//! listings that [`proof::check_proof`] can replay independently.

pub mod clause;
pub mod corpus;
pub mod frontend;
pub mod index;
pub mod inference;
pub mod oracle;
pub mod order;
pub mod print;
pub mod proof;
pub mod rewrite;
pub mod saturation;
pub mod term;
#[cfg(test)]
mod testgen;
pub mod unify;

pub use clause::{Clause, ClauseId, Justification, Literal, Position, Rule};
pub use frontend::{parse, parse_clause, parse_term, ParseError, ParsedInput};
pub use oracle::{verify_answer, AnswerSchema, Normalized, RuleSet, System, Verdict};
pub use order::{Lpo, Orientation, Precedence, TermOrdering};
pub use print::Printer;
pub use proof::{check_proof, parse_proof, render_proof, ProofCheck, ProofLine};
pub use saturation::{run, saturate, Limit, Outcome, ProverOptions, RunResult, Statistics};
pub use term::{ArityError, Signature, Substitution, Symbol, Term};
