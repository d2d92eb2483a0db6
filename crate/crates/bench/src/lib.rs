//! Shared fixtures for the prover benchmarks.

use microtter::corpus::load_problem;
use microtter::frontend::parse_term;
use microtter::oracle::fresh_constants;
use microtter::{ParsedInput, RuleSet, Signature, System, Term};

/// Problems quick enough to sample many times.
pub const QUICK: &[&str] = &["contradiction", "prop2c", "prop2b", "f_reduced"];

/// The bundled problem as its file sets it up, without budget limits.
pub fn problem(name: &str) -> ParsedInput {
    load_problem(name).expect("bundled problem").input()
}

/// `term` applied to `n` fresh constants, with the rules of `system`.
pub fn applied(system: System, term: &str, n: usize) -> (RuleSet, Term) {
    let mut sig = Signature::new();
    let rules = RuleSet::for_system(system, &mut sig).expect("rule signature");
    let t = parse_term(&mut sig, term).expect("fixture term parses");
    let args = fresh_constants(&mut sig, n);
    (rules, Term::ap_all(t, args))
}
