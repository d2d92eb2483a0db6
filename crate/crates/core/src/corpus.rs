//! The bundled problems, what each is expected to produce, and a runner
//! that checks outcomes, replays proofs and verifies answers.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::clause::Clause;
use crate::frontend::{parse_clause, parse_named, ParsedInput};
use crate::oracle::{verify_answer, AnswerSchema, Verdict};
use crate::print::Printer;
use crate::proof::{check_proof, ProofCheck};
use crate::saturation::{run, Outcome, RunResult};
use crate::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    /// An answer literal whose term satisfies `schema`; `known` is the
    /// answer printed in the original run, when there is one.
    Answer {
        schema: AnswerSchema,
        known: Option<&'static str>,
    },
    FalseDerived,
    NoExpectation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_generated: u64,
    pub max_seconds: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct Problem {
    pub name: &'static str,
    pub text: &'static str,
    pub expected: Expected,
    pub budget: Budget,
    /// Clause count of the published run, as a magnitude guide.
    pub reference_clauses: u64,
    pub long_running: bool,
}

const fn budget(max_generated: u64, max_seconds: u64) -> Budget {
    Budget {
        max_generated,
        max_seconds,
    }
}

const DIAGONAL: Expected = Expected::Answer {
    schema: AnswerSchema::Diagonal,
    known: Some("abst abst k"),
};

const SELF_REFERENCE: Expected = Expected::Answer {
    schema: AnswerSchema::SelfReference,
    known: None,
};

pub const PROBLEMS: &[Problem] = &[
    Problem {
        name: "f_reduced",
        text: include_str!("../../../problems/f_reduced.in"),
        expected: DIAGONAL,
        budget: budget(10_000, 10),
        reference_clauses: 111,
        long_running: false,
    },
    Problem {
        name: "full_f_search",
        text: include_str!("../../../problems/full_f_search.in"),
        expected: DIAGONAL,
        budget: budget(500_000, 600),
        reference_clauses: 22_461,
        long_running: true,
    },
    Problem {
        name: "s_search",
        text: include_str!("../../../problems/s_search.in"),
        expected: SELF_REFERENCE,
        budget: budget(200_000, 120),
        reference_clauses: 3_831,
        long_running: false,
    },
    Problem {
        name: "s_reduced",
        text: include_str!("../../../problems/s_reduced.in"),
        expected: SELF_REFERENCE,
        budget: budget(200_000, 120),
        reference_clauses: 4_003,
        long_running: false,
    },
    Problem {
        name: "contradiction",
        text: include_str!("../../../problems/contradiction.in"),
        expected: Expected::FalseDerived,
        budget: budget(5_000, 5),
        reference_clauses: 84,
        long_running: false,
    },
    Problem {
        name: "prop1b",
        text: include_str!("../../../problems/prop1b.in"),
        expected: Expected::FalseDerived,
        budget: budget(20 * 430, 60),
        reference_clauses: 430,
        long_running: false,
    },
    Problem {
        name: "prop2a",
        text: include_str!("../../../problems/prop2a.in"),
        expected: Expected::FalseDerived,
        budget: budget(20 * 638, 60),
        reference_clauses: 638,
        long_running: false,
    },
    Problem {
        name: "prop2b",
        text: include_str!("../../../problems/prop2b.in"),
        expected: Expected::FalseDerived,
        budget: budget(20 * 104, 60),
        reference_clauses: 104,
        long_running: false,
    },
    Problem {
        name: "prop2c",
        text: include_str!("../../../problems/prop2c.in"),
        expected: Expected::FalseDerived,
        budget: budget(20 * 55, 60),
        reference_clauses: 55,
        long_running: false,
    },
];

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown problem `{0}`")]
pub struct UnknownProblem(pub String);

pub fn load_problem(name: &str) -> Result<Problem, UnknownProblem> {
    PROBLEMS
        .iter()
        .find(|p| p.name == name)
        .copied()
        .ok_or_else(|| UnknownProblem(name.to_string()))
}

impl Problem {
    /// The parsed file. Bundled files always parse.
    pub fn input(&self) -> ParsedInput {
        parse_named(self.text, &format!("{}.in", self.name)).expect("bundled problem parses")
    }

    /// The parsed file with the budget installed as search limits.
    pub fn budgeted_input(&self) -> ParsedInput {
        let mut input = self.input();
        input.options.max_generated = Some(self.budget.max_generated);
        input.options.max_seconds = Some(self.budget.max_seconds);
        input
    }
}

/// The term of the first answer literal of `c`.
pub fn answer_term(c: &Clause) -> Option<&Term> {
    c.answers().next().and_then(|l| l.atom.args().first())
}

/// `input` with its answer-literal goal replaced by the instance of the
/// self-reference equation at `answer`, so a refutation proves that the
/// answer has the property.
pub fn self_reference_check(input: &ParsedInput, answer: &Term) -> ParsedInput {
    let mut out = input.clone();
    out.sos.retain(|c| c.answers().next().is_none());
    let t = Printer::new(&out.signature, true).term(answer);
    let goal = parse_clause(&mut out.signature, &format!("({t}) != eq pair(k ({t}),k p2)."))
        .expect("answer terms print in input syntax");
    out.sos.push(goal);
    out
}

#[derive(Clone, Debug)]
pub struct Row {
    pub name: &'static str,
    pub outcome: String,
    pub generated: u64,
    pub kept: u64,
    pub elapsed: Duration,
    pub pass: bool,
    pub note: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub rows: Vec<Row>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<14} {:<16} {:>10} {:>8} {:>9}  {:<4}  note",
            "problem", "outcome", "generated", "kept", "seconds", "pass"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<14} {:<16} {:>10} {:>8} {:>9.2}  {:<4}  {}",
                r.name,
                r.outcome,
                r.generated,
                r.kept,
                r.elapsed.as_secs_f64(),
                if r.pass { "yes" } else { "no" },
                r.note
            )?;
        }
        Ok(())
    }
}

fn outcome_name(o: &Outcome) -> String {
    match o {
        Outcome::ProofFound { success, .. } if success.literals.is_empty() => "false derived".into(),
        Outcome::ProofFound { .. } => "answer".into(),
        Outcome::SosExhausted => "sos exhausted".into(),
        Outcome::LimitReached(l) => format!("limit {l}"),
    }
}

/// Runs one problem within its budget and judges the result.
pub fn run_problem(problem: &Problem) -> (Row, RunResult) {
    let input = problem.budgeted_input();
    let start = Instant::now();
    let result = run(&input);
    let (pass, note) = judge(problem, &input, &result);
    let row = Row {
        name: problem.name,
        outcome: outcome_name(&result.outcome),
        generated: result.stats.generated,
        kept: result.stats.kept,
        elapsed: start.elapsed(),
        pass,
        note,
    };
    (row, result)
}

fn judge(problem: &Problem, input: &ParsedInput, result: &RunResult) -> (bool, String) {
    let Outcome::ProofFound { success, proof } = &result.outcome else {
        return (
            problem.expected == Expected::NoExpectation,
            "no proof within budget".into(),
        );
    };
    let inputs: Vec<Clause> = input.usable.iter().chain(input.sos.iter()).cloned().collect();
    if let ProofCheck::Invalid { line, reason } = check_proof(proof, Some(&inputs)) {
        return (false, format!("replay failed at {line}: {reason}"));
    }
    match problem.expected {
        Expected::NoExpectation => (true, "proof replays".into()),
        Expected::FalseDerived => (success.literals.is_empty(), "proof replays".into()),
        Expected::Answer { schema, .. } => {
            let Some(t) = answer_term(success) else {
                return (false, "no answer literal".into());
            };
            let shown = Printer::new(&input.signature, true).term(t);
            match (schema, verify_answer(schema, t, &input.signature)) {
                (_, Verdict::Verified) => (true, format!("{shown} verified")),
                (_, Verdict::Refuted) => (false, format!("{shown} refuted")),
                (AnswerSchema::SelfReference, Verdict::Unknown(_)) => confirm_by_refutation(input, t, &shown),
                (_, Verdict::Unknown(why)) => (false, format!("{shown}: {why}")),
            }
        }
    }
}

fn confirm_by_refutation(input: &ParsedInput, t: &Term, shown: &str) -> (bool, String) {
    let check = self_reference_check(input, t);
    let r = run(&check);
    let ok = r.outcome.success().is_some_and(|c| c.literals.is_empty());
    let verdict = if ok { "confirmed by refutation" } else { "not confirmed" };
    (ok, format!("{shown} {verdict}"))
}

/// Runs the selected problems in parallel, in registry order.
pub fn run_corpus(select: impl Fn(&Problem) -> bool + Sync) -> Report {
    let chosen: Vec<&Problem> = PROBLEMS.iter().filter(|p| select(p)).collect();
    let rows = chosen.par_iter().map(|p| run_problem(p).0).collect();
    Report { rows }
}

/// Clause count of every list, for comparing against the listings.
pub fn list_sizes(input: &ParsedInput) -> (usize, usize) {
    (input.usable.len(), input.sos.len())
}
