//! One line per acceptance criterion. Every criterion runs even when an
//! earlier one fails; the process exits nonzero at the end if any did.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use microtter::corpus::{load_problem, run_problem, Problem, PROBLEMS};
use microtter::frontend::{parse_clause, parse_named, parse_term, render_input, render_result};
use microtter::oracle::{check_extensional, Extensional};
use microtter::{check_proof, run, Literal, Outcome, ProofCheck, ProofLine, RuleSet, Signature, Term};

struct Report {
    failed: Vec<u32>,
}

impl Report {
    fn line(&mut self, n: u32, pass: bool, detail: impl AsRef<str>) {
        println!(
            "criterion {n}: {}  {}",
            if pass { "PASS" } else { "FAIL" },
            detail.as_ref()
        );
        if !pass {
            self.failed.push(n);
        }
    }
}

struct Run {
    problem: Problem,
    pass: bool,
    generated: u64,
    elapsed: Duration,
    note: String,
    proof: Option<Vec<ProofLine>>,
}

fn run_one(name: &str) -> Run {
    let problem = load_problem(name).unwrap();
    let (row, result) = run_problem(&problem);
    let proof = match result.outcome {
        Outcome::ProofFound { proof, .. } => Some(proof),
        _ => None,
    };
    Run {
        problem,
        pass: row.pass,
        generated: row.generated,
        elapsed: row.elapsed,
        note: row.note,
        proof,
    }
}

impl Run {
    fn within_budget(&self) -> bool {
        let b = self.problem.budget;
        self.pass && self.generated <= b.max_generated && self.elapsed <= Duration::from_secs(b.max_seconds)
    }

    fn summary(&self) -> String {
        let b = self.problem.budget;
        format!(
            "{}: {} generated (limit {}), {:.2} s (limit {} s), {}",
            self.problem.name,
            self.generated,
            b.max_generated,
            self.elapsed.as_secs_f64(),
            b.max_seconds,
            self.note
        )
    }
}

fn group(report: &mut Report, n: u32, runs: &[&Run]) {
    let pass = runs.iter().all(|r| r.within_budget());
    let detail: Vec<String> = runs.iter().map(|r| r.summary()).collect();
    report.line(n, pass, detail.join("; "));
}

fn identities() -> (bool, String) {
    let start = Instant::now();
    let mut sig = Signature::new();
    let rules = RuleSet::trc(&mut sig).unwrap();
    let cases = [
        ("prop1b", "abst abst abst abst", "k(k(id))", 3),
        ("prop1c", "abst abst abst abst b d", "id", 3),
        ("prop2a", "abst (abst (abst b))", "abst b", 2),
        ("prop2b", "abst (abst k(b))", "k(b)", 2),
        ("prop2c", "abst k(k(b))", "k(k(b))", 3),
    ];
    let mut bad = Vec::new();
    for (name, l, r, n) in cases {
        let l = parse_term(&mut sig, l).unwrap();
        let r = parse_term(&mut sig, r).unwrap();
        if check_extensional(&l, &r, n, &rules, &mut sig) != Extensional::Equal {
            bad.push(name);
        }
    }
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed < Duration::from_secs(1);
    (
        pass,
        format!(
            "prop1b prop1c prop2a prop2b prop2c instances, not equal: {bad:?}, {:.3} s (limit 1 s)",
            elapsed.as_secs_f64()
        ),
    )
}

/// The proof with line `at` changed so that its clause is no longer what
/// its justification produces.
fn mutate(proof: &[ProofLine], at: usize, side: usize, marker: &Term) -> Vec<ProofLine> {
    let mut out = proof.to_vec();
    let c = &mut out[at].clause;
    match c.literals.first() {
        Some(l) => {
            let side = side.min(l.atom.args().len());
            let old = l.atom.args()[side - 1].clone();
            let atom = l.atom.replace_at(&[side], Term::ap(marker.clone(), old));
            c.literals[0] = Literal {
                positive: l.positive,
                atom,
            };
        }
        None => c.literals.push(Literal::eq(marker.clone(), marker.clone())),
    }
    out
}

fn proof_checks(runs: &[Run]) -> (bool, String) {
    let mut invalid = Vec::new();
    let mut candidates = Vec::new();
    let mut proofs = 0;
    for r in runs {
        let Some(proof) = &r.proof else {
            invalid.push(format!("{}: no proof", r.problem.name));
            continue;
        };
        proofs += 1;
        let mut input = r.problem.input();
        let marker = Term::constant(input.signature.intern("mutant", 0).unwrap());
        let inputs: Vec<_> = input.usable.iter().chain(input.sos.iter()).cloned().collect();
        if !check_proof(proof, Some(&inputs)).is_valid() {
            invalid.push(r.problem.name.to_string());
        }
        for at in 0..proof.len() {
            for side in [1, 2] {
                candidates.push((proof, inputs.clone(), marker.clone(), at, side));
            }
        }
    }
    let wanted = 100;
    let step = (candidates.len() / wanted).max(1);
    let mut tried = 0;
    let mut accepted = 0;
    for (proof, inputs, marker, at, side) in candidates.iter().step_by(step).take(wanted) {
        tried += 1;
        let m = mutate(proof, *at, *side, marker);
        if let ProofCheck::Valid = check_proof(&m, Some(inputs)) {
            accepted += 1;
        }
    }
    let pass = invalid.is_empty() && tried == wanted && accepted == 0;
    let detail = format!(
        "{proofs} proofs replayed, rejected: {invalid:?}; {tried} mutations, {accepted} wrongly accepted; \
         property suites run as unit tests"
    );
    (pass, detail)
}

fn determinism() -> (bool, String) {
    let mut differing = Vec::new();
    let mut checked = 0;
    for p in PROBLEMS.iter().filter(|p| !p.long_running) {
        let input = p.budgeted_input();
        let first = render_result(&input, &run(&input));
        let second = render_result(&input, &run(&input));
        checked += 1;
        if first != second {
            differing.push(p.name);
        }
    }
    (
        differing.is_empty(),
        format!("{checked} problems run twice, differing: {differing:?}"),
    )
}

fn round_trip() -> (bool, String) {
    let mut broken = Vec::new();
    for p in PROBLEMS {
        let first = p.input();
        let text = render_input(&first);
        let again = match parse_named(&text, p.name) {
            Ok(i) => i,
            Err(e) => {
                broken.push(format!("{}: {e}", p.name));
                continue;
            }
        };
        let same_clauses = |a: &[microtter::Clause], b: &[microtter::Clause]| {
            a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.literals == y.literals)
        };
        if render_input(&again) != text
            || !same_clauses(&first.usable, &again.usable)
            || !same_clauses(&first.sos, &again.sos)
        {
            broken.push(p.name.to_string());
        }
    }
    let mut sig = Signature::new();
    let prefix = parse_clause(&mut sig, "a(a(k,x),y)=x.").unwrap();
    let juxtaposed = parse_clause(&mut sig, "k x y=x.").unwrap();
    let spellings = prefix.literals == juxtaposed.literals;
    (
        broken.is_empty() && spellings,
        format!(
            "{} files, broken: {broken:?}; application spellings agree: {spellings}",
            PROBLEMS.len()
        ),
    )
}

fn main() -> ExitCode {
    let mut report = Report { failed: Vec::new() };
    let runs: Vec<Run> = PROBLEMS.iter().map(|p| run_one(p.name)).collect();
    let by_name = |n: &str| runs.iter().find(|r| r.problem.name == n).unwrap();

    group(&mut report, 1, &[by_name("f_reduced")]);
    group(&mut report, 2, &[by_name("full_f_search")]);
    group(&mut report, 3, &[by_name("s_search"), by_name("s_reduced")]);
    group(&mut report, 4, &[by_name("contradiction")]);
    group(
        &mut report,
        5,
        &[
            by_name("prop1b"),
            by_name("prop2a"),
            by_name("prop2b"),
            by_name("prop2c"),
        ],
    );
    let (pass, detail) = identities();
    report.line(6, pass, detail);
    let (pass, detail) = proof_checks(&runs);
    report.line(7, pass, detail);
    let (pass, detail) = determinism();
    report.line(8, pass, detail);
    let (pass, detail) = round_trip();
    report.line(9, pass, detail);

    if report.failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {:?}", report.failed);
        ExitCode::FAILURE
    }
}
