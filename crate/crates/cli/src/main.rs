use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use microtter::corpus::{load_problem, run_corpus, Expected, PROBLEMS};
use microtter::frontend::{parse_named, parse_term, render_result};
use microtter::oracle::{RuleSet, System, DEFAULT_CAP};
use microtter::print::bird_print;
use microtter::{check_proof, parse_proof, run, verify_answer, Normalized, ProofCheck, Signature, Verdict};

const USAGE_ERROR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "microtter",
    version,
    about = "Given-clause prover for combinatory logic with pairing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a proof and print it with statistics.
    Prove(ProveArgs),
    /// Replay a proof block printed by `prove`.
    Check {
        proof: String,
        /// Also require input lines to be clauses of this problem file.
        #[arg(long)]
        input: Option<String>,
    },
    /// Normalize a ground term with the combinator rules.
    Normalize {
        term: String,
        #[arg(long, value_enum, default_value_t = SystemArg::Trcstar)]
        system: SystemArg,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Reduce innermost redexes first.
        #[arg(long)]
        innermost: bool,
    },
    /// Check an answer term against a bundled problem's defining equation.
    Verify { problem: String, term: String },
    /// Run the bundled problems and report against their budgets.
    Corpus {
        /// Only these problems.
        names: Vec<String>,
        /// Include the long-running problems.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Args)]
struct ProveArgs {
    file: String,
    /// Turn a flag on, as `set(NAME).` would.
    #[arg(long = "set", value_name = "NAME")]
    set: Vec<String>,
    /// Turn a flag off, as `clear(NAME).` would.
    #[arg(long = "clear", value_name = "NAME")]
    clear: Vec<String>,
    /// Override a parameter, as `assign(NAME,VALUE).` would.
    #[arg(long = "assign", value_name = "NAME=VALUE")]
    assign: Vec<String>,
    /// Accepted for scripts; the search has no random choices.
    #[arg(long)]
    seed_free: bool,
    /// Leave out the elapsed-time line.
    #[arg(long)]
    no_time: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemArg {
    Trc,
    Trcstar,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("microtter: {msg}");
    ExitCode::from(USAGE_ERROR)
}

fn read(path: &str) -> Result<String, ExitCode> {
    fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
}

fn prove(args: ProveArgs) -> Result<ExitCode, ExitCode> {
    let text = read(&args.file)?;
    let mut input = parse_named(&text, &args.file).map_err(|e| usage(format!("{}: {e}", args.file)))?;
    let opts = &mut input.options;
    for (names, on) in [(&args.set, true), (&args.clear, false)] {
        for n in names {
            if !opts.set_flag(n, on) {
                return Err(usage(format!("unknown flag `{n}`")));
            }
        }
    }
    for a in &args.assign {
        let parsed = a.split_once('=').and_then(|(n, v)| Some((n, v.parse::<u64>().ok()?)));
        match parsed {
            Some((n, v)) if opts.assign(n, v) => {}
            _ => return Err(usage(format!("bad assignment `{a}`"))),
        }
    }
    let result = run(&input);
    print!("{}", render_result(&input, &result));
    if !args.no_time {
        println!("{:<28}{:>10}", "elapsed ms", result.stats.elapsed.as_millis());
    }
    Ok(ExitCode::from(result.outcome.exit_code() as u8))
}

fn check(proof: &str, input: Option<&str>) -> Result<ExitCode, ExitCode> {
    let text = read(proof)?;
    let mut sig = Signature::new();
    let inputs = match input {
        Some(path) => {
            let parsed = parse_named(&read(path)?, path).map_err(|e| usage(format!("{path}: {e}")))?;
            sig = parsed.signature.clone();
            Some(parsed.usable.into_iter().chain(parsed.sos).collect::<Vec<_>>())
        }
        None => None,
    };
    let lines = parse_proof(&text, &mut sig).map_err(|e| usage(format!("{proof}: {e}")))?;
    match check_proof(&lines, inputs.as_deref()) {
        ProofCheck::Valid => {
            println!("valid: {} lines replayed", lines.len());
            Ok(ExitCode::SUCCESS)
        }
        ProofCheck::Invalid { line, reason } => {
            println!("invalid at clause {line}: {reason}");
            Ok(ExitCode::FAILURE)
        }
    }
}

fn normalize(term: &str, system: SystemArg, cap: usize, innermost: bool) -> Result<ExitCode, ExitCode> {
    let mut sig = Signature::new();
    let system = match system {
        SystemArg::Trc => System::Trc,
        SystemArg::Trcstar => System::TrcStar,
    };
    let rules = RuleSet::for_system(system, &mut sig).map_err(usage)?;
    let t = parse_term(&mut sig, term).map_err(usage)?;
    if !t.is_ground() {
        return Err(usage("the term must be ground"));
    }
    let nf = if innermost {
        rules.normalize_innermost(&t, cap)
    } else {
        rules.normalize(&t, cap)
    };
    match nf {
        Normalized::NormalForm { term, .. } => {
            println!("{}", bird_print(&term, &sig));
            Ok(ExitCode::SUCCESS)
        }
        Normalized::CapExceeded { last } => {
            println!("no normal form within {cap} steps; reached {}", bird_print(&last, &sig));
            Ok(ExitCode::from(2))
        }
    }
}

fn verify(problem: &str, term: &str) -> Result<ExitCode, ExitCode> {
    let p = load_problem(problem).map_err(usage)?;
    let Expected::Answer { schema, .. } = p.expected else {
        return Err(usage(format!("{problem} does not ask for an answer")));
    };
    let mut sig = p.input().signature;
    let t = parse_term(&mut sig, term).map_err(usage)?;
    let verdict = verify_answer(schema, &t, &sig);
    match &verdict {
        Verdict::Verified => println!("verified"),
        Verdict::Refuted => println!("refuted"),
        Verdict::Unknown(why) => println!("unknown: {why}"),
    }
    Ok(match verdict {
        Verdict::Verified => ExitCode::SUCCESS,
        Verdict::Refuted => ExitCode::FAILURE,
        Verdict::Unknown(_) => ExitCode::from(2),
    })
}

fn corpus(names: &[String], all: bool) -> Result<ExitCode, ExitCode> {
    if let Some(bad) = names.iter().find(|n| load_problem(n).is_err()) {
        let known: Vec<&str> = PROBLEMS.iter().map(|p| p.name).collect();
        return Err(usage(format!("unknown problem `{bad}` (known: {})", known.join(", "))));
    }
    let report = run_corpus(|p| {
        if names.is_empty() {
            all || !p.long_running
        } else {
            names.iter().any(|n| n == p.name)
        }
    });
    print!("{report}");
    Ok(if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let r = match cli.command {
        Command::Prove(args) => prove(args),
        Command::Check { proof, input } => check(&proof, input.as_deref()),
        Command::Normalize {
            term,
            system,
            cap,
            innermost,
        } => normalize(&term, system, cap, innermost),
        Command::Verify { problem, term } => verify(&problem, &term),
        Command::Corpus { names, all } => corpus(&names, all),
    };
    r.unwrap_or_else(|code| code)
}
