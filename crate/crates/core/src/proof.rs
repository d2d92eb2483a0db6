//! Proof listings: rendering, reading back, and replay.
//!
//! The replay in [`check_proof`] re-derives every line from the lines it
//! cites, with its own rewriting and paramodulation code; it shares only
//! unification and matching with the prover.

use std::collections::HashMap;
use std::fmt::Write;

use crate::clause::{is_variant, Clause, ClauseId, Justification, Literal, Position, Rule};
use crate::frontend::{parse_clause, ParseError};
use crate::print::Printer;
use crate::term::{Signature, Substitution, Term};
use crate::unify::{apply_triangular, match_term, unify_with};

/// One line of a proof: a clause and, when some later line cites it as a
/// demodulator, the id of its demodulator copy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub clause: Clause,
    pub twin: Option<ClauseId>,
}

pub const PROOF_HEADER: &str = "---------------- PROOF ----------------";
pub const PROOF_FOOTER: &str = "------------ end of proof -------------";

/// The conflict banner, the success clause and the proof block.
pub fn render_proof(success: &Clause, lines: &[ProofLine], printer: &Printer<'_>) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "----> UNIT CONFLICT ----> {} {}\n\n{}.\n\n{PROOF_HEADER}\n",
        success.id,
        success.justification,
        printer.clause(success)
    );
    for l in lines {
        let _ = writeln!(s, "{}", printer.proof_line(&l.clause, l.twin));
    }
    let _ = writeln!(s, "\n{PROOF_FOOTER}");
    s
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        col: 1,
        msg: msg.into(),
    }
}

fn parse_position(line: usize, s: &str) -> Result<Position, ParseError> {
    let nums: Result<Vec<usize>, _> = s.split('.').map(str::parse).collect();
    match nums {
        Ok(n) if n.len() >= 2 => Ok(Position::new(n[0] as ClauseId, n[1], n[2..].to_vec())),
        _ => Err(syntax(line, format!("bad position `{s}`"))),
    }
}

/// Reads `[tag,refs,...]` back into a justification.
pub fn parse_justification(line: usize, text: &str) -> Result<Justification, ParseError> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| syntax(line, "justification must be bracketed"))?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
    let num = |s: &str| {
        s.parse::<ClauseId>()
            .map_err(|_| syntax(line, format!("bad clause id `{s}`")))
    };
    let mut i = 0;
    let rule = match parts.first().copied() {
        None | Some("demod") | Some("unit_del") => Rule::Input,
        Some(tag) => {
            i = 1;
            match tag {
                "para_from" | "para_into" | "binary" => {
                    if parts.len() < 3 {
                        return Err(syntax(line, format!("`{tag}` needs two positions")));
                    }
                    let a = parse_position(line, parts[1])?;
                    let b = parse_position(line, parts[2])?;
                    i = 3;
                    match tag {
                        "para_from" => Rule::ParaFrom { from: a, into: b },
                        "para_into" => Rule::ParaInto { into: a, from: b },
                        _ => Rule::Binary { first: a, second: b },
                    }
                }
                "ur" => {
                    let mut ids = Vec::new();
                    while i < parts.len() && parts[i].bytes().all(|b| b.is_ascii_digit()) {
                        ids.push(num(parts[i])?);
                        i += 1;
                    }
                    if ids.len() < 2 {
                        return Err(syntax(line, "`ur` needs a nucleus and satellites"));
                    }
                    Rule::Ur {
                        nucleus: ids[0],
                        satellites: ids[1..].to_vec(),
                    }
                }
                "back_demod" => {
                    let id = num(parts.get(1).copied().unwrap_or(""))?;
                    i = 2;
                    Rule::BackDemod(id)
                }
                _ => return Err(syntax(line, format!("unknown rule `{tag}`"))),
            }
        }
    };
    let mut j = Justification::new(rule);
    while i < parts.len() {
        let list = match parts[i] {
            "demod" => &mut j.demod,
            "unit_del" => &mut j.unit_del,
            t => return Err(syntax(line, format!("unexpected `{t}` in justification"))),
        };
        i += 1;
        while i < parts.len() && parts[i].bytes().all(|b| b.is_ascii_digit()) {
            list.push(num(parts[i])?);
            i += 1;
        }
    }
    Ok(j)
}

/// Reads the proof block out of prover output. Entries may wrap over
/// several lines; each ends with a period.
pub fn parse_proof(text: &str, sig: &mut Signature) -> Result<Vec<ProofLine>, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    if !lines.by_ref().any(|(_, l)| l.trim() == PROOF_HEADER) {
        return Err(syntax(1, "no proof block found"));
    }
    let mut out = Vec::new();
    let mut entry: Option<(usize, String)> = None;
    for (no, l) in lines {
        let t = l.trim();
        if t == PROOF_FOOTER {
            if let Some((at, _)) = entry {
                return Err(syntax(at, "unterminated proof line"));
            }
            return Ok(out);
        }
        if t.is_empty() {
            continue;
        }
        let (at, mut buf) = entry.take().unwrap_or((no, String::new()));
        if !buf.is_empty() {
            buf.push(' ');
        }
        buf.push_str(t);
        if buf.ends_with('.') {
            out.push(parse_entry(at, &buf, sig)?);
        } else {
            entry = Some((at, buf));
        }
    }
    Err(syntax(text.lines().count(), "missing end of proof"))
}

fn parse_entry(line: usize, text: &str, sig: &mut Signature) -> Result<ProofLine, ParseError> {
    let open = text.find('[').ok_or_else(|| syntax(line, "missing justification"))?;
    let close = text[open..]
        .find(']')
        .map(|c| c + open)
        .ok_or_else(|| syntax(line, "missing `]`"))?;
    let ids: Vec<&str> = text[..open].trim().split(',').collect();
    let num = |s: &str| {
        s.trim()
            .parse::<ClauseId>()
            .map_err(|_| syntax(line, format!("bad clause id `{s}`")))
    };
    let (twin, id) = match ids.as_slice() {
        [id] => (None, num(id)?),
        [twin, id] => (Some(num(twin)?), num(id)?),
        _ => return Err(syntax(line, "bad clause number")),
    };
    let just = parse_justification(line, &text[open..=close])?;
    let body = &text[close + 1..];
    let c = parse_clause(sig, body).map_err(|e| match e {
        ParseError::Syntax { col, msg, .. } => ParseError::Syntax { line, col, msg },
        ParseError::Arity { col, source, .. } => ParseError::Arity { line, col, source },
        other => other,
    })?;
    let mut clause = Clause::new(id, c.literals, just);
    clause.id = id;
    Ok(ProofLine { clause, twin })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofCheck {
    Valid,
    Invalid { line: ClauseId, reason: String },
}

impl ProofCheck {
    pub fn is_valid(&self) -> bool {
        *self == ProofCheck::Valid
    }
}

fn offset(lits: &[Literal]) -> u32 {
    lits.iter().filter_map(|l| l.atom.max_var()).max().map_or(0, |v| v + 1)
}

fn shift(lits: &[Literal], by: u32) -> Vec<Literal> {
    lits.iter().map(|l| l.map_atom(|a| a.shift_vars(by))).collect()
}

fn apply_all(s: &Substitution, lits: &[Literal]) -> Vec<Literal> {
    lits.iter().map(|l| l.map_atom(|a| apply_triangular(s, a))).collect()
}

/// Rewrites the first subterm, in pre-order, that is an instance of `lhs`.
fn rewrite_first(t: &Term, lhs: &Term, rhs: &Term) -> Option<Term> {
    if let Some(s) = match_term(lhs, t) {
        return Some(s.apply(rhs));
    }
    let Term::App(f, args) = t else { return None };
    for (i, a) in args.iter().enumerate() {
        if let Some(new) = rewrite_first(a, lhs, rhs) {
            let mut v = args.to_vec();
            v[i] = new;
            return Some(Term::app(*f, v));
        }
    }
    None
}

fn rewrite_clause_once(lits: &mut [Literal], lhs: &Term, rhs: &Term) -> bool {
    for l in lits.iter_mut() {
        let Term::App(p, args) = &l.atom else { continue };
        for (i, a) in args.iter().enumerate() {
            if let Some(new) = rewrite_first(a, lhs, rhs) {
                let mut v = args.to_vec();
                v[i] = new;
                l.atom = Term::app(*p, v);
                return true;
            }
        }
    }
    false
}

fn unit_of(lits: &[Literal]) -> Option<usize> {
    let mut core = lits.iter().enumerate().filter(|(_, l)| !l.is_answer());
    match (core.next(), core.next()) {
        (Some((i, _)), None) => Some(i),
        _ => None,
    }
}

fn answers_of(lits: &[Literal]) -> impl Iterator<Item = &Literal> {
    lits.iter().filter(|l| l.is_answer())
}

/// Both readings of an equality atom, one otherwise.
fn readings(l: &Literal) -> Vec<Term> {
    match l.sides() {
        Some((a, b)) if a != b => vec![l.atom.clone(), l.flipped().atom],
        _ => vec![l.atom.clone()],
    }
}

struct Replay<'a> {
    lines: HashMap<ClauseId, &'a Clause>,
    twins: HashMap<ClauseId, ClauseId>,
}

type Step = Result<(), String>;

impl<'a> Replay<'a> {
    fn lits(&self, id: ClauseId) -> Result<&'a [Literal], String> {
        self.lines
            .get(&id)
            .map(|c| c.literals.as_slice())
            .ok_or_else(|| format!("cites clause {id}, which is not in the proof"))
    }

    /// The equation behind demodulator `id` (a demodulator copy or the
    /// clause itself).
    fn equation(&self, id: ClauseId) -> Result<(Term, Term), String> {
        let src = self.twins.get(&id).copied().unwrap_or(id);
        let lits = self.lits(src)?;
        match (lits.len(), lits.first().and_then(|l| l.sides())) {
            (1, Some((l, r))) if lits[0].positive => Ok((l.clone(), r.clone())),
            _ => Err(format!("clause {src} is not a positive unit equation")),
        }
    }

    fn unit_literal(&self, id: ClauseId) -> Result<Literal, String> {
        let lits = self.lits(id)?;
        let i = unit_of(lits).ok_or_else(|| format!("clause {id} is not a unit"))?;
        Ok(lits[i].clone())
    }

    /// Demodulation, merging and unit deletion as recorded, then
    /// comparison with the line.
    fn finish(&self, mut lits: Vec<Literal>, just: &Justification, target: &[Literal]) -> Step {
        for &d in &just.demod {
            let (l, r) = self.equation(d)?;
            if !rewrite_clause_once(&mut lits, &l, &r) {
                return Err(format!("demodulator {d} does not apply"));
            }
        }
        let mut deleters = Vec::new();
        for &u in &just.unit_del {
            deleters.push(self.unit_literal(u)?);
        }
        for flip_merge in [false, true] {
            let mut merged: Vec<Literal> = Vec::new();
            for l in &lits {
                let dup = merged.iter().any(|m| m == l || (flip_merge && *m == l.flipped()));
                if !dup {
                    merged.push(l.clone());
                }
            }
            let kept: Vec<Literal> = merged
                .into_iter()
                .filter(|l| l.is_answer() || !deleters.iter().any(|u| deleted_by(u, l)))
                .collect();
            if is_variant(&kept, target, true) {
                return Ok(());
            }
        }
        Err("replay does not reproduce the clause".into())
    }

    fn check(&self, c: &Clause, inputs: Option<&[Clause]>) -> Step {
        for r in c.justification.references() {
            let src = self.twins.get(&r).copied().unwrap_or(r);
            if r >= c.id || !self.lines.contains_key(&src) {
                return Err(format!("cites clause {r}, which does not precede it"));
            }
        }
        let just = &c.justification;
        match &just.rule {
            Rule::Input => match inputs {
                None => Ok(()),
                Some(inputs) => {
                    let ok = inputs
                        .iter()
                        .any(|i| self.finish(i.literals.clone(), just, &c.literals).is_ok());
                    if ok {
                        Ok(())
                    } else {
                        Err("not an input clause".into())
                    }
                }
            },
            Rule::BackDemod(id) => self.finish(self.lits(*id)?.to_vec(), just, &c.literals),
            Rule::ParaFrom { from, into } | Rule::ParaInto { into, from } => {
                let lits = self.paramodulant(from, into)?;
                self.finish(lits, just, &c.literals)
            }
            Rule::Binary { first, second } => {
                let a = self.lits(first.clause)?;
                let b = shift(self.lits(second.clause)?, offset(a));
                let (la, lb) = (
                    a.get(first.literal.wrapping_sub(1)).ok_or("bad literal index")?,
                    b.get(second.literal.wrapping_sub(1)).ok_or("bad literal index")?,
                );
                if unit_of(a) != Some(first.literal - 1) || unit_of(&b) != Some(second.literal - 1) {
                    return Err("binary step between non-units".into());
                }
                if la.positive == lb.positive {
                    return Err("binary step between literals of one sign".into());
                }
                for atom in readings(lb) {
                    let mut s = Substitution::new();
                    if unify_with(&mut s, &la.atom, &atom) {
                        let res: Vec<Literal> = answers_of(a).chain(answers_of(&b)).cloned().collect();
                        if self.finish(apply_all(&s, &res), just, &c.literals).is_ok() {
                            return Ok(());
                        }
                    }
                }
                Err("units do not conflict as recorded".into())
            }
            Rule::Ur { nucleus, satellites } => {
                // the listing may put the given clause first even when it
                // is a satellite; the nucleus is the one non-unit
                let mut listed = vec![*nucleus];
                listed.extend(satellites);
                let mut core_lens = Vec::new();
                for &id in &listed {
                    core_lens.push(self.lits(id)?.iter().filter(|l| !l.is_answer()).count());
                }
                let ni = core_lens
                    .iter()
                    .position(|&n| n >= 2)
                    .ok_or("no nucleus among the parents")?;
                let nucleus = listed.remove(ni);
                let n = self.lits(nucleus)?;
                let core: Vec<usize> = (0..n.len()).filter(|&i| !n[i].is_answer()).collect();
                if core.len() != listed.len() + 1 {
                    return Err("satellite count does not match the nucleus".into());
                }
                for order in orderings(listed.len()) {
                    let mut sats = Vec::new();
                    let mut next = offset(n);
                    for &k in &order {
                        let s = listed[k];
                        let lits = shift(self.lits(s)?, next);
                        next = next.max(offset(&lits));
                        let i = unit_of(&lits).ok_or_else(|| format!("satellite {s} is not a unit"))?;
                        sats.push((lits[i].clone(), answers_of(&lits).cloned().collect::<Vec<_>>()));
                    }
                    for &target in &core {
                        let others: Vec<usize> = core.iter().copied().filter(|&i| i != target).collect();
                        if self.ur_branch(n, target, &others, &sats, 0, Substitution::new(), just, &c.literals) {
                            return Ok(());
                        }
                    }
                }
                Err("no choice of target literal reproduces the clause".into())
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn ur_branch(
        &self,
        n: &[Literal],
        target: usize,
        others: &[usize],
        sats: &[(Literal, Vec<Literal>)],
        k: usize,
        s: Substitution,
        just: &Justification,
        goal: &[Literal],
    ) -> bool {
        if k == others.len() {
            let mut res = vec![n[target].clone()];
            res.extend(answers_of(n).cloned());
            for (_, a) in sats {
                res.extend(a.iter().cloned());
            }
            return self.finish(apply_all(&s, &res), just, goal).is_ok();
        }
        let lit = &n[others[k]];
        let (sat, _) = &sats[k];
        if lit.positive == sat.positive {
            return false;
        }
        readings(sat).into_iter().any(|atom| {
            let mut s2 = s.clone();
            unify_with(&mut s2, &lit.atom, &atom) && self.ur_branch(n, target, others, sats, k + 1, s2, just, goal)
        })
    }

    fn paramodulant(&self, from: &Position, into: &Position) -> Result<Vec<Literal>, String> {
        let into_lits = self.lits(into.clause)?;
        let from_lits = shift(self.lits(from.clause)?, offset(into_lits));
        let flit = from_lits.get(from.literal.wrapping_sub(1)).ok_or("bad from literal")?;
        let (a, b) = flit
            .sides()
            .filter(|_| flit.positive)
            .ok_or("from literal is not a positive equation")?;
        let (l, r) = match from.path.as_slice() {
            [1] => (a, b),
            [2] => (b, a),
            _ => return Err("from position must name a side".into()),
        };
        let ilit = into_lits.get(into.literal.wrapping_sub(1)).ok_or("bad into literal")?;
        if ilit.is_answer() || into.path.is_empty() {
            return Err("cannot paramodulate into that position".into());
        }
        let sub = ilit.atom.at(&into.path).ok_or("into position does not exist")?;
        if sub.is_var() {
            return Err("paramodulation into a variable".into());
        }
        let mut s = Substitution::new();
        if !unify_with(&mut s, l, sub) {
            return Err("equation side does not unify with the into term".into());
        }
        let mut out = Vec::new();
        for (i, lit) in into_lits.iter().enumerate() {
            let lit = if i + 1 == into.literal {
                Literal {
                    positive: lit.positive,
                    atom: lit.atom.replace_at(&into.path, r.clone()),
                }
            } else {
                lit.clone()
            };
            out.push(lit);
        }
        for (i, lit) in from_lits.iter().enumerate() {
            if i + 1 != from.literal {
                out.push(lit.clone());
            }
        }
        Ok(apply_all(&s, &out))
    }
}

/// The identity first, then every other permutation of `0..n` for small
/// `n`.
fn orderings(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if !prefix.contains(&i) {
                prefix.push(i);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n <= 4 {
        go(&mut Vec::new(), n, &mut out);
    } else {
        out.push((0..n).collect());
    }
    out
}

/// `lit` is removed by the unit literal `unit` when its negation is an
/// instance of it.
fn deleted_by(unit: &Literal, lit: &Literal) -> bool {
    unit.positive != lit.positive && readings(unit).iter().any(|atom| match_term(atom, &lit.atom).is_some())
}

/// Replays every line. `inputs`, when given, are the input clauses that
/// `[]` lines must come from.
pub fn check_proof(lines: &[ProofLine], inputs: Option<&[Clause]>) -> ProofCheck {
    let mut replay = Replay {
        lines: HashMap::new(),
        twins: HashMap::new(),
    };
    let mut last = 0;
    for l in lines {
        let c = &l.clause;
        if c.id <= last {
            return ProofCheck::Invalid {
                line: c.id,
                reason: "ids are not increasing".into(),
            };
        }
        last = c.id;
        if let Err(reason) = replay.check(c, inputs) {
            return ProofCheck::Invalid { line: c.id, reason };
        }
        replay.lines.insert(c.id, c);
        if let Some(t) = l.twin {
            replay.twins.insert(t, c.id);
        }
    }
    ProofCheck::Valid
}
