//! The given-clause loop.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::clause::{normalize_variables, Clause, ClauseId, Literal, Rule};
use crate::frontend::ParsedInput;
use crate::index::SubtermIndex;
use crate::inference::{
    paramodulate, paramodulate_into, unit_conflict, unit_delete, ur_resolve, ur_resolve_with, ParaOptions, UnitStore,
};
use crate::order::{Lpo, Orientation, Precedence, TermOrdering};
use crate::print::Printer;
use crate::proof::ProofLine;
use crate::rewrite::{back_demodulate, Demodulator, DemodulatorSet, DEFAULT_STEP_CAP};
use crate::term::{Signature, Symbol};

/// Search options, as set by `set`, `clear` and `assign` directives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProverOptions {
    pub knuth_bendix: bool,
    pub ur_res: bool,
    pub unit_deletion: bool,
    pub para_from_units_only: bool,
    pub para_into_units_only: bool,
    pub bird_print: bool,
    /// Trace every kept clause on standard error.
    pub print_kept: bool,
    pub max_weight: u32,
    pub pick_given_ratio: u32,
    /// Stop once this many clauses have been kept.
    pub max_retained: u64,
    pub max_seconds: Option<u64>,
    pub max_generated: Option<u64>,
    /// Kept for fidelity with input files; memory is bounded through
    /// `max_retained` instead.
    pub max_mem: Option<u64>,
    /// Rewrite steps allowed when demodulating one clause.
    pub demod_limit: usize,
    /// Symbol names from greatest to least.
    pub precedence: Option<Vec<String>>,
}

const FLAGS: [&str; 7] = [
    "knuth_bendix",
    "ur_res",
    "unit_deletion",
    "para_from_units_only",
    "para_into_units_only",
    "bird_print",
    "print_kept",
];

impl Default for ProverOptions {
    fn default() -> Self {
        ProverOptions {
            knuth_bendix: false,
            ur_res: false,
            unit_deletion: false,
            para_from_units_only: false,
            para_into_units_only: false,
            bird_print: false,
            print_kept: false,
            max_weight: u32::MAX,
            pick_given_ratio: 4,
            max_retained: 200_000,
            max_seconds: None,
            max_generated: None,
            max_mem: None,
            demod_limit: DEFAULT_STEP_CAP,
            precedence: None,
        }
    }
}

impl ProverOptions {
    fn flag_mut(&mut self, name: &str) -> Option<&mut bool> {
        Some(match name {
            "knuth_bendix" => &mut self.knuth_bendix,
            "ur_res" => &mut self.ur_res,
            "unit_deletion" => &mut self.unit_deletion,
            "para_from_units_only" => &mut self.para_from_units_only,
            "para_into_units_only" => &mut self.para_into_units_only,
            "bird_print" => &mut self.bird_print,
            "print_kept" => &mut self.print_kept,
            _ => return None,
        })
    }

    /// Sets or clears a flag; false for an unknown name.
    pub fn set_flag(&mut self, name: &str, on: bool) -> bool {
        match self.flag_mut(name) {
            Some(f) => {
                *f = on;
                true
            }
            None => false,
        }
    }

    /// Assigns an integer parameter; false for an unknown name.
    pub fn assign(&mut self, name: &str, value: u64) -> bool {
        match name {
            "max_weight" => self.max_weight = value.min(u32::MAX as u64) as u32,
            "pick_given_ratio" => self.pick_given_ratio = value.min(u32::MAX as u64) as u32,
            "max_retained" => self.max_retained = value,
            "max_seconds" => self.max_seconds = Some(value),
            "max_generated" => self.max_generated = Some(value),
            "max_mem" => self.max_mem = Some(value),
            "demod_limit" => self.demod_limit = value as usize,
            _ => return false,
        }
        true
    }

    pub fn flags(&self) -> Vec<(&'static str, bool)> {
        let mut o = self.clone();
        FLAGS.iter().map(|&n| (n, *o.flag_mut(n).unwrap())).collect()
    }

    /// Parameters that differ from their defaults.
    pub fn assignments(&self) -> Vec<(&'static str, u64)> {
        let d = ProverOptions::default();
        let mut v = Vec::new();
        if let Some(m) = self.max_mem {
            v.push(("max_mem", m));
        }
        if self.max_weight != d.max_weight {
            v.push(("max_weight", self.max_weight as u64));
        }
        if self.pick_given_ratio != d.pick_given_ratio {
            v.push(("pick_given_ratio", self.pick_given_ratio as u64));
        }
        if self.max_retained != d.max_retained {
            v.push(("max_retained", self.max_retained));
        }
        if let Some(s) = self.max_seconds {
            v.push(("max_seconds", s));
        }
        if let Some(g) = self.max_generated {
            v.push(("max_generated", g));
        }
        if self.demod_limit != d.demod_limit {
            v.push(("demod_limit", self.demod_limit as u64));
        }
        v
    }

    fn valid(&self) -> bool {
        self.max_weight >= 1 && self.pick_given_ratio >= 1 && self.max_retained >= 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Limit {
    MaxRetained,
    MaxSeconds,
    MaxGenerated,
    DemodLimit,
    /// Limits that leave nothing to search, such as `max_weight` 0.
    Unsatisfiable,
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Limit::MaxRetained => "max_retained",
            Limit::MaxSeconds => "max_seconds",
            Limit::MaxGenerated => "max_generated",
            Limit::DemodLimit => "demod_limit",
            Limit::Unsatisfiable => "unsatisfiable limits",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    ProofFound { success: Clause, proof: Vec<ProofLine> },
    SosExhausted,
    LimitReached(Limit),
}

impl Outcome {
    /// 0 proof, 1 sos exhausted, 2 limit.
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::ProofFound { .. } => 0,
            Outcome::SosExhausted => 1,
            Outcome::LimitReached(_) => 2,
        }
    }

    pub fn success(&self) -> Option<&Clause> {
        match self {
            Outcome::ProofFound { success, .. } => Some(success),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Statistics {
    pub given: u64,
    pub generated: u64,
    pub kept: u64,
    pub demod_rewrites: u64,
    pub back_demodulated: u64,
    pub variants_deleted: u64,
    pub weight_deleted: u64,
    pub tautologies_deleted: u64,
    pub unit_deleted: u64,
    pub elapsed: Duration,
}

impl Statistics {
    /// The footer without the timing line.
    pub fn counts(&self) -> String {
        let rows = [
            ("clauses given", self.given),
            ("clauses generated", self.generated),
            ("clauses kept", self.kept),
            ("demod rewrites", self.demod_rewrites),
            ("clauses back demodulated", self.back_demodulated),
            ("variants deleted", self.variants_deleted),
            ("weight deleted", self.weight_deleted),
            ("tautologies deleted", self.tautologies_deleted),
            ("literals unit deleted", self.unit_deleted),
        ];
        let mut s = String::from("-------------- statistics -------------\n");
        for (name, v) in rows {
            s.push_str(&format!("{name:<28}{v:>10}\n"));
        }
        s
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.counts())?;
        writeln!(f, "{:<28}{:>10}", "elapsed ms", self.elapsed.as_millis())
    }
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub outcome: Outcome,
    pub stats: Statistics,
}

/// Sos ordered both by weight and by age, with the pick-given schedule:
/// `ratio` lightest picks, then one oldest.
#[derive(Clone, Debug)]
pub struct SosQueue {
    by_weight: BTreeSet<(u32, ClauseId)>,
    by_age: BTreeSet<ClauseId>,
    weight: HashMap<ClauseId, u32>,
    ratio: u32,
    phase: u32,
}

impl SosQueue {
    pub fn new(ratio: u32) -> Self {
        SosQueue {
            by_weight: BTreeSet::new(),
            by_age: BTreeSet::new(),
            weight: HashMap::new(),
            ratio: ratio.max(1),
            phase: 0,
        }
    }

    pub fn insert(&mut self, id: ClauseId, weight: u32) {
        if self.weight.insert(id, weight).is_none() {
            self.by_weight.insert((weight, id));
            self.by_age.insert(id);
        }
    }

    pub fn remove(&mut self, id: ClauseId) -> bool {
        match self.weight.remove(&id) {
            Some(w) => {
                self.by_weight.remove(&(w, id));
                self.by_age.remove(&id);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, id: ClauseId) -> bool {
        self.weight.contains_key(&id)
    }

    pub fn len(&self) -> usize {
        self.by_age.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_age.is_empty()
    }

    /// Removes and returns the next given clause id.
    pub fn pick(&mut self) -> Option<ClauseId> {
        let id = if self.phase < self.ratio {
            self.by_weight.first().map(|&(_, id)| id)?
        } else {
            *self.by_age.first()?
        };
        self.phase = (self.phase + 1) % (self.ratio + 1);
        self.remove(id);
        Some(id)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Home {
    Sos,
    Usable,
}

enum Stop {
    Proof(Box<Clause>),
    Limit(Limit),
}

/// Prover state for one problem.
pub struct Prover {
    opts: ProverOptions,
    lpo: Option<Lpo>,
    clauses: Vec<Option<Arc<Clause>>>,
    home: HashMap<ClauseId, Home>,
    /// Demodulator copy id to the clause it was made from.
    twin_source: HashMap<ClauseId, ClauseId>,
    twin_of: HashMap<ClauseId, ClauseId>,
    demods: DemodulatorSet,
    sos: SosQueue,
    usable: BTreeSet<ClauseId>,
    /// Every kept unit, for conflicts.
    units: UnitStore,
    /// Kept units without answer literals, for unit deletion.
    deleters: UnitStore,
    usable_units: UnitStore,
    variants: HashMap<Vec<Literal>, ClauseId>,
    /// Every kept clause, for finding back-demodulation candidates.
    subterms: SubtermIndex,
    next_id: ClauseId,
    pending: VecDeque<Clause>,
    stats: Statistics,
    start: Instant,
    inputs: Vec<(Clause, Home)>,
    signature: Signature,
}

fn resolve_precedence(sig: &Signature, names: &Option<Vec<String>>) -> Precedence {
    match names {
        Some(names) => {
            let syms: Vec<Symbol> = names.iter().filter_map(|n| sig.lookup(n)).collect();
            Precedence::with_order(sig, &syms)
        }
        None => Precedence::by_appearance(sig),
    }
}

impl Prover {
    pub fn new(input: &ParsedInput) -> Prover {
        let opts = input.options.clone();
        let lpo = opts
            .knuth_bendix
            .then(|| Lpo::new(resolve_precedence(&input.signature, &opts.precedence)));
        let mut inputs: Vec<(Clause, Home)> = Vec::new();
        inputs.extend(input.usable.iter().map(|c| (c.clone(), Home::Usable)));
        inputs.extend(input.sos.iter().map(|c| (c.clone(), Home::Sos)));
        Prover {
            sos: SosQueue::new(opts.pick_given_ratio),
            opts,
            lpo,
            clauses: vec![None],
            home: HashMap::new(),
            twin_source: HashMap::new(),
            twin_of: HashMap::new(),
            demods: DemodulatorSet::new(),
            usable: BTreeSet::new(),
            units: UnitStore::new(),
            deleters: UnitStore::new(),
            usable_units: UnitStore::new(),
            variants: HashMap::new(),
            subterms: SubtermIndex::new(),
            next_id: 1,
            pending: VecDeque::new(),
            stats: Statistics::default(),
            start: Instant::now(),
            inputs,
            signature: input.signature.clone(),
        }
    }

    pub fn run(mut self) -> RunResult {
        self.start = Instant::now();
        let outcome = if !self.opts.valid() {
            Outcome::LimitReached(Limit::Unsatisfiable)
        } else {
            match self.search() {
                Ok(()) => Outcome::SosExhausted,
                Err(Stop::Limit(l)) => Outcome::LimitReached(l),
                Err(Stop::Proof(success)) => {
                    let proof = self.extract_proof(&success);
                    Outcome::ProofFound {
                        success: *success,
                        proof,
                    }
                }
            }
        };
        self.stats.elapsed = self.start.elapsed();
        RunResult {
            outcome,
            stats: self.stats,
        }
    }

    fn search(&mut self) -> Result<(), Stop> {
        for (c, home) in std::mem::take(&mut self.inputs) {
            self.process(c, true, home)?;
            self.drain()?;
        }
        while let Some(gid) = self.sos.pick() {
            self.stats.given += 1;
            self.check_time()?;
            let given = self.clause(gid);
            self.usable.insert(gid);
            self.home.insert(gid, Home::Usable);
            if given.is_unit() {
                self.usable_units.insert(given.clone());
            }
            for c in self.generate(&given) {
                self.process(c, false, Home::Sos)?;
                self.drain()?;
            }
        }
        Ok(())
    }

    fn clause(&self, id: ClauseId) -> Arc<Clause> {
        self.clauses[id as usize].clone().expect("kept clause")
    }

    fn check_time(&self) -> Result<(), Stop> {
        match self.opts.max_seconds {
            Some(s) if self.start.elapsed() >= Duration::from_secs(s) => Err(Stop::Limit(Limit::MaxSeconds)),
            _ => Ok(()),
        }
    }

    /// Every inference between `given` and the usable list (which already
    /// holds `given`), in a fixed order.
    fn generate(&self, given: &Arc<Clause>) -> Vec<Clause> {
        let opts = ParaOptions {
            from_units_only: self.opts.para_from_units_only,
            into_units_only: self.opts.para_into_units_only,
            order: self.lpo.as_ref(),
        };
        let partners: Vec<Arc<Clause>> = self.usable.iter().map(|&id| self.clause(id)).collect();
        let per_partner: Vec<Vec<Clause>> = partners
            .par_iter()
            .map(|u| {
                let mut v = paramodulate(given, u, opts);
                if u.id != given.id {
                    v.extend(paramodulate_into(given, u, opts));
                }
                v
            })
            .collect();
        let mut out: Vec<Clause> = per_partner.into_iter().flatten().collect();
        if self.opts.ur_res {
            if given.core_len() >= 2 {
                out.extend(ur_resolve(given, &self.usable_units));
            } else if given.is_unit() {
                let nuclei: Vec<&Arc<Clause>> = partners.iter().filter(|c| c.core_len() >= 2).collect();
                let ur: Vec<Vec<Clause>> = nuclei
                    .par_iter()
                    .map(|n| ur_resolve_with(n, given, &self.usable_units))
                    .collect();
                out.extend(ur.into_iter().flatten());
            }
        }
        out
    }

    fn drain(&mut self) -> Result<(), Stop> {
        while let Some(c) = self.pending.pop_front() {
            self.process(c, false, Home::Sos)?;
        }
        Ok(())
    }

    fn orient(&self, lits: Vec<Literal>) -> Vec<Literal> {
        let Some(lpo) = &self.lpo else { return lits };
        lits.into_iter()
            .map(|l| match l.sides() {
                Some((a, b)) if lpo.compare(a, b) == TermOrdering::Less => l.flipped(),
                _ => l,
            })
            .collect()
    }

    /// Simplifies `raw` and keeps it unless it is deleted. Input clauses are
    /// exempt from the weight limit and from tautology deletion.
    fn process(&mut self, raw: Clause, input: bool, home: Home) -> Result<(), Stop> {
        if !input && !matches!(raw.justification.rule, Rule::BackDemod(_)) {
            self.stats.generated += 1;
            if let Some(max) = self.opts.max_generated {
                if self.stats.generated > max {
                    return Err(Stop::Limit(Limit::MaxGenerated));
                }
            }
            if self.stats.generated.is_multiple_of(256) {
                self.check_time()?;
            }
        }
        let mut just = raw.justification;
        let mut lits = raw.literals;
        if self.lpo.is_some() && !self.demods.is_empty() {
            let (l, trace) = self
                .demods
                .demodulate_literals(&lits, self.opts.demod_limit)
                .map_err(|_| Stop::Limit(Limit::DemodLimit))?;
            self.stats.demod_rewrites += trace.len() as u64;
            just.demod.extend(trace);
            lits = l;
        }
        let lits = self.orient(lits);
        let mut merged: Vec<Literal> = Vec::with_capacity(lits.len());
        for l in lits {
            if !merged.contains(&l) {
                merged.push(l);
            }
        }
        let mut c = Clause::new(0, merged, just);
        if !input && c.literals.iter().any(Literal::is_reflexive_positive) {
            self.stats.tautologies_deleted += 1;
            return Ok(());
        }
        if self.opts.unit_deletion && c.core_len() >= 2 {
            let before = c.literals.len();
            c = unit_delete(&c, &self.deleters);
            self.stats.unit_deleted += (before - c.literals.len()) as u64;
        }
        if c.is_success() {
            return Err(Stop::Proof(Box::new(self.number(c))));
        }
        if !input && c.weight > self.opts.max_weight {
            self.stats.weight_deleted += 1;
            return Ok(());
        }
        let lits = normalize_variables(&c.literals);
        if self.is_known_variant(&lits) {
            self.stats.variants_deleted += 1;
            return Ok(());
        }
        let c = self.number(Clause::new(0, lits.clone(), c.justification));
        let id = c.id;
        let c = Arc::new(c);
        self.clauses[id as usize] = Some(c.clone());
        self.variants.insert(lits, id);
        self.subterms.insert(c.literals.iter().map(|l| &l.atom), id);
        self.stats.kept += 1;
        if self.opts.print_kept {
            eprintln!(
                "{}",
                Printer::new(&self.signature, self.opts.bird_print).proof_line(&c, None)
            );
        }
        if self.stats.kept > self.opts.max_retained {
            return Err(Stop::Limit(Limit::MaxRetained));
        }
        match home {
            Home::Sos => self.sos.insert(id, c.weight),
            Home::Usable => {
                self.usable.insert(id);
                if c.is_unit() {
                    self.usable_units.insert(c.clone());
                }
            }
        }
        self.home.insert(id, home);
        if c.is_unit() {
            if let Some(conflict) = unit_conflict(&c, &self.units) {
                return Err(Stop::Proof(Box::new(self.number(conflict))));
            }
            self.units.insert(c.clone());
            if c.answers().next().is_none() {
                self.deleters.insert(c.clone());
            }
        }
        self.maybe_install(&c)
    }

    fn number(&mut self, mut c: Clause) -> Clause {
        c.id = self.next_id;
        self.next_id += 1;
        self.clauses.push(None);
        c
    }

    fn is_known_variant(&self, lits: &[Literal]) -> bool {
        if self.variants.contains_key(lits) {
            return true;
        }
        // unorientable unit equations are used both ways, so a flipped
        // copy adds nothing
        if let [l] = lits {
            if l.is_equality() {
                let flipped = normalize_variables(&[l.flipped()]);
                return self.variants.contains_key(&flipped);
            }
        }
        false
    }

    /// Installs `c` as a demodulator if it is an oriented positive unit
    /// equation, then back-demodulates the kept clauses.
    fn maybe_install(&mut self, c: &Arc<Clause>) -> Result<(), Stop> {
        let Some(lpo) = &self.lpo else { return Ok(()) };
        if c.answers().next().is_some() {
            return Ok(());
        }
        let Some((l, r)) = c.as_positive_equation() else {
            return Ok(());
        };
        if lpo.orient(l, r) != Orientation::LeftToRight {
            return Ok(());
        }
        let twin = self.next_id;
        self.next_id += 1;
        self.clauses.push(None);
        self.twin_source.insert(twin, c.id);
        self.twin_of.insert(c.id, twin);
        let d = Demodulator {
            id: twin,
            source: c.id,
            lhs: l.clone(),
            rhs: r.clone(),
        };
        self.demods.insert(d.clone());
        let mut candidates: Vec<ClauseId> = match self.subterms.holders(l) {
            Some(ids) => ids
                .iter()
                .copied()
                .filter(|id| *id != c.id && self.home.contains_key(id))
                .collect(),
            None => self.home.keys().copied().filter(|&id| id != c.id).collect(),
        };
        candidates.sort_unstable();
        let retained: Vec<Arc<Clause>> = candidates.iter().map(|&id| self.clause(id)).collect();
        let rewritten = back_demodulate(
            &d,
            retained.iter().map(|c| c.as_ref()),
            &self.demods,
            self.opts.demod_limit,
        )
        .map_err(|_| Stop::Limit(Limit::DemodLimit))?;
        for new in rewritten {
            let Rule::BackDemod(old) = new.justification.rule else {
                unreachable!()
            };
            self.deactivate(old);
            self.stats.back_demodulated += 1;
            self.pending.push_back(new);
        }
        Ok(())
    }

    fn deactivate(&mut self, id: ClauseId) {
        let Some(home) = self.home.remove(&id) else { return };
        match home {
            Home::Sos => {
                self.sos.remove(id);
            }
            Home::Usable => {
                self.usable.remove(&id);
            }
        }
        let c = self.clause(id);
        if self.variants.get(&c.literals) == Some(&id) {
            self.variants.remove(&c.literals);
        }
        if c.is_unit() {
            self.units.remove(id);
            self.deleters.remove(id);
            self.usable_units.remove(id);
        }
        self.demods.remove_source(id);
    }

    /// The ancestors of `success`, sorted by id, with `success` last.
    fn extract_proof(&self, success: &Clause) -> Vec<ProofLine> {
        let mut seen: HashSet<ClauseId> = HashSet::new();
        let mut twins_used: HashSet<ClauseId> = HashSet::new();
        let mut stack = vec![success.clone()];
        let mut lines: Vec<Clause> = Vec::new();
        while let Some(c) = stack.pop() {
            for r in c.justification.references() {
                let src = match self.twin_source.get(&r) {
                    Some(&s) => {
                        twins_used.insert(r);
                        s
                    }
                    None => r,
                };
                if seen.insert(src) {
                    stack.push(self.clause(src).as_ref().clone());
                }
            }
            lines.push(c);
        }
        lines.sort_by_key(|c| c.id);
        lines
            .into_iter()
            .map(|c| {
                let twin = self.twin_of.get(&c.id).copied().filter(|t| twins_used.contains(t));
                ProofLine { clause: c, twin }
            })
            .collect()
    }
}

/// Runs the given-clause loop on `problem`.
pub fn saturate(problem: &ParsedInput) -> Outcome {
    Prover::new(problem).run().outcome
}

/// Like [`saturate`], with statistics.
pub fn run(problem: &ParsedInput) -> RunResult {
    Prover::new(problem).run()
}
