//! Demodulation: rewriting with oriented unit equalities.
//!
//! Rewriting is leftmost-outermost and restarts from the root after every
//! step, so the recorded trace can be replayed by applying each listed
//! demodulator at its own leftmost-outermost redex.

use std::collections::HashMap;

use thiserror::Error;

use crate::clause::{Clause, ClauseId, Justification, Literal, Rule};
use crate::index::DiscTree;
use crate::term::{Substitution, Term};
use crate::unify::match_with;

/// Rewriting stops after this many steps on one clause.
pub const DEFAULT_STEP_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("demodulation exceeded {cap} rewrite steps")]
pub struct StepCapExceeded {
    pub cap: usize,
}

/// An oriented unit equality `lhs -> rhs`. `id` is the demodulator's own
/// clause id, `source` the id of the clause it was copied from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Demodulator {
    pub id: ClauseId,
    pub source: ClauseId,
    pub lhs: Term,
    pub rhs: Term,
}

/// Demodulators with their left-hand sides in a discrimination tree.
#[derive(Clone, Debug, Default)]
pub struct DemodulatorSet {
    demods: Vec<Demodulator>,
    live: Vec<bool>,
    index: DiscTree,
    by_source: HashMap<ClauseId, usize>,
    count: usize,
}

impl DemodulatorSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, d: Demodulator) {
        assert!(!d.lhs.is_var(), "demodulator with a variable left-hand side");
        let idx = self.demods.len();
        self.index.insert(&d.lhs, idx);
        self.by_source.insert(d.source, idx);
        self.demods.push(d);
        self.live.push(true);
        self.count += 1;
    }

    /// Retires the demodulator copied from clause `source`, if any.
    pub fn remove_source(&mut self, source: ClauseId) -> Option<Demodulator> {
        let idx = self.by_source.remove(&source)?;
        if !self.live[idx] {
            return None;
        }
        self.live[idx] = false;
        self.count -= 1;
        Some(self.demods[idx].clone())
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Demodulator> {
        self.demods.iter().zip(&self.live).filter(|(_, &l)| l).map(|(d, _)| d)
    }

    /// Lowest-id live demodulator whose left-hand side matches `t` at the
    /// root, with the rewritten term.
    fn rewrite_root(&self, t: &Term, skip: Option<ClauseId>) -> Option<(ClauseId, Term)> {
        if t.is_var() {
            return None;
        }
        let mut best: Option<(ClauseId, Term)> = None;
        self.index.generalizations(t, |idx| {
            if !self.live[idx] {
                return;
            }
            let d = &self.demods[idx];
            if skip == Some(d.source) {
                return;
            }
            if best.as_ref().is_some_and(|(id, _)| *id <= d.id) {
                return;
            }
            let mut s = Substitution::new();
            if match_with(&mut s, &d.lhs, t) {
                best = Some((d.id, s.apply(&d.rhs)));
            }
        });
        best
    }

    /// Leftmost-outermost redex of `t`, rewritten.
    fn step(&self, t: &Term, skip: Option<ClauseId>) -> Option<(ClauseId, Term)> {
        if let Some(hit) = self.rewrite_root(t, skip) {
            return Some(hit);
        }
        match t {
            Term::Var(_) => None,
            Term::App(f, args) => args.iter().enumerate().find_map(|(i, a)| {
                self.step(a, skip).map(|(id, new)| {
                    let mut v = args.to_vec();
                    v[i] = new;
                    (id, Term::app(*f, v))
                })
            }),
        }
    }

    /// Normal form of `t` plus the ids applied, in order.
    pub fn demodulate(&self, t: &Term, cap: usize) -> Result<(Term, Vec<ClauseId>), StepCapExceeded> {
        let mut trace = Vec::new();
        let t = self.normalize_into(t, cap, None, &mut trace)?;
        Ok((t, trace))
    }

    fn normalize_into(
        &self,
        t: &Term,
        cap: usize,
        skip: Option<ClauseId>,
        trace: &mut Vec<ClauseId>,
    ) -> Result<Term, StepCapExceeded> {
        let mut cur = t.clone();
        while let Some((id, next)) = self.step(&cur, skip) {
            if trace.len() >= cap {
                return Err(StepCapExceeded { cap });
            }
            trace.push(id);
            cur = next;
        }
        Ok(cur)
    }

    /// Demodulates every literal (both sides of equalities, answer
    /// arguments included), left to right. The step cap is shared by the
    /// whole clause.
    pub fn demodulate_literals(
        &self,
        lits: &[Literal],
        cap: usize,
    ) -> Result<(Vec<Literal>, Vec<ClauseId>), StepCapExceeded> {
        self.demodulate_literals_except(lits, cap, None)
    }

    /// Like [`Self::demodulate_literals`], ignoring the demodulator copied
    /// from clause `skip`.
    pub fn demodulate_literals_except(
        &self,
        lits: &[Literal],
        cap: usize,
        skip: Option<ClauseId>,
    ) -> Result<(Vec<Literal>, Vec<ClauseId>), StepCapExceeded> {
        let mut trace = Vec::new();
        if self.is_empty() {
            return Ok((lits.to_vec(), trace));
        }
        let mut out = Vec::with_capacity(lits.len());
        for l in lits {
            let Term::App(p, args) = &l.atom else {
                unreachable!("variable atom")
            };
            let mut new_args = Vec::with_capacity(args.len());
            for a in args.iter() {
                new_args.push(self.normalize_into(a, cap, skip, &mut trace)?);
            }
            out.push(Literal {
                positive: l.positive,
                atom: Term::app(*p, new_args),
            });
        }
        Ok((out, trace))
    }

    pub fn is_normal(&self, t: &Term) -> bool {
        self.step(t, None).is_none()
    }
}

/// Whether some subterm of `t` is an instance of `pattern`.
pub fn has_instance_of(pattern: &Term, t: &Term) -> bool {
    let mut s = Substitution::new();
    if match_with(&mut s, pattern, t) {
        return true;
    }
    t.args().iter().any(|a| has_instance_of(pattern, a))
}

/// Re-simplifies every clause in `retained` that contains a redex of
/// `new_demod`, using the whole set `demods`. The returned clauses carry
/// `BackDemod` justifications and id 0; the caller numbers them. A clause
/// is never rewritten by its own demodulator.
pub fn back_demodulate<'a>(
    new_demod: &Demodulator,
    retained: impl IntoIterator<Item = &'a Clause>,
    demods: &DemodulatorSet,
    cap: usize,
) -> Result<Vec<Clause>, StepCapExceeded> {
    let mut out = Vec::new();
    for c in retained {
        if c.id == new_demod.source {
            continue;
        }
        if !c.literals.iter().any(|l| has_instance_of(&new_demod.lhs, &l.atom)) {
            continue;
        }
        let (lits, trace) = demods.demodulate_literals_except(&c.literals, cap, Some(c.id))?;
        let mut j = Justification::new(Rule::BackDemod(c.id));
        j.demod = trace;
        out.push(Clause::new(0, lits, j));
    }
    Ok(out)
}
