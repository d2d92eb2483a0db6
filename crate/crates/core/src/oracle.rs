//! A small combinator evaluator, kept apart from the prover: it has its
//! own matcher and rewriting loop and uses nothing but the term types.
//! Answers found by the prover are checked here by computation.

use std::fmt;

use crate::term::{ArityError, Signature, Symbol, Term};

pub const DEFAULT_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum System {
    /// `k` is a unary function.
    Trc,
    /// `k` is a constant combinator.
    TrcStar,
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::Trc => "trc",
            System::TrcStar => "trcstar",
        })
    }
}

/// Left-to-right rewrite rules over one signature.
#[derive(Clone, Debug)]
pub struct RuleSet {
    pub system: System,
    pub rules: Vec<(Term, Term)>,
}

fn c(sym: Symbol) -> Term {
    Term::constant(sym)
}

fn ap(f: Term, x: Term) -> Term {
    Term::ap(f, x)
}

/// Rules shared by both systems, and `abst, eq, p1, p2, pair`.
type Common = (Vec<(Term, Term)>, [Symbol; 5]);

impl RuleSet {
    fn common(sig: &mut Signature) -> Result<Common, ArityError> {
        let abst = sig.intern("abst", 0)?;
        let eq = sig.intern("eq", 0)?;
        let p1 = sig.intern("p1", 0)?;
        let p2 = sig.intern("p2", 0)?;
        let pair = sig.intern("pair", 2)?;
        let (x, y, z) = (Term::var(0), Term::var(1), Term::var(2));
        let pr = |a: Term, b: Term| Term::app(pair, vec![a, b]);
        let rules = vec![
            (ap(c(p1), pr(x.clone(), y.clone())), x.clone()),
            (ap(c(p2), pr(x.clone(), y.clone())), y.clone()),
            (pr(ap(c(p1), x.clone()), ap(c(p2), x.clone())), x.clone()),
            (
                ap(pr(x.clone(), y.clone()), z.clone()),
                pr(ap(x.clone(), z.clone()), ap(y.clone(), z.clone())),
            ),
            (ap(c(eq), pr(x.clone(), x.clone())), c(p1)),
        ];
        Ok((rules, [abst, eq, p1, p2, pair]))
    }

    /// `k(x) y -> x`, `abst x y z -> x k(z) (y z)`, `id x -> x`, plus
    /// projections, pairing, pairwise application and `eq pair(x,x) -> p1`.
    pub fn trc(sig: &mut Signature) -> Result<RuleSet, ArityError> {
        let (mut rules, [abst, ..]) = Self::common(sig)?;
        let k = sig.intern("k", 1)?;
        let id = sig.intern("id", 0)?;
        let (x, y, z) = (Term::var(0), Term::var(1), Term::var(2));
        rules.insert(0, (ap(Term::app(k, vec![x.clone()]), y.clone()), x.clone()));
        rules.push((
            ap(ap(ap(c(abst), x.clone()), y.clone()), z.clone()),
            ap(ap(x.clone(), Term::app(k, vec![z.clone()])), ap(y.clone(), z.clone())),
        ));
        rules.push((ap(c(id), x.clone()), x));
        Ok(RuleSet {
            system: System::Trc,
            rules,
        })
    }

    /// `k x y -> x` and `abst x y z -> x (k z) (y z)` with the shared rules.
    pub fn trcstar(sig: &mut Signature) -> Result<RuleSet, ArityError> {
        let (mut rules, [abst, ..]) = Self::common(sig)?;
        let k = sig.intern("k", 0)?;
        let (x, y, z) = (Term::var(0), Term::var(1), Term::var(2));
        rules.insert(0, (ap(ap(c(k), x.clone()), y.clone()), x.clone()));
        rules.push((
            ap(ap(ap(c(abst), x.clone()), y.clone()), z.clone()),
            ap(ap(x.clone(), ap(c(k), z.clone())), ap(y.clone(), z.clone())),
        ));
        Ok(RuleSet {
            system: System::TrcStar,
            rules,
        })
    }

    pub fn for_system(system: System, sig: &mut Signature) -> Result<RuleSet, ArityError> {
        match system {
            System::Trc => Self::trc(sig),
            System::TrcStar => Self::trcstar(sig),
        }
    }

    /// Adds `F x y -> x x`.
    pub fn with_diagonal(mut self, sig: &mut Signature) -> Result<RuleSet, ArityError> {
        let f = sig.intern("F", 0)?;
        let (x, y) = (Term::var(0), Term::var(1));
        self.rules.push((ap(ap(c(f), x.clone()), y), ap(x.clone(), x)));
        Ok(self)
    }

    fn rewrite_root(&self, t: &Term) -> Option<Term> {
        self.rules.iter().find_map(|(l, r)| {
            let mut b = Vec::new();
            bind(l, t, &mut b).then(|| instantiate(r, &b))
        })
    }

    fn outermost(&self, t: &Term) -> Option<Term> {
        if let Some(r) = self.rewrite_root(t) {
            return Some(r);
        }
        let Term::App(f, args) = t else { return None };
        args.iter().enumerate().find_map(|(i, a)| {
            self.outermost(a).map(|n| {
                let mut v = args.to_vec();
                v[i] = n;
                Term::app(*f, v)
            })
        })
    }

    fn innermost(&self, t: &Term) -> Option<Term> {
        if let Term::App(f, args) = t {
            for (i, a) in args.iter().enumerate() {
                if let Some(n) = self.innermost(a) {
                    let mut v = args.to_vec();
                    v[i] = n;
                    return Some(Term::app(*f, v));
                }
            }
        }
        self.rewrite_root(t)
    }

    /// Leftmost-outermost normalization with at most `cap` steps.
    pub fn normalize(&self, t: &Term, cap: usize) -> Normalized {
        self.run(t, cap, |t| self.outermost(t))
    }

    /// Leftmost-innermost normalization, for cross-checking.
    pub fn normalize_innermost(&self, t: &Term, cap: usize) -> Normalized {
        self.run(t, cap, |t| self.innermost(t))
    }

    fn run(&self, t: &Term, cap: usize, step: impl Fn(&Term) -> Option<Term>) -> Normalized {
        let mut cur = t.clone();
        for steps in 0..=cap {
            match step(&cur) {
                None => return Normalized::NormalForm { term: cur, steps },
                Some(n) if steps < cap => cur = n,
                Some(_) => break,
            }
        }
        Normalized::CapExceeded { last: cur }
    }

    /// Reduces the head of `t` until no rule applies along its leftmost
    /// spine. Arguments a rule inspects (such as the pair under `p1`) are
    /// reduced the same way first.
    fn whnf(&self, t: &Term, budget: &mut usize) -> Option<Term> {
        let mut cur = t.clone();
        'outer: loop {
            // spine nodes from the root inward
            let mut nodes = vec![cur.clone()];
            while let Term::App(Symbol::APP, args) = nodes.last().unwrap() {
                let f = args[0].clone();
                nodes.push(f);
            }
            for (depth, n) in nodes.iter().enumerate() {
                let node = self.head_args(n, budget)?;
                if let Some(r) = self.rewrite_root(&node) {
                    if *budget == 0 {
                        return None;
                    }
                    *budget -= 1;
                    cur = rebuild(&cur, depth, r);
                    continue 'outer;
                }
            }
            return Some(cur);
        }
    }

    /// `a(f, x)` with `x` head-reduced when `f` is a constant whose rules
    /// look inside their argument.
    fn head_args(&self, node: &Term, budget: &mut usize) -> Option<Term> {
        let Term::App(Symbol::APP, args) = node else {
            return Some(node.clone());
        };
        let Term::App(h, hargs) = &args[0] else {
            return Some(node.clone());
        };
        if !hargs.is_empty() || args[1].head() != Some(Symbol::APP) {
            return Some(node.clone());
        }
        let inspects = self.rules.iter().any(|(l, _)| match l {
            Term::App(Symbol::APP, la) => la[0].head() == Some(*h) && la[0].args().is_empty() && !la[1].is_var(),
            _ => false,
        });
        if !inspects {
            return Some(node.clone());
        }
        let x = self.whnf(&args[1], budget)?;
        Some(Term::ap(args[0].clone(), x))
    }
}

/// Replaces the spine node `depth` steps below the root of `t`.
fn rebuild(t: &Term, depth: usize, new: Term) -> Term {
    if depth == 0 {
        return new;
    }
    let Term::App(Symbol::APP, args) = t else {
        unreachable!("spine node")
    };
    Term::ap(rebuild(&args[0], depth - 1, new), args[1].clone())
}

/// One-way matching into the binding vector `b`.
fn bind(p: &Term, t: &Term, b: &mut Vec<Option<Term>>) -> bool {
    match p {
        Term::Var(v) => {
            let v = *v as usize;
            if b.len() <= v {
                b.resize(v + 1, None);
            }
            match &b[v] {
                Some(old) => old == t,
                None => {
                    b[v] = Some(t.clone());
                    true
                }
            }
        }
        Term::App(f, ps) => match t {
            Term::App(g, ts) if f == g && ps.len() == ts.len() => ps.iter().zip(ts.iter()).all(|(p, t)| bind(p, t, b)),
            _ => false,
        },
    }
}

fn instantiate(t: &Term, b: &[Option<Term>]) -> Term {
    match t {
        Term::Var(v) => b[*v as usize].clone().expect("rule variable bound on the left"),
        Term::App(f, args) => Term::app(*f, args.iter().map(|a| instantiate(a, b)).collect()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    NormalForm { term: Term, steps: usize },
    CapExceeded { last: Term },
}

impl Normalized {
    pub fn term(&self) -> Option<&Term> {
        match self {
            Normalized::NormalForm { term, .. } => Some(term),
            Normalized::CapExceeded { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extensional {
    Equal,
    Distinct,
    Unknown,
}

/// `n` constants `c1, c2, ...` that are new to `sig`.
pub fn fresh_constants(sig: &mut Signature, n: usize) -> Vec<Term> {
    (0..n).map(|_| Term::constant(sig.fresh_constant("c"))).collect()
}

/// Applies both terms to `n_args` fresh constants and compares normal
/// forms. This certifies a ground instance, not the general identity.
pub fn check_extensional(lhs: &Term, rhs: &Term, n_args: usize, rules: &RuleSet, sig: &mut Signature) -> Extensional {
    let cs = fresh_constants(sig, n_args);
    let l = Term::ap_all(lhs.clone(), cs.iter().cloned());
    let r = Term::ap_all(rhs.clone(), cs);
    match (rules.normalize(&l, DEFAULT_CAP), rules.normalize(&r, DEFAULT_CAP)) {
        (Normalized::NormalForm { term: a, .. }, Normalized::NormalForm { term: b, .. }) => {
            if a == b {
                Extensional::Equal
            } else {
                Extensional::Distinct
            }
        }
        _ => Extensional::Unknown,
    }
}

/// Equality by head reduction, congruence and application to fresh
/// constants, `depth` levels deep. Works on terms without normal forms.
/// `true` means a derivation was found; `false` means none was.
pub fn ext_equal(s: &Term, t: &Term, depth: usize, rules: &RuleSet, sig: &mut Signature, budget: &mut usize) -> bool {
    if s == t {
        return true;
    }
    let (Some(s), Some(t)) = (rules.whnf(s, budget), rules.whnf(t, budget)) else {
        return false;
    };
    if s == t {
        return true;
    }
    if let (Term::App(f, fa), Term::App(g, ga)) = (&s, &t) {
        if f == g
            && fa.len() == ga.len()
            && !fa.is_empty()
            && fa
                .iter()
                .zip(ga.iter())
                .all(|(a, b)| ext_equal(a, b, depth, rules, sig, budget))
        {
            return true;
        }
    }
    if depth == 0 || *budget == 0 {
        return false;
    }
    let x = Term::constant(sig.fresh_constant("c"));
    ext_equal(&Term::ap(s, x.clone()), &Term::ap(t, x), depth - 1, rules, sig, budget)
}

/// The defining property an answer term must have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnswerSchema {
    /// `t x y = x x`, checked in TRC*.
    Diagonal,
    /// `t = eq pair(k t, k p2)`, checked in TRC* with `F x y = x x`.
    SelfReference,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Refuted,
    Unknown(String),
}

/// Checks `answer` (over `sig`) against `schema` by computation.
pub fn verify_answer(schema: AnswerSchema, answer: &Term, sig: &Signature) -> Verdict {
    let mut sig = sig.clone();
    let rules = match RuleSet::trcstar(&mut sig) {
        Ok(r) => r,
        Err(e) => return Verdict::Unknown(format!("answer is not over the TRC* signature: {e}")),
    };
    match schema {
        AnswerSchema::Diagonal => {
            let cs = fresh_constants(&mut sig, 2);
            let lhs = Term::ap_all(answer.clone(), cs.iter().cloned());
            let rhs = Term::ap(cs[0].clone(), cs[0].clone());
            match rules.normalize(&lhs, DEFAULT_CAP) {
                Normalized::NormalForm { term, .. } if term == rhs => Verdict::Verified,
                Normalized::NormalForm { .. } => Verdict::Refuted,
                Normalized::CapExceeded { .. } => Verdict::Unknown("no normal form within the step cap".into()),
            }
        }
        AnswerSchema::SelfReference => {
            let rules = match rules.with_diagonal(&mut sig) {
                Ok(r) => r,
                Err(e) => return Verdict::Unknown(format!("F has the wrong arity: {e}")),
            };
            let (eq, k, p2, pair) = (
                sig.lookup("eq").unwrap(),
                sig.lookup("k").unwrap(),
                sig.lookup("p2").unwrap(),
                sig.lookup("pair").unwrap(),
            );
            let rhs = ap(c(eq), Term::app(pair, vec![ap(c(k), answer.clone()), ap(c(k), c(p2))]));
            let mut budget = DEFAULT_CAP;
            if ext_equal(answer, &rhs, 3, &rules, &mut sig, &mut budget) {
                return Verdict::Verified;
            }
            match (rules.normalize(answer, DEFAULT_CAP), rules.normalize(&rhs, DEFAULT_CAP)) {
                (Normalized::NormalForm { term: a, .. }, Normalized::NormalForm { term: b, .. }) if a != b => {
                    Verdict::Refuted
                }
                _ => Verdict::Unknown("no common reduct found within the step cap".into()),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star() -> (Signature, RuleSet) {
        let mut sig = Signature::new();
        let r = RuleSet::trcstar(&mut sig).unwrap();
        (sig, r)
    }

    fn named(sig: &Signature, n: &str) -> Term {
        c(sig.lookup(n).unwrap())
    }

    #[test]
    fn diagonal_combinator_duplicates_its_argument() {
        let (mut sig, r) = star();
        let (abst, k) = (named(&sig, "abst"), named(&sig, "k"));
        let cs = fresh_constants(&mut sig, 2);
        let t = Term::ap_all(abst.clone(), [abst, k, cs[0].clone(), cs[1].clone()]);
        let nf = r.normalize(&t, DEFAULT_CAP);
        assert_eq!(nf.term(), Some(&ap(cs[0].clone(), cs[0].clone())));
        assert_eq!(sig.name(cs[0].head().unwrap()), "c1");
    }

    #[test]
    fn k_erases_its_second_argument() {
        let (mut sig, r) = star();
        let cs = fresh_constants(&mut sig, 2);
        let t = Term::ap_all(named(&sig, "k"), cs.clone());
        assert_eq!(
            r.normalize(&t, DEFAULT_CAP),
            Normalized::NormalForm {
                term: cs[0].clone(),
                steps: 1
            }
        );
    }

    #[test]
    fn step_cap_is_reported() {
        let (mut sig, r) = star();
        let (abst, k) = (named(&sig, "abst"), named(&sig, "k"));
        let cs = fresh_constants(&mut sig, 2);
        let t = Term::ap_all(abst.clone(), [abst, k, cs[0].clone(), cs[1].clone()]);
        let Normalized::NormalForm { steps, .. } = r.normalize(&t, DEFAULT_CAP) else {
            panic!()
        };
        assert!(r.normalize(&t, steps).term().is_some());
        assert!(matches!(r.normalize(&t, steps - 1), Normalized::CapExceeded { .. }));
    }

    #[test]
    fn answers_are_checked_against_their_schema() {
        let (sig, _) = star();
        let good = Term::ap(Term::ap(named(&sig, "abst"), named(&sig, "abst")), named(&sig, "k"));
        assert_eq!(verify_answer(AnswerSchema::Diagonal, &good, &sig), Verdict::Verified);
        assert_eq!(
            verify_answer(AnswerSchema::Diagonal, &named(&sig, "k"), &sig),
            Verdict::Refuted
        );
    }

    #[test]
    fn self_referential_answer_is_verified_without_normal_form() {
        let mut sig = Signature::new();
        RuleSet::trcstar(&mut sig).unwrap();
        let f = c(sig.intern("F", 0).unwrap());
        let (abst, k, eq, p2) = (
            named(&sig, "abst"),
            named(&sig, "k"),
            named(&sig, "eq"),
            named(&sig, "p2"),
        );
        let pair = sig.lookup("pair").unwrap();
        let kkp2 = ap(k.clone(), ap(k.clone(), p2));
        let w = ap(ap(abst, ap(k, eq)), Term::app(pair, vec![f, kkp2]));
        let s = ap(w.clone(), w);
        assert_eq!(verify_answer(AnswerSchema::SelfReference, &s, &sig), Verdict::Verified);
        assert_eq!(
            verify_answer(AnswerSchema::SelfReference, &named(&sig, "k"), &sig),
            Verdict::Refuted
        );
    }

    #[test]
    fn trc_identities_hold_on_fresh_arguments() {
        let mut sig = Signature::new();
        let r = RuleSet::trc(&mut sig).unwrap();
        let (abst, id) = (named(&sig, "abst"), named(&sig, "id"));
        let k = sig.lookup("k").unwrap();
        let kf = |t: Term| Term::app(k, vec![t]);
        let b = c(sig.intern("b", 0).unwrap());
        let d = c(sig.intern("d", 0).unwrap());
        let abst4 = Term::ap_all(abst.clone(), [abst.clone(), abst.clone(), abst.clone()]);
        let cases = [
            ("prop1b", abst4.clone(), kf(kf(id.clone())), 3),
            ("prop1c", Term::ap_all(abst4, [b.clone(), d]), id, 3),
            (
                "prop2a",
                ap(abst.clone(), ap(abst.clone(), ap(abst.clone(), b.clone()))),
                ap(abst.clone(), b.clone()),
                2,
            ),
            (
                "prop2b",
                ap(abst.clone(), ap(abst.clone(), kf(b.clone()))),
                kf(b.clone()),
                2,
            ),
            ("prop2c", ap(abst, kf(kf(b.clone()))), kf(kf(b)), 3),
        ];
        for (name, l, rhs, n) in cases {
            assert_eq!(
                check_extensional(&l, &rhs, n, &r, &mut sig),
                Extensional::Equal,
                "{name}"
            );
        }
        let (p1, p2) = (named(&sig, "p1"), named(&sig, "p2"));
        assert_eq!(check_extensional(&p1, &p2, 0, &r, &mut sig), Extensional::Distinct);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Ground terms over the system's constants plus two fresh ones,
        /// built with application, `pair` and, in TRC, unary `k`.
        fn ground(system: System) -> (Signature, RuleSet, BoxedStrategy<Term>) {
            let mut sig = Signature::new();
            let rules = RuleSet::for_system(system, &mut sig).unwrap();
            let mut names = vec!["abst", "eq", "p1", "p2"];
            match system {
                System::Trc => names.push("id"),
                System::TrcStar => names.push("k"),
            }
            let mut leaves: Vec<Term> = names.iter().map(|n| c(sig.lookup(n).unwrap())).collect();
            leaves.extend(fresh_constants(&mut sig, 2));
            let pair = sig.lookup("pair").unwrap();
            let k = sig.lookup("k").unwrap();
            let trc = system == System::Trc;
            let strat = proptest::sample::select(leaves)
                .prop_recursive(4, 24, 2, move |inner| {
                    let app = (inner.clone(), inner.clone()).prop_map(|(f, x)| ap(f, x));
                    let pr = (inner.clone(), inner.clone()).prop_map(move |(x, y)| Term::app(pair, vec![x, y]));
                    if trc {
                        let kf = inner.prop_map(move |x| Term::app(k, vec![x]));
                        prop_oneof![3 => app, 1 => pr, 1 => kf].boxed()
                    } else {
                        prop_oneof![3 => app, 1 => pr].boxed()
                    }
                })
                .boxed();
            (sig, rules, strat)
        }

        #[test]
        fn strategies_mostly_agree_on_trc() {
            let (sig, rules, strat) = ground(System::Trc);
            let mut runner = proptest::test_runner::TestRunner::deterministic();
            let (mut both, mut differ) = (0, 0);
            for _ in 0..1000 {
                let t = strat.new_tree(&mut runner).unwrap().current();
                let out = rules.normalize(&t, 2_000);
                let inn = rules.normalize_innermost(&t, 2_000);
                if let (Some(a), Some(b)) = (out.term(), inn.term()) {
                    both += 1;
                    if a != b {
                        differ += 1;
                        let show = |x: &Term| crate::print::bird_print(x, &sig);
                        eprintln!("strategies disagree on {}: {} vs {}", show(&t), show(a), show(b));
                    }
                }
            }
            eprintln!("{both} terms normalized both ways, {differ} disagreements");
            assert!(both > 500);
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn k_erases_under_trcstar(t in ground(System::TrcStar).2, u in ground(System::TrcStar).2) {
                // interning is deterministic, so these symbols are the strategy's
                let (sig, rules, _) = ground(System::TrcStar);
                let k = c(sig.lookup("k").unwrap());
                let lhs = rules.normalize(&ap(ap(k, t.clone()), u), 2_000);
                let rhs = rules.normalize(&t, 2_000);
                if let (Some(a), Some(b)) = (lhs.term(), rhs.term()) {
                    prop_assert_eq!(a, b);
                }
            }
        }
    }
}
