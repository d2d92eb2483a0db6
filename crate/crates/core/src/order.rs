//! Lexicographic path ordering used to orient equations into rewrite rules.

use std::cmp::Ordering;

use crate::term::{Signature, Symbol, Term};

/// Total strict order on symbols; larger rank is greater.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Precedence {
    rank: Vec<u32>,
}

impl Precedence {
    /// Symbols ordered by first appearance (later is greater), with `abst`
    /// and then `eq` lifted above everything else when present.
    pub fn by_appearance(sig: &Signature) -> Precedence {
        let base = sig.len() as u32;
        let mut rank: Vec<u32> = (0..base).collect();
        if let Some(eq) = sig.lookup("eq") {
            rank[eq.index()] = base + 1;
        }
        if let Some(abst) = sig.lookup("abst") {
            rank[abst.index()] = base + 2;
        }
        Precedence { rank }
    }

    /// `order` lists symbols from greatest to least; symbols not listed sit
    /// below all listed ones, in appearance order.
    pub fn with_order(sig: &Signature, order: &[Symbol]) -> Precedence {
        let base = sig.len() as u32;
        let mut rank: Vec<u32> = (0..base).collect();
        let n = order.len() as u32;
        for (i, s) in order.iter().enumerate() {
            rank[s.index()] = base + (n - i as u32);
        }
        Precedence { rank }
    }

    fn rank(&self, s: Symbol) -> u32 {
        // Symbols created after the precedence was built rank lowest.
        self.rank.get(s.index()).copied().unwrap_or(0)
    }

    pub fn cmp_symbols(&self, a: Symbol, b: Symbol) -> Ordering {
        self.rank(a).cmp(&self.rank(b)).then(a.cmp(&b))
    }

    /// Symbols from greatest to least.
    pub fn ranking(&self, sig: &Signature) -> Vec<Symbol> {
        let mut syms: Vec<Symbol> = sig.term_symbols().collect();
        syms.sort_by(|a, b| self.cmp_symbols(*b, *a));
        syms
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermOrdering {
    Greater,
    Less,
    Equal,
    Incomparable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    LeftToRight,
    RightToLeft,
    Unorientable,
}

/// Lexicographic path ordering over a fixed precedence.
#[derive(Clone, Debug)]
pub struct Lpo {
    prec: Precedence,
}

impl Lpo {
    pub fn new(prec: Precedence) -> Lpo {
        Lpo { prec }
    }

    pub fn precedence(&self) -> &Precedence {
        &self.prec
    }

    /// `s > t`.
    pub fn greater(&self, s: &Term, t: &Term) -> bool {
        match (s, t) {
            (_, Term::Var(v)) => s != t && s.occurs(*v),
            (Term::Var(_), _) => false,
            (Term::App(f, ss), Term::App(g, ts)) => {
                if ss.iter().any(|si| si == t || self.greater(si, t)) {
                    return true;
                }
                match self.prec.cmp_symbols(*f, *g) {
                    Ordering::Greater => ts.iter().all(|tj| self.greater(s, tj)),
                    Ordering::Equal => {
                        let Some(i) = ss.iter().zip(ts.iter()).position(|(a, b)| a != b) else {
                            return false;
                        };
                        self.greater(&ss[i], &ts[i]) && ts[i + 1..].iter().all(|tj| self.greater(s, tj))
                    }
                    Ordering::Less => false,
                }
            }
        }
    }

    pub fn compare(&self, s: &Term, t: &Term) -> TermOrdering {
        if s == t {
            TermOrdering::Equal
        } else if self.greater(s, t) {
            TermOrdering::Greater
        } else if self.greater(t, s) {
            TermOrdering::Less
        } else {
            TermOrdering::Incomparable
        }
    }

    pub fn orient(&self, lhs: &Term, rhs: &Term) -> Orientation {
        match self.compare(lhs, rhs) {
            TermOrdering::Greater => Orientation::LeftToRight,
            TermOrdering::Less => Orientation::RightToLeft,
            _ => Orientation::Unorientable,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trc_star() -> (Signature, Lpo, Term, Term) {
        let mut sig = Signature::new();
        let k = sig.intern("k", 0).unwrap();
        let abst = sig.intern("abst", 0).unwrap();
        let lpo = Lpo::new(Precedence::by_appearance(&sig));
        (sig, lpo, Term::constant(k), Term::constant(abst))
    }

    #[test]
    fn k_rule_orients_left_to_right() {
        let (_, lpo, k, _) = trc_star();
        let lhs = Term::ap_all(k, [Term::var(0), Term::var(1)]);
        assert_eq!(lpo.compare(&lhs, &Term::var(0)), TermOrdering::Greater);
        assert_eq!(lpo.orient(&lhs, &Term::var(0)), Orientation::LeftToRight);
        assert_eq!(lpo.orient(&Term::var(0), &lhs), Orientation::RightToLeft);
    }

    #[test]
    fn identical_terms_are_equal_and_distinct_variables_incomparable() {
        let (_, lpo, k, _) = trc_star();
        let t = Term::ap(k, Term::var(0));
        assert_eq!(lpo.compare(&t, &t), TermOrdering::Equal);
        assert_eq!(lpo.compare(&Term::var(0), &Term::var(1)), TermOrdering::Incomparable);
        assert_eq!(lpo.orient(&Term::var(0), &Term::var(1)), Orientation::Unorientable);
    }

    #[test]
    fn abstraction_axiom_cannot_be_oriented() {
        // abst x y z = x (k z) (y z): z is duplicated into both arguments on
        // the right, which no path ordering over `a` can dominate, under any
        // precedence.
        let (sig, _, k, abst) = trc_star();
        let (x, y, z) = (Term::var(0), Term::var(1), Term::var(2));
        let lhs = Term::ap_all(abst.clone(), [x.clone(), y.clone(), z.clone()]);
        let rhs = Term::ap(Term::ap(x, Term::ap(k.clone(), z.clone())), Term::ap(y, z));
        let syms: Vec<Symbol> = sig.term_symbols().collect();
        for order in [syms.clone(), syms.iter().rev().copied().collect()] {
            let lpo = Lpo::new(Precedence::with_order(&sig, &order));
            assert_eq!(lpo.orient(&lhs, &rhs), Orientation::Unorientable);
        }
    }

    #[test]
    fn pairwise_application_direction_follows_precedence() {
        let mut sig = Signature::new();
        let pair = sig.intern("pair", 2).unwrap();
        let (x, y, z) = (Term::var(0), Term::var(1), Term::var(2));
        let lhs = Term::ap(Term::app(pair, vec![x.clone(), y.clone()]), z.clone());
        let rhs = Term::app(pair, vec![Term::ap(x, z.clone()), Term::ap(y, z)]);
        let fused = Lpo::new(Precedence::with_order(&sig, &[pair, Symbol::APP]));
        assert_eq!(fused.orient(&lhs, &rhs), Orientation::RightToLeft);
        let spread = Lpo::new(Precedence::with_order(&sig, &[Symbol::APP, pair]));
        assert_eq!(spread.orient(&lhs, &rhs), Orientation::LeftToRight);
    }

    #[test]
    fn default_precedence_lifts_abst_and_eq() {
        let mut sig = Signature::new();
        let abst = sig.intern("abst", 0).unwrap();
        let eq = sig.intern("eq", 0).unwrap();
        let later = sig.intern("zz_later", 0).unwrap();
        let p = Precedence::by_appearance(&sig);
        assert_eq!(p.cmp_symbols(abst, eq), Ordering::Greater);
        assert_eq!(p.cmp_symbols(eq, later), Ordering::Greater);
        assert_eq!(p.cmp_symbols(later, Symbol::APP), Ordering::Greater);
        let explicit = Precedence::with_order(&sig, &[later, abst]);
        assert_eq!(explicit.ranking(&sig)[..2], [later, abst]);
    }

    mod props {
        use super::*;
        use crate::rewrite::{Demodulator, DemodulatorSet, DEFAULT_STEP_CAP};
        use crate::term::Substitution;
        use crate::testgen::{in_context, oriented, small_lpo, term};
        use proptest::prelude::*;

        fn proper_subterms(t: &Term, out: &mut Vec<Term>) {
            for a in t.args() {
                out.push(a.clone());
                proper_subterms(a, out);
            }
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn irreflexive_and_equal_only_on_identity(s in term(3, 3), t in term(3, 3)) {
                let lpo = small_lpo();
                prop_assert!(!lpo.greater(&s, &s));
                prop_assert_eq!(lpo.compare(&s, &s), TermOrdering::Equal);
                prop_assert_eq!(lpo.compare(&s, &t) == TermOrdering::Equal, s == t);
                prop_assert!(!(lpo.greater(&s, &t) && lpo.greater(&t, &s)));
            }

            #[test]
            fn transitive(s in term(3, 0), t in term(3, 0), u in term(3, 0), v in term(2, 2)) {
                // ground terms are totally ordered, so the premise is often met
                let lpo = small_lpo();
                let w = in_context(v, u.clone(), 0);
                for (a, b, c) in [(&s, &t, &u), (&s, &t, &w), (&w, &s, &t)] {
                    if lpo.greater(a, b) && lpo.greater(b, c) {
                        prop_assert!(lpo.greater(a, c));
                    }
                }
            }

            #[test]
            fn stable_under_substitution(
                s in term(3, 3),
                t in term(3, 3),
                b0 in term(2, 3),
                b1 in term(2, 3),
                b2 in term(2, 3),
            ) {
                let lpo = small_lpo();
                if lpo.greater(&s, &t) {
                    let sub = Substitution::from_pairs([(0, b0), (1, b1), (2, b2)]);
                    prop_assert!(lpo.greater(&sub.apply(&s), &sub.apply(&t)));
                }
            }

            #[test]
            fn monotone_in_contexts(s in term(3, 3), t in term(3, 3), other in term(2, 3), which in 0usize..4) {
                let lpo = small_lpo();
                if lpo.greater(&s, &t) {
                    let cs = in_context(s, other.clone(), which);
                    let ct = in_context(t, other, which);
                    prop_assert!(lpo.greater(&cs, &ct));
                }
            }

            #[test]
            fn terms_exceed_their_proper_subterms(t in term(4, 3)) {
                let lpo = small_lpo();
                let mut subs = Vec::new();
                proper_subterms(&t, &mut subs);
                for u in subs {
                    prop_assert_eq!(lpo.compare(&t, &u), TermOrdering::Greater);
                }
            }

            #[test]
            fn oriented_rules_terminate(
                pairs in proptest::collection::vec((term(2, 2), term(2, 2)), 1..6),
                targets in proptest::collection::vec(term(4, 0), 10),
            ) {
                let lpo = small_lpo();
                let mut set = DemodulatorSet::new();
                for (i, (lhs, rhs)) in oriented(&lpo, pairs).into_iter().enumerate() {
                    let id = 2 * i as u32 + 2;
                    set.insert(Demodulator { id, source: id - 1, lhs, rhs });
                }
                for t in &targets {
                    prop_assert!(set.demodulate(t, DEFAULT_STEP_CAP).is_ok());
                }
            }
        }
    }
}
