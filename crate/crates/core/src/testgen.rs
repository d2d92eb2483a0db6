//! Random terms for property tests, over a fixed small signature.

use proptest::prelude::*;

use crate::term::{Signature, Symbol, Term};

/// `a` (application), `g` unary, `h` binary and constants `c`, `d`.
pub struct Small {
    pub sig: Signature,
    pub g: Symbol,
    pub h: Symbol,
    pub c: Symbol,
    pub d: Symbol,
}

impl Small {
    pub fn new() -> Small {
        let mut sig = Signature::new();
        let g = sig.intern("g", 1).unwrap();
        let h = sig.intern("h", 2).unwrap();
        let c = sig.intern("c", 0).unwrap();
        let d = sig.intern("d", 0).unwrap();
        Small { sig, g, h, c, d }
    }
}

/// Terms of depth at most `depth` with variables below `vars`. With
/// `vars == 0` the terms are ground.
pub fn term(depth: u32, vars: u32) -> BoxedStrategy<Term> {
    let s = Small::new();
    let (g, h, c, d) = (s.g, s.h, s.c, s.d);
    let leaf = if vars == 0 {
        prop_oneof![Just(Term::constant(c)), Just(Term::constant(d))].boxed()
    } else {
        prop_oneof![
            2 => (0..vars).prop_map(Term::var),
            1 => Just(Term::constant(c)),
            1 => Just(Term::constant(d)),
        ]
        .boxed()
    };
    leaf.prop_recursive(depth, 24, 2, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Term::ap(x, y)),
            inner.clone().prop_map(move |x| Term::app(g, vec![x])),
            (inner.clone(), inner).prop_map(move |(x, y)| Term::app(h, vec![x, y])),
        ]
    })
    .boxed()
}

/// The LPO over `Small`'s symbols in appearance order.
pub fn small_lpo() -> crate::order::Lpo {
    let s = Small::new();
    crate::order::Lpo::new(crate::order::Precedence::by_appearance(&s.sig))
}

/// Wraps `t` in one of four one-hole contexts built around `other`.
pub fn in_context(t: Term, other: Term, which: usize) -> Term {
    let s = Small::new();
    match which % 4 {
        0 => Term::app(s.g, vec![t]),
        1 => Term::app(s.h, vec![other, t]),
        2 => Term::ap(t, other),
        _ => Term::ap(other, t),
    }
}

/// The pairs that `lpo` orients, as left-to-right rules with non-variable
/// left-hand sides.
pub fn oriented(lpo: &crate::order::Lpo, pairs: Vec<(Term, Term)>) -> Vec<(Term, Term)> {
    pairs
        .into_iter()
        .filter_map(|(l, r)| {
            if lpo.greater(&l, &r) {
                Some((l, r))
            } else if lpo.greater(&r, &l) {
                Some((r, l))
            } else {
                None
            }
        })
        .filter(|(l, _)| !l.is_var())
        .collect()
}
