//! Syntactic unification with occurs check, and one-way matching.

use crate::term::{Substitution, Term};

fn walk<'a>(s: &'a Substitution, mut t: &'a Term) -> &'a Term {
    while let Term::Var(v) = t {
        match s.get(*v) {
            Some(b) => t = b,
            None => break,
        }
    }
    t
}

fn occurs(s: &Substitution, v: u32, t: &Term) -> bool {
    match walk(s, t) {
        Term::Var(w) => *w == v,
        Term::App(_, args) => args.iter().any(|a| occurs(s, v, a)),
    }
}

fn unify_rec(s: &mut Substitution, trail: &mut Vec<u32>, a: &Term, b: &Term) -> bool {
    let a = walk(s, a).clone();
    let b = walk(s, b).clone();
    match (&a, &b) {
        (Term::Var(x), Term::Var(y)) if x == y => true,
        (Term::Var(x), t) | (t, Term::Var(x)) => {
            if occurs(s, *x, t) {
                return false;
            }
            s.bind(*x, t.clone());
            trail.push(*x);
            true
        }
        (Term::App(f, fa), Term::App(g, ga)) => {
            f == g && fa.len() == ga.len() && fa.iter().zip(ga.iter()).all(|(x, y)| unify_rec(s, trail, x, y))
        }
    }
}

/// Extends the triangular substitution `s` so that it unifies `a` and `b`.
/// On failure `s` is left as it was.
pub fn unify_with(s: &mut Substitution, a: &Term, b: &Term) -> bool {
    // Cheap clash test before any allocation.
    if let (Term::App(f, _), Term::App(g, _)) = (a, b) {
        if f != g {
            return false;
        }
    }
    let mut trail = Vec::new();
    if unify_rec(s, &mut trail, a, b) {
        true
    } else {
        for v in trail {
            s.unbind(v);
        }
        false
    }
}

/// Applies a triangular substitution, following binding chains.
pub fn apply_triangular(s: &Substitution, t: &Term) -> Term {
    match t {
        Term::Var(v) => match s.get(*v) {
            Some(b) => apply_triangular(s, b),
            None => t.clone(),
        },
        Term::App(_, args) if args.is_empty() => t.clone(),
        Term::App(f, args) => Term::app(*f, args.iter().map(|a| apply_triangular(s, a)).collect()),
    }
}

/// Turns a triangular substitution into an idempotent one.
pub fn solved_form(s: &Substitution) -> Substitution {
    Substitution::from_pairs(s.iter().map(|(v, t)| (v, apply_triangular(s, t))))
}

/// Most general unifier of `t1` and `t2`, in idempotent form.
pub fn unify(t1: &Term, t2: &Term) -> Option<Substitution> {
    let mut s = Substitution::new();
    unify_with(&mut s, t1, t2).then(|| solved_form(&s))
}

fn match_rec(s: &mut Substitution, trail: &mut Vec<u32>, p: &Term, t: &Term) -> bool {
    match p {
        Term::Var(v) => match s.get(*v) {
            Some(b) => b == t,
            None => {
                s.bind(*v, t.clone());
                trail.push(*v);
                true
            }
        },
        Term::App(f, pa) => match t {
            Term::App(g, ta) if f == g && pa.len() == ta.len() => {
                pa.iter().zip(ta.iter()).all(|(x, y)| match_rec(s, trail, x, y))
            }
            _ => false,
        },
    }
}

/// Extends `s` so that `s(pattern) == target`, binding pattern variables
/// only. On failure `s` is left as it was.
pub fn match_with(s: &mut Substitution, pattern: &Term, target: &Term) -> bool {
    let mut trail = Vec::new();
    if match_rec(s, &mut trail, pattern, target) {
        true
    } else {
        for v in trail {
            s.unbind(v);
        }
        false
    }
}

/// One-way matcher: `apply(pattern, s) == target`; the target is never
/// instantiated.
pub fn match_term(pattern: &Term, target: &Term) -> Option<Substitution> {
    let mut s = Substitution::new();
    match_with(&mut s, pattern, target).then_some(s)
}
