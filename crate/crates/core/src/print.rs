//! Text rendering of terms, literals and clauses.
//!
//! Bird printing writes the application symbol `a` as juxtaposition:
//! `a(a(abst,x),y)` becomes `abst x y`. Application associates to the left,
//! so only a right operand that is itself an application is parenthesised.
//! Other function symbols always print as `name(arg,...,arg)`, with no
//! space before the parenthesis; the parser relies on that distinction.

use std::fmt::Write;

use crate::clause::{Clause, Literal};
use crate::term::{variable_name, Signature, Symbol, Term};

#[derive(Clone, Copy)]
pub struct Printer<'a> {
    sig: &'a Signature,
    bird: bool,
}

impl<'a> Printer<'a> {
    pub fn new(sig: &'a Signature, bird: bool) -> Self {
        Printer { sig, bird }
    }

    pub fn term(&self, t: &Term) -> String {
        let mut s = String::new();
        self.write_term(&mut s, t);
        s
    }

    fn write_term(&self, out: &mut String, t: &Term) {
        match t {
            Term::Var(v) => out.push_str(&variable_name(*v)),
            Term::App(Symbol::APP, args) if self.bird => {
                self.write_term(out, &args[0]);
                out.push(' ');
                if args[1].head() == Some(Symbol::APP) {
                    out.push('(');
                    self.write_term(out, &args[1]);
                    out.push(')');
                } else {
                    self.write_term(out, &args[1]);
                }
            }
            Term::App(s, args) => {
                out.push_str(self.sig.name(*s));
                if !args.is_empty() {
                    out.push('(');
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            out.push(',');
                        }
                        self.write_term(out, a);
                    }
                    out.push(')');
                }
            }
        }
    }

    pub fn literal(&self, l: &Literal) -> String {
        match l.sides() {
            Some((lhs, rhs)) => {
                let op = match (l.positive, self.bird) {
                    (true, true) => "=",
                    (false, true) => "!=",
                    (true, false) => " = ",
                    (false, false) => " != ",
                };
                format!("{}{op}{}", self.term(lhs), self.term(rhs))
            }
            None if l.positive => self.term(&l.atom),
            None => format!("-{}", self.term(&l.atom)),
        }
    }

    /// Literals joined by `|`; the empty clause prints as `$F`.
    pub fn literals(&self, lits: &[Literal]) -> String {
        if lits.is_empty() {
            return "$F".to_string();
        }
        let sep = if self.bird { "|" } else { " | " };
        let mut s = String::new();
        for (i, l) in lits.iter().enumerate() {
            if i > 0 {
                s.push_str(sep);
            }
            s.push_str(&self.literal(l));
        }
        s
    }

    pub fn clause(&self, c: &Clause) -> String {
        self.literals(&c.literals)
    }

    /// `id [justification] literals.`, with `twin,id` when the clause has a
    /// demodulator copy.
    pub fn proof_line(&self, c: &Clause, twin: Option<u32>) -> String {
        let mut s = String::new();
        if let Some(t) = twin {
            let _ = write!(s, "{t},");
        }
        let _ = write!(s, "{} {} {}.", c.id, c.justification, self.clause(c));
        s
    }
}

/// Bird-print rendering of a single term.
pub fn bird_print(t: &Term, sig: &Signature) -> String {
    Printer::new(sig, true).term(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn juxtaposition_is_left_associative() {
        let mut sig = Signature::new();
        let abst = Term::constant(sig.intern("abst", 0).unwrap());
        let k = Term::constant(sig.intern("k", 0).unwrap());
        let t = Term::ap(Term::ap(abst.clone(), abst.clone()), k.clone());
        assert_eq!(bird_print(&t, &sig), "abst abst k");
        let t = Term::ap(abst.clone(), Term::ap(abst.clone(), k.clone()));
        assert_eq!(bird_print(&t, &sig), "abst (abst k)");
    }

    #[test]
    fn abstraction_axiom_prints_like_the_listing() {
        let mut sig = Signature::new();
        let abst = Term::constant(sig.intern("abst", 0).unwrap());
        let k = Term::constant(sig.intern("k", 0).unwrap());
        let (x, y, z) = (Term::var(0), Term::var(1), Term::var(2));
        let lhs = Term::ap_all(abst, [x.clone(), y.clone(), z.clone()]);
        let rhs = Term::ap(Term::ap(x, Term::ap(k, z.clone())), Term::ap(y, z));
        let c = Clause::input(vec![Literal::eq(lhs, rhs)]);
        let p = Printer::new(&sig, true);
        assert_eq!(p.clause(&c), "abst x y z=x (k z) (y z)");
    }

    #[test]
    fn functional_form_without_bird_print() {
        let mut sig = Signature::new();
        let k = Term::constant(sig.intern("k", 0).unwrap());
        let lhs = Term::ap_all(k, [Term::var(0), Term::var(1)]);
        let c = Clause::input(vec![Literal::eq(lhs, Term::var(0))]);
        assert_eq!(Printer::new(&sig, false).clause(&c), "a(a(k,x),y) = x");
    }

    #[test]
    fn plain_functions_keep_their_parentheses() {
        let mut sig = Signature::new();
        let k = sig.intern("k", 1).unwrap();
        let id = Term::constant(sig.intern("id", 0).unwrap());
        let kk = Term::app(k, vec![Term::app(k, vec![id])]);
        assert_eq!(bird_print(&kk, &sig), "k(k(id))");
        let pair = sig.intern("pair", 2).unwrap();
        let f = Term::constant(sig.intern("F", 0).unwrap());
        let k0 = sig.intern("k0", 0).unwrap();
        let p2 = Term::constant(sig.intern("p2", 0).unwrap());
        let inner = Term::ap(Term::constant(k0), Term::ap(Term::constant(k0), p2));
        let t = Term::app(pair, vec![f, inner]);
        assert_eq!(bird_print(&t, &sig), "pair(F,k0 (k0 p2))");
    }

    #[test]
    fn empty_clause_prints_false() {
        let sig = Signature::new();
        assert_eq!(Printer::new(&sig, true).literals(&[]), "$F");
    }
}
