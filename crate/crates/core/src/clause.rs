//! Literals, clauses and derivation records.

use std::fmt;

use crate::term::{Symbol, Term};

pub type ClauseId = u32;

/// A signed atom. Equalities are atoms headed by [`Symbol::EQ`]; answer
/// literals are headed by [`Symbol::ANSWER`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub positive: bool,
    pub atom: Term,
}

impl Literal {
    pub fn eq(lhs: Term, rhs: Term) -> Literal {
        Literal {
            positive: true,
            atom: Term::app(Symbol::EQ, vec![lhs, rhs]),
        }
    }

    pub fn neq(lhs: Term, rhs: Term) -> Literal {
        Literal {
            positive: false,
            atom: Term::app(Symbol::EQ, vec![lhs, rhs]),
        }
    }

    pub fn answer(t: Term) -> Literal {
        Literal {
            positive: true,
            atom: Term::app(Symbol::ANSWER, vec![t]),
        }
    }

    pub fn is_equality(&self) -> bool {
        self.atom.head() == Some(Symbol::EQ)
    }

    pub fn is_answer(&self) -> bool {
        self.atom.head() == Some(Symbol::ANSWER)
    }

    /// `(lhs, rhs)` of an equality literal.
    pub fn sides(&self) -> Option<(&Term, &Term)> {
        match &self.atom {
            Term::App(Symbol::EQ, args) => Some((&args[0], &args[1])),
            _ => None,
        }
    }

    pub fn flipped(&self) -> Literal {
        match self.sides() {
            Some((l, r)) => Literal {
                positive: self.positive,
                atom: Term::app(Symbol::EQ, vec![r.clone(), l.clone()]),
            },
            None => self.clone(),
        }
    }

    pub fn negated(&self) -> Literal {
        Literal {
            positive: !self.positive,
            atom: self.atom.clone(),
        }
    }

    /// Positive `t = t`.
    pub fn is_reflexive_positive(&self) -> bool {
        self.positive && matches!(self.sides(), Some((l, r)) if l == r)
    }

    /// Symbol and variable occurrences; the equality symbol and answer
    /// literals do not count.
    pub fn weight(&self) -> u32 {
        match &self.atom {
            Term::App(Symbol::EQ, args) => (args[0].size() + args[1].size()) as u32,
            Term::App(Symbol::ANSWER, _) | Term::App(Symbol::FALSE, _) => 0,
            t => t.size() as u32,
        }
    }

    pub fn map_atom(&self, f: impl FnOnce(&Term) -> Term) -> Literal {
        Literal {
            positive: self.positive,
            atom: f(&self.atom),
        }
    }
}

/// A literal inside a clause, or a subterm inside one of its literals.
/// Both the literal index and the path are 1-based; for equalities path
/// element 1 is the left-hand side and 2 the right-hand side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    pub clause: ClauseId,
    pub literal: usize,
    pub path: Vec<usize>,
}

impl Position {
    pub fn new(clause: ClauseId, literal: usize, path: Vec<usize>) -> Position {
        Position { clause, literal, path }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.clause, self.literal)?;
        for p in &self.path {
            write!(f, ".{p}")?;
        }
        Ok(())
    }
}

/// The inference that produced a clause.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// An input clause; simplifications show up in the demod and unit_del
    /// lists.
    Input,
    /// The given clause was the equation. `from.path` is `[side]`.
    ParaFrom {
        from: Position,
        into: Position,
    },
    /// The given clause was the clause rewritten into.
    ParaInto {
        into: Position,
        from: Position,
    },
    Ur {
        nucleus: ClauseId,
        satellites: Vec<ClauseId>,
    },
    Binary {
        first: Position,
        second: Position,
    },
    BackDemod(ClauseId),
}

/// A derivation step plus the demodulators and unit deletions applied
/// after it, in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Justification {
    pub rule: Rule,
    pub demod: Vec<ClauseId>,
    pub unit_del: Vec<ClauseId>,
}

impl Justification {
    pub fn new(rule: Rule) -> Justification {
        Justification {
            rule,
            demod: Vec::new(),
            unit_del: Vec::new(),
        }
    }

    pub fn input() -> Justification {
        Justification::new(Rule::Input)
    }

    pub fn is_input(&self) -> bool {
        self.rule == Rule::Input
    }

    /// Ids of the clauses the rule itself consumed.
    pub fn rule_parents(&self) -> Vec<ClauseId> {
        match &self.rule {
            Rule::Input => vec![],
            Rule::BackDemod(id) => vec![*id],
            Rule::ParaFrom { from, into } | Rule::ParaInto { into, from } => {
                vec![from.clause, into.clause]
            }
            Rule::Ur { nucleus, satellites } => {
                let mut v = vec![*nucleus];
                v.extend(satellites);
                v
            }
            Rule::Binary { first, second } => vec![first.clause, second.clause],
        }
    }

    /// Every referenced id, demodulator ids included.
    pub fn references(&self) -> Vec<ClauseId> {
        let mut v = self.rule_parents();
        v.extend(&self.demod);
        v.extend(&self.unit_del);
        v
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match &self.rule {
            Rule::Input => {}
            Rule::ParaFrom { from, into } => {
                parts.push("para_from".into());
                parts.push(from.to_string());
                parts.push(into.to_string());
            }
            Rule::ParaInto { into, from } => {
                parts.push("para_into".into());
                parts.push(into.to_string());
                parts.push(from.to_string());
            }
            Rule::Ur { nucleus, satellites } => {
                parts.push("ur".into());
                parts.push(nucleus.to_string());
                parts.extend(satellites.iter().map(|s| s.to_string()));
            }
            Rule::Binary { first, second } => {
                parts.push("binary".into());
                parts.push(first.to_string());
                parts.push(second.to_string());
            }
            Rule::BackDemod(id) => {
                parts.push("back_demod".into());
                parts.push(id.to_string());
            }
        }
        if !self.demod.is_empty() {
            parts.push("demod".into());
            parts.extend(self.demod.iter().map(|d| d.to_string()));
        }
        if !self.unit_del.is_empty() {
            parts.push("unit_del".into());
            parts.extend(self.unit_del.iter().map(|d| d.to_string()));
        }
        write!(f, "[{}]", parts.join(","))
    }
}

/// A disjunction of literals. An empty literal list is the contradiction
/// `$F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub id: ClauseId,
    pub literals: Vec<Literal>,
    pub justification: Justification,
    pub weight: u32,
}

impl Clause {
    pub fn new(id: ClauseId, literals: Vec<Literal>, justification: Justification) -> Clause {
        let weight = clause_weight(&literals);
        Clause {
            id,
            literals,
            justification,
            weight,
        }
    }

    pub fn input(literals: Vec<Literal>) -> Clause {
        Clause::new(0, literals, Justification::input())
    }

    /// Number of literals other than `$ans` literals.
    pub fn core_len(&self) -> usize {
        self.literals.iter().filter(|l| !l.is_answer()).count()
    }

    /// Exactly one non-`$ans` literal.
    pub fn is_unit(&self) -> bool {
        self.core_len() == 1
    }

    /// Nothing left but answer literals: the search has succeeded.
    pub fn is_success(&self) -> bool {
        self.core_len() == 0
    }

    /// Index (0-based) of the only non-answer literal of a unit.
    pub fn unit_literal(&self) -> Option<usize> {
        let mut it = self.literals.iter().enumerate().filter(|(_, l)| !l.is_answer());
        match (it.next(), it.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }

    pub fn answers(&self) -> impl Iterator<Item = &Literal> {
        self.literals.iter().filter(|l| l.is_answer())
    }

    /// Positive unit equality, returned as `(lhs, rhs)`.
    pub fn as_positive_equation(&self) -> Option<(&Term, &Term)> {
        let i = self.unit_literal()?;
        let lit = &self.literals[i];
        if lit.positive {
            lit.sides()
        } else {
            None
        }
    }

    pub fn max_var(&self) -> Option<u32> {
        self.literals.iter().filter_map(|l| l.atom.max_var()).max()
    }

    /// Variable-disjoint copy with every variable raised by `offset`.
    pub fn shift_vars(&self, offset: u32) -> Clause {
        Clause {
            literals: self
                .literals
                .iter()
                .map(|l| l.map_atom(|a| a.shift_vars(offset)))
                .collect(),
            ..self.clone()
        }
    }
}

/// Sum of literal weights, `$ans` literals excluded.
pub fn clause_weight(literals: &[Literal]) -> u32 {
    literals.iter().map(Literal::weight).sum()
}

/// Renumbers variables by first occurrence, so that they are `0..n`.
pub fn normalize_variables(literals: &[Literal]) -> Vec<Literal> {
    let mut order = Vec::new();
    for l in literals {
        l.atom.collect_vars(&mut order);
    }
    if order.iter().enumerate().all(|(i, &v)| i as u32 == v) {
        return literals.to_vec();
    }
    let mut rename = |v: u32| order.iter().position(|&w| w == v).unwrap() as u32;
    literals
        .iter()
        .map(|l| l.map_atom(|a| a.map_vars(&mut rename)))
        .collect()
}

/// Returns the two clauses with disjoint variables; the first is unchanged
/// and the second is shifted above the first's largest variable.
pub fn rename_apart(c1: &Clause, c2: &Clause) -> (Clause, Clause) {
    let offset = c1.max_var().map_or(0, |v| v + 1);
    (c1.clone(), c2.shift_vars(offset))
}

/// Whether the two literal lists are equal up to a bijective renaming of
/// variables, optionally allowing each equality literal to be read in
/// either direction.
pub fn is_variant(a: &[Literal], b: &[Literal], symmetric: bool) -> bool {
    fn term_variant(s: &Term, t: &Term, fwd: &mut Vec<(u32, u32)>) -> bool {
        match (s, t) {
            (Term::Var(x), Term::Var(y)) => {
                for &(p, q) in fwd.iter() {
                    if p == *x || q == *y {
                        return p == *x && q == *y;
                    }
                }
                fwd.push((*x, *y));
                true
            }
            (Term::App(f, fa), Term::App(g, ga)) => {
                f == g && fa.iter().zip(ga.iter()).all(|(x, y)| term_variant(x, y, fwd))
            }
            _ => false,
        }
    }
    fn go(a: &[Literal], b: &[Literal], symmetric: bool, map: &mut Vec<(u32, u32)>) -> bool {
        let (Some((la, ra)), Some((lb, rb))) = (a.split_first(), b.split_first()) else {
            return a.is_empty() && b.is_empty();
        };
        if la.positive != lb.positive {
            return false;
        }
        let saved = map.len();
        if term_variant(&la.atom, &lb.atom, map) && go(ra, rb, symmetric, map) {
            return true;
        }
        map.truncate(saved);
        if symmetric && la.is_equality() && lb.is_equality() {
            let flipped = la.flipped();
            if term_variant(&flipped.atom, &lb.atom, map) && go(ra, rb, symmetric, map) {
                return true;
            }
            map.truncate(saved);
        }
        false
    }
    a.len() == b.len() && go(a, b, symmetric, &mut Vec::new())
}
