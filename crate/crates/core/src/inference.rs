//! Generating and deleting inference rules: paramodulation, UR-resolution,
//! unit conflict and unit deletion.
//!
//! Generated clauses come back with id 0; numbering, simplification and
//! retention belong to the saturation loop. Answer literals are carried
//! along and instantiated but never inferred upon.

use std::collections::HashSet;
use std::sync::Arc;

use crate::clause::{Clause, ClauseId, Justification, Literal, Position, Rule};
use crate::index::DiscTree;
use crate::order::{Lpo, TermOrdering};
use crate::term::{Substitution, Term};
use crate::unify::{apply_triangular, match_with, unify, unify_with};

#[derive(Clone, Copy, Default)]
pub struct ParaOptions<'a> {
    pub from_units_only: bool,
    pub into_units_only: bool,
    /// When set, equations are used only from a side that is not smaller
    /// than the other, and never rewritten into on their smaller side. An
    /// incomparable equation in a non-unit clause is rewritten into on its
    /// written left side only; units are entered on both sides, which
    /// stands in for a flipped copy of the unit.
    pub order: Option<&'a Lpo>,
}

fn var_offset(c: &Clause) -> u32 {
    c.max_var().map_or(0, |v| v + 1)
}

/// Which clause the given clause was, for the justification tag.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Given {
    From,
    Into,
}

/// Paramodulants of `from` into `into`, tagged `para_from`.
pub fn paramodulate(from: &Clause, into: &Clause, opts: ParaOptions<'_>) -> Vec<Clause> {
    para(from, into, opts, Given::From)
}

/// Paramodulants of `from` into `into`, tagged `para_into`.
pub fn paramodulate_into(into: &Clause, from: &Clause, opts: ParaOptions<'_>) -> Vec<Clause> {
    para(from, into, opts, Given::Into)
}

fn para(from: &Clause, into: &Clause, opts: ParaOptions<'_>, given: Given) -> Vec<Clause> {
    let mut out = Vec::new();
    if opts.from_units_only && !from.is_unit() {
        return out;
    }
    if opts.into_units_only && !into.is_unit() {
        return out;
    }
    let shifted = from.shift_vars(var_offset(into));
    for (fi, flit) in shifted.literals.iter().enumerate() {
        if !flit.positive || flit.is_answer() {
            continue;
        }
        let Some((fl, fr)) = flit.sides() else { continue };
        let cmp = opts.order.map(|o| o.compare(fl, fr));
        for side in [1usize, 2] {
            let (l, r) = if side == 1 { (fl, fr) } else { (fr, fl) };
            if l.is_var() {
                continue;
            }
            if let Some(c) = cmp {
                let smaller = if side == 1 {
                    TermOrdering::Less
                } else {
                    TermOrdering::Greater
                };
                if c == smaller || (side == 2 && c == TermOrdering::Equal) {
                    continue;
                }
            }
            for (ii, ilit) in into.literals.iter().enumerate() {
                if ilit.is_answer() {
                    continue;
                }
                let skip_side = match (opts.order, ilit.sides()) {
                    (Some(o), Some((a, b))) => match o.compare(a, b) {
                        TermOrdering::Greater => Some(2),
                        TermOrdering::Less => Some(1),
                        TermOrdering::Incomparable if !into.is_unit() => Some(2),
                        _ => None,
                    },
                    _ => None,
                };
                let mut hits: Vec<(Vec<usize>, Substitution)> = Vec::new();
                ilit.atom.visit_positions(&mut |path, sub| {
                    if path.is_empty() || Some(path[0]) == skip_side {
                        return;
                    }
                    if let (Some(a), Some(b)) = (l.head(), sub.head()) {
                        if a != b {
                            return;
                        }
                    }
                    if let Some(s) = unify(l, sub) {
                        hits.push((path.to_vec(), s));
                    }
                });
                for (path, s) in hits {
                    let mut lits = Vec::with_capacity(into.literals.len() + shifted.literals.len() - 1);
                    for (j, lit) in into.literals.iter().enumerate() {
                        if j == ii {
                            let replaced = lit.atom.replace_at(&path, r.clone());
                            lits.push(Literal {
                                positive: lit.positive,
                                atom: s.apply(&replaced),
                            });
                        } else {
                            lits.push(lit.map_atom(|a| s.apply(a)));
                        }
                    }
                    for (j, lit) in shifted.literals.iter().enumerate() {
                        if j != fi {
                            lits.push(lit.map_atom(|a| s.apply(a)));
                        }
                    }
                    let from_pos = Position::new(from.id, fi + 1, vec![side]);
                    let into_pos = Position::new(into.id, ii + 1, path);
                    let rule = match given {
                        Given::From => Rule::ParaFrom {
                            from: from_pos,
                            into: into_pos,
                        },
                        Given::Into => Rule::ParaInto {
                            into: into_pos,
                            from: from_pos,
                        },
                    };
                    out.push(Clause::new(0, lits, Justification::new(rule)));
                }
            }
        }
    }
    out
}

/// Unit clauses split by the sign of their one non-answer literal, in
/// insertion order. Equality units are also indexed by both sides for
/// unit deletion.
#[derive(Clone, Debug, Default)]
pub struct UnitStore {
    positive: Vec<Arc<Clause>>,
    negative: Vec<Arc<Clause>>,
    equations: Vec<Arc<Clause>>,
    removed: HashSet<ClauseId>,
    /// Keys are `2 * i + reading` into `equations`, reading 1 being the
    /// flipped equation; `[negative, positive]`.
    sides: [DiscTree; 2],
}

impl UnitStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `c` if it is a unit; returns whether it was added.
    pub fn insert(&mut self, c: Arc<Clause>) -> bool {
        let Some(i) = c.unit_literal() else { return false };
        let lit = &c.literals[i];
        if lit.is_equality() {
            let k = self.equations.len();
            let idx = &mut self.sides[lit.positive as usize];
            idx.insert(&lit.atom, 2 * k);
            idx.insert(&lit.flipped().atom, 2 * k + 1);
            self.equations.push(c.clone());
        }
        if lit.positive {
            self.positive.push(c);
        } else {
            self.negative.push(c);
        }
        true
    }

    pub fn remove(&mut self, id: ClauseId) {
        self.positive.retain(|c| c.id != id);
        self.negative.retain(|c| c.id != id);
        self.removed.insert(id);
    }

    /// The earliest stored unit whose literal, read either way, has `lit`'s
    /// negation as an instance.
    pub fn deleter_of(&self, lit: &Literal) -> Option<&Arc<Clause>> {
        if !lit.is_equality() {
            return self
                .with_sign(!lit.positive)
                .iter()
                .find(|u| deletes(&u.literals[u.unit_literal().expect("unit")], lit));
        }
        let (a, b) = lit.sides()?;
        let mut keys = Vec::new();
        self.sides[!lit.positive as usize].generalizations(&lit.atom, |k| keys.push(k));
        keys.sort_unstable();
        keys.into_iter().find_map(|k| {
            let u = &self.equations[k / 2];
            if self.removed.contains(&u.id) {
                return None;
            }
            let (l, r) = u.literals[u.unit_literal()?].sides()?;
            let (first, second) = if k % 2 == 0 { (l, r) } else { (r, l) };
            let mut s = Substitution::new();
            (match_with(&mut s, first, a) && match_with(&mut s, second, b)).then_some(u)
        })
    }

    /// Units whose literal has sign `positive`.
    pub fn with_sign(&self, positive: bool) -> &[Arc<Clause>] {
        if positive {
            &self.positive
        } else {
            &self.negative
        }
    }

    pub fn len(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<Clause>> {
        self.positive.iter().chain(&self.negative)
    }
}

/// Unifies two atoms, trying the reversed reading of `b` when both are
/// equalities. Each successful reading is reported separately.
fn unify_atoms_each(s: &Substitution, a: &Term, b: &Literal, mut k: impl FnMut(Substitution)) {
    let mut s1 = s.clone();
    if unify_with(&mut s1, a, &b.atom) {
        k(s1);
    }
    if b.is_equality() {
        let flipped = b.flipped();
        if flipped.atom != b.atom {
            let mut s2 = s.clone();
            if unify_with(&mut s2, a, &flipped.atom) {
                k(s2);
            }
        }
    }
}

struct UrSearch<'a> {
    nucleus: &'a Clause,
    target: usize,
    /// Literal indices to resolve away, in order.
    others: Vec<usize>,
    /// Per entry of `others`: the candidate satellites.
    candidates: Vec<Vec<&'a Arc<Clause>>>,
    out: Vec<Clause>,
}

impl UrSearch<'_> {
    fn run(&mut self, idx: usize, s: Substitution, next_var: u32, chosen: &mut Vec<(ClauseId, Vec<Literal>)>) {
        if idx == self.others.len() {
            let mut lits = vec![self.nucleus.literals[self.target].map_atom(|a| apply_triangular(&s, a))];
            for l in self.nucleus.answers() {
                lits.push(l.map_atom(|a| apply_triangular(&s, a)));
            }
            for (_, answers) in chosen.iter() {
                for l in answers {
                    lits.push(l.map_atom(|a| apply_triangular(&s, a)));
                }
            }
            let rule = Rule::Ur {
                nucleus: self.nucleus.id,
                satellites: chosen.iter().map(|(id, _)| *id).collect(),
            };
            self.out.push(Clause::new(0, lits, Justification::new(rule)));
            return;
        }
        let lit = &self.nucleus.literals[self.others[idx]];
        let cands = self.candidates[idx].clone();
        for sat in cands {
            let sat = sat.shift_vars(next_var);
            let after = var_offset(&sat).max(next_var);
            let ui = sat.unit_literal().expect("satellite is a unit");
            let answers: Vec<Literal> = sat.answers().cloned().collect();
            let mut branches = Vec::new();
            unify_atoms_each(&s, &lit.atom, &sat.literals[ui], |s2| branches.push(s2));
            for s2 in branches {
                chosen.push((sat.id, answers.clone()));
                self.run(idx + 1, s2, after, chosen);
                chosen.pop();
            }
        }
    }
}

fn ur_generate<'a>(nucleus: &'a Clause, units: &'a UnitStore, forced: Option<&'a Arc<Clause>>) -> Vec<Clause> {
    let core: Vec<usize> = (0..nucleus.literals.len())
        .filter(|&i| !nucleus.literals[i].is_answer())
        .collect();
    let mut out = Vec::new();
    if core.len() < 2 {
        return out;
    }
    let base = var_offset(nucleus);
    for &target in &core {
        let others: Vec<usize> = core.iter().copied().filter(|&i| i != target).collect();
        let all: Vec<Vec<&Arc<Clause>>> = others
            .iter()
            .map(|&i| units.with_sign(!nucleus.literals[i].positive).iter().collect())
            .collect();
        match forced {
            None => {
                let mut search = UrSearch {
                    nucleus,
                    target,
                    others: others.clone(),
                    candidates: all,
                    out: Vec::new(),
                };
                search.run(0, Substitution::new(), base, &mut Vec::new());
                out.append(&mut search.out);
            }
            Some(f) => {
                let fsign = f.literals[f.unit_literal().expect("unit")].positive;
                for slot in 0..others.len() {
                    if nucleus.literals[others[slot]].positive == fsign {
                        continue;
                    }
                    let mut cands = all.clone();
                    cands[slot] = vec![f];
                    let mut search = UrSearch {
                        nucleus,
                        target,
                        others: others.clone(),
                        candidates: cands,
                        out: Vec::new(),
                    };
                    search.run(0, Substitution::new(), base, &mut Vec::new());
                    out.append(&mut search.out);
                }
            }
        }
    }
    out
}

/// UR-resolvents of `nucleus`: all but one non-answer literal resolved
/// against opposite-sign units, leaving a unit.
pub fn ur_resolve(nucleus: &Clause, units: &UnitStore) -> Vec<Clause> {
    ur_generate(nucleus, units, None)
}

/// UR-resolvents of `nucleus` in which `satellite` resolves at least one
/// literal.
pub fn ur_resolve_with(nucleus: &Clause, satellite: &Arc<Clause>, units: &UnitStore) -> Vec<Clause> {
    ur_generate(nucleus, units, Some(satellite))
}

/// Resolves the unit `new_unit` against the first stored unit of opposite
/// sign whose atom unifies with it. The result keeps only the instantiated
/// answer literals, and is empty (`$F`) when there are none.
pub fn unit_conflict(new_unit: &Clause, units: &UnitStore) -> Option<Clause> {
    let ni = new_unit.unit_literal()?;
    let nlit = &new_unit.literals[ni];
    for other in units.with_sign(!nlit.positive) {
        let shifted = other.shift_vars(var_offset(new_unit));
        let oi = shifted.unit_literal().expect("stored unit");
        let mut found = None;
        unify_atoms_each(&Substitution::new(), &nlit.atom, &shifted.literals[oi], |s| {
            if found.is_none() {
                found = Some(s);
            }
        });
        if let Some(s) = found {
            let lits: Vec<Literal> = new_unit
                .answers()
                .chain(shifted.answers())
                .map(|l| l.map_atom(|a| apply_triangular(&s, a)))
                .collect();
            let rule = Rule::Binary {
                first: Position::new(new_unit.id, ni + 1, vec![]),
                second: Position::new(other.id, oi + 1, vec![]),
            };
            return Some(Clause::new(0, lits, Justification::new(rule)));
        }
    }
    None
}

/// Whether `lit`'s negation is an instance of the unit literal `unit`
/// (equalities read either way).
pub fn deletes(unit: &Literal, lit: &Literal) -> bool {
    if unit.positive == lit.positive {
        return false;
    }
    let mut s = Substitution::new();
    if match_with(&mut s, &unit.atom, &lit.atom) {
        return true;
    }
    if unit.is_equality() {
        let mut s = Substitution::new();
        return match_with(&mut s, &unit.flipped().atom, &lit.atom);
    }
    false
}

/// Removes every non-answer literal whose negation is an instance of a
/// stored unit, recording the unit ids in `justification.unit_del`.
pub fn unit_delete(c: &Clause, units: &UnitStore) -> Clause {
    let mut kept = Vec::with_capacity(c.literals.len());
    let mut used = Vec::new();
    for lit in &c.literals {
        if lit.is_answer() {
            kept.push(lit.clone());
            continue;
        }
        match units.deleter_of(lit) {
            Some(u) => used.push(u.id),
            None => kept.push(lit.clone()),
        }
    }
    if used.is_empty() {
        return c.clone();
    }
    let mut j = c.justification.clone();
    j.unit_del.extend(used);
    Clause::new(c.id, kept, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_clause_for_test as pc;
    use crate::term::Signature;

    fn with_id(mut c: Clause, id: ClauseId) -> Clause {
        c.id = id;
        c
    }

    #[test]
    fn para_from_abstraction_into_diagonal_goal() {
        let mut sig = Signature::new();
        let abst = with_id(pc(&mut sig, "abst x y z=x (k z) (y z)"), 12);
        let goal = with_id(pc(&mut sig, "x b(x) c(x)!=b(x) b(x) |$ans(x)"), 18);
        let expected = pc(
            &mut sig,
            "x (k b(abst x y)) (y b(abst x y)) c(abst x y)!=b(abst x y) b(abst x y) |$ans(abst x y)",
        );
        let out = paramodulate(&abst, &goal, ParaOptions::default());
        let hit = out
            .iter()
            .find(|c| {
                c.justification.rule
                    == Rule::ParaFrom {
                        from: Position::new(12, 1, vec![1]),
                        into: Position::new(18, 1, vec![1, 1]),
                    }
            })
            .expect("paramodulant at 18.1.1.1");
        assert!(crate::clause::is_variant(&hit.literals, &expected.literals, false));
    }

    #[test]
    fn para_into_flipped_abstraction_from_k() {
        let mut sig = Signature::new();
        let flipped = with_id(pc(&mut sig, "x (k y) (z y)=abst x z y"), 6);
        let k = with_id(pc(&mut sig, "k x y=x"), 2);
        let expected = pc(&mut sig, "x (k z) y=abst x (k y) z");
        let out = paramodulate_into(&flipped, &k, ParaOptions::default());
        let hit = out
            .iter()
            .find(|c| {
                c.justification.rule
                    == Rule::ParaInto {
                        into: Position::new(6, 1, vec![1, 2]),
                        from: Position::new(2, 1, vec![1]),
                    }
            })
            .expect("paramodulant at 6.1.1.2");
        assert!(crate::clause::is_variant(&hit.literals, &expected.literals, true));
        assert_eq!(hit.justification.to_string(), "[para_into,6.1.1.2,2.1.1]");
    }

    #[test]
    fn incomparable_literal_of_nonunit_is_entered_on_its_left_only() {
        let mut sig = Signature::new();
        let k = with_id(pc(&mut sig, "k x y=x"), 2);
        let ext = with_id(pc(&mut sig, "x=y|x n(x,y) !=y n(x,y)"), 5);
        let unit = with_id(pc(&mut sig, "x n(x,y) !=y n(x,y)"), 6);
        let lpo = Lpo::new(crate::order::Precedence::by_appearance(&sig));
        let ordered = ParaOptions {
            order: Some(&lpo),
            ..Default::default()
        };
        let into_sides = |out: &[Clause]| -> Vec<usize> {
            out.iter()
                .map(|c| match &c.justification.rule {
                    Rule::ParaFrom { into, .. } => into.path[0],
                    r => panic!("unexpected {r:?}"),
                })
                .collect()
        };
        let sides = into_sides(&paramodulate(&k, &ext, ordered));
        assert!(!sides.is_empty() && sides.iter().all(|&s| s == 1));
        let mut sides = into_sides(&paramodulate(&k, &unit, ordered));
        sides.sort();
        sides.dedup();
        assert_eq!(sides, vec![1, 2]);
        let unordered = into_sides(&paramodulate(&k, &ext, ParaOptions::default()));
        assert!(unordered.contains(&2));
    }

    #[test]
    fn reflexivity_yields_no_paramodulants() {
        let mut sig = Signature::new();
        let refl = with_id(pc(&mut sig, "x=x"), 1);
        let k = with_id(pc(&mut sig, "k x y=x"), 2);
        assert!(paramodulate(&refl, &k, ParaOptions::default()).is_empty());
        assert!(paramodulate(&refl, &refl, ParaOptions::default()).is_empty());
    }

    #[test]
    fn units_only_flags_filter_clauses() {
        let mut sig = Signature::new();
        let ext = with_id(pc(&mut sig, "x=y|x n(x,y) !=y n(x,y)"), 5);
        let k = with_id(pc(&mut sig, "k x y=x"), 2);
        let opts = ParaOptions {
            into_units_only: true,
            ..Default::default()
        };
        assert!(paramodulate(&k, &ext, opts).is_empty());
        assert!(!paramodulate(&k, &ext, ParaOptions::default()).is_empty());
        let opts = ParaOptions {
            from_units_only: true,
            ..Default::default()
        };
        assert!(paramodulate(&ext, &k, opts).is_empty());
    }

    #[test]
    fn answer_literals_are_never_rewritten() {
        let mut sig = Signature::new();
        let k = with_id(pc(&mut sig, "k x y=x"), 2);
        let goal = with_id(pc(&mut sig, "p1!=p2|$ans(k p1 p2)"), 3);
        assert!(paramodulate(&k, &goal, ParaOptions::default()).is_empty());
    }

    fn store(cs: &[&Clause]) -> UnitStore {
        let mut u = UnitStore::new();
        for c in cs {
            u.insert(Arc::new((*c).clone()));
        }
        u
    }

    #[test]
    fn ur_with_extensionality_and_pointwise_equation() {
        let mut sig = Signature::new();
        let ext = with_id(pc(&mut sig, "x=y|x n(x,y) !=y n(x,y)"), 16);
        let sat = with_id(pc(&mut sig, "pair(x,k (y y)) z=pair(x,F y) z"), 54);
        let expected = pc(&mut sig, "pair(x,k (y y))=pair(x,F y)");
        let out = ur_resolve(&ext, &store(&[&sat]));
        assert!(out.iter().all(|c| c.is_unit()));
        let hit = out
            .iter()
            .find(|c| crate::clause::is_variant(&c.literals, &expected.literals, false))
            .expect("pointwise equation lifted");
        assert_eq!(hit.justification.to_string(), "[ur,16,54]");
    }

    #[test]
    fn ur_instantiates_negated_goal() {
        let mut sig = Signature::new();
        let ext = with_id(pc(&mut sig, "x=y|x n(x,y) !=y n(x,y)"), 5);
        let goal = with_id(pc(&mut sig, "k(k(id))!=abst abst abst abst"), 8);
        let expected = pc(
            &mut sig,
            "k(k(id)) n(k(k(id)),abst abst abst abst)!=abst abst abst abst n(k(k(id)),abst abst abst abst)",
        );
        let out = ur_resolve(&ext, &store(&[&goal]));
        assert!(out
            .iter()
            .any(|c| crate::clause::is_variant(&c.literals, &expected.literals, false)));
        let forced = ur_resolve_with(&ext, &Arc::new(goal.clone()), &UnitStore::new());
        assert!(forced
            .iter()
            .any(|c| crate::clause::is_variant(&c.literals, &expected.literals, false)));
    }

    #[test]
    fn ur_without_matching_units_is_empty() {
        let mut sig = Signature::new();
        let ext = with_id(pc(&mut sig, "x=y|x n(x,y) !=y n(x,y)"), 5);
        let other = with_id(pc(&mut sig, "p1=p2|p2=p1"), 6);
        assert!(ur_resolve(&ext, &UnitStore::new()).is_empty());
        assert!(ur_resolve(&other, &store(&[&pc(&mut sig, "k x y=x")])).is_empty());
    }

    #[test]
    fn unit_conflict_extracts_answer() {
        let mut sig = Signature::new();
        let refl = with_id(pc(&mut sig, "x=x"), 1);
        let goal = with_id(
            pc(
                &mut sig,
                "b(abst abst k) b(abst abst k)!=b(abst abst k) b(abst abst k) |$ans(abst abst k)",
            ),
            110,
        );
        let hit = unit_conflict(&goal, &store(&[&refl])).unwrap();
        assert_eq!(hit.justification.to_string(), "[binary,110.1,1.1]");
        assert_eq!(hit.literals, pc(&mut sig, "$ans(abst abst k)").literals);
        assert!(hit.is_success());
    }

    #[test]
    fn unit_conflict_to_false_and_miss() {
        let mut sig = Signature::new();
        let a = with_id(pc(&mut sig, "p2=p1"), 82);
        let b = with_id(pc(&mut sig, "p2!=p1"), 17);
        let hit = unit_conflict(&a, &store(&[&b])).unwrap();
        assert!(hit.literals.is_empty());
        assert_eq!(hit.justification.to_string(), "[binary,82.1,17.1]");

        let c = with_id(pc(&mut sig, "p1=p1"), 90);
        let d = with_id(pc(&mut sig, "p1!=p2"), 91);
        assert!(unit_conflict(&c, &store(&[&d])).is_none());
    }

    #[test]
    fn unit_deletion_with_reflexivity() {
        let mut sig = Signature::new();
        let refl = with_id(pc(&mut sig, "x=x"), 1);
        let c = pc(
            &mut sig,
            "abst (abst abst x) y=id|n(id,abst (abst abst x) y)!=n(id,abst (abst abst x) y)",
        );
        let out = unit_delete(&c, &store(&[&refl]));
        assert_eq!(out.literals, pc(&mut sig, "abst (abst abst x) y=id").literals);
        assert_eq!(out.justification.unit_del, vec![1]);

        let untouched = pc(&mut sig, "x=y|x n(x,y) !=y n(x,y)");
        assert_eq!(unit_delete(&untouched, &store(&[&refl])), untouched);
    }

    #[test]
    fn unit_deletion_keeps_answers() {
        let mut sig = Signature::new();
        let refl = with_id(pc(&mut sig, "x=x"), 1);
        let c = pc(&mut sig, "p1!=p1|$ans(k)");
        let out = unit_delete(&c, &store(&[&refl]));
        assert!(out.is_success());
        assert_eq!(out.answers().count(), 1);
    }

    mod props {
        use super::*;
        use crate::testgen::term;
        use proptest::prelude::*;

        fn lit(positive: bool, l: Term, r: Term) -> Literal {
            if positive {
                Literal::eq(l, r)
            } else {
                Literal::neq(l, r)
            }
        }

        fn keyed(cs: impl IntoIterator<Item = Vec<Literal>>) -> Vec<String> {
            let mut v: Vec<String> = cs.into_iter().map(|l| format!("{l:?}")).collect();
            v.sort();
            v
        }

        /// Every replacement of an occurrence of one side of `from` by the
        /// other inside the atom of `into`.
        fn brute_force(from: (&Term, &Term), into: &Literal) -> Vec<Vec<Literal>> {
            let mut out = Vec::new();
            for (l, r) in [(from.0, from.1), (from.1, from.0)] {
                into.atom.visit_positions(&mut |path, sub| {
                    if !path.is_empty() && sub == l {
                        out.push(vec![Literal {
                            positive: into.positive,
                            atom: into.atom.replace_at(path, r.clone()),
                        }]);
                    }
                });
            }
            out
        }

        fn literal() -> impl Strategy<Value = Literal> {
            (any::<bool>(), term(2, 3), term(2, 3)).prop_map(|(p, l, r)| lit(p, l, r))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn ground_paramodulants_match_brute_force(
                eqs in proptest::collection::vec((any::<bool>(), term(2, 0), term(2, 0)), 1..7),
            ) {
                let clauses: Vec<Clause> = eqs
                    .iter()
                    .enumerate()
                    .map(|(i, (p, l, r))| Clause::new(i as u32 + 1, vec![lit(*p, l.clone(), r.clone())], Justification::input()))
                    .collect();
                for from in clauses.iter().filter(|c| c.literals[0].positive) {
                    let (l, r) = from.literals[0].sides().unwrap();
                    for into in &clauses {
                        let got = paramodulate(from, into, ParaOptions::default()).into_iter().map(|c| c.literals);
                        let want = brute_force((l, r), &into.literals[0]);
                        prop_assert_eq!(keyed(got), keyed(want));
                    }
                }
            }

            #[test]
            fn ur_results_are_units(
                nucleus in proptest::collection::vec(literal(), 2..4),
                with_answer in any::<bool>(),
                units in proptest::collection::vec(literal(), 1..6),
            ) {
                let mut lits = nucleus;
                if with_answer {
                    lits.push(Literal::answer(Term::var(0)));
                }
                let n = Clause::new(1, lits, Justification::input());
                let mut store = UnitStore::new();
                for (i, u) in units.into_iter().enumerate() {
                    let c = Clause::new(i as u32 + 2, vec![u], Justification::input()).shift_vars(10);
                    store.insert(Arc::new(c));
                }
                for c in ur_resolve(&n, &store) {
                    prop_assert_eq!(c.core_len(), 1);
                    prop_assert_eq!(c.answers().count(), usize::from(with_answer));
                }
            }

            #[test]
            fn unit_deletion_keeps_answer_literals(
                lits in proptest::collection::vec(literal(), 1..4),
                answer in term(2, 3),
                units in proptest::collection::vec(literal(), 1..6),
            ) {
                let mut all = lits;
                all.push(Literal::answer(answer));
                let c = Clause::new(1, all, Justification::input());
                let mut store = UnitStore::new();
                store.insert(Arc::new(Clause::new(2, vec![Literal::eq(Term::var(0), Term::var(0))], Justification::input())));
                for (i, u) in units.into_iter().enumerate() {
                    store.insert(Arc::new(Clause::new(i as u32 + 3, vec![u], Justification::input()).shift_vars(10)));
                }
                let d = unit_delete(&c, &store);
                prop_assert!(d.literals.len() <= c.literals.len());
                let before: Vec<&Literal> = c.answers().collect();
                let after: Vec<&Literal> = d.answers().collect();
                prop_assert_eq!(before, after);
            }
        }
    }
}
