//! Symbols, signatures, first-order terms and substitutions.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Interned symbol. The first four ids are reserved; see the associated
/// constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(u32);

impl Symbol {
    /// Binary application, `a(x,y)` printed as `x y`.
    pub const APP: Symbol = Symbol(0);
    /// The equality predicate.
    pub const EQ: Symbol = Symbol(1);
    /// Answer predicate `$ans/1`.
    pub const ANSWER: Symbol = Symbol(2);
    /// Empty-clause marker `$F/0`.
    pub const FALSE: Symbol = Symbol(3);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Application,
    Equality,
    Function,
    Constant,
    /// Fresh witnesses introduced outside the input (the oracle's `c1, c2, ...`).
    Skolem,
    Answer,
    False,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolInfo {
    pub name: String,
    pub arity: usize,
    pub kind: SymbolKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("symbol `{name}` used with arity {found}, previously with arity {expected}")]
pub struct ArityError {
    pub name: String,
    pub expected: usize,
    pub found: usize,
}

/// Name/arity table for one problem. Each name has exactly one arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    symbols: Vec<SymbolInfo>,
    index: HashMap<String, Symbol>,
}

impl Default for Signature {
    fn default() -> Self {
        Self::new()
    }
}

impl Signature {
    pub fn new() -> Self {
        let mut sig = Signature {
            symbols: Vec::new(),
            index: HashMap::new(),
        };
        sig.push("a", 2, SymbolKind::Application);
        sig.push("=", 2, SymbolKind::Equality);
        sig.push("$ans", 1, SymbolKind::Answer);
        sig.push("$F", 0, SymbolKind::False);
        sig
    }

    fn push(&mut self, name: &str, arity: usize, kind: SymbolKind) -> Symbol {
        let sym = Symbol(self.symbols.len() as u32);
        self.symbols.push(SymbolInfo {
            name: name.to_string(),
            arity,
            kind,
        });
        self.index.insert(name.to_string(), sym);
        sym
    }

    /// Looks up `name`, creating it with `arity` if absent.
    pub fn intern(&mut self, name: &str, arity: usize) -> Result<Symbol, ArityError> {
        if let Some(&sym) = self.index.get(name) {
            let expected = self.symbols[sym.index()].arity;
            if expected != arity {
                return Err(ArityError {
                    name: name.to_string(),
                    expected,
                    found: arity,
                });
            }
            return Ok(sym);
        }
        let kind = if arity == 0 {
            SymbolKind::Constant
        } else {
            SymbolKind::Function
        };
        Ok(self.push(name, arity, kind))
    }

    /// Creates a constant whose name is not yet taken, trying `prefix1`,
    /// `prefix2`, ... in order.
    pub fn fresh_constant(&mut self, prefix: &str) -> Symbol {
        let mut i = 1;
        loop {
            let name = format!("{prefix}{i}");
            if !self.index.contains_key(&name) {
                return self.push(&name, 0, SymbolKind::Skolem);
            }
            i += 1;
        }
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied()
    }

    pub fn info(&self, sym: Symbol) -> &SymbolInfo {
        &self.symbols[sym.index()]
    }

    pub fn name(&self, sym: Symbol) -> &str {
        &self.symbols[sym.index()].name
    }

    pub fn arity(&self, sym: Symbol) -> usize {
        self.symbols[sym.index()].arity
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// All symbols in creation order (reserved ones included).
    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.symbols.len() as u32).map(Symbol)
    }

    /// Symbols that can occur inside terms, i.e. everything except the
    /// predicate-level reserved symbols.
    pub fn term_symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.symbols()
            .filter(|&s| s != Symbol::EQ && s != Symbol::ANSWER && s != Symbol::FALSE)
    }
}

/// Term arguments; shared so that substitution and replacement can reuse
/// untouched subterms.
pub type Args = Arc<[Term]>;

/// A variable or a symbol applied to exactly `arity` arguments.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(u32),
    App(Symbol, Args),
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "?{v}"),
            Term::App(s, args) if args.is_empty() => write!(f, "#{}", s.0),
            Term::App(s, args) => {
                write!(f, "#{}(", s.0)?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a:?}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Term {
    pub fn var(v: u32) -> Term {
        Term::Var(v)
    }

    pub fn constant(sym: Symbol) -> Term {
        Term::App(sym, Arc::from(Vec::new()))
    }

    pub fn app(sym: Symbol, args: Vec<Term>) -> Term {
        Term::App(sym, Arc::from(args))
    }

    /// `f x`, i.e. `a(f,x)`.
    pub fn ap(f: Term, x: Term) -> Term {
        Term::App(Symbol::APP, Arc::from(vec![f, x]))
    }

    /// Left-associated application `head a1 a2 ... an`.
    pub fn ap_all(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(head, Term::ap)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn head(&self) -> Option<Symbol> {
        match self {
            Term::Var(_) => None,
            Term::App(s, _) => Some(*s),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    /// Number of symbol and variable occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn occurs(&self, v: u32) -> bool {
        match self {
            Term::Var(w) => *w == v,
            Term::App(_, args) => args.iter().any(|a| a.occurs(v)),
        }
    }

    pub fn max_var(&self) -> Option<u32> {
        match self {
            Term::Var(v) => Some(*v),
            Term::App(_, args) => args.iter().filter_map(Term::max_var).max(),
        }
    }

    /// Appends variables in first-occurrence order, without duplicates.
    pub fn collect_vars(&self, out: &mut Vec<u32>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn contains_symbol(&self, sym: Symbol) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(s, args) => *s == sym || args.iter().any(|a| a.contains_symbol(sym)),
        }
    }

    /// Subterm at a 1-based argument path.
    pub fn at(&self, path: &[usize]) -> Option<&Term> {
        let mut t = self;
        for &i in path {
            t = t.args().get(i.checked_sub(1)?)?;
        }
        Some(t)
    }

    /// Copy of `self` with the subterm at `path` replaced. Panics if the path
    /// does not address a subterm.
    pub fn replace_at(&self, path: &[usize], new: Term) -> Term {
        match path.split_first() {
            None => new,
            Some((&i, rest)) => match self {
                Term::Var(_) => panic!("path runs through a variable"),
                Term::App(s, args) => {
                    let mut v: Vec<Term> = args.to_vec();
                    v[i - 1] = v[i - 1].replace_at(rest, new);
                    Term::app(*s, v)
                }
            },
        }
    }

    /// Visits non-variable subterms in pre-order (leftmost-outermost
    /// first), passing the 1-based path relative to `self`.
    pub fn visit_positions<F: FnMut(&[usize], &Term)>(&self, f: &mut F) {
        fn go<F: FnMut(&[usize], &Term)>(t: &Term, path: &mut Vec<usize>, f: &mut F) {
            if let Term::App(_, args) = t {
                f(path, t);
                for (i, a) in args.iter().enumerate() {
                    path.push(i + 1);
                    go(a, path, f);
                    path.pop();
                }
            }
        }
        go(self, &mut Vec::new(), f)
    }

    /// Renames every variable through `f`.
    pub fn map_vars(&self, f: &mut impl FnMut(u32) -> u32) -> Term {
        match self {
            Term::Var(v) => Term::Var(f(*v)),
            Term::App(_, args) if args.is_empty() => self.clone(),
            Term::App(s, args) => Term::app(*s, args.iter().map(|a| a.map_vars(f)).collect()),
        }
    }

    pub fn shift_vars(&self, offset: u32) -> Term {
        if offset == 0 {
            return self.clone();
        }
        self.map_vars(&mut |v| v + offset)
    }

    /// Left spine of an application: `f x y` yields `(f, [x, y])`.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut head = self;
        let mut args = Vec::new();
        while let Term::App(Symbol::APP, a) = head {
            args.push(&a[1]);
            head = &a[0];
        }
        args.reverse();
        (head, args)
    }
}

/// Finite map from variables to terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    bindings: Vec<Option<Term>>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, Term)>) -> Self {
        let mut s = Self::new();
        for (v, t) in pairs {
            s.bind(v, t);
        }
        s
    }

    pub fn bind(&mut self, v: u32, t: Term) {
        let i = v as usize;
        if self.bindings.len() <= i {
            self.bindings.resize(i + 1, None);
        }
        self.bindings[i] = Some(t);
    }

    pub fn unbind(&mut self, v: u32) {
        if let Some(slot) = self.bindings.get_mut(v as usize) {
            *slot = None;
        }
        while matches!(self.bindings.last(), Some(None)) {
            self.bindings.pop();
        }
    }

    pub fn get(&self, v: u32) -> Option<&Term> {
        self.bindings.get(v as usize).and_then(Option::as_ref)
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.iter().all(Option::is_none)
    }

    pub fn len(&self) -> usize {
        self.bindings.iter().filter(|b| b.is_some()).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Term)> {
        self.bindings
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.as_ref().map(|t| (i as u32, t)))
    }

    /// Simultaneous replacement of bound variables.
    pub fn apply(&self, t: &Term) -> Term {
        self.apply_changed(t).unwrap_or_else(|| t.clone())
    }

    fn apply_changed(&self, t: &Term) -> Option<Term> {
        match t {
            Term::Var(v) => self.get(*v).cloned(),
            Term::App(s, args) => {
                let mut out: Option<Vec<Term>> = None;
                for (i, a) in args.iter().enumerate() {
                    if let Some(new) = self.apply_changed(a) {
                        out.get_or_insert_with(|| args[..i].to_vec()).push(new);
                    } else if let Some(v) = out.as_mut() {
                        v.push(a.clone());
                    }
                }
                out.map(|v| Term::app(*s, v))
            }
        }
    }

    /// Restriction to variables satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(u32) -> bool) -> Substitution {
        Substitution::from_pairs(self.iter().filter(|(v, _)| keep(*v)).map(|(v, t)| (v, t.clone())))
    }

    /// `self` followed by `other`: applying the result equals applying
    /// `self` then `other`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (v, t) in self.iter() {
            out.bind(v, other.apply(t));
        }
        for (v, t) in other.iter() {
            if self.get(v).is_none() {
                out.bind(v, t.clone());
            }
        }
        out
    }
}

/// OTTER-style variable names: `x y z u v w` then `v6, v7, ...`.
pub fn variable_name(v: u32) -> String {
    const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
    match NAMES.get(v as usize) {
        Some(n) => n.to_string(),
        None => format!("v{v}"),
    }
}

/// Identifiers beginning with `u`..`z` are variables.
pub fn is_variable_name(name: &str) -> bool {
    matches!(name.as_bytes().first(), Some(b'u'..=b'z'))
}
