//! Candidate retrieval for matching. Retrieval is a filter: callers still
//! run the matcher on each candidate.

use std::collections::{HashMap, HashSet};

use crate::term::{Symbol, Term};

/// Symbols on the leftmost branch of `t`, and whether it ends in a variable.
pub fn left_path(t: &Term) -> (Vec<Symbol>, bool) {
    let mut path = Vec::new();
    let mut cur = t;
    loop {
        match cur {
            Term::Var(_) => return (path, true),
            Term::App(s, args) => {
                path.push(*s);
                match args.first() {
                    Some(first) => cur = first,
                    None => return (path, false),
                }
            }
        }
    }
}

/// Patterns stored under caller-chosen keys in a discrimination tree over
/// their preorder symbol strings, every variable read as one wildcard.
/// Retrieval finds possible generalizations of a query term.
#[derive(Clone, Debug)]
pub struct DiscTree {
    nodes: Vec<Node>,
}

#[derive(Clone, Debug, Default)]
struct Node {
    /// `None` is the wildcard.
    children: HashMap<Option<Symbol>, u32>,
    keys: Vec<usize>,
}

impl Default for DiscTree {
    fn default() -> Self {
        DiscTree {
            nodes: vec![Node::default()],
        }
    }
}

/// Preorder symbols of `t` with, for each, the index just past its subterm.
fn flatten(t: &Term, out: &mut Vec<(Option<Symbol>, usize)>) {
    let at = out.len();
    match t {
        Term::Var(_) => out.push((None, at + 1)),
        Term::App(f, args) => {
            out.push((Some(*f), 0));
            for a in args.iter() {
                flatten(a, out);
            }
            out[at].1 = out.len();
        }
    }
}

impl DiscTree {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, pattern: &Term, key: usize) {
        let mut flat = Vec::new();
        flatten(pattern, &mut flat);
        let mut node = 0usize;
        for (sym, _) in flat {
            node = match self.nodes[node].children.get(&sym) {
                Some(&n) => n as usize,
                None => {
                    let n = self.nodes.len();
                    self.nodes.push(Node::default());
                    self.nodes[node].children.insert(sym, n as u32);
                    n
                }
            };
        }
        self.nodes[node].keys.push(key);
    }

    /// Keys of patterns that may match `t`, in no particular order.
    pub fn generalizations(&self, t: &Term, mut f: impl FnMut(usize)) {
        let mut flat = Vec::new();
        flatten(t, &mut flat);
        self.walk(0, &flat, 0, &mut f);
    }

    fn walk(&self, node: usize, flat: &[(Option<Symbol>, usize)], pos: usize, f: &mut impl FnMut(usize)) {
        let n = &self.nodes[node];
        if pos == flat.len() {
            n.keys.iter().for_each(|&k| f(k));
            return;
        }
        if let Some(&c) = n.children.get(&None) {
            self.walk(c as usize, flat, flat[pos].1, f);
        }
        if let (Some(sym), _) = flat[pos] {
            if let Some(&c) = n.children.get(&Some(sym)) {
                self.walk(c as usize, flat, pos + 1, f);
            }
        }
    }
}

/// Keys stored under the leftmost branches of every subterm of their
/// terms, retrieved as possible holders of an instance of a pattern. A
/// pattern whose branch ends in a constant only matches terms with exactly
/// that branch; one ending in a variable matches any extension of it.
#[derive(Clone, Debug, Default)]
pub struct SubtermIndex {
    exact: HashMap<Vec<Symbol>, Vec<u32>>,
    prefix: HashMap<Vec<Symbol>, Vec<u32>>,
}

impl SubtermIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert<'a>(&mut self, terms: impl IntoIterator<Item = &'a Term>, key: u32) {
        let mut exact = HashSet::new();
        let mut prefix = HashSet::new();
        for t in terms {
            t.visit_positions(&mut |_, sub| {
                let (path, open) = left_path(sub);
                for j in 1..=path.len() {
                    prefix.insert(path[..j].to_vec());
                }
                if !open && !path.is_empty() {
                    exact.insert(path);
                }
            });
        }
        for p in exact {
            self.exact.entry(p).or_default().push(key);
        }
        for p in prefix {
            self.prefix.entry(p).or_default().push(key);
        }
    }

    /// Keys whose terms may contain an instance of `pattern`, in insertion
    /// order. Every key qualifies when `pattern` is a variable.
    pub fn holders(&self, pattern: &Term) -> Option<&[u32]> {
        let (path, open) = left_path(pattern);
        if path.is_empty() {
            return None;
        }
        let map = if open { &self.prefix } else { &self.exact };
        Some(map.get(&path).map_or(&[], Vec::as_slice))
    }
}
