//! Reader and writer for the OTTER-dialect input files.
//!
//! ```text
//! set(knuth_bendix).
//! assign(max_weight,40).
//! precedence(abst > eq > pair > a > k).
//! list(sos).
//! 0 [] k x y=x.
//! a(a(k,x),y) = x.          % the same clause in prefix form
//! end_of_list.
//! ```
//!
//! Application is juxtaposition and associates to the left. A name written
//! directly against an opening parenthesis (`k(x)`, `pair(x,y)`) is a plain
//! function call; with whitespace in between (`k (x y)`) the parenthesis
//! groups an application argument. `a(x,y)` is the prefix spelling of
//! `x y`. Identifiers starting with `u`..`z` are variables.

use std::collections::HashMap;
use std::fmt::Write;

use thiserror::Error;

use crate::clause::{Clause, Literal};
use crate::print::Printer;
use crate::proof::render_proof;
use crate::saturation::{Outcome, ProverOptions, RunResult};
use crate::term::{is_variable_name, ArityError, Signature, Symbol, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: {source}")]
    Arity {
        line: usize,
        col: usize,
        #[source]
        source: ArityError,
    },
    #[error("{line}:{col}: unknown directive `{directive}({name})`")]
    UnknownDirective {
        line: usize,
        col: usize,
        directive: String,
        name: String,
    },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::Arity { line, .. }
            | ParseError::UnknownDirective { line, .. } => *line,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Period,
    Bar,
    Eq,
    Neq,
    Gt,
    Minus,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
    /// Whitespace (or start of input) immediately before the token.
    spaced: bool,
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '$'
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    let mut spaced = true;
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            spaced = true;
            continue;
        }
        if c == '%' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            spaced = true;
            continue;
        }
        let tok = if is_word_char(c) {
            let mut w = String::new();
            while let Some(&c) = chars.peek() {
                if !is_word_char(c) {
                    break;
                }
                w.push(bump(&mut chars));
            }
            Tok::Word(w)
        } else {
            bump(&mut chars);
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                '.' => Tok::Period,
                '|' => Tok::Bar,
                '=' => Tok::Eq,
                '>' => Tok::Gt,
                '-' => Tok::Minus,
                '!' if chars.peek() == Some(&'=') => {
                    bump(&mut chars);
                    Tok::Neq
                }
                _ => {
                    return Err(ParseError::Syntax {
                        line: tl,
                        col: tc,
                        msg: format!("unexpected character `{c}`"),
                    })
                }
            }
        };
        out.push(Token {
            tok,
            line: tl,
            col: tc,
            spaced,
        });
        spaced = false;
    }
    Ok(out)
}

/// A parsed input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedInput {
    pub options: ProverOptions,
    pub usable: Vec<Clause>,
    pub sos: Vec<Clause>,
    pub signature: Signature,
    pub source: String,
}

struct Parser<'s> {
    toks: Vec<Token>,
    pos: usize,
    sig: &'s mut Signature,
    vars: HashMap<String, u32>,
    eof: (usize, usize),
}

impl<'s> Parser<'s> {
    fn new(text: &str, sig: &'s mut Signature) -> Result<Self, ParseError> {
        let toks = lex(text)?;
        let lines = text.lines().count().max(1);
        let last = text.lines().last().map_or(0, |l| l.chars().count());
        Ok(Parser {
            toks,
            pos: 0,
            sig,
            vars: HashMap::new(),
            eof: (lines, last + 1),
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, n: usize) -> Option<&Token> {
        self.toks.get(self.pos + n)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.eof, |t| (t.line, t.col))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError::Syntax {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn at(&self, tok: &Tok) -> bool {
        self.peek().is_some_and(|t| &t.tok == tok)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.at(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn word(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Token { tok: Tok::Word(w), .. }) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn intern(&mut self, name: &str, arity: usize, at: (usize, usize)) -> Result<Symbol, ParseError> {
        self.sig.intern(name, arity).map_err(|source| ParseError::Arity {
            line: at.0,
            col: at.1,
            source,
        })
    }

    fn starts_primary(&self) -> bool {
        matches!(
            self.peek(),
            Some(Token {
                tok: Tok::Word(_) | Tok::LParen,
                ..
            })
        )
    }

    /// Juxtaposition of primaries, associating left.
    fn term(&mut self) -> Result<Term, ParseError> {
        if !self.starts_primary() {
            return self.err("expected a term");
        }
        let mut t = self.primary()?;
        while self.starts_primary() {
            let arg = self.primary()?;
            t = Term::ap(t, arg);
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        let at = self.here();
        if self.at(&Tok::LParen) {
            self.pos += 1;
            let t = self.term()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(t);
        }
        let name = self.word("a term")?;
        if name.starts_with('$') {
            return Err(ParseError::Syntax {
                line: at.0,
                col: at.1,
                msg: format!("`{name}` cannot occur inside a term"),
            });
        }
        if name.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError::Syntax {
                line: at.0,
                col: at.1,
                msg: format!("number `{name}` is not a term"),
            });
        }
        let call = self.peek().is_some_and(|t| t.tok == Tok::LParen && !t.spaced);
        if call {
            if is_variable_name(&name) {
                return Err(ParseError::Syntax {
                    line: at.0,
                    col: at.1,
                    msg: format!("variable `{name}` used as a function"),
                });
            }
            self.pos += 1;
            let mut args = vec![self.term()?];
            while self.at(&Tok::Comma) {
                self.pos += 1;
                args.push(self.term()?);
            }
            self.expect(Tok::RParen, "`,` or `)`")?;
            let sym = self.intern(&name, args.len(), at)?;
            return Ok(Term::app(sym, args));
        }
        if is_variable_name(&name) {
            let next = self.vars.len() as u32;
            let v = *self.vars.entry(name).or_insert(next);
            return Ok(Term::var(v));
        }
        let sym = self.intern(&name, 0, at)?;
        Ok(Term::constant(sym))
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let at = self.here();
        let negated = if self.at(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        if let Some(Token { tok: Tok::Word(w), .. }) = self.peek() {
            if w.starts_with('$') {
                let w = w.clone();
                self.pos += 1;
                let lit = match w.as_str() {
                    "$ans" => {
                        self.expect(Tok::LParen, "`(` after `$ans`")?;
                        let t = self.term()?;
                        self.expect(Tok::RParen, "`)`")?;
                        Literal::answer(t)
                    }
                    "$F" => Literal {
                        positive: true,
                        atom: Term::constant(Symbol::FALSE),
                    },
                    _ => {
                        return Err(ParseError::Syntax {
                            line: at.0,
                            col: at.1,
                            msg: format!("unknown predicate `{w}`"),
                        })
                    }
                };
                if negated {
                    return Err(ParseError::Syntax {
                        line: at.0,
                        col: at.1,
                        msg: format!("`{w}` literals are always positive"),
                    });
                }
                return Ok(lit);
            }
        }
        if negated {
            return self.err("only `$` predicates may follow `-`");
        }
        let lhs = self.term()?;
        let positive = if self.at(&Tok::Eq) {
            true
        } else if self.at(&Tok::Neq) {
            false
        } else {
            return self.err("expected `=` or `!=`");
        };
        self.pos += 1;
        let rhs = self.term()?;
        Ok(if positive {
            Literal::eq(lhs, rhs)
        } else {
            Literal::neq(lhs, rhs)
        })
    }

    /// Literals separated by `|`, terminated by `.`; `$F` stands for the
    /// empty clause.
    fn clause(&mut self) -> Result<Clause, ParseError> {
        self.vars.clear();
        // tolerate listing prefixes such as `0 []`
        if let (Some(Token { tok: Tok::Word(w), .. }), Some(Token { tok: Tok::LBracket, .. })) =
            (self.peek(), self.peek_at(1))
        {
            if w.bytes().all(|b| b.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        if self.at(&Tok::LBracket) {
            self.pos += 1;
            self.expect(Tok::RBracket, "`]`")?;
        }
        let mut lits = vec![self.literal()?];
        while self.at(&Tok::Bar) {
            self.pos += 1;
            lits.push(self.literal()?);
        }
        self.expect(Tok::Period, "`|` or `.` after literal")?;
        lits.retain(|l| l.atom.head() != Some(Symbol::FALSE));
        Ok(Clause::input(lits))
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let neg = if self.at(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let w = self.word("an integer")?;
        match w.parse::<i64>() {
            Ok(n) => Ok(if neg { -n } else { n }),
            Err(_) => {
                self.pos -= 1;
                self.err("expected an integer")
            }
        }
    }

    fn input(&mut self) -> Result<(ProverOptions, Vec<Clause>, Vec<Clause>), ParseError> {
        let mut opts = ProverOptions::default();
        let mut usable = Vec::new();
        let mut sos = Vec::new();
        let mut precedence: Option<Vec<(String, (usize, usize))>> = None;
        while self.peek().is_some() {
            let at = self.here();
            let head = self.word("a directive")?;
            self.expect(Tok::LParen, "`(`")?;
            match head.as_str() {
                "set" | "clear" => {
                    let nat = self.here();
                    let name = self.word("a flag name")?;
                    if !opts.set_flag(&name, head == "set") {
                        return Err(ParseError::UnknownDirective {
                            line: nat.0,
                            col: nat.1,
                            directive: head,
                            name,
                        });
                    }
                    self.expect(Tok::RParen, "`)`")?;
                }
                "assign" => {
                    let nat = self.here();
                    let name = self.word("a parameter name")?;
                    self.expect(Tok::Comma, "`,`")?;
                    let vat = self.here();
                    let value = self.integer()?;
                    if value < 0 {
                        return Err(ParseError::Syntax {
                            line: vat.0,
                            col: vat.1,
                            msg: format!("`{name}` must be non-negative"),
                        });
                    }
                    if !opts.assign(&name, value as u64) {
                        return Err(ParseError::UnknownDirective {
                            line: nat.0,
                            col: nat.1,
                            directive: head,
                            name,
                        });
                    }
                    self.expect(Tok::RParen, "`)`")?;
                }
                "precedence" => {
                    let mut names = vec![(self.word("a symbol")?, at)];
                    while self.at(&Tok::Gt) {
                        self.pos += 1;
                        let nat = self.here();
                        names.push((self.word("a symbol")?, nat));
                    }
                    self.expect(Tok::RParen, "`>` or `)`")?;
                    precedence = Some(names);
                }
                "list" => {
                    let nat = self.here();
                    let name = self.word("a list name")?;
                    self.expect(Tok::RParen, "`)`")?;
                    self.expect(Tok::Period, "`.`")?;
                    let target = match name.as_str() {
                        "usable" => &mut usable,
                        "sos" => &mut sos,
                        _ => {
                            return Err(ParseError::UnknownDirective {
                                line: nat.0,
                                col: nat.1,
                                directive: head,
                                name,
                            })
                        }
                    };
                    loop {
                        if let Some(Token { tok: Tok::Word(w), .. }) = self.peek() {
                            if w == "end_of_list" {
                                self.pos += 1;
                                break;
                            }
                        }
                        if self.peek().is_none() {
                            return self.err("missing `end_of_list.`");
                        }
                        target.push(self.clause()?);
                    }
                    self.expect(Tok::Period, "`.` after `end_of_list`")?;
                    continue;
                }
                _ => {
                    return Err(ParseError::UnknownDirective {
                        line: at.0,
                        col: at.1,
                        directive: head,
                        name: String::new(),
                    })
                }
            }
            self.expect(Tok::Period, "`.`")?;
        }
        if let Some(names) = precedence {
            for (n, (line, col)) in &names {
                if self.sig.lookup(n).is_none() {
                    return Err(ParseError::Syntax {
                        line: *line,
                        col: *col,
                        msg: format!("precedence names unknown symbol `{n}`"),
                    });
                }
            }
            opts.precedence = Some(names.into_iter().map(|(n, _)| n).collect());
        }
        Ok((opts, usable, sos))
    }
}

/// Parses a whole input file.
pub fn parse(text: &str) -> Result<ParsedInput, ParseError> {
    parse_named(text, "<input>")
}

pub fn parse_named(text: &str, source: &str) -> Result<ParsedInput, ParseError> {
    let mut sig = Signature::new();
    let (options, usable, sos) = Parser::new(text, &mut sig)?.input()?;
    Ok(ParsedInput {
        options,
        usable,
        sos,
        signature: sig,
        source: source.to_string(),
    })
}

/// Parses one period-terminated clause into `sig`.
pub fn parse_clause(sig: &mut Signature, text: &str) -> Result<Clause, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let c = p.clause()?;
    if p.peek().is_some() {
        return p.err("trailing input after clause");
    }
    Ok(c)
}

/// Parses a single term. Variables are numbered by first occurrence.
pub fn parse_term(sig: &mut Signature, text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let t = p.term()?;
    if p.peek().is_some() {
        return p.err("trailing input after term");
    }
    Ok(t)
}

#[cfg(test)]
pub(crate) fn parse_clause_for_test(sig: &mut Signature, text: &str) -> Clause {
    let text = if text.trim_end().ends_with('.') {
        text.to_string()
    } else {
        format!("{text}.")
    };
    parse_clause(sig, &text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn render_clause(c: &Clause, sig: &Signature, bird: bool) -> String {
    Printer::new(sig, bird).clause(c)
}

/// The proof block, or why the search stopped, followed by the statistics
/// footer without timing.
pub fn render_result(input: &ParsedInput, result: &RunResult) -> String {
    let printer = Printer::new(&input.signature, input.options.bird_print);
    let mut s = match &result.outcome {
        Outcome::ProofFound { success, proof } => render_proof(success, proof, &printer),
        Outcome::SosExhausted => "Search stopped because sos empty.\n".to_string(),
        Outcome::LimitReached(l) => format!("Search stopped by {l}.\n"),
    };
    s.push('\n');
    s.push_str(&result.stats.counts());
    s
}

/// Writes `input` back in the input syntax.
pub fn render_input(input: &ParsedInput) -> String {
    let opts = &input.options;
    let mut s = String::new();
    for (name, on) in opts.flags() {
        if on {
            let _ = writeln!(s, "set({name}).");
        }
    }
    for (name, value) in opts.assignments() {
        let _ = writeln!(s, "assign({name},{value}).");
    }
    if let Some(p) = &opts.precedence {
        let _ = writeln!(s, "precedence({}).", p.join(" > "));
    }
    let printer = Printer::new(&input.signature, opts.bird_print);
    for (name, list) in [("usable", &input.usable), ("sos", &input.sos)] {
        if list.is_empty() {
            continue;
        }
        let _ = writeln!(s, "\nlist({name}).");
        for c in list.iter() {
            let _ = writeln!(s, "{}.", printer.clause(c));
        }
        let _ = writeln!(s, "end_of_list.");
    }
    s
}
