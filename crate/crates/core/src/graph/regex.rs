//! Regular expressions over colors and inverse colors.
//!
//! Syntax: a color is a letter followed by digits (`a`, `b2`) or any name in
//! angle brackets (`<edge>`); a trailing `-` or `⁻` inverts the preceding
//! atom. Alternation is `|` or `∪`, juxtaposition concatenates, postfix `*`,
//! `+` and `?` repeat, `ε` is the empty word and `∅` the empty language.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::automaton::WordAutomaton;

use super::{Color, GraphError, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regex {
    Empty,
    Epsilon,
    Sym(Symbol),
    Concat(Vec<Regex>),
    Alt(Vec<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
    Opt(Box<Regex>),
}

impl Regex {
    pub fn sym(s: Symbol) -> Self {
        Regex::Sym(s)
    }

    pub fn fwd(name: &str) -> Self {
        Regex::Sym(Symbol::fwd(name))
    }

    pub fn inv(name: &str) -> Self {
        Regex::Sym(Symbol::inv(name))
    }

    pub fn star(r: Regex) -> Self {
        Regex::Star(Box::new(r))
    }

    pub fn plus(r: Regex) -> Self {
        Regex::Plus(Box::new(r))
    }

    pub fn concat(parts: Vec<Regex>) -> Self {
        match parts.len() {
            0 => Regex::Epsilon,
            1 => parts.into_iter().next().expect("one part"),
            _ => Regex::Concat(parts),
        }
    }

    pub fn alt(parts: Vec<Regex>) -> Self {
        match parts.len() {
            0 => Regex::Empty,
            1 => parts.into_iter().next().expect("one part"),
            _ => Regex::Alt(parts),
        }
    }

    /// The expression for the reversed, inverted language.
    pub fn inverse(&self) -> Regex {
        match self {
            Regex::Empty | Regex::Epsilon => self.clone(),
            Regex::Sym(s) => Regex::Sym(s.inverse()),
            Regex::Concat(xs) => Regex::Concat(xs.iter().rev().map(Regex::inverse).collect()),
            Regex::Alt(xs) => Regex::Alt(xs.iter().map(Regex::inverse).collect()),
            Regex::Star(x) => Regex::star(x.inverse()),
            Regex::Plus(x) => Regex::plus(x.inverse()),
            Regex::Opt(x) => Regex::Opt(Box::new(x.inverse())),
        }
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Regex::Empty | Regex::Epsilon => {}
            Regex::Sym(s) => {
                out.insert(s.clone());
            }
            Regex::Concat(xs) | Regex::Alt(xs) => xs.iter().for_each(|x| x.collect_symbols(out)),
            Regex::Star(x) | Regex::Plus(x) | Regex::Opt(x) => x.collect_symbols(out),
        }
    }

    /// Thompson construction followed by ε-removal and trimming.
    pub fn compile(&self) -> WordAutomaton {
        let mut nfa = Thompson::default();
        let (start, end) = nfa.build(self);
        nfa.remove_epsilons(start, end).trim()
    }

    fn precedence(&self) -> u8 {
        match self {
            Regex::Alt(_) => 0,
            Regex::Concat(_) => 1,
            _ => 2,
        }
    }
}

fn write_symbol(f: &mut fmt::Formatter<'_>, s: &Symbol) -> fmt::Result {
    let c = s.color();
    if c.is_simple() {
        write!(f, "{c}")?;
    } else {
        write!(f, "<{c}>")?;
    }
    if s.is_inverse() {
        f.write_str("⁻")?;
    }
    Ok(())
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, r: &Regex, min: u8| -> fmt::Result {
            if r.precedence() < min {
                write!(f, "({r})")
            } else {
                write!(f, "{r}")
            }
        };
        match self {
            Regex::Empty => f.write_str("∅"),
            Regex::Epsilon => f.write_str("ε"),
            Regex::Sym(s) => write_symbol(f, s),
            Regex::Concat(xs) => xs.iter().try_for_each(|x| wrap(f, x, 2)),
            Regex::Alt(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ∪ ")?;
                    }
                    wrap(f, x, 1)?;
                }
                Ok(())
            }
            Regex::Star(x) | Regex::Plus(x) | Regex::Opt(x) => {
                let op = match self {
                    Regex::Star(_) => '*',
                    Regex::Plus(_) => '+',
                    _ => '?',
                };
                match &**x {
                    Regex::Sym(s) if s.is_inverse() => {
                        f.write_str("(")?;
                        write_symbol(f, s)?;
                        write!(f, "){op}")
                    }
                    Regex::Sym(_) | Regex::Epsilon | Regex::Empty => write!(f, "{x}{op}"),
                    _ => write!(f, "({x}){op}"),
                }
            }
        }
    }
}

impl FromStr for Regex {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            chars: s.chars().collect(),
            pos: 0,
        };
        let r = p.alt()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error(format!("unexpected '{}'", p.chars[p.pos])));
        }
        Ok(r)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: String) -> GraphError {
        GraphError::Regex {
            position: self.pos,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn alt(&mut self) -> Result<Regex, GraphError> {
        let mut parts = vec![self.concat()?];
        while matches!(self.peek(), Some('|' | '∪')) {
            self.pos += 1;
            parts.push(self.concat()?);
        }
        Ok(Regex::alt(parts))
    }

    fn concat(&mut self) -> Result<Regex, GraphError> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if matches!(c, '|' | '∪' | ')') {
                break;
            }
            parts.push(self.postfix()?);
        }
        Ok(Regex::concat(parts))
    }

    fn postfix(&mut self) -> Result<Regex, GraphError> {
        let mut r = self.atom()?;
        loop {
            // postfix operators bind without intervening whitespace
            match self.chars.get(self.pos) {
                Some('*') => r = Regex::star(r),
                Some('+') => r = Regex::plus(r),
                Some('?') => r = Regex::Opt(Box::new(r)),
                Some('-' | '⁻') => r = r.inverse(),
                _ => break,
            }
            self.pos += 1;
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex, GraphError> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of expression".into()));
        };
        match c {
            '(' => {
                self.pos += 1;
                let r = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'".into()));
                }
                self.pos += 1;
                Ok(r)
            }
            'ε' => {
                self.pos += 1;
                Ok(Regex::Epsilon)
            }
            '∅' => {
                self.pos += 1;
                Ok(Regex::Empty)
            }
            '<' => {
                let start = self.pos + 1;
                let Some(len) = self.chars[start..].iter().position(|&c| c == '>') else {
                    return Err(self.error("unterminated '<'".into()));
                };
                let name: String = self.chars[start..start + len].iter().collect();
                if name.trim().is_empty() {
                    return Err(self.error("empty color name".into()));
                }
                self.pos = start + len + 1;
                Ok(Regex::Sym(Symbol::Fwd(Color(name))))
            }
            c if c.is_alphabetic() => {
                let mut name = String::from(c);
                self.pos += 1;
                while let Some(d) = self.chars.get(self.pos).filter(|d| d.is_ascii_digit()) {
                    name.push(*d);
                    self.pos += 1;
                }
                Ok(Regex::Sym(Symbol::Fwd(Color(name))))
            }
            other => Err(self.error(format!("unexpected '{other}'"))),
        }
    }
}

/// An ε-NFA under construction.
#[derive(Default)]
struct Thompson {
    eps: Vec<Vec<usize>>,
    moves: Vec<Vec<(Symbol, usize)>>,
}

impl Thompson {
    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.moves.push(Vec::new());
        self.eps.len() - 1
    }

    fn build(&mut self, r: &Regex) -> (usize, usize) {
        let s = self.state();
        let e = self.state();
        match r {
            Regex::Empty => {}
            Regex::Epsilon => self.eps[s].push(e),
            Regex::Sym(sym) => self.moves[s].push((sym.clone(), e)),
            Regex::Concat(xs) => {
                let mut prev = s;
                for x in xs {
                    let (a, b) = self.build(x);
                    self.eps[prev].push(a);
                    prev = b;
                }
                self.eps[prev].push(e);
            }
            Regex::Alt(xs) => {
                for x in xs {
                    let (a, b) = self.build(x);
                    self.eps[s].push(a);
                    self.eps[b].push(e);
                }
            }
            Regex::Star(x) | Regex::Plus(x) | Regex::Opt(x) => {
                let (a, b) = self.build(x);
                self.eps[s].push(a);
                self.eps[b].push(e);
                if !matches!(r, Regex::Plus(_)) {
                    self.eps[s].push(e);
                }
                if !matches!(r, Regex::Opt(_)) {
                    self.eps[b].push(a);
                }
            }
        }
        (s, e)
    }

    fn closure(&self, q: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([q]);
        let mut queue = VecDeque::from([q]);
        while let Some(p) = queue.pop_front() {
            for &t in &self.eps[p] {
                if seen.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    fn remove_epsilons(&self, start: usize, end: usize) -> WordAutomaton {
        let mut aut = WordAutomaton::with_states(self.eps.len());
        aut.initial = Some(start);
        for q in 0..self.eps.len() {
            let cl = self.closure(q);
            if cl.contains(&end) {
                aut.accepting.insert(q);
            }
            for p in cl {
                for (sym, t) in &self.moves[p] {
                    aut.add_instruction(q, sym.clone(), *t);
                }
            }
        }
        aut
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Vec<Symbol> {
        s.split_whitespace().map(|t| t.parse().unwrap()).collect()
    }

    #[test]
    fn parse_and_print() {
        let r: Regex = "(b-)*aa*b* | bb*".parse().unwrap();
        assert_eq!(r.to_string(), "(b⁻)*aa*b* ∪ bb*");
        assert_eq!(r.to_string().parse::<Regex>().unwrap(), r);
        let r: Regex = "<edge>⁻ a12".parse().unwrap();
        assert_eq!(r, Regex::concat(vec![Regex::inv("edge"), Regex::fwd("a12")]));
        assert!("(a".parse::<Regex>().is_err());
        assert!("a)".parse::<Regex>().is_err());
        assert!("*".parse::<Regex>().is_err());
    }

    #[test]
    fn group_inverse_reverses() {
        let r: Regex = "(ab)-".parse().unwrap();
        assert_eq!(r, Regex::concat(vec![Regex::inv("b"), Regex::inv("a")]));
    }

    #[test]
    fn compiled_language() {
        let aut = "(b⁻)*aa*b* ∪ bb*".parse::<Regex>().unwrap().compile();
        for w in ["a", "b", "b⁻ a", "b⁻ b⁻ a a b", "a b b", "b b"] {
            assert!(aut.accepts(&word(w)), "{w}");
        }
        for w in ["", "b⁻", "a b⁻", "b a", "b⁻ b"] {
            assert!(!aut.accepts(&word(w)), "{w}");
        }
        let eps = "ε".parse::<Regex>().unwrap().compile();
        assert!(eps.accepts(&[]));
        let none = "∅".parse::<Regex>().unwrap().compile();
        assert!(!none.accepts(&[]));
        let opt = "a?b+".parse::<Regex>().unwrap().compile();
        assert!(opt.accepts(&word("b")) && opt.accepts(&word("a b b")));
        assert!(!opt.accepts(&word("a")));
    }
}
