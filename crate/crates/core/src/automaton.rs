//! Nondeterministic finite automata over colors and inverse colors.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Color, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown state '{0}'")]
    UnknownState(String),
    #[error("symbol {0} is not in the alphabet")]
    UnknownSymbol(String),
}

/// An automaton `(A, Q, Δ)` with optional initial and accepting states.
///
/// States are dense indices; `names` gives each one a printable label.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct WordAutomaton {
    pub names: Vec<String>,
    pub alphabet: BTreeSet<Symbol>,
    pub instructions: BTreeSet<(usize, Symbol, usize)>,
    pub initial: Option<usize>,
    pub accepting: BTreeSet<usize>,
}

impl WordAutomaton {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_states(n: usize) -> Self {
        WordAutomaton {
            names: (0..n).map(|i| format!("q{i}")).collect(),
            ..Self::default()
        }
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.names.len() - 1
    }

    pub fn state(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn state_or_add(&mut self, name: &str) -> usize {
        match self.state(name) {
            Some(i) => i,
            None => self.add_state(name),
        }
    }

    pub fn add_instruction(&mut self, from: usize, symbol: Symbol, to: usize) {
        self.alphabet.insert(symbol.clone());
        self.instructions.insert((from, symbol, to));
    }

    /// Targets of `from` on `symbol`.
    pub fn step<'a>(&'a self, from: usize, symbol: &'a Symbol) -> impl Iterator<Item = usize> + 'a {
        self.instructions
            .range((from, symbol.clone(), 0)..=(from, symbol.clone(), usize::MAX))
            .map(|(_, _, to)| *to)
    }

    /// Instructions leaving `from`.
    pub fn outgoing(&self, from: usize) -> impl Iterator<Item = (&Symbol, usize)> {
        self.instructions
            .iter()
            .filter(move |(q, _, _)| *q == from)
            .map(|(_, s, to)| (s, *to))
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let Some(init) = self.initial else {
            return false;
        };
        let mut current: BTreeSet<usize> = [init].into();
        for sym in word {
            current = current.iter().flat_map(|&q| self.step(q, sym)).collect();
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|q| self.accepting.contains(q))
    }

    /// Every accepted word of length at most `max_len`, shortest first.
    pub fn words_up_to(&self, max_len: usize) -> BTreeSet<Vec<Symbol>> {
        let mut out = BTreeSet::new();
        let Some(init) = self.initial else {
            return out;
        };
        let mut frontier: BTreeMap<Vec<Symbol>, BTreeSet<usize>> = BTreeMap::new();
        frontier.insert(Vec::new(), [init].into());
        for len in 0..=max_len {
            let mut next = BTreeMap::new();
            for (word, states) in &frontier {
                if states.iter().any(|q| self.accepting.contains(q)) {
                    out.insert(word.clone());
                }
                if len == max_len {
                    continue;
                }
                for sym in &self.alphabet {
                    let targets: BTreeSet<usize> =
                        states.iter().flat_map(|&q| self.step(q, sym)).collect();
                    if !targets.is_empty() {
                        let mut w = word.clone();
                        w.push(sym.clone());
                        next.insert(w, targets);
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// Restricts to states reachable from the initial state and co-reachable
    /// from an accepting one, renumbering densely.
    pub fn trim(&self) -> WordAutomaton {
        let Some(init) = self.initial else {
            return WordAutomaton::new();
        };
        let mut forward = BTreeSet::from([init]);
        let mut queue = VecDeque::from([init]);
        while let Some(q) = queue.pop_front() {
            for (_, to) in self.outgoing(q) {
                if forward.insert(to) {
                    queue.push_back(to);
                }
            }
        }
        let mut backward: BTreeSet<usize> = self.accepting.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for (from, _, to) in &self.instructions {
                if backward.contains(to) && backward.insert(*from) {
                    changed = true;
                }
            }
        }
        let keep: Vec<usize> = (0..self.state_count())
            .filter(|q| *q == init || (forward.contains(q) && backward.contains(q)))
            .collect();
        let index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, q)| (*q, i)).collect();
        let mut out = WordAutomaton {
            names: keep.iter().map(|q| self.names[*q].clone()).collect(),
            alphabet: self.alphabet.clone(),
            initial: Some(index[&init]),
            ..WordAutomaton::default()
        };
        for (from, sym, to) in &self.instructions {
            if let (Some(&f), Some(&t)) = (index.get(from), index.get(to)) {
                out.instructions.insert((f, sym.clone(), t));
            }
        }
        out.accepting = self
            .accepting
            .iter()
            .filter_map(|q| index.get(q).copied())
            .collect();
        out
    }

    /// Parses instruction lines `q ; symbol ; q'` plus `initial q` and
    /// `accepting q …` declarations. Symbols are colors, inverse colors
    /// being written with a trailing `-` or `⁻`.
    pub fn parse(text: &str) -> Result<Self, AutomatonError> {
        let mut aut = WordAutomaton::new();
        let mut initial: Option<String> = None;
        let mut accepting: Vec<String> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| AutomatonError::Parse { line: i + 1, message };
            if let Some(rest) = line.strip_prefix("initial") {
                let name = rest.trim_start_matches(':').trim();
                if name.is_empty() {
                    return Err(parse_err("missing initial state".into()));
                }
                aut.state_or_add(name);
                initial = Some(name.to_string());
            } else if let Some(rest) = line.strip_prefix("accepting") {
                for name in rest.trim_start_matches(':').split_whitespace() {
                    aut.state_or_add(name);
                    accepting.push(name.to_string());
                }
            } else if let Some(rest) = line.strip_prefix("states") {
                for name in rest.trim_start_matches(':').split_whitespace() {
                    aut.state_or_add(name);
                }
            } else {
                let fields: Vec<&str> = line.split(';').map(str::trim).collect();
                if fields.len() != 3 || fields.iter().any(|f| f.is_empty()) {
                    return Err(parse_err("expected 'q ; symbol ; q''".into()));
                }
                let sym: Symbol = fields[1].parse().map_err(parse_err)?;
                let from = aut.state_or_add(fields[0]);
                let to = aut.state_or_add(fields[2]);
                aut.add_instruction(from, sym, to);
            }
        }
        aut.initial = initial.map(|n| aut.state(&n).expect("declared above"));
        aut.accepting = accepting
            .iter()
            .map(|n| aut.state(n).expect("declared above"))
            .collect();
        Ok(aut)
    }

    pub fn colors(&self) -> BTreeSet<Color> {
        self.alphabet.iter().map(|s| s.color().clone()).collect()
    }
}

impl fmt::Display for WordAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states {}", self.names.join(" "))?;
        if let Some(i) = self.initial {
            writeln!(f, "initial {}", self.names[i])?;
        }
        if !self.accepting.is_empty() {
            let acc: Vec<&str> = self.accepting.iter().map(|q| self.names[*q].as_str()).collect();
            writeln!(f, "accepting {}", acc.join(" "))?;
        }
        for (from, sym, to) in &self.instructions {
            writeln!(f, "{} ; {} ; {}", self.names[*from], sym, self.names[*to])?;
        }
        Ok(())
    }
}
