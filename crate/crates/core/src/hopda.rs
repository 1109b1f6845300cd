//! Higher-order pushdown stores and systems.
//!
//! A 0-pds is a stack symbol and a (k+1)-pds a finite sequence of k-pds's.
//! Systems act on proper stores only: an operation that would leave an
//! empty sequence somewhere is inapplicable, so the transition using it is
//! disabled rather than producing an improper store.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::fgh::{beth, FghError};
use crate::graph::{explore, Color, ColoredGraph, EdgeSource, ExploreBound, Explored, VertexKey};

/// Name of the color carried by unlabelled transitions.
pub const EPSILON: &str = "ε";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopdaError {
    #[error("cannot attach a level-{inner} pds to a level-{outer} pds")]
    LevelMismatch { outer: usize, inner: usize },
    #[error("operation level {k} out of range 1..={level}")]
    LevelOutOfRange { k: usize, level: usize },
    #[error("store {0} is not proper")]
    Improper(String),
    #[error("pop {k} on {store} would leave an empty sequence")]
    WouldBeImproper { k: usize, store: String },
    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("configuration {0} has both ε and non-ε outgoing edges")]
    MixedEpsilon(String),
    #[error("exploration bound of {0} vertices exceeded")]
    BoundExceeded(usize),
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error(transparent)]
    Fgh(#[from] FghError),
}

/// A pushdown store of some level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pds {
    Symbol(String),
    /// A level-`level` sequence of level-`level − 1` stores.
    Seq { level: usize, items: Vec<Pds> },
}

impl Pds {
    pub fn symbol(s: &str) -> Self {
        Pds::Symbol(s.to_string())
    }

    pub fn empty(level: usize) -> Self {
        assert!(level >= 1, "sequences have level at least 1");
        Pds::Seq {
            level,
            items: Vec::new(),
        }
    }

    /// A level-1 store holding `symbols` bottom to top.
    pub fn stack(symbols: &[&str]) -> Self {
        Pds::Seq {
            level: 1,
            items: symbols.iter().map(|s| Pds::symbol(s)).collect(),
        }
    }

    /// A sequence of equal-level stores.
    pub fn seq(items: Vec<Pds>) -> Self {
        let level = items.first().map_or(1, |p| p.level() + 1);
        Pds::Seq { level, items }
    }

    pub fn level(&self) -> usize {
        match self {
            Pds::Symbol(_) => 0,
            Pds::Seq { level, .. } => *level,
        }
    }

    pub fn is_proper(&self) -> bool {
        match self {
            Pds::Symbol(_) => true,
            Pds::Seq { items, .. } => !items.is_empty() && items.iter().all(Pds::is_proper),
        }
    }

    /// The nested singleton tower `ε^n:(ε^{n−1}:(…(ε¹:s)…))`.
    pub fn initial(level: usize, symbol: &str) -> Self {
        let mut p = Pds::symbol(symbol);
        for l in 1..=level {
            p = Pds::Seq {
                level: l,
                items: vec![p],
            };
        }
        p
    }

    /// `outer:inner`.
    pub fn attach(&self, inner: &Pds) -> Result<Pds, HopdaError> {
        let (n, m) = (self.level(), inner.level());
        if n <= m {
            return Err(HopdaError::LevelMismatch { outer: n, inner: m });
        }
        if n == m + 1 {
            let Pds::Seq { level, items } = self else {
                unreachable!("level ≥ 1 is a sequence")
            };
            let mut items = items.clone();
            items.push(inner.clone());
            return Ok(Pds::Seq {
                level: *level,
                items,
            });
        }
        self.attach(&Pds::Seq {
            level: m + 1,
            items: vec![inner.clone()],
        })
    }

    /// The topmost `k`-pds.
    pub fn topmost(&self, k: usize) -> Option<&Pds> {
        if self.level() == k {
            return Some(self);
        }
        match self {
            Pds::Seq { items, .. } => items.last()?.topmost(k),
            Pds::Symbol(_) => None,
        }
    }

    fn topmost_mut(&mut self, k: usize) -> Option<&mut Pds> {
        if self.level() == k {
            return Some(self);
        }
        match self {
            Pds::Seq { items, .. } => items.last_mut()?.topmost_mut(k),
            Pds::Symbol(_) => None,
        }
    }

    pub fn top_symbol(&self) -> Option<&str> {
        match self.topmost(0)? {
            Pds::Symbol(s) => Some(s),
            Pds::Seq { .. } => None,
        }
    }

    fn check_op(&self, k: usize) -> Result<(), HopdaError> {
        if k == 0 || k > self.level() {
            return Err(HopdaError::LevelOutOfRange {
                k,
                level: self.level(),
            });
        }
        if !self.is_proper() {
            return Err(HopdaError::Improper(self.to_string()));
        }
        Ok(())
    }

    /// `pop^k`: removes the topmost `(k−1)`-pds.
    pub fn pop(&self, k: usize) -> Result<Pds, HopdaError> {
        self.check_op(k)?;
        let mut out = self.clone();
        let Some(Pds::Seq { items, .. }) = out.topmost_mut(k) else {
            unreachable!("proper stores have every topmost level")
        };
        items.pop();
        if items.is_empty() {
            return Err(HopdaError::WouldBeImproper {
                k,
                store: self.to_string(),
            });
        }
        Ok(out)
    }

    /// `push^k(a)`: appends to the topmost `k`-pds a copy of its topmost
    /// `(k−1)`-pds whose top symbol is replaced by `a`.
    pub fn push(&self, k: usize, a: &str) -> Result<Pds, HopdaError> {
        self.check_op(k)?;
        let mut out = self.clone();
        let Some(Pds::Seq { items, .. }) = out.topmost_mut(k) else {
            unreachable!("proper stores have every topmost level")
        };
        let mut copy = items.last().expect("proper").clone();
        match copy.topmost_mut(0) {
            Some(top) => *top = Pds::symbol(a),
            None => unreachable!("proper stores have a top symbol"),
        }
        items.push(copy);
        Ok(out)
    }

    /// Number of stack symbols in the store.
    pub fn symbol_count(&self) -> usize {
        match self {
            Pds::Symbol(_) => 1,
            Pds::Seq { items, .. } => items.iter().map(Pds::symbol_count).sum(),
        }
    }
}

impl fmt::Display for Pds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pds::Symbol(s) => f.write_str(s),
            Pds::Seq { items, .. } => {
                f.write_str("[")?;
                for (i, p) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl Serialize for Pds {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Pds {
    type Err = HopdaError;

    /// Bracketed syntax such as `[[s],[s,a]]`; `[]` is an empty level-1
    /// store.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let p = parse_pds(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(HopdaError::Parse {
                line: 1,
                message: format!("trailing input after position {pos}"),
            });
        }
        Ok(p)
    }
}

fn parse_pds(chars: &[char], pos: &mut usize) -> Result<Pds, HopdaError> {
    let err = |message: String| HopdaError::Parse { line: 1, message };
    if chars.get(*pos) == Some(&'[') {
        *pos += 1;
        let mut items = Vec::new();
        if chars.get(*pos) == Some(&']') {
            *pos += 1;
            return Ok(Pds::empty(1));
        }
        loop {
            items.push(parse_pds(chars, pos)?);
            match chars.get(*pos) {
                Some(',') => *pos += 1,
                Some(']') => {
                    *pos += 1;
                    break;
                }
                _ => return Err(err(format!("expected ',' or ']' at {}", *pos))),
            }
        }
        let level = items[0].level() + 1;
        if items.iter().any(|p| p.level() + 1 != level) {
            return Err(err("mixed levels inside one sequence".into()));
        }
        Ok(Pds::Seq { level, items })
    } else {
        let start = *pos;
        while *pos < chars.len() && !matches!(chars[*pos], '[' | ']' | ',') {
            *pos += 1;
        }
        if start == *pos {
            return Err(err(format!("expected a symbol at {start}")));
        }
        Ok(Pds::Symbol(chars[start..*pos].iter().collect()))
    }
}

/// A level-n store operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StackOp {
    Pop(usize),
    Push(usize, String),
}

impl StackOp {
    pub fn apply(&self, store: &Pds) -> Result<Pds, HopdaError> {
        match self {
            StackOp::Pop(k) => store.pop(*k),
            StackOp::Push(k, a) => store.push(*k, a),
        }
    }

    fn level(&self) -> usize {
        match self {
            StackOp::Pop(k) | StackOp::Push(k, _) => *k,
        }
    }
}

impl fmt::Display for StackOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StackOp::Pop(k) => write!(f, "pop {k}"),
            StackOp::Push(k, a) => write!(f, "push {k} {a}"),
        }
    }
}

impl Serialize for StackOp {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `(q, s, q′, o)` with its label, `None` standing for ε.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Transition {
    pub from: String,
    pub top: String,
    pub to: String,
    pub op: StackOp,
    pub label: Option<String>,
}

impl Transition {
    pub fn new(from: &str, top: &str, to: &str, op: StackOp, label: Option<&str>) -> Self {
        Transition {
            from: from.into(),
            top: top.into(),
            to: to.into(),
            op,
            label: label.map(Into::into),
        }
    }

    pub fn color(&self) -> Color {
        Color::new(self.label.as_deref().unwrap_or(EPSILON))
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ; {} ; {} ; {} ; {}",
            self.from,
            self.top,
            self.to,
            self.op,
            self.label.as_deref().unwrap_or(EPSILON)
        )
    }
}

/// A pushdown system `(A, S, s_I, Q, q_I, Δ, λ)` of level `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PushdownSystem {
    pub level: usize,
    pub input: BTreeSet<String>,
    pub stack: BTreeSet<String>,
    pub initial_symbol: String,
    pub states: BTreeSet<String>,
    pub initial_state: String,
    pub transitions: Vec<Transition>,
}

impl PushdownSystem {
    pub fn new(
        level: usize,
        input: &[&str],
        stack: &[&str],
        initial_symbol: &str,
        states: &[&str],
        initial_state: &str,
        transitions: Vec<Transition>,
    ) -> Result<Self, HopdaError> {
        let sys = PushdownSystem {
            level,
            input: input.iter().map(|s| s.to_string()).collect(),
            stack: stack.iter().map(|s| s.to_string()).collect(),
            initial_symbol: initial_symbol.into(),
            states: states.iter().map(|s| s.to_string()).collect(),
            initial_state: initial_state.into(),
            transitions,
        };
        sys.validate()?;
        Ok(sys)
    }

    fn validate(&self) -> Result<(), HopdaError> {
        if self.level == 0 {
            return Err(HopdaError::ZeroLevel);
        }
        let unknown = |kind, name: &str| HopdaError::Unknown {
            kind,
            name: name.to_string(),
        };
        if !self.stack.contains(&self.initial_symbol) {
            return Err(unknown("stack symbol", &self.initial_symbol));
        }
        if !self.states.contains(&self.initial_state) {
            return Err(unknown("state", &self.initial_state));
        }
        for t in &self.transitions {
            for q in [&t.from, &t.to] {
                if !self.states.contains(q) {
                    return Err(unknown("state", q));
                }
            }
            if !self.stack.contains(&t.top) {
                return Err(unknown("stack symbol", &t.top));
            }
            let k = t.op.level();
            if k == 0 || k > self.level {
                return Err(HopdaError::LevelOutOfRange {
                    k,
                    level: self.level,
                });
            }
            if let StackOp::Push(_, a) = &t.op {
                if !self.stack.contains(a) {
                    return Err(unknown("stack symbol", a));
                }
            }
            if let Some(l) = &t.label {
                if !self.input.contains(l) {
                    return Err(unknown("input letter", l));
                }
            }
        }
        Ok(())
    }

    pub fn initial_configuration(&self) -> PdsConfiguration {
        PdsConfiguration {
            state: self.initial_state.clone(),
            store: Pds::initial(self.level, &self.initial_symbol),
        }
    }

    /// Parses the header lines `level`, `input`, `stack`, `initial-symbol`,
    /// `states`, `initial-state` followed by transition lines
    /// `q ; s ; q′ ; pop k | push k a ; label-or-ε`.
    pub fn parse(text: &str) -> Result<Self, HopdaError> {
        let mut header: BTreeMap<&str, (usize, Vec<String>)> = BTreeMap::new();
        let mut transitions = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| HopdaError::Parse { line: i + 1, message };
            if line.contains(';') {
                let f: Vec<&str> = line.split(';').map(str::trim).collect();
                if f.len() != 5 {
                    return Err(err("expected 'q ; s ; q' ; op ; label'".into()));
                }
                let op_words: Vec<&str> = f[3].split_whitespace().collect();
                let level = |w: &str| {
                    w.parse::<usize>()
                        .map_err(|_| err(format!("bad operation level '{w}'")))
                };
                let op = match op_words.as_slice() {
                    ["pop", k] => StackOp::Pop(level(k)?),
                    ["push", k, a] => StackOp::Push(level(k)?, a.to_string()),
                    _ => return Err(err(format!("bad operation '{}'", f[3]))),
                };
                let label = match f[4] {
                    "ε" | "eps" | "" => None,
                    l => Some(l),
                };
                transitions.push(Transition::new(f[0], f[1], f[2], op, label));
                continue;
            }
            let mut words = line.split_whitespace();
            let key = words.next().expect("non-empty line").trim_end_matches(':');
            let known = [
                "level",
                "input",
                "stack",
                "initial-symbol",
                "states",
                "initial-state",
            ];
            let Some(k) = known.iter().find(|k| **k == key) else {
                return Err(err(format!("unknown header '{key}'")));
            };
            header.insert(k, (i + 1, words.map(String::from).collect()));
        }
        let field = |key: &str| -> Result<&Vec<String>, HopdaError> {
            header.get(key).map(|(_, v)| v).ok_or(HopdaError::Parse {
                line: 0,
                message: format!("missing header '{key}'"),
            })
        };
        let single = |key: &str| -> Result<String, HopdaError> {
            let v = field(key)?;
            match v.as_slice() {
                [one] => Ok(one.clone()),
                _ => Err(HopdaError::Parse {
                    line: header[key].0,
                    message: format!("'{key}' takes one value"),
                }),
            }
        };
        let level: usize = single("level")?.parse().map_err(|_| HopdaError::Parse {
            line: header["level"].0,
            message: "level must be a natural".into(),
        })?;
        fn strs(v: &[String]) -> Vec<&str> {
            v.iter().map(String::as_str).collect()
        }
        let input = field("input").map(|v| strs(v)).unwrap_or_default();
        let stack = strs(field("stack")?);
        let states = strs(field("states")?);
        PushdownSystem::new(
            level,
            &input,
            &stack,
            &single("initial-symbol")?,
            &states,
            &single("initial-state")?,
            transitions,
        )
    }
}

impl fmt::Display for PushdownSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(" ");
        writeln!(f, "level {}", self.level)?;
        writeln!(f, "input {}", join(&self.input))?;
        writeln!(f, "stack {}", join(&self.stack))?;
        writeln!(f, "initial-symbol {}", self.initial_symbol)?;
        writeln!(f, "states {}", join(&self.states))?;
        writeln!(f, "initial-state {}", self.initial_state)?;
        for t in &self.transitions {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

/// A configuration `(q, α)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PdsConfiguration {
    pub state: String,
    pub store: Pds,
}

impl fmt::Display for PdsConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.state, self.store)
    }
}

/// Every `(t, w′)` such that transition `t` moves `w` to `w′`.
pub fn one_step_successors<'s>(
    sys: &'s PushdownSystem,
    w: &PdsConfiguration,
) -> Vec<(&'s Transition, PdsConfiguration)> {
    let Some(top) = w.store.top_symbol() else {
        return Vec::new();
    };
    sys.transitions
        .iter()
        .filter(|t| t.from == w.state && t.top == top)
        .filter_map(|t| {
            let store = t.op.apply(&w.store).ok()?;
            Some((
                t,
                PdsConfiguration {
                    state: t.to.clone(),
                    store,
                },
            ))
        })
        .collect()
}

/// The configuration graph as a lazy edge source.
#[derive(Debug, Clone, Copy)]
pub struct ConfigurationSpace<'s>(pub &'s PushdownSystem);

impl EdgeSource for ConfigurationSpace<'_> {
    type Vertex = PdsConfiguration;

    fn out_edges(&self, v: &PdsConfiguration) -> Vec<(Color, PdsConfiguration)> {
        one_step_successors(self.0, v)
            .into_iter()
            .map(|(t, w)| (t.color(), w))
            .collect()
    }

    fn in_edges(&self, _v: &PdsConfiguration) -> Option<Vec<(Color, PdsConfiguration)>> {
        None
    }
}

/// The configurations reachable from the initial one, explored within
/// `bound`.
pub fn configuration_graph(sys: &PushdownSystem, bound: ExploreBound) -> Explored<PdsConfiguration> {
    explore(&ConfigurationSpace(sys), &sys.initial_configuration(), bound)
}

/// An ε-contracted graph with its exploration status.
#[derive(Debug, Clone)]
pub struct Contracted<V: VertexKey> {
    pub graph: ColoredGraph<V>,
    pub root: V,
    /// ε-closure of every contracted vertex, the vertex included.
    pub closures: BTreeMap<V, BTreeSet<V>>,
    pub complete: bool,
}

/// ε-contraction of the graph reachable from `root`.
///
/// Vertices are `root` and the targets of non-ε edges; there is a `c` edge
/// from `v` to `w` when an ε-path leads from `v` to some `u` with a `c` edge
/// to `w`. Every vertex met must have all-ε or all-non-ε outgoing edges.
pub fn epsilon_contraction<G: EdgeSource>(
    g: &G,
    root: &G::Vertex,
    bound: ExploreBound,
) -> Result<Contracted<G::Vertex>, HopdaError> {
    let eps = Color::new(EPSILON);
    let mut out = Contracted {
        graph: ColoredGraph::new(),
        root: root.clone(),
        closures: BTreeMap::new(),
        complete: true,
    };
    out.graph.add_vertex(root.clone());
    let mut queue = VecDeque::from([(root.clone(), 0usize)]);
    let mut seen = HashSet::from([root.clone()]);
    while let Some((v, depth)) = queue.pop_front() {
        let mut closure = BTreeSet::from([v.clone()]);
        let mut pending = VecDeque::from([v.clone()]);
        let mut visible = Vec::new();
        while let Some(u) = pending.pop_front() {
            let edges = g.out_edges(&u);
            let n_eps = edges.iter().filter(|(c, _)| *c == eps).count();
            if n_eps > 0 && n_eps < edges.len() {
                return Err(HopdaError::MixedEpsilon(u.to_string()));
            }
            for (c, w) in edges {
                if c == eps {
                    if closure.len() >= bound.max_vertices {
                        out.complete = false;
                        continue;
                    }
                    if closure.insert(w.clone()) {
                        pending.push_back(w);
                    }
                } else {
                    visible.push((c, w));
                }
            }
        }
        out.closures.insert(v.clone(), closure);
        for (c, w) in visible {
            if !seen.contains(&w) {
                if depth >= bound.max_path || seen.len() >= bound.max_vertices {
                    out.complete = false;
                    continue;
                }
                seen.insert(w.clone());
                queue.push_back((w.clone(), depth + 1));
            }
            out.graph.add_edge(v.clone(), c, w);
        }
    }
    Ok(out)
}

pub fn contract_system(
    sys: &PushdownSystem,
    bound: ExploreBound,
) -> Result<Contracted<PdsConfiguration>, HopdaError> {
    epsilon_contraction(&ConfigurationSpace(sys), &sys.initial_configuration(), bound)
}

/// Configurations reachable from the initial one by reading `word`, with
/// ε-moves allowed anywhere, found by direct simulation.
pub fn run_word(
    sys: &PushdownSystem,
    word: &[&str],
    max_configurations: usize,
) -> Result<BTreeSet<PdsConfiguration>, HopdaError> {
    let close = |set: BTreeSet<PdsConfiguration>| -> Result<BTreeSet<PdsConfiguration>, HopdaError> {
        let mut out = set.clone();
        let mut queue: VecDeque<_> = set.into_iter().collect();
        while let Some(w) = queue.pop_front() {
            for (t, next) in one_step_successors(sys, &w) {
                if t.label.is_none() && out.insert(next.clone()) {
                    if out.len() > max_configurations {
                        return Err(HopdaError::BoundExceeded(max_configurations));
                    }
                    queue.push_back(next);
                }
            }
        }
        Ok(out)
    };
    let mut current = close(BTreeSet::from([sys.initial_configuration()]))?;
    for letter in word {
        let mut next = BTreeSet::new();
        for w in &current {
            for (t, v) in one_step_successors(sys, w) {
                if t.label.as_deref() == Some(*letter) {
                    next.insert(v);
                }
            }
        }
        current = close(next)?;
    }
    Ok(current)
}

/// `ℶ_{level−1}((m+1)·c)`.
pub fn pumping_threshold(level: u64, m: u64, c: u64, max_bits: u64) -> Result<BigUint, HopdaError> {
    if level == 0 {
        return Err(HopdaError::ZeroLevel);
    }
    let base = (BigUint::from(m) + 1u32) * BigUint::from(c);
    Ok(beth(level - 1, &base, max_bits)?)
}

/// Every label word of length at most `max_len` leading from the root of a
/// contracted graph to a vertex satisfying `accept`.
pub fn accepted_words<V: VertexKey>(
    contracted: &Contracted<V>,
    max_len: usize,
    mut accept: impl FnMut(&V) -> bool,
) -> BTreeSet<Vec<String>> {
    let mut out = BTreeSet::new();
    let mut frontier: BTreeMap<Vec<String>, BTreeSet<V>> = BTreeMap::new();
    frontier.insert(Vec::new(), BTreeSet::from([contracted.root.clone()]));
    for len in 0..=max_len {
        let mut next: BTreeMap<Vec<String>, BTreeSet<V>> = BTreeMap::new();
        for (word, vs) in &frontier {
            if vs.iter().any(&mut accept) {
                out.insert(word.clone());
            }
            if len == max_len {
                continue;
            }
            for v in vs {
                for (c, w) in contracted.graph.successors(v) {
                    let mut wd = word.clone();
                    wd.push(c.name().to_string());
                    next.entry(wd).or_default().insert(w.clone());
                }
            }
        }
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Pds {
        s.parse().unwrap()
    }

    #[test]
    fn attach_examples() {
        assert_eq!(Pds::empty(1).attach(&Pds::symbol("s")).unwrap(), p("[s]"));
        assert_eq!(p("[s]").attach(&Pds::symbol("a")).unwrap(), p("[s,a]"));
        assert_eq!(Pds::empty(2).attach(&Pds::symbol("s")).unwrap(), p("[[s]]"));
        assert!(matches!(
            p("[s]").attach(&p("[a]")),
            Err(HopdaError::LevelMismatch { outer: 1, inner: 1 })
        ));
    }

    #[test]
    fn pop_examples() {
        assert_eq!(p("[s,a]").pop(1).unwrap(), p("[s]"));
        assert_eq!(p("[[s],[s,a]]").pop(2).unwrap(), p("[[s]]"));
        assert!(matches!(p("[s]").pop(1), Err(HopdaError::WouldBeImproper { .. })));
        assert!(matches!(p("[s]").pop(2), Err(HopdaError::LevelOutOfRange { .. })));
        assert_eq!(p("[[s],[s,a]]").pop(1).unwrap(), p("[[s],[s]]"));
    }

    #[test]
    fn push_examples() {
        assert_eq!(p("[s]").push(1, "a").unwrap(), p("[s,a]"));
        assert_eq!(p("[[s,b]]").push(2, "a").unwrap(), p("[[s,b],[s,a]]"));
        assert_eq!(p("[[s]]").push(2, "s").unwrap(), p("[[s],[s]]"));
        assert_eq!(p("[[[s]],[[s,b]]]").push(1, "c").unwrap(), p("[[[s]],[[s,b,c]]]"));
        assert!(matches!(
            Pds::empty(1).push(1, "a"),
            Err(HopdaError::Improper(_))
        ));
    }

    #[test]
    fn initial_configurations() {
        for (level, expected) in [(1, "[s]"), (2, "[[s]]"), (3, "[[[s]]]")] {
            let sys = PushdownSystem::new(level, &[], &["s"], "s", &["q"], "q", vec![]).unwrap();
            let c = sys.initial_configuration();
            assert_eq!(c.state, "q");
            assert_eq!(c.store, p(expected));
        }
    }

    #[test]
    fn successor_examples() {
        let sys = PushdownSystem::new(1, &["a"], &["s", "a"], "s", &["q"], "q", vec![]).unwrap();
        assert!(one_step_successors(&sys, &sys.initial_configuration()).is_empty());

        let t = Transition::new("q", "s", "q", StackOp::Push(1, "a".into()), Some("a"));
        let sys = PushdownSystem::new(1, &["a"], &["s", "a"], "s", &["q"], "q", vec![t.clone()])
            .unwrap();
        let succ = one_step_successors(&sys, &sys.initial_configuration());
        assert_eq!(succ.len(), 1);
        assert_eq!(*succ[0].0, t);
        assert_eq!(succ[0].1.store, p("[s,a]"));

        let pop = Transition::new("q", "s", "q", StackOp::Pop(1), None);
        let sys = PushdownSystem::new(1, &[], &["s"], "s", &["q"], "q", vec![pop]).unwrap();
        assert!(one_step_successors(&sys, &sys.initial_configuration()).is_empty());
    }

    #[test]
    fn configuration_graph_ray() {
        let sys = PushdownSystem::new(1, &[], &["s"], "s", &["q"], "q", vec![]).unwrap();
        let g = configuration_graph(&sys, ExploreBound::default());
        assert_eq!(g.graph.vertex_count(), 1);
        assert!(g.complete);

        let t = Transition::new("q", "s", "q", StackOp::Push(1, "s".into()), Some("a"));
        let sys = PushdownSystem::new(1, &["a"], &["s"], "s", &["q"], "q", vec![t]).unwrap();
        let g = configuration_graph(&sys, ExploreBound::new(10, 1000));
        assert_eq!(g.graph.vertex_count(), 10);
        assert_eq!(g.graph.edge_count(), 9);
        assert!(!g.complete);
    }

    #[test]
    fn contraction_examples() {
        let mut chain: ColoredGraph<String> = ColoredGraph::new();
        chain.add_edge("v0".into(), Color::new(EPSILON), "v1".into());
        chain.add_edge("v1".into(), Color::new("a"), "v2".into());
        let c = epsilon_contraction(&chain, &"v0".to_string(), ExploreBound::default()).unwrap();
        assert_eq!(c.graph.edge_count(), 1);
        assert!(c.graph.has_edge(&"v0".into(), &Color::new("a"), &"v2".into()));
        assert_eq!(c.graph.vertex_count(), 2);

        let mut plain: ColoredGraph<String> = ColoredGraph::new();
        plain.add_edge("x".into(), Color::new("a"), "y".into());
        plain.add_edge("y".into(), Color::new("b"), "x".into());
        let c = epsilon_contraction(&plain, &"x".to_string(), ExploreBound::default()).unwrap();
        assert_eq!(c.graph, plain);

        chain.add_edge("v1".into(), Color::new(EPSILON), "v3".into());
        assert_eq!(
            epsilon_contraction(&chain, &"v0".to_string(), ExploreBound::default()).unwrap_err(),
            HopdaError::MixedEpsilon("v1".into())
        );
    }

    #[test]
    fn pumping_examples() {
        let t = |l, m, c| pumping_threshold(l, m, c, 1 << 20).unwrap();
        assert_eq!(t(1, 3, 2), BigUint::from(8u32));
        assert_eq!(t(2, 1, 3), BigUint::from(64u32));
        assert_eq!(t(1, 0, 1), BigUint::from(1u32));
        assert_eq!(pumping_threshold(0, 1, 1, 64).unwrap_err(), HopdaError::ZeroLevel);
    }

    #[test]
    fn system_text_round_trip() {
        let text = "level 2\ninput a\nstack s\ninitial-symbol s\nstates q\ninitial-state q\n\
                    q ; s ; q ; push 2 s ; a\nq ; s ; q ; pop 2 ; ε\n";
        let sys = PushdownSystem::parse(text).unwrap();
        assert_eq!(sys.transitions.len(), 2);
        assert_eq!(PushdownSystem::parse(&sys.to_string()).unwrap(), sys);
        assert!(matches!(
            PushdownSystem::parse("level 1\nstack s\ninitial-symbol s\nstates q\ninitial-state q\nq ; s ; q ; push 3 s ; ε"),
            Err(HopdaError::LevelOutOfRange { k: 3, level: 1 })
        ));
        assert!(matches!(
            PushdownSystem::parse("level 1\nstack s\n"),
            Err(HopdaError::Parse { .. })
        ));
    }
}
