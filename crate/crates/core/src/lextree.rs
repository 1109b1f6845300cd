//! Lexicographic trees presenting the ordinals below `ω^k`.
//!
//! The vertices of the arity-`k` tree are the words `a₁^{i₁} … a_k^{i_k}`,
//! identified with their exponent tuples. A vertex whose last non-zero
//! block is `a_p` has an `a_j`-child for every `j ≥ p`, so the tree is
//! deterministic and every cone is an interval of the lexicographic order.
//! The order is presented by a regular language of walks in the inverse
//! closure, and on top of it this module builds cofinal-sequence systems:
//! the cone-chain construction, its Bachmann refinement and the pullback of
//! the standard sequences.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Mutex;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::automaton::WordAutomaton;
use crate::funseq::{FunSeqError, FunSeqSystem, OrderPresentation};
use crate::graph::{regular_path_query, Color, ColoredGraph, EdgeSource, ExploreBound, Regex};
use crate::ordinal::{ElementKind, Ordinal, OrdinalError};
use crate::types::{pair_type, switch_relation, TypeError, VertexPairType};

/// Base entries inspected when looking for the recurring types of a tail.
pub const TYPE_WINDOW: usize = 48;
/// Vertices visited while enumerating a cone chain.
pub const CHAIN_BOUND: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexError {
    #[error("malformed vertex '{0}'")]
    Malformed(String),
    #[error("arity must be between 1 and 26, got {0}")]
    BadArity(usize),
    #[error("{0} is not a limit vertex")]
    NotALimit(String),
    #[error("{value} is not below the cap {cap}")]
    CapExceeded { value: String, cap: String },
    #[error("cone chain for {0} not found within the exploration bound")]
    ExplorationBound(String),
    #[error("automaton unsupported: {0}")]
    UnsupportedAutomaton(String),
    #[error("automaton and lexicographic order disagree on ({u}, {v})")]
    PresentationMismatch { u: String, v: String },
    #[error("no periodic tail of pair types found for {0}")]
    TypeTail(String),
    #[error("no anchor cone found for {0}")]
    NoAnchor(String),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
    #[error(transparent)]
    Type(#[from] TypeError),
}

impl From<LexError> for FunSeqError {
    fn from(e: LexError) -> Self {
        FunSeqError::Other(e.to_string())
    }
}

/// An exponent tuple `(i₁, …, i_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LexVertex(pub Vec<u64>);

impl LexVertex {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    /// 1-based index of the last non-zero block, 0 for the root.
    pub fn last_block(&self) -> usize {
        self.0.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1)
    }

    pub fn depth(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_root(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

fn color_letter(j: usize) -> char {
    (b'a' + j as u8) as char
}

impl fmt::Display for LexVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_root() {
            return f.write_str("ε");
        }
        let mut first = true;
        for (j, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}^{e}", color_letter(j))?;
        }
        Ok(())
    }
}

impl Serialize for LexVertex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The arity-`k` lexicographic tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LexTree {
    k: usize,
}

impl LexTree {
    pub fn new(k: usize) -> Result<Self, LexError> {
        if !(1..=26).contains(&k) {
            return Err(LexError::BadArity(k));
        }
        Ok(LexTree { k })
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    /// Color `a_j` (1-based).
    pub fn color(&self, j: usize) -> Color {
        Color::new(color_letter(j - 1).to_string())
    }

    pub fn root(&self) -> LexVertex {
        LexVertex(vec![0; self.k])
    }

    pub fn vertex(&self, coords: &[u64]) -> Result<LexVertex, LexError> {
        let v = LexVertex(coords.to_vec());
        self.check(&v)?;
        Ok(v)
    }

    pub fn check(&self, v: &LexVertex) -> Result<(), LexError> {
        if v.0.len() != self.k {
            return Err(LexError::Malformed(format!(
                "{:?} has {} blocks, expected {}",
                v.0,
                v.0.len(),
                self.k
            )));
        }
        Ok(())
    }

    /// Parses `a^2 b^3`-style words; blocks must appear in color order, a
    /// bare letter means exponent 1 and `ε` is the root.
    pub fn parse_vertex(&self, text: &str) -> Result<LexVertex, LexError> {
        let bad = || LexError::Malformed(text.to_string());
        let mut coords = vec![0u64; self.k];
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "ε" {
            return Ok(LexVertex(coords));
        }
        let mut last: Option<usize> = None;
        for block in trimmed.split_whitespace() {
            let mut chars = block.chars();
            let letter = chars.next().ok_or_else(bad)?;
            if !letter.is_ascii_lowercase() {
                return Err(bad());
            }
            let j = (letter as u8 - b'a') as usize;
            if j >= self.k || last.is_some_and(|l| l >= j) {
                return Err(bad());
            }
            let rest: String = chars.collect();
            let e = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .and_then(|r| r.parse::<u64>().ok())
                    .ok_or_else(bad)?
            };
            coords[j] = e;
            last = Some(j);
        }
        Ok(LexVertex(coords))
    }

    /// `(j, child)` for every `a_j`-child, in color order.
    pub fn children(&self, v: &LexVertex) -> Vec<(usize, LexVertex)> {
        let p = v.last_block().max(1);
        (p..=self.k)
            .map(|j| {
                let mut c = v.clone();
                c.0[j - 1] += 1;
                (j, c)
            })
            .collect()
    }

    pub fn parent(&self, v: &LexVertex) -> Option<(usize, LexVertex)> {
        let p = v.last_block();
        if p == 0 {
            return None;
        }
        let mut u = v.clone();
        u.0[p - 1] -= 1;
        Some((p, u))
    }

    /// The path from the root down to `v`, both included.
    pub fn ancestors(&self, v: &LexVertex) -> Vec<LexVertex> {
        let mut out = vec![v.clone()];
        let mut current = v.clone();
        while let Some((_, p)) = self.parent(&current) {
            out.push(p.clone());
            current = p;
        }
        out.reverse();
        out
    }

    /// Whether `v` lies in the cone under `z`.
    pub fn cone_contains(&self, z: &LexVertex, v: &LexVertex) -> bool {
        let p = z.last_block();
        if p == 0 {
            return true;
        }
        z.0[..p - 1] == v.0[..p - 1] && v.0[p - 1] >= z.0[p - 1]
    }

    /// The least vertex above the cone under `z`, `None` when the cone is
    /// unbounded. The cone is the interval `[z, sup)`.
    pub fn cone_sup(&self, z: &LexVertex) -> Option<LexVertex> {
        let p = z.last_block();
        if p <= 1 {
            return None;
        }
        let mut s = vec![0u64; self.k];
        s[..p - 1].copy_from_slice(&z.0[..p - 1]);
        s[p - 2] += 1;
        Some(LexVertex(s))
    }

    /// Whether the cone under `z` holds a subset cofinal in the limit `v0`.
    pub fn cone_is_cofinal(&self, z: &LexVertex, v0: &LexVertex) -> bool {
        z < v0 && self.cone_sup(z).is_none_or(|s| &s >= v0)
    }

    pub fn lex_compare(&self, v1: &LexVertex, v2: &LexVertex) -> Result<Ordering, LexError> {
        self.check(v1)?;
        self.check(v2)?;
        Ok(v1.cmp(v2))
    }

    /// `f(v) = ω^{k−1}·i₁ + … + ω⁰·i_k`.
    pub fn vertex_to_ordinal(&self, v: &LexVertex) -> Result<Ordinal, LexError> {
        self.check(v)?;
        let terms: Vec<(u64, u64)> = v
            .0
            .iter()
            .enumerate()
            .map(|(j, &c)| ((self.k - 1 - j) as u64, c))
            .collect();
        Ok(Ordinal::from_nat_terms(&terms))
    }

    pub fn ordinal_to_vertex(&self, o: &Ordinal) -> Result<LexVertex, LexError> {
        let mut coords = vec![0u64; self.k];
        for t in o.terms() {
            let e = t
                .exponent
                .as_nat()
                .filter(|&e| (e as usize) < self.k)
                .ok_or_else(|| LexError::CapExceeded {
                    value: o.to_string(),
                    cap: Ordinal::omega_power(Ordinal::nat(self.k as u64)).to_string(),
                })?;
            coords[self.k - 1 - e as usize] = t.coefficient;
        }
        Ok(LexVertex(coords))
    }

    pub fn is_limit_vertex(&self, v: &LexVertex) -> Result<bool, LexError> {
        self.check(v)?;
        Ok(!v.is_root() && v.0[self.k - 1] == 0)
    }

    pub fn classify(&self, v: &LexVertex) -> ElementKind<LexVertex> {
        if v.is_root() {
            ElementKind::Zero
        } else if v.0[self.k - 1] > 0 {
            let mut p = v.clone();
            p.0[self.k - 1] -= 1;
            ElementKind::Successor(p)
        } else {
            ElementKind::Limit
        }
    }

    /// `⋃_{m=1..k} (a_k⁻)*…(a_{m+1}⁻)* a_m a_m* a_{m+1}* … a_k*`.
    pub fn order_language(&self) -> Regex {
        let name = |j: usize| color_letter(j - 1).to_string();
        let alts = (1..=self.k)
            .map(|m| {
                let mut parts: Vec<Regex> = ((m + 1)..=self.k)
                    .rev()
                    .map(|j| Regex::star(Regex::inv(&name(j))))
                    .collect();
                parts.push(Regex::fwd(&name(m)));
                parts.extend((m..=self.k).map(|j| Regex::star(Regex::fwd(&name(j)))));
                Regex::concat(parts)
            })
            .collect();
        Regex::alt(alts)
    }

    /// Every vertex with all exponents at most `n`, in increasing order.
    pub fn box_vertices(&self, n: u64) -> Vec<LexVertex> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.k {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u64>| {
                    (0..=n).map(move |e| {
                        let mut p = prefix.clone();
                        p.push(e);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(LexVertex).collect()
    }

    /// The finite subtree on the vertices with all exponents at most `n`.
    /// It is closed under parents, so order-language walks between its
    /// vertices stay inside it.
    pub fn box_graph(&self, n: u64) -> ColoredGraph<LexVertex> {
        let mut g = ColoredGraph::with_colors((1..=self.k).map(|j| self.color(j)));
        for v in self.box_vertices(n) {
            if let Some((j, p)) = self.parent(&v) {
                g.add_edge(p, self.color(j), v.clone());
            } else {
                g.add_vertex(v);
            }
        }
        g
    }

    /// The subtree spanned by the root paths of `vs`.
    pub fn spine(&self, vs: &[&LexVertex]) -> ColoredGraph<LexVertex> {
        let mut g = ColoredGraph::with_colors((1..=self.k).map(|j| self.color(j)));
        for v in vs {
            g.add_vertex((*v).clone());
            let mut current = (*v).clone();
            while let Some((j, p)) = self.parent(&current) {
                g.add_edge(p.clone(), self.color(j), current);
                current = p;
            }
        }
        g
    }
}

impl EdgeSource for LexTree {
    type Vertex = LexVertex;

    fn out_edges(&self, v: &LexVertex) -> Vec<(Color, LexVertex)> {
        self.children(v)
            .into_iter()
            .map(|(j, c)| (self.color(j), c))
            .collect()
    }

    fn in_edges(&self, v: &LexVertex) -> Option<Vec<(Color, LexVertex)>> {
        Some(
            self.parent(v)
                .map(|(j, p)| (self.color(j), p))
                .into_iter()
                .collect(),
        )
    }

    fn has_vertex(&self, v: &LexVertex) -> bool {
        v.0.len() == self.k
    }
}

/// An automaton for the order language with its initial state.
///
/// Every word through the trimmed automaton must climb before it descends
/// (`(D⁻)*D*`), which keeps all relevant walks inside the root paths of
/// their endpoints; switching is then decided on those finite spines.
#[derive(Debug, Clone)]
pub struct OrderAutomaton {
    aut: WordAutomaton,
    initial: usize,
}

impl OrderAutomaton {
    pub fn new(aut: &WordAutomaton) -> Result<Self, LexError> {
        let aut = aut.trim();
        let initial = aut
            .initial
            .ok_or_else(|| LexError::UnsupportedAutomaton("no initial state".into()))?;
        // states entered by a forward symbol must not leave by an inverse one
        let after_forward: BTreeSet<usize> = aut
            .instructions
            .iter()
            .filter(|(_, s, _)| !s.is_inverse())
            .map(|(_, _, t)| *t)
            .collect();
        let mut descending = after_forward.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for (from, _, to) in &aut.instructions {
                if descending.contains(from) && descending.insert(*to) {
                    changed = true;
                }
            }
        }
        if let Some((q, s, _)) = aut
            .instructions
            .iter()
            .find(|(q, s, _)| s.is_inverse() && descending.contains(q))
        {
            return Err(LexError::UnsupportedAutomaton(format!(
                "state {} reads {} after descending",
                aut.names[*q], s
            )));
        }
        Ok(OrderAutomaton { aut, initial })
    }

    pub fn for_tree(tree: &LexTree) -> Self {
        OrderAutomaton::new(&tree.order_language().compile())
            .expect("the order language climbs before it descends")
    }

    pub fn automaton(&self) -> &WordAutomaton {
        &self.aut
    }

    /// `u R_c v` as decided by the automaton.
    pub fn less(&self, tree: &LexTree, u: &LexVertex, v: &LexVertex) -> Result<bool, LexError> {
        let spine = tree.spine(&[u, v]);
        let sets = switch_relation(&self.aut, &spine, u, self.initial, usize::MAX)?;
        Ok(self.aut.accepting.iter().any(|&q| sets[q].contains(v)))
    }

    /// `u R_c v`, cross-checked against the lexicographic order.
    pub fn checked_less(
        &self,
        tree: &LexTree,
        u: &LexVertex,
        v: &LexVertex,
    ) -> Result<bool, LexError> {
        let by_automaton = self.less(tree, u, v)?;
        if by_automaton != (u < v) {
            return Err(LexError::PresentationMismatch {
                u: u.to_string(),
                v: v.to_string(),
            });
        }
        Ok(by_automaton)
    }

    /// Type of `(w, u)` for an ancestor `u` of `w`.
    pub fn type_below(
        &self,
        tree: &LexTree,
        w: &LexVertex,
        u: &LexVertex,
    ) -> Result<VertexPairType, LexError> {
        let spine = tree.spine(&[w, u]);
        Ok(pair_type(&self.aut, &spine, w, u, usize::MAX)?)
    }
}

/// Disagreements between the order language and the lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub k: usize,
    pub box_size: u64,
    pub pairs_checked: usize,
    pub mismatches: Vec<(LexVertex, LexVertex)>,
}

/// Runs the order-language query from every vertex of the box of exponents
/// `≤ n` and compares the reached set with the lexicographic order.
pub fn check_presentation(tree: &LexTree, n: u64) -> Result<PresentationReport, LexError> {
    let graph = tree.box_graph(n);
    let aut = tree.order_language().compile();
    let vertices = tree.box_vertices(n);
    let bound = ExploreBound::new(usize::MAX, usize::MAX);
    let mut report = PresentationReport {
        k: tree.arity(),
        box_size: n,
        pairs_checked: 0,
        mismatches: Vec::new(),
    };
    for u in &vertices {
        let reached = regular_path_query(&graph, u, &aut, bound)
            .map_err(|e| LexError::Type(e.into()))?;
        for v in &vertices {
            report.pairs_checked += 1;
            if reached.hits.contains_key(v) != (u < v) {
                report.mismatches.push((u.clone(), v.clone()));
            }
        }
    }
    Ok(report)
}

/// A cofinal-sequence relation on a lexicographic tree: the first entries
/// of the sequence attached to a limit vertex.
pub trait CofinalRelation {
    fn tree(&self) -> &LexTree;

    fn entries(&self, v0: &LexVertex, count: usize) -> Result<Vec<LexVertex>, LexError>;
}

fn require_limit(tree: &LexTree, v0: &LexVertex) -> Result<(), LexError> {
    if !tree.is_limit_vertex(v0)? {
        return Err(LexError::NotALimit(v0.to_string()));
    }
    Ok(())
}

/// Greatest and least elements of `[lo, hi) ∩ [0, v0)`.
fn interval_extremes(
    tree: &LexTree,
    lo: &LexVertex,
    hi: Option<&LexVertex>,
    v0: &LexVertex,
) -> Option<(LexVertex, Option<LexVertex>)> {
    let top = match hi {
        Some(h) if h < v0 => h,
        _ => v0,
    };
    if lo >= top {
        return None;
    }
    let max = match tree.classify(top) {
        ElementKind::Successor(p) => Some(p),
        _ => None,
    };
    Some((lo.clone(), max))
}

/// The cone-chain construction of a cofinal sequence for `v0`.
///
/// `P` collects the vertices whose cone holds a subset cofinal in `v0` but
/// not `v0` itself; they form a chain `w₀ ⊏ w₁ ⊏ …` of nested cones `Bᵢ`.
/// Each index `k` where `B_k \ B_{k+1}` meets the vertices below `v0`
/// contributes the greatest such vertex, or the least one when that set has
/// no greatest element.
pub fn construct_cofinal(
    tree: &LexTree,
    v0: &LexVertex,
    count: usize,
    order: &OrderAutomaton,
) -> Result<Vec<LexVertex>, LexError> {
    require_limit(tree, v0)?;
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return Ok(out);
    }
    let chain = ConeChain::new(tree, v0);
    let mut k = 0usize;
    while out.len() < count {
        let (wk, wk1) = (chain.member(k)?, chain.member(k + 1)?);
        let sup_k = tree.cone_sup(&wk);
        let sup_k1 = tree.cone_sup(&wk1);
        let lower = interval_extremes(tree, &wk, Some(&wk1), v0);
        let upper = sup_k1
            .as_ref()
            .and_then(|s| interval_extremes(tree, s, sup_k.as_ref(), v0));
        // the upper interval lies above the lower one
        let max = match &upper {
            Some((_, m)) => m.clone(),
            None => lower.as_ref().and_then(|(_, m)| m.clone()),
        };
        let least = lower.map(|(l, _)| l).or(upper.map(|(l, _)| l));
        let chosen = max.or(least);
        if let Some(u) = chosen {
            if !order.checked_less(tree, &u, v0)? {
                unreachable!("chosen vertices lie below v0");
            }
            out.push(u);
        }
        k += 1;
    }
    Ok(out)
}

/// The chain `P_{v0}`, enumerated in cone order.
struct ConeChain<'t> {
    tree: &'t LexTree,
    v0: LexVertex,
}

impl<'t> ConeChain<'t> {
    fn new(tree: &'t LexTree, v0: &LexVertex) -> Self {
        ConeChain {
            tree,
            v0: v0.clone(),
        }
    }

    /// `w_k`: the cofinal-cone vertices form an upward-closed set containing
    /// the root path of `v0` and the chain, so walking down from the
    /// deepest chain-free ancestor reaches `w_k` after `k` steps.
    fn member(&self, k: usize) -> Result<LexVertex, LexError> {
        let t = self.tree;
        let mut current = t
            .ancestors(&self.v0)
            .into_iter().rfind(|z| t.cone_is_cofinal(z, &self.v0))
            .ok_or_else(|| LexError::ExplorationBound(self.v0.to_string()))?;
        let mut index: Option<usize> = None;
        for _ in 0..CHAIN_BOUND {
            let next = t
                .children(&current)
                .into_iter()
                .map(|(_, c)| c)
                .filter(|c| t.cone_is_cofinal(c, &self.v0) && !t.cone_contains(c, &self.v0))
                .collect::<Vec<_>>();
            if next.len() > 1 {
                return Err(LexError::ExplorationBound(format!(
                    "{} (cone chain branches at {current})",
                    self.v0
                )));
            }
            let Some(c) = next.into_iter().next() else {
                return Err(LexError::ExplorationBound(self.v0.to_string()));
            };
            current = c;
            let i = index.map_or(0, |i| i + 1);
            if i == k {
                return Ok(current);
            }
            index = Some(i);
        }
        Err(LexError::ExplorationBound(self.v0.to_string()))
    }
}

/// Cached [`construct_cofinal`] sequences.
pub struct ConstructedCofinal {
    tree: LexTree,
    order: OrderAutomaton,
    cache: Mutex<HashMap<LexVertex, Vec<LexVertex>>>,
}

impl ConstructedCofinal {
    pub fn new(tree: LexTree, order: OrderAutomaton) -> Self {
        ConstructedCofinal {
            tree,
            order,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl CofinalRelation for ConstructedCofinal {
    fn tree(&self) -> &LexTree {
        &self.tree
    }

    fn entries(&self, v0: &LexVertex, count: usize) -> Result<Vec<LexVertex>, LexError> {
        if let Some(c) = self.cache.lock().expect("cache lock").get(v0) {
            if c.len() >= count {
                return Ok(c[..count].to_vec());
            }
        }
        let want = count.max(8);
        let e = construct_cofinal(&self.tree, v0, want, &self.order)?;
        self.cache
            .lock()
            .expect("cache lock")
            .insert(v0.clone(), e.clone());
        Ok(e[..count].to_vec())
    }
}

/// Anchor cone and recurring type of a limit vertex's base sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Anchor {
    /// `u_{v}`: a cone holding infinitely many base entries but not `v`.
    pub cone: LexVertex,
    /// Least type of `(w, u_v)` taken by infinitely many base entries `w`.
    pub pair_type: VertexPairType,
}

/// The Bachmann refinement of a base relation.
///
/// For a limit `v0` the entries are the members of `O_{v0}`: base entries
/// in the anchor cone `u_{v0}` with the recurring type, minus those lying
/// below members of `P_{v1}` for the finitely many `v1` anchored on the
/// root path of `v0`.
pub struct BachmannCofinal<B: CofinalRelation> {
    base: B,
    order: OrderAutomaton,
    anchors: Mutex<HashMap<LexVertex, Anchor>>,
    types: Mutex<HashMap<(LexVertex, LexVertex), VertexPairType>>,
    cache: Mutex<HashMap<LexVertex, Vec<LexVertex>>>,
}

impl<B: CofinalRelation> BachmannCofinal<B> {
    pub fn new(base: B, order: OrderAutomaton) -> Self {
        BachmannCofinal {
            base,
            order,
            anchors: Mutex::new(HashMap::new()),
            types: Mutex::new(HashMap::new()),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    fn tree_ref(&self) -> &LexTree {
        self.base.tree()
    }

    fn type_of(&self, w: &LexVertex, u: &LexVertex) -> Result<VertexPairType, LexError> {
        let key = (w.clone(), u.clone());
        if let Some(t) = self.types.lock().expect("type lock").get(&key) {
            return Ok(t.clone());
        }
        let t = self.order.type_below(self.tree_ref(), w, u)?;
        self.types.lock().expect("type lock").insert(key, t.clone());
        Ok(t)
    }

    /// The anchor of `v`: the first child (in color order) of the deepest
    /// ancestor whose cone holds infinitely many base entries, among children
    /// whose cone holds infinitely many entries but not `v`.
    pub fn anchor(&self, v: &LexVertex) -> Result<Anchor, LexError> {
        if let Some(a) = self.anchors.lock().expect("anchor lock").get(v) {
            return Ok(a.clone());
        }
        let tree = self.tree_ref();
        require_limit(tree, v)?;
        let deepest = tree
            .ancestors(v)
            .into_iter().rfind(|z| tree.cone_is_cofinal(z, v))
            .ok_or_else(|| LexError::NoAnchor(v.to_string()))?;
        let cone = tree
            .children(&deepest)
            .into_iter()
            .map(|(_, c)| c)
            .find(|c| !tree.cone_contains(c, v) && tree.cone_is_cofinal(c, v))
            .ok_or_else(|| LexError::NoAnchor(v.to_string()))?;
        let entries = self.base.entries(v, TYPE_WINDOW)?;
        let mut seq = Vec::new();
        for w in entries.iter().filter(|w| tree.cone_contains(&cone, w)) {
            seq.push(self.type_of(w, &cone)?);
        }
        let pair_type = least_recurring(&seq).ok_or_else(|| LexError::TypeTail(v.to_string()))?;
        let a = Anchor { cone, pair_type };
        self.anchors
            .lock()
            .expect("anchor lock")
            .insert(v.clone(), a.clone());
        Ok(a)
    }

    /// Members of `P_v` in increasing order, scanning at most `scan` base
    /// entries and stopping early once `stop` holds.
    fn p_members(
        &self,
        v: &LexVertex,
        scan: usize,
        mut stop: impl FnMut(&LexVertex) -> bool,
    ) -> Result<Vec<LexVertex>, LexError> {
        let anchor = self.anchor(v)?;
        let tree = self.tree_ref();
        let mut out = Vec::new();
        for w in self.base.entries(v, scan)? {
            if stop(&w) {
                break;
            }
            if tree.cone_contains(&anchor.cone, &w) && self.type_of(&w, &anchor.cone)? == anchor.pair_type {
                out.push(w);
            }
        }
        Ok(out)
    }

    /// The limits `v1 ≠ v0` whose anchor lies on the root path of `v0`.
    pub fn z_set(&self, v0: &LexVertex) -> Result<Vec<LexVertex>, LexError> {
        let tree = self.tree_ref();
        let mut out = Vec::new();
        for z in tree.ancestors(v0) {
            let Some(v1) = tree.cone_sup(&z) else {
                continue;
            };
            if &v1 == v0 || !tree.is_limit_vertex(&v1)? {
                continue;
            }
            if self.anchor(&v1)?.cone == z {
                out.push(v1);
            }
        }
        Ok(out)
    }

    /// Least vertex `w` may take so that no member of `P_{v1}` lies in
    /// `[w, v0)`; members of `P_{v1}` equal to `v0` are allowed.
    fn o_threshold(&self, v0: &LexVertex, v1: &LexVertex) -> Result<Option<Bound>, LexError> {
        if v1 < v0 {
            return Ok(Some(Bound::AtLeast(v1.clone())));
        }
        let mut scan = 16;
        loop {
            let entries = self.base.entries(v1, scan)?;
            if entries.last().is_some_and(|w| w >= v0) {
                let below = self.p_members(v1, scan, |w| w >= v0)?;
                return Ok(below.last().cloned().map(Bound::Above));
            }
            if scan >= CHAIN_BOUND {
                return Err(LexError::ExplorationBound(v1.to_string()));
            }
            scan *= 2;
        }
    }
}

enum Bound {
    AtLeast(LexVertex),
    Above(LexVertex),
}

impl Bound {
    fn admits(&self, w: &LexVertex) -> bool {
        match self {
            Bound::AtLeast(b) => w >= b,
            Bound::Above(b) => w > b,
        }
    }
}

/// Least element among those recurring in the periodic tail of `seq`.
fn least_recurring<T: Clone + Ord>(seq: &[T]) -> Option<T> {
    let n = seq.len();
    let start = n / 3;
    (1..=(n - start) / 2)
        .find(|&p| (start..n - p).all(|i| seq[i] == seq[i + p]))
        .and_then(|p| seq[n - p..].iter().min().cloned())
}

impl<B: CofinalRelation> CofinalRelation for BachmannCofinal<B> {
    fn tree(&self) -> &LexTree {
        self.tree_ref()
    }

    fn entries(&self, v0: &LexVertex, count: usize) -> Result<Vec<LexVertex>, LexError> {
        if let Some(c) = self.cache.lock().expect("cache lock").get(v0) {
            if c.len() >= count {
                return Ok(c[..count].to_vec());
            }
        }
        require_limit(self.tree_ref(), v0)?;
        let bounds: Vec<Bound> = self
            .z_set(v0)?
            .iter()
            .map(|v1| self.o_threshold(v0, v1))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect();
        let want = count.max(8);
        let mut scan = want * 2 + TYPE_WINDOW;
        loop {
            let members = self.p_members(v0, scan, |_| false)?;
            let o: Vec<LexVertex> = members
                .into_iter()
                .filter(|w| bounds.iter().all(|b| b.admits(w)))
                .collect();
            if o.len() >= want {
                self.cache
                    .lock()
                    .expect("cache lock")
                    .insert(v0.clone(), o.clone());
                return Ok(o[..count].to_vec());
            }
            if scan >= CHAIN_BOUND {
                return Err(LexError::ExplorationBound(v0.to_string()));
            }
            scan *= 2;
        }
    }
}

/// First `count` entries of the Bachmann refinement of `base` at `v0`.
pub fn bachmannize<B: CofinalRelation>(
    refined: &BachmannCofinal<B>,
    v0: &LexVertex,
    count: usize,
) -> Result<Vec<LexVertex>, LexError> {
    if count == 0 {
        require_limit(refined.tree_ref(), v0)?;
        return Ok(Vec::new());
    }
    refined.entries(v0, count)
}

/// Standard sequences pulled back through `f`, restricted below `cap`.
pub struct StandardRelation {
    tree: LexTree,
    cap: Ordinal,
}

impl StandardRelation {
    pub fn new(tree: LexTree, cap: Ordinal) -> Result<Self, LexError> {
        let top = Ordinal::omega_power(Ordinal::nat(tree.arity() as u64));
        if cap > top {
            return Err(LexError::CapExceeded {
                value: cap.to_string(),
                cap: top.to_string(),
            });
        }
        Ok(StandardRelation { tree, cap })
    }

    pub fn cap(&self) -> &Ordinal {
        &self.cap
    }
}

impl CofinalRelation for StandardRelation {
    fn tree(&self) -> &LexTree {
        &self.tree
    }

    fn entries(&self, v0: &LexVertex, count: usize) -> Result<Vec<LexVertex>, LexError> {
        require_limit(&self.tree, v0)?;
        let f = self.tree.vertex_to_ordinal(v0)?;
        if f >= self.cap {
            return Err(LexError::CapExceeded {
                value: f.to_string(),
                cap: self.cap.to_string(),
            });
        }
        (0..count as u64)
            .map(|n| self.tree.ordinal_to_vertex(&f.standard_fundamental(n)?))
            .collect()
    }
}

/// Rank classification of a box: `A₀` holds the successors and `A_{n+1}`
/// the limit points of `A_n` that are not limits of limit points of `A_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub box_size: u64,
    /// `rank[v] = n` for `v ∈ A_n`; the root has no rank.
    pub ranks: BTreeMap<String, Option<u64>>,
    /// Vertices whose rank differs from the last exponent of `f(v)`.
    pub mismatches: Vec<String>,
}

/// Classifies the box of exponents `≤ n`, probing cofinality in a limit `v`
/// with the points `s_st(f(v), m)` for `m < n`.
pub fn rank_classification(tree: &LexTree, n: u64) -> Result<RankReport, LexError> {
    let vertices = tree.box_vertices(n);
    let probes = |v: &LexVertex| -> Result<Vec<LexVertex>, LexError> {
        let f = tree.vertex_to_ordinal(v)?;
        (0..n)
            .map(|m| tree.ordinal_to_vertex(&f.standard_fundamental(m)?))
            .collect()
    };
    let limits: Vec<LexVertex> = vertices
        .iter()
        .filter(|v| matches!(tree.classify(v), ElementKind::Limit))
        .cloned()
        .collect();
    let mut probe_cache = HashMap::new();
    for v in &limits {
        probe_cache.insert(v.clone(), probes(v)?);
    }
    let limit_points = |set: &BTreeSet<LexVertex>| -> BTreeSet<LexVertex> {
        limits
            .iter()
            .filter(|v| {
                probe_cache[*v]
                    .iter()
                    .all(|lo| set.range(lo.clone()..(*v).clone()).any(|x| x > lo))
            })
            .cloned()
            .collect()
    };
    let mut rank: BTreeMap<LexVertex, u64> = BTreeMap::new();
    let mut current: BTreeSet<LexVertex> = vertices
        .iter()
        .filter(|v| matches!(tree.classify(v), ElementKind::Successor(_)))
        .cloned()
        .collect();
    let mut level = 0u64;
    while !current.is_empty() {
        for v in &current {
            rank.insert(v.clone(), level);
        }
        let lim = limit_points(&current);
        let lim_lim = limit_points(&lim);
        current = lim.difference(&lim_lim).cloned().collect();
        level += 1;
    }
    let mut report = RankReport {
        box_size: n,
        ranks: BTreeMap::new(),
        mismatches: Vec::new(),
    };
    for v in &vertices {
        let r = rank.get(v).copied();
        report.ranks.insert(v.to_string(), r);
        let expected = if v.is_root() {
            None
        } else {
            tree.vertex_to_ordinal(v)?.last_exponent()?.as_nat()
        };
        if r != expected {
            report.mismatches.push(v.to_string());
        }
    }
    Ok(report)
}

/// A cofinal relation viewed as a fundamental-sequence system on the tree.
pub struct TreeSystem<R: CofinalRelation> {
    relation: R,
}

impl<R: CofinalRelation> TreeSystem<R> {
    pub fn new(relation: R) -> Self {
        TreeSystem { relation }
    }

    pub fn relation(&self) -> &R {
        &self.relation
    }

    /// Least `n` with `w ≤ s(v0, n)`, searching up to `cap` entries.
    pub fn cofinal_witness(
        &self,
        v0: &LexVertex,
        w: &LexVertex,
        cap: usize,
    ) -> Result<Option<usize>, LexError> {
        let mut count = 8;
        loop {
            let entries = self.relation.entries(v0, count.min(cap))?;
            if let Some(i) = entries.iter().position(|e| e >= w) {
                return Ok(Some(i));
            }
            if count >= cap {
                return Ok(None);
            }
            count *= 2;
        }
    }
}

impl<R: CofinalRelation> OrderPresentation for TreeSystem<R> {
    type Elem = LexVertex;

    fn compare(&self, a: &LexVertex, b: &LexVertex) -> Ordering {
        a.cmp(b)
    }

    fn classify(&self, a: &LexVertex) -> ElementKind<LexVertex> {
        self.relation.tree().classify(a)
    }

    fn minimum(&self) -> LexVertex {
        self.relation.tree().root()
    }

    fn contains(&self, a: &LexVertex) -> bool {
        a.0.len() == self.relation.tree().arity()
    }
}

impl<R: CofinalRelation> FunSeqSystem for TreeSystem<R> {
    fn fundamental(&self, x: &LexVertex, n: u64) -> Result<LexVertex, FunSeqError> {
        let entries = self.relation.entries(x, n as usize + 1)?;
        Ok(entries[n as usize].clone())
    }
}
