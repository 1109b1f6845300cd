//! Finitely colored directed graphs.
//!
//! Finite graphs are stored in [`ColoredGraph`]; infinite ones (unfoldings,
//! configuration graphs, lexicographic trees) implement [`EdgeSource`] and
//! are explored lazily up to an [`ExploreBound`].

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub mod format;
pub mod query;
pub mod regex;

pub use query::{regular_path_query, QueryResult};
pub use regex::Regex;

pub const DEFAULT_MAX_VERTICES: usize = 100_000;
pub const DEFAULT_MAX_PATH: usize = 1_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} not found")]
    VertexNotFound(String),
    #[error("color {0} already used by the graph")]
    ColorCollision(String),
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("exploration bound of {0} vertices exceeded")]
    BoundExceeded(usize),
    #[error("this graph does not expose incoming edges, so inverse color {0} cannot be followed")]
    NoInverseEdges(String),
    #[error("regular expression error at {position}: {message}")]
    Regex { position: usize, message: String },
    #[error("graph text line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An edge color.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Color(pub String);

impl Color {
    pub fn new(name: impl Into<String>) -> Self {
        Color(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// Whether the name is a letter followed by digits, printable bare in
    /// regular expressions.
    pub fn is_simple(&self) -> bool {
        let mut chars = self.0.chars();
        matches!(chars.next(), Some(c) if c.is_alphabetic() && c != 'ε')
            && chars.all(|c| c.is_ascii_digit())
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Color {
    fn from(s: &str) -> Self {
        Color(s.to_string())
    }
}

/// A color or its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Fwd(Color),
    Inv(Color),
}

impl Symbol {
    pub fn fwd(name: &str) -> Self {
        Symbol::Fwd(Color::from(name))
    }

    pub fn inv(name: &str) -> Self {
        Symbol::Inv(Color::from(name))
    }

    pub fn color(&self) -> &Color {
        match self {
            Symbol::Fwd(c) | Symbol::Inv(c) => c,
        }
    }

    pub fn inverse(&self) -> Symbol {
        match self {
            Symbol::Fwd(c) => Symbol::Inv(c.clone()),
            Symbol::Inv(c) => Symbol::Fwd(c.clone()),
        }
    }

    pub fn is_inverse(&self) -> bool {
        matches!(self, Symbol::Inv(_))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Fwd(c) => write!(f, "{c}"),
            Symbol::Inv(c) => write!(f, "{c}⁻"),
        }
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Symbol {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (base, inverse) = if let Some(b) = s.strip_suffix('⁻') {
            (b, true)
        } else if let Some(b) = s.strip_suffix('-') {
            (b, true)
        } else {
            (s, false)
        };
        let base = base
            .strip_prefix('<')
            .and_then(|b| b.strip_suffix('>'))
            .unwrap_or(base);
        if base.is_empty() || base.contains(char::is_whitespace) {
            return Err(format!("'{s}' is not a color symbol"));
        }
        let c = Color::from(base);
        Ok(if inverse { Symbol::Inv(c) } else { Symbol::Fwd(c) })
    }
}

/// A word over colors and inverse colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct ColorWord(pub Vec<Symbol>);

impl fmt::Display for ColorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Bounds for exploring infinite graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExploreBound {
    pub max_vertices: usize,
    pub max_path: usize,
}

impl Default for ExploreBound {
    fn default() -> Self {
        ExploreBound {
            max_vertices: DEFAULT_MAX_VERTICES,
            max_path: DEFAULT_MAX_PATH,
        }
    }
}

impl ExploreBound {
    pub fn new(max_vertices: usize, max_path: usize) -> Self {
        ExploreBound {
            max_vertices,
            max_path,
        }
    }
}

/// Vertex types usable as canonical keys.
pub trait VertexKey: Clone + Eq + Hash + Ord + fmt::Debug + fmt::Display {}

impl<T: Clone + Eq + Hash + Ord + fmt::Debug + fmt::Display> VertexKey for T {}

/// A graph presented through its edge relation.
pub trait EdgeSource {
    type Vertex: VertexKey;

    /// Outgoing `(color, target)` pairs in a fixed order.
    fn out_edges(&self, v: &Self::Vertex) -> Vec<(Color, Self::Vertex)>;

    /// Incoming `(color, source)` pairs, or `None` when the graph cannot
    /// enumerate them.
    fn in_edges(&self, v: &Self::Vertex) -> Option<Vec<(Color, Self::Vertex)>>;

    fn has_vertex(&self, _v: &Self::Vertex) -> bool {
        true
    }
}

impl<G: EdgeSource + ?Sized> EdgeSource for &G {
    type Vertex = G::Vertex;

    fn out_edges(&self, v: &Self::Vertex) -> Vec<(Color, Self::Vertex)> {
        (**self).out_edges(v)
    }

    fn in_edges(&self, v: &Self::Vertex) -> Option<Vec<(Color, Self::Vertex)>> {
        (**self).in_edges(v)
    }

    fn has_vertex(&self, v: &Self::Vertex) -> bool {
        (**self).has_vertex(v)
    }
}

/// Neighbours of `v` along `symbol`.
pub fn follow<G: EdgeSource>(
    g: &G,
    v: &G::Vertex,
    symbol: &Symbol,
) -> Result<Vec<G::Vertex>, GraphError> {
    match symbol {
        Symbol::Fwd(c) => Ok(g
            .out_edges(v)
            .into_iter()
            .filter(|(col, _)| col == c)
            .map(|(_, t)| t)
            .collect()),
        Symbol::Inv(c) => {
            let inc = g
                .in_edges(v)
                .ok_or_else(|| GraphError::NoInverseEdges(symbol.to_string()))?;
            Ok(inc
                .into_iter()
                .filter(|(col, _)| col == c)
                .map(|(_, s)| s)
                .collect())
        }
    }
}

/// A finite colored graph `(C, V, U)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph<V: Ord> {
    colors: BTreeSet<Color>,
    out: BTreeMap<V, BTreeSet<(Color, V)>>,
    inc: BTreeMap<V, BTreeSet<(Color, V)>>,
}

impl<V: VertexKey> Default for ColoredGraph<V> {
    fn default() -> Self {
        ColoredGraph {
            colors: BTreeSet::new(),
            out: BTreeMap::new(),
            inc: BTreeMap::new(),
        }
    }
}

impl<V: VertexKey> ColoredGraph<V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_colors(colors: impl IntoIterator<Item = Color>) -> Self {
        ColoredGraph {
            colors: colors.into_iter().collect(),
            ..Self::default()
        }
    }

    pub fn add_color(&mut self, c: Color) {
        self.colors.insert(c);
    }

    pub fn add_vertex(&mut self, v: V) {
        self.out.entry(v.clone()).or_default();
        self.inc.entry(v).or_default();
    }

    /// Adds the edge, declaring its color and endpoints when new. Returns
    /// whether the edge was new.
    pub fn add_edge(&mut self, from: V, color: Color, to: V) -> bool {
        self.add_vertex(from.clone());
        self.add_vertex(to.clone());
        self.colors.insert(color.clone());
        self.inc
            .get_mut(&to)
            .expect("added above")
            .insert((color.clone(), from.clone()));
        self.out.get_mut(&from).expect("added above").insert((color, to))
    }

    pub fn colors(&self) -> &BTreeSet<Color> {
        &self.colors
    }

    pub fn vertices(&self) -> impl Iterator<Item = &V> {
        self.out.keys()
    }

    pub fn contains(&self, v: &V) -> bool {
        self.out.contains_key(v)
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.values().map(BTreeSet::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&V, &Color, &V)> {
        self.out
            .iter()
            .flat_map(|(v, es)| es.iter().map(move |(c, t)| (v, c, t)))
    }

    pub fn successors(&self, v: &V) -> impl Iterator<Item = &(Color, V)> {
        self.out.get(v).into_iter().flatten()
    }

    pub fn predecessors(&self, v: &V) -> impl Iterator<Item = &(Color, V)> {
        self.inc.get(v).into_iter().flatten()
    }

    pub fn has_edge(&self, from: &V, color: &Color, to: &V) -> bool {
        self.out
            .get(from)
            .is_some_and(|es| es.contains(&(color.clone(), to.clone())))
    }

    /// Relabels vertices through `f`, which must be injective.
    pub fn map_vertices<W: VertexKey>(&self, mut f: impl FnMut(&V) -> W) -> ColoredGraph<W> {
        let mut g = ColoredGraph::with_colors(self.colors.iter().cloned());
        for v in self.vertices() {
            g.add_vertex(f(v));
        }
        for (u, c, v) in self.edges() {
            g.add_edge(f(u), c.clone(), f(v));
        }
        g
    }

    /// The subgraph induced by `keep`.
    pub fn induced(&self, keep: &BTreeSet<V>) -> ColoredGraph<V> {
        let mut g = ColoredGraph::with_colors(self.colors.iter().cloned());
        for v in keep.iter().filter(|v| self.contains(v)) {
            g.add_vertex(v.clone());
        }
        for (u, c, v) in self.edges() {
            if keep.contains(u) && keep.contains(v) {
                g.add_edge(u.clone(), c.clone(), v.clone());
            }
        }
        g
    }
}

impl<V: VertexKey> EdgeSource for ColoredGraph<V> {
    type Vertex = V;

    fn out_edges(&self, v: &V) -> Vec<(Color, V)> {
        self.successors(v).cloned().collect()
    }

    fn in_edges(&self, v: &V) -> Option<Vec<(Color, V)>> {
        Some(self.predecessors(v).cloned().collect())
    }

    fn has_vertex(&self, v: &V) -> bool {
        self.contains(v)
    }
}

/// Name of the inverse of color `c` inside an inverse closure.
pub fn inverse_color(c: &Color) -> Color {
    Color(format!("{}⁻", c.0))
}

/// `R(G)`: the graph with a reversed `c⁻` edge for every `c` edge.
pub fn inverse_closure<V: VertexKey>(g: &ColoredGraph<V>) -> ColoredGraph<V> {
    let mut r = ColoredGraph::with_colors(
        g.colors()
            .iter()
            .flat_map(|c| [c.clone(), inverse_color(c)]),
    );
    for v in g.vertices() {
        r.add_vertex(v.clone());
    }
    for (u, c, v) in g.edges() {
        r.add_edge(u.clone(), c.clone(), v.clone());
        r.add_edge(v.clone(), inverse_color(c), u.clone());
    }
    r
}

/// A bounded exploration of a lazy graph.
#[derive(Debug, Clone)]
pub struct Explored<V: VertexKey> {
    pub graph: ColoredGraph<V>,
    pub root: V,
    /// Vertices in discovery (breadth-first) order.
    pub order: Vec<V>,
    /// Distance from the root, in edges.
    pub depth: HashMap<V, usize>,
    /// True when no vertex was left unexpanded because of the bound.
    pub complete: bool,
}

/// Breadth-first exploration from `root` along outgoing edges.
///
/// Edges between discovered vertices are kept; successors that would exceed
/// `max_vertices`, or lie further than `max_path` edges away, are dropped
/// and mark the result incomplete.
pub fn explore<G: EdgeSource>(g: &G, root: &G::Vertex, bound: ExploreBound) -> Explored<G::Vertex> {
    let mut graph = ColoredGraph::new();
    graph.add_vertex(root.clone());
    let mut depth = HashMap::from([(root.clone(), 0usize)]);
    let mut order = vec![root.clone()];
    let mut queue = VecDeque::from([root.clone()]);
    let mut complete = true;
    while let Some(v) = queue.pop_front() {
        let d = depth[&v];
        let edges = g.out_edges(&v);
        if d >= bound.max_path {
            if !edges.is_empty() {
                complete = false;
            }
            for (c, t) in edges {
                if graph.contains(&t) {
                    graph.add_edge(v.clone(), c, t);
                }
            }
            continue;
        }
        for (c, t) in edges {
            if !depth.contains_key(&t) {
                if order.len() >= bound.max_vertices {
                    complete = false;
                    continue;
                }
                depth.insert(t.clone(), d + 1);
                order.push(t.clone());
                queue.push_back(t.clone());
            }
            graph.add_edge(v.clone(), c, t);
        }
    }
    Explored {
        graph,
        root: root.clone(),
        order,
        depth,
        complete,
    }
}

/// A vertex of an unfolding: a path `p₀ -c₁-> p₁ … -c_n-> p_n` from the
/// root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnfoldPath<V> {
    pub start: V,
    pub steps: Vec<(Color, V)>,
}

impl<V: Clone> UnfoldPath<V> {
    pub fn end(&self) -> &V {
        self.steps.last().map_or(&self.start, |(_, v)| v)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn extend(&self, c: Color, v: V) -> Self {
        let mut steps = self.steps.clone();
        steps.push((c, v));
        UnfoldPath {
            start: self.start.clone(),
            steps,
        }
    }
}

impl<V: fmt::Display> fmt::Display for UnfoldPath<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        for (c, v) in &self.steps {
            write!(f, " -{c}-> {v}")?;
        }
        Ok(())
    }
}

/// The unfolding `U(G, v₀)` cut at paths of `depth` edges.
pub fn unfold<G: EdgeSource>(
    g: &G,
    v0: &G::Vertex,
    depth: usize,
    max_vertices: usize,
) -> Result<ColoredGraph<UnfoldPath<G::Vertex>>, GraphError> {
    if !g.has_vertex(v0) {
        return Err(GraphError::VertexNotFound(v0.to_string()));
    }
    let root = UnfoldPath {
        start: v0.clone(),
        steps: Vec::new(),
    };
    let mut tree = ColoredGraph::new();
    tree.add_vertex(root.clone());
    let mut frontier = vec![root];
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in &frontier {
            for (c, t) in g.out_edges(p.end()) {
                let child = p.extend(c.clone(), t);
                if tree.vertex_count() >= max_vertices {
                    return Err(GraphError::BoundExceeded(max_vertices));
                }
                tree.add_edge(p.clone(), c, child.clone());
                next.push(child);
            }
        }
        frontier = next;
    }
    Ok(tree)
}

/// A vertex of a treegraph: a non-empty sequence of base vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSeq<V>(pub Vec<V>);

impl<V: fmt::Display> fmt::Display for VertexSeq<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// The treegraph `T_e(G)` restricted to sequences of length at most `depth`.
pub fn treegraph<V: VertexKey>(
    g: &ColoredGraph<V>,
    e: &Color,
    depth: usize,
    max_vertices: usize,
) -> Result<ColoredGraph<VertexSeq<V>>, GraphError> {
    if g.colors().contains(e) {
        return Err(GraphError::ColorCollision(e.to_string()));
    }
    if depth == 0 {
        return Err(GraphError::ZeroDepth);
    }
    let base: Vec<V> = g.vertices().cloned().collect();
    let mut out = ColoredGraph::with_colors(g.colors().iter().cloned().chain([e.clone()]));
    let mut layer: Vec<Vec<V>> = base.iter().map(|v| vec![v.clone()]).collect();
    for len in 1..=depth {
        for seq in &layer {
            if out.vertex_count() >= max_vertices {
                return Err(GraphError::BoundExceeded(max_vertices));
            }
            out.add_vertex(VertexSeq(seq.clone()));
            let (last, prefix) = seq.split_last().expect("sequences are non-empty");
            for (c, w) in g.successors(last) {
                let mut target = prefix.to_vec();
                target.push(w.clone());
                out.add_edge(VertexSeq(seq.clone()), c.clone(), VertexSeq(target));
            }
            if len < depth {
                let mut target = seq.clone();
                target.push(last.clone());
                out.add_edge(VertexSeq(seq.clone()), e.clone(), VertexSeq(target));
            }
        }
        if len < depth {
            layer = layer
                .iter()
                .flat_map(|seq| {
                    base.iter().map(move |v| {
                        let mut s = seq.clone();
                        s.push(v.clone());
                        s
                    })
                })
                .collect();
        }
    }
    Ok(out)
}

/// Result of a determinism check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeterminismReport {
    pub deterministic: bool,
    /// A vertex with two outgoing edges of one color.
    pub witness: Option<(String, Color)>,
    /// False when a lazy graph was only checked up to the bound.
    pub complete: bool,
}

pub fn is_deterministic<V: VertexKey>(g: &ColoredGraph<V>) -> DeterminismReport {
    for v in g.vertices() {
        let mut seen = BTreeSet::new();
        for (c, _) in g.successors(v) {
            if !seen.insert(c) {
                return DeterminismReport {
                    deterministic: false,
                    witness: Some((v.to_string(), c.clone())),
                    complete: true,
                };
            }
        }
    }
    DeterminismReport {
        deterministic: true,
        witness: None,
        complete: true,
    }
}

/// Determinism of a lazy graph on the part reachable within `bound`.
pub fn is_deterministic_lazy<G: EdgeSource>(
    g: &G,
    root: &G::Vertex,
    bound: ExploreBound,
) -> DeterminismReport {
    let explored = explore(g, root, bound);
    for v in &explored.order {
        let mut seen = BTreeSet::new();
        for (c, _) in g.out_edges(v) {
            if !seen.insert(c.clone()) {
                return DeterminismReport {
                    deterministic: false,
                    witness: Some((v.to_string(), c)),
                    complete: explored.complete,
                };
            }
        }
    }
    DeterminismReport {
        deterministic: true,
        witness: None,
        complete: explored.complete,
    }
}
