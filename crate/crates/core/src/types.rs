//! Vertex pair types of an automaton over a tree.
//!
//! An automaton reading colors and inverse colors *switches* from `q₁` to
//! `q₂` on a path from `v₁` to `v₂` when some walk from `v₁` to `v₂` in the
//! inverse closure spells a word taking `q₁` to `q₂`. The type of `(v₁, v₂)`
//! records these switches in both directions.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::automaton::WordAutomaton;
use crate::graph::{follow, ColoredGraph, EdgeSource, GraphError, VertexKey};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("switch relation exceeds the bound of {0} vertices")]
    BoundExceeded(usize),
    #[error("state {state} out of range for an automaton with {states} states")]
    StateOutOfRange { state: usize, states: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A relation on automaton states.
pub type StateRelation = BTreeSet<(usize, usize)>;

/// `R ; S`: first `R`, then `S`.
pub fn compose_relations(r: &StateRelation, s: &StateRelation) -> StateRelation {
    let mut out = BTreeSet::new();
    for &(a, b) in r {
        for &(_, c) in s.range((b, 0)..=(b, usize::MAX)) {
            out.insert((a, c));
        }
    }
    out
}

/// An element of `P(Q×Q) × P(Q×Q)`. The derived order is the fixed order
/// on types.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct VertexPairType {
    pub forward: StateRelation,
    pub backward: StateRelation,
}

impl VertexPairType {
    /// Diagonal in both components: the type of `(v, v)` for an automaton
    /// with `n` states and no useful loops.
    pub fn identity(n: usize) -> Self {
        let diag: StateRelation = (0..n).map(|q| (q, q)).collect();
        VertexPairType {
            forward: diag.clone(),
            backward: diag,
        }
    }

    /// The type of the reversed pair.
    pub fn swap(&self) -> Self {
        VertexPairType {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }
}

fn write_relation(f: &mut fmt::Formatter<'_>, r: &StateRelation) -> fmt::Result {
    f.write_str("{")?;
    for (i, (a, b)) in r.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "({a},{b})")?;
    }
    f.write_str("}")
}

impl fmt::Display for VertexPairType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("F")?;
        write_relation(f, &self.forward)?;
        f.write_str(" B")?;
        write_relation(f, &self.backward)
    }
}

/// For each state `qᵢ`, the vertices `v′` such that the automaton can switch
/// from `q` to `qᵢ` on a path from `v` to `v′`. Computed as the least family
/// closed under the seed `v ∈ S_q` and single-edge steps.
pub fn switch_relation<G: EdgeSource>(
    aut: &WordAutomaton,
    g: &G,
    v: &G::Vertex,
    q: usize,
    max_vertices: usize,
) -> Result<Vec<BTreeSet<G::Vertex>>, TypeError> {
    let n = aut.state_count();
    if q >= n {
        return Err(TypeError::StateOutOfRange { state: q, states: n });
    }
    if !g.has_vertex(v) {
        return Err(GraphError::VertexNotFound(v.to_string()).into());
    }
    let mut sets: Vec<BTreeSet<G::Vertex>> = vec![BTreeSet::new(); n];
    let mut vertices: HashSet<G::Vertex> = HashSet::from([v.clone()]);
    sets[q].insert(v.clone());
    let mut work = VecDeque::from([(v.clone(), q)]);
    while let Some((u, state)) = work.pop_front() {
        for (sym, target) in aut.outgoing(state) {
            for w in follow(g, &u, sym)? {
                if sets[target].contains(&w) {
                    continue;
                }
                if vertices.insert(w.clone()) && vertices.len() > max_vertices {
                    return Err(TypeError::BoundExceeded(max_vertices));
                }
                sets[target].insert(w.clone());
                work.push_back((w, target));
            }
        }
    }
    Ok(sets)
}

/// States reachable from `(v1, q)` that are realised at `v2`, for every `q`.
fn switches_between<G: EdgeSource>(
    aut: &WordAutomaton,
    g: &G,
    v1: &G::Vertex,
    v2: &G::Vertex,
    max_vertices: usize,
) -> Result<StateRelation, TypeError> {
    let mut rel = BTreeSet::new();
    for q in 0..aut.state_count() {
        let sets = switch_relation(aut, g, v1, q, max_vertices)?;
        for (q2, set) in sets.iter().enumerate() {
            if set.contains(v2) {
                rel.insert((q, q2));
            }
        }
    }
    Ok(rel)
}

/// The type of `(v1, v2)`.
pub fn pair_type<G: EdgeSource>(
    aut: &WordAutomaton,
    g: &G,
    v1: &G::Vertex,
    v2: &G::Vertex,
    max_vertices: usize,
) -> Result<VertexPairType, TypeError> {
    Ok(VertexPairType {
        forward: switches_between(aut, g, v1, v2, max_vertices)?,
        backward: switches_between(aut, g, v2, v1, max_vertices)?,
    })
}

/// Type of `(v₁, v₃)` from `t1` = type of `(v₁, v₂)` and `t2` = type of
/// `(v₂, v₃)`, valid when every path between `v₁` and `v₃` passes through
/// `v₂` (e.g. `v₁` in the cone of `v₂`, `v₃` outside it).
pub fn compose_collinear(t1: &VertexPairType, t2: &VertexPairType) -> VertexPairType {
    VertexPairType {
        forward: compose_relations(&t1.forward, &t2.forward),
        backward: compose_relations(&t2.backward, &t1.backward),
    }
}

/// Type of `(u₁, u₂)` from `t1` = type of `(v₁, v₂)`, `t2` = type of
/// `(v₁, u₁)` and `t3` = type of `(v₂, u₂)`, valid when `u₁`, `u₂` lie in
/// the disjoint cones of `v₁`, `v₂`.
pub fn compose_forked(
    t1: &VertexPairType,
    t2: &VertexPairType,
    t3: &VertexPairType,
) -> VertexPairType {
    VertexPairType {
        forward: compose_relations(
            &compose_relations(&t2.backward, &t1.forward),
            &t3.forward,
        ),
        backward: compose_relations(
            &compose_relations(&t3.backward, &t1.backward),
            &t2.forward,
        ),
    }
}

/// The cone under `v`: every vertex reachable along forward edges.
pub fn cone<V: VertexKey>(g: &ColoredGraph<V>, v: &V) -> BTreeSet<V> {
    let mut seen = BTreeSet::from([v.clone()]);
    let mut queue = VecDeque::from([v.clone()]);
    while let Some(u) = queue.pop_front() {
        for (_, w) in g.successors(&u) {
            if seen.insert(w.clone()) {
                queue.push_back(w.clone());
            }
        }
    }
    seen
}
