//! Regular path queries by breadth-first search of graph × automaton.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::automaton::WordAutomaton;

use super::{follow, ColorWord, EdgeSource, ExploreBound, GraphError, Symbol, VertexKey};

/// Vertices reached by words of the language, each with a shortest witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryResult<V: VertexKey> {
    pub hits: BTreeMap<V, ColorWord>,
    /// True when the search finished without hitting the bound.
    pub complete: bool,
}

impl<V: VertexKey> QueryResult<V> {
    pub fn targets(&self) -> impl Iterator<Item = &V> {
        self.hits.keys()
    }

    pub fn status(&self) -> QueryStatus {
        if self.complete {
            QueryStatus::Complete
        } else {
            QueryStatus::BoundExceeded
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QueryStatus {
    Complete,
    BoundExceeded,
}

/// All vertices reachable from `from` in the inverse closure of `g` along a
/// word accepted by `aut`.
///
/// The search visits at most `max_vertices` distinct graph vertices and
/// follows words of at most `max_path` symbols.
pub fn regular_path_query<G: EdgeSource>(
    g: &G,
    from: &G::Vertex,
    aut: &WordAutomaton,
    bound: ExploreBound,
) -> Result<QueryResult<G::Vertex>, GraphError> {
    if !g.has_vertex(from) {
        return Err(GraphError::VertexNotFound(from.to_string()));
    }
    let mut result = QueryResult {
        hits: BTreeMap::new(),
        complete: true,
    };
    let Some(init) = aut.initial else {
        return Ok(result);
    };
    let mut parent: Parents<G::Vertex> = HashMap::new();
    let mut depth: HashMap<Node<G::Vertex>, usize> = HashMap::new();
    let mut vertices: HashSet<G::Vertex> = HashSet::from([from.clone()]);
    let start = (from.clone(), init);
    parent.insert(start.clone(), None);
    depth.insert(start.clone(), 0);
    let mut queue = VecDeque::from([start]);

    let symbols: Vec<Symbol> = aut.alphabet.iter().cloned().collect();
    while let Some(node) = queue.pop_front() {
        let (v, q) = &node;
        if aut.accepting.contains(q) && !result.hits.contains_key(v) {
            result.hits.insert(v.clone(), witness(&parent, &node));
        }
        let d = depth[&node];
        for sym in &symbols {
            let targets: Vec<usize> = aut.step(*q, sym).collect();
            if targets.is_empty() {
                continue;
            }
            let neighbours = follow(g, v, sym)?;
            if neighbours.is_empty() {
                continue;
            }
            if d >= bound.max_path {
                result.complete = false;
                continue;
            }
            for w in neighbours {
                if !vertices.contains(&w) {
                    if vertices.len() >= bound.max_vertices {
                        result.complete = false;
                        continue;
                    }
                    vertices.insert(w.clone());
                }
                for &t in &targets {
                    let next = (w.clone(), t);
                    if !parent.contains_key(&next) {
                        parent.insert(next.clone(), Some((node.clone(), sym.clone())));
                        depth.insert(next.clone(), d + 1);
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    Ok(result)
}

/// A vertex of the product graph: graph vertex and automaton state.
type Node<V> = (V, usize);

/// Breadth-first parent links, with the symbol read on each link.
type Parents<V> = HashMap<Node<V>, Option<(Node<V>, Symbol)>>;

fn witness<V: VertexKey>(
    parent: &Parents<V>,
    node: &(V, usize),
) -> ColorWord {
    let mut word = Vec::new();
    let mut current = node.clone();
    while let Some(Some((prev, sym))) = parent.get(&current) {
        word.push(sym.clone());
        current = prev.clone();
    }
    word.reverse();
    ColorWord(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Color, ColoredGraph, Regex};

    fn chain() -> ColoredGraph<String> {
        let mut g = ColoredGraph::new();
        g.add_edge("u".into(), Color::from("a"), "v".into());
        g.add_edge("v".into(), Color::from("a"), "w".into());
        g
    }

    fn query(g: &ColoredGraph<String>, from: &str, re: &str) -> QueryResult<String> {
        let aut = re.parse::<Regex>().unwrap().compile();
        regular_path_query(g, &from.to_string(), &aut, ExploreBound::default()).unwrap()
    }

    #[test]
    fn chain_queries() {
        let g = chain();
        let r = query(&g, "u", "aa");
        assert_eq!(r.targets().collect::<Vec<_>>(), vec!["w"]);
        assert_eq!(r.hits["w"].to_string(), "a a");
        assert!(r.complete);
        let r = query(&g, "v", "a-");
        assert_eq!(r.targets().collect::<Vec<_>>(), vec!["u"]);
        let r = query(&g, "u", "a*");
        assert_eq!(r.hits.len(), 3);
        assert_eq!(r.hits["u"], ColorWord::default());
    }

    #[test]
    fn bound_is_reported() {
        let g = chain();
        let aut = "a*".parse::<Regex>().unwrap().compile();
        let r = regular_path_query(&g, &"u".to_string(), &aut, ExploreBound::new(2, 10)).unwrap();
        assert_eq!(r.status(), QueryStatus::BoundExceeded);
        let r = regular_path_query(&g, &"u".to_string(), &aut, ExploreBound::new(10, 1)).unwrap();
        assert_eq!(r.hits.len(), 2);
        assert!(!r.complete);
    }

    #[test]
    fn unknown_start_vertex() {
        let aut = "a".parse::<Regex>().unwrap().compile();
        assert!(matches!(
            regular_path_query(&chain(), &"z".to_string(), &aut, ExploreBound::default()),
            Err(GraphError::VertexNotFound(_))
        ));
    }
}
