//! Text, DOT and JSON forms of finite colored graphs.

use serde::Serialize;

use super::{Color, ColoredGraph, GraphError, VertexKey};

/// Parses `vertex ; color ; vertex` lines. A line holding a single vertex
/// declares it without edges; `colors: a b …` declares colors up front.
pub fn parse_graph(text: &str) -> Result<ColoredGraph<String>, GraphError> {
    let mut g = ColoredGraph::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("colors:") {
            for c in rest.split_whitespace() {
                g.add_color(Color::from(c));
            }
            continue;
        }
        let fields: Vec<&str> = line.split(';').map(str::trim).collect();
        match fields.as_slice() {
            [v] => g.add_vertex(v.to_string()),
            [u, c, v] if !u.is_empty() && !c.is_empty() && !v.is_empty() => {
                g.add_edge(u.to_string(), Color::from(*c), v.to_string());
            }
            _ => {
                return Err(GraphError::Parse {
                    line: i + 1,
                    message: "expected 'vertex ; color ; vertex'".into(),
                })
            }
        }
    }
    Ok(g)
}

pub fn to_text<V: VertexKey>(g: &ColoredGraph<V>) -> String {
    let mut out = String::new();
    if !g.colors().is_empty() {
        let names: Vec<&str> = g.colors().iter().map(Color::name).collect();
        out.push_str(&format!("colors: {}\n", names.join(" ")));
    }
    for v in g.vertices() {
        if g.successors(v).next().is_none() && g.predecessors(v).next().is_none() {
            out.push_str(&format!("{v}\n"));
        }
    }
    for (u, c, v) in g.edges() {
        out.push_str(&format!("{u} ; {c} ; {v}\n"));
    }
    out
}

fn dot_quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for ch in s.chars() {
        match ch {
            '"' => q.push_str("\\\""),
            '\\' => q.push_str("\\\\"),
            '\n' => q.push_str("\\n"),
            c => q.push(c),
        }
    }
    q.push('"');
    q
}

/// A `digraph` with vertex names as node ids and colors as edge labels.
pub fn to_dot<V: VertexKey>(g: &ColoredGraph<V>, name: &str) -> String {
    let mut out = format!("digraph {} {{\n", dot_quote(name));
    for v in g.vertices() {
        out.push_str(&format!("  {};\n", dot_quote(&v.to_string())));
    }
    for (u, c, v) in g.edges() {
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            dot_quote(&u.to_string()),
            dot_quote(&v.to_string()),
            dot_quote(c.name())
        ));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JsonEdge {
    pub from: String,
    pub color: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjacencyJson {
    pub colors: Vec<String>,
    pub vertices: Vec<String>,
    pub edges: Vec<JsonEdge>,
}

pub fn to_adjacency<V: VertexKey>(g: &ColoredGraph<V>) -> AdjacencyJson {
    AdjacencyJson {
        colors: g.colors().iter().map(|c| c.name().to_string()).collect(),
        vertices: g.vertices().map(ToString::to_string).collect(),
        edges: g
            .edges()
            .map(|(u, c, v)| JsonEdge {
                from: u.to_string(),
                color: c.name().to_string(),
                to: v.to_string(),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let g = parse_graph("colors: a b\nu ; a ; v\nv ; b ; u\niso\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(parse_graph(&to_text(&g)).unwrap(), g);
        assert!(matches!(
            parse_graph("u ; a"),
            Err(GraphError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn dot_escapes_labels() {
        let g = parse_graph("x\"y ; c ; z").unwrap();
        let dot = to_dot(&g, "g");
        assert!(dot.starts_with("digraph \"g\" {\n"));
        assert!(dot.contains("\"x\\\"y\" -> \"z\" [label=\"c\"];"));
    }

    #[test]
    fn adjacency_shape() {
        let g = parse_graph("u ; a ; v").unwrap();
        let json = serde_json::to_value(to_adjacency(&g)).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "colors": ["a"],
                "vertices": ["u", "v"],
                "edges": [{"from": "u", "color": "a", "to": "v"}]
            })
        );
    }
}
