//! Versioned JSON and Graphviz DOT for graphs, multigraphs and digraphs.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::multi::{Digraph, Multigraph};

pub const SCHEMA: &str = "switchlab/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub schema: String,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    /// Present for multigraphs, parallel to `edges`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<Vec<u64>>,
    /// Edges are ordered pairs.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub directed: bool,
}

impl GraphJson {
    fn check(&self) -> Result<()> {
        if self.schema != SCHEMA {
            return Err(Error::Parse(format!("unknown schema {:?}, expected {SCHEMA:?}", self.schema)));
        }
        Ok(())
    }
}

pub fn graph_json(g: &Graph) -> GraphJson {
    GraphJson {
        schema: SCHEMA.into(),
        n: g.order(),
        edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        mult: None,
        directed: false,
    }
}

pub fn multigraph_json(m: &Multigraph) -> GraphJson {
    let edges = m.edges();
    GraphJson {
        schema: SCHEMA.into(),
        n: m.order(),
        edges: edges.iter().map(|&(u, v, _)| [u, v]).collect(),
        mult: Some(edges.iter().map(|&(_, _, k)| k).collect()),
        directed: false,
    }
}

pub fn digraph_json(d: &Digraph) -> GraphJson {
    GraphJson {
        schema: SCHEMA.into(),
        n: d.order(),
        edges: d.arcs().into_iter().map(|(u, v)| [u, v]).collect(),
        mult: None,
        directed: true,
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(text)?;
    j.check()?;
    if j.directed || j.mult.is_some() {
        return Err(Error::Parse("expected a simple undirected graph".into()));
    }
    let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
    Graph::from_edges(j.n, &edges)
}

pub fn parse_multigraph(text: &str) -> Result<Multigraph> {
    let j: GraphJson = serde_json::from_str(text)?;
    j.check()?;
    let mult = j.mult.unwrap_or_else(|| vec![1; j.edges.len()]);
    if mult.len() != j.edges.len() {
        return Err(Error::Parse("mult and edges differ in length".into()));
    }
    let edges: Vec<(usize, usize, u64)> = j.edges.iter().zip(&mult).map(|(e, &k)| (e[0], e[1], k)).collect();
    Multigraph::from_edges(j.n, &edges)
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let j: GraphJson = serde_json::from_str(text)?;
    j.check()?;
    let arcs: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
    Digraph::from_arcs(j.n, &arcs)
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn dot(kind: &str, sep: &str, n: usize, edges: impl Iterator<Item = (usize, usize, Option<u64>)>) -> String {
    let mut s = format!("{kind} G {{\n");
    for v in 0..n {
        writeln!(s, "  {v};").unwrap();
    }
    for (u, v, label) in edges {
        match label {
            Some(k) => writeln!(s, "  {u} {sep} {v} [label=\"{k}\"];").unwrap(),
            None => writeln!(s, "  {u} {sep} {v};").unwrap(),
        }
    }
    s.push_str("}\n");
    s
}

pub fn graph_dot(g: &Graph) -> String {
    dot("graph", "--", g.order(), g.edges().into_iter().map(|(u, v)| (u, v, None)))
}

/// Multiplicities appear as edge labels.
pub fn multigraph_dot(m: &Multigraph) -> String {
    dot("graph", "--", m.order(), m.edges().into_iter().map(|(u, v, k)| (u, v, Some(k))))
}

pub fn digraph_dot(d: &Digraph) -> String {
    dot("digraph", "->", d.order(), d.arcs().into_iter().map(|(u, v)| (u, v, None)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let g = Graph::path(5);
        assert_eq!(parse_graph(&to_json_string(&graph_json(&g))).unwrap(), g);
        let m = Multigraph::from_edges(3, &[(0, 1, 2), (1, 2, 3)]).unwrap();
        assert_eq!(parse_multigraph(&to_json_string(&multigraph_json(&m))).unwrap(), m);
        let d = Digraph::from_arcs(3, &[(0, 1), (1, 0), (2, 1)]).unwrap();
        assert_eq!(parse_digraph(&to_json_string(&digraph_json(&d))).unwrap(), d);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_graph(r#"{"schema":"other","n":1,"edges":[]}"#).is_err());
        assert!(parse_graph(r#"{"schema":"switchlab/1","n":2,"edges":[[0,2]]}"#).is_err());
        assert!(parse_graph(r#"{"schema":"switchlab/1","n":2,"edges":[[0,1]],"directed":true}"#).is_err());
        assert_eq!(parse_graph(r#"{"schema":"switchlab/1","n":0,"edges":[]}"#).unwrap(), Graph::new(0));
    }

    #[test]
    fn dot_output() {
        let s = multigraph_dot(&Multigraph::from_edges(2, &[(0, 1, 4)]).unwrap());
        assert!(s.contains("0 -- 1 [label=\"4\"]"));
        assert!(digraph_dot(&Digraph::from_arcs(2, &[(1, 0)]).unwrap()).contains("1 -> 0"));
    }
}
