//! Text and JSON graph files.
//!
//! Text format:
//!
//! ```text
//! semisimple <n>          | bipartite <a> <b>
//! # name: <free text>     (optional metadata)
//! # param <key>=<value>   (optional metadata, repeatable)
//! u v                     (one edge per line; `u u` is a loop)
//! ```
//!
//! Bipartite files use flat indices: class A is `0..a`, class B is
//! `a..a+b`. Anything after `#` is a comment. Serialisation is canonical:
//! header, name, parameters sorted by key, edges in lexicographic order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{normalize, AnyGraph, BipartiteGraph, Edge, GraphError, SemisimpleGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    pub graph: AnyGraph,
    pub name: Option<String>,
    pub params: BTreeMap<String, String>,
}

/// JSON mirror of the text format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub kind: String,
    pub sizes: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, String>,
}

impl GraphDocument {
    pub fn new(graph: impl Into<AnyGraph>) -> Self {
        GraphDocument {
            graph: graph.into(),
            name: None,
            params: BTreeMap::new(),
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn param(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut header: Option<(usize, Vec<&str>)> = None;
        let mut name = None;
        let mut params = BTreeMap::new();
        let mut edges: Vec<(usize, Edge)> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let (body, comment) = match raw.find('#') {
                Some(pos) => (&raw[..pos], Some(raw[pos + 1..].trim())),
                None => (raw, None),
            };
            if let Some(c) = comment {
                if let Some(rest) = c.strip_prefix("name:") {
                    name = Some(rest.trim().to_string());
                } else if let Some(rest) = c.strip_prefix("param ") {
                    if let Some((k, v)) = rest.split_once('=') {
                        params.insert(k.trim().to_string(), v.trim().to_string());
                    }
                }
            }
            let tokens: Vec<&str> = body.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            if header.is_none() {
                header = Some((line_no, tokens));
                continue;
            }
            let parsed = match tokens.as_slice() {
                [u, v] => u.parse::<usize>().ok().zip(v.parse::<usize>().ok()),
                _ => None,
            };
            let edge = parsed.ok_or_else(|| GraphError::MalformedEdge {
                line: line_no,
                text: raw.to_string(),
            })?;
            edges.push((line_no, edge));
        }

        let Some((line, tokens)) = header else {
            return Err(GraphError::MalformedHeader {
                line: 1,
                text: String::new(),
            });
        };
        let bad_header = || GraphError::MalformedHeader {
            line,
            text: tokens.join(" "),
        };
        let sizes: Vec<usize> = tokens[1..]
            .iter()
            .map(|t| t.parse::<usize>().map_err(|_| bad_header()))
            .collect::<Result<_, _>>()?;
        let graph = match (tokens[0], sizes.as_slice()) {
            ("semisimple", &[n]) => {
                AnyGraph::Semisimple(SemisimpleGraph::from_edges(n, edges.into_iter().map(|(_, e)| e))?)
            }
            ("bipartite", &[a, b]) => {
                AnyGraph::Bipartite(BipartiteGraph::from_flat_edges(a, b, edges.into_iter().map(|(_, e)| e))?)
            }
            _ => return Err(bad_header()),
        };
        Ok(GraphDocument {
            graph,
            name,
            params,
        })
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        match &self.graph {
            AnyGraph::Semisimple(g) => writeln!(out, "semisimple {}", g.vertex_count()),
            AnyGraph::Bipartite(g) => writeln!(out, "bipartite {} {}", g.size_a(), g.size_b()),
        }
        .unwrap();
        if let Some(name) = &self.name {
            writeln!(out, "# name: {name}").unwrap();
        }
        for (k, v) in &self.params {
            writeln!(out, "# param {k}={v}").unwrap();
        }
        for (u, v) in self.graph.base().edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn to_json(&self) -> GraphJson {
        let (kind, sizes) = match &self.graph {
            AnyGraph::Semisimple(g) => ("semisimple", vec![g.vertex_count()]),
            AnyGraph::Bipartite(g) => ("bipartite", vec![g.size_a(), g.size_b()]),
        };
        GraphJson {
            kind: kind.to_string(),
            sizes,
            edges: self.graph.base().edges().into_iter().map(|(u, v)| [u, v]).collect(),
            name: self.name.clone(),
            parameters: self.params.clone(),
        }
    }

    pub fn from_json(doc: &GraphJson) -> Result<Self, GraphError> {
        let edges = doc.edges.iter().map(|&[u, v]| normalize(u, v));
        let graph = match (doc.kind.as_str(), doc.sizes.as_slice()) {
            ("semisimple", &[n]) => AnyGraph::Semisimple(SemisimpleGraph::from_edges(n, edges)?),
            ("bipartite", &[a, b]) => AnyGraph::Bipartite(BipartiteGraph::from_flat_edges(a, b, edges)?),
            _ => {
                return Err(GraphError::Json(format!(
                    "unknown kind/sizes combination `{}` {:?}",
                    doc.kind, doc.sizes
                )))
            }
        };
        Ok(GraphDocument {
            graph,
            name: doc.name.clone(),
            params: doc.parameters.clone(),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("graph JSON serialises")
    }

    pub fn parse_json(text: &str) -> Result<Self, GraphError> {
        let doc: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        Self::from_json(&doc)
    }

    /// Accepts either format, deciding by the first non-blank character.
    pub fn parse_any(text: &str) -> Result<Self, GraphError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse(text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_bipartite, random_semisimple};
    use proptest::prelude::*;
    use rand::SeedableRng;

    #[test]
    fn parses_loop_and_edge() {
        let doc = GraphDocument::parse("semisimple 3\n0 1\n2 2\n").unwrap();
        let AnyGraph::Semisimple(g) = &doc.graph else {
            panic!("expected semisimple");
        };
        assert_eq!(g.edges(), vec![(0, 1), (2, 2)]);
    }

    #[test]
    fn parses_bipartite() {
        let doc = GraphDocument::parse("bipartite 2 2\n0 2\n").unwrap();
        let AnyGraph::Bipartite(g) = &doc.graph else {
            panic!("expected bipartite");
        };
        assert_eq!(g.edges(), vec![(0, 2)]);
        assert_eq!(g.size_a(), 2);
    }

    #[test]
    fn canonicalises_order_and_comments() {
        let doc = GraphDocument::parse("# leading comment\nsemisimple 4 # header\n3 1\n0 2 # inline\n\n1 1\n").unwrap();
        assert_eq!(doc.serialize(), "semisimple 4\n0 2\n1 1\n1 3\n");
    }

    #[test]
    fn metadata_round_trips() {
        let doc = GraphDocument::new(complete_bipartite(2, 3))
            .named("K_{2,3}")
            .param("m", 2)
            .param("n", 3);
        let text = doc.serialize();
        assert_eq!(GraphDocument::parse(&text).unwrap(), doc);
        assert_eq!(GraphDocument::parse_json(&doc.to_json_string()).unwrap(), doc);
    }

    #[test]
    fn distinct_diagnostics() {
        assert!(matches!(
            GraphDocument::parse("simple 3\n"),
            Err(GraphError::MalformedHeader { line: 1, .. })
        ));
        assert!(matches!(
            GraphDocument::parse("semisimple x\n"),
            Err(GraphError::MalformedHeader { .. })
        ));
        assert!(matches!(GraphDocument::parse(""), Err(GraphError::MalformedHeader { .. })));
        assert!(matches!(
            GraphDocument::parse("semisimple 3\n0 1 2\n"),
            Err(GraphError::MalformedEdge { line: 2, .. })
        ));
        assert_eq!(
            GraphDocument::parse("semisimple 3\n0 3\n"),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(
            GraphDocument::parse("semisimple 3\n0 1\n1 0\n"),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            GraphDocument::parse("bipartite 2 2\n1 1\n"),
            Err(GraphError::LoopInBipartite(1))
        );
        assert_eq!(
            GraphDocument::parse("bipartite 2 2\n2 3\n"),
            Err(GraphError::SameSide(2, 3))
        );
        assert!(matches!(
            GraphDocument::parse_json("{\"kind\":\"tree\",\"sizes\":[2],\"edges\":[]}"),
            Err(GraphError::Json(_))
        ));
    }

    proptest! {
        #[test]
        fn text_and_json_round_trip(seed in any::<u64>(), n in 0usize..9) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let doc = GraphDocument::new(random_semisimple(n, 0.4, 0.3, &mut rng)).param("seed", seed);
            let text = doc.serialize();
            let back = GraphDocument::parse(&text).unwrap();
            prop_assert_eq!(&back, &doc);
            prop_assert_eq!(back.serialize(), text);
            prop_assert_eq!(GraphDocument::parse_any(&doc.to_json_string()).unwrap(), doc);
        }
    }
}
