//! Vertex-weighted simple undirected graphs and their text format.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

/// Dense vertex id in `0..n`.
pub type Vertex = usize;

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Builds a set from arbitrary ids, rejecting duplicates.
    pub fn try_from_vec(mut ids: Vec<Vertex>) -> Result<Self, GraphError> {
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0]));
        }
        Ok(VertexSet(ids))
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|v| other.contains(*v)).collect())
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.0.iter().chain(other.0.iter()).copied().collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    /// Neither set contains the other and they share an element.
    pub fn overlaps(&self, other: &VertexSet) -> bool {
        !self.is_subset(other) && !other.is_subset(self) && !self.intersection(other).is_empty()
    }
}

impl FromIterator<Vertex> for VertexSet {
    /// Collects ids, silently merging repeats.
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let set: BTreeSet<Vertex> = iter.into_iter().collect();
        VertexSet(set.into_iter().collect())
    }
}

impl From<&[Vertex]> for VertexSet {
    fn from(ids: &[Vertex]) -> Self {
        ids.iter().copied().collect()
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(ids: [Vertex; N]) -> Self {
        ids.into_iter().collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vertex {0} out of range for graph with {1} vertices")]
    VertexOutOfRange(Vertex, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(Vertex),
    #[error("invalid weight {1} for vertex {0}: weights must be finite and nonnegative")]
    InvalidWeight(Vertex, f64),
}

/// Simple undirected graph with nonnegative vertex weights.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    adjacency: Vec<BTreeSet<Vertex>>,
    weights: Vec<f64>,
}

impl WeightedGraph {
    /// Edgeless graph on `n` unit-weight vertices.
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            adjacency: vec![BTreeSet::new(); n],
            weights: vec![1.0; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = WeightedGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn with_weights(mut self, weights: &[f64]) -> Result<Self, GraphError> {
        for (v, &w) in weights.iter().enumerate() {
            self.set_weight(v, w)?;
        }
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v >= self.n() {
            Err(GraphError::VertexOutOfRange(v, self.n()))
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !self.adjacency[u].insert(v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adjacency[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        let removed = self.adjacency[u].remove(&v);
        self.adjacency[v].remove(&u);
        removed
    }

    pub fn set_weight(&mut self, v: Vertex, w: f64) -> Result<(), GraphError> {
        self.check_vertex(v)?;
        if !w.is_finite() || w < 0.0 {
            return Err(GraphError::InvalidWeight(v, w));
        }
        self.weights[v] = w;
        Ok(())
    }

    pub fn weight(&self, v: Vertex) -> f64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight_of<I: IntoIterator<Item = Vertex>>(&self, vertices: I) -> f64 {
        vertices.into_iter().map(|v| self.weights[v]).fold(0.0, |a, w| a + w)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adjacency[u].contains(&v)
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adjacency[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    /// `N[v]`, the closed neighborhood.
    pub fn closed_neighborhood(&self, v: Vertex) -> VertexSet {
        self.adjacency[v].iter().copied().chain(std::iter::once(v)).collect()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn is_clique(&self, vertices: &[Vertex]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Subgraph induced by `keep`. Vertex `i` of the result is `keep[i]` here;
    /// the returned vector is that relabeling.
    pub fn induced(&self, keep: &[Vertex]) -> (WeightedGraph, Vec<Vertex>) {
        let mut labels: Vec<Vertex> = keep.to_vec();
        labels.sort_unstable();
        labels.dedup();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in labels.iter().enumerate() {
            index[v] = i;
        }
        let adjacency = labels
            .iter()
            .map(|&v| {
                self.adjacency[v]
                    .iter()
                    .filter(|&&u| index[u] != usize::MAX)
                    .map(|&u| index[u])
                    .collect()
            })
            .collect();
        let weights = labels.iter().map(|&v| self.weights[v]).collect();
        (WeightedGraph { adjacency, weights }, labels)
    }

    /// `G \ removed`, with the relabeling back to ids of `self`.
    pub fn remove_vertices(&self, removed: &VertexSet) -> (WeightedGraph, Vec<Vertex>) {
        let keep: Vec<Vertex> = self.vertices().filter(|v| !removed.contains(*v)).collect();
        self.induced(&keep)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Serializes to the `p`/`v`/`e` text format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p {} {}", self.n(), self.edge_count());
        for v in self.vertices() {
            let _ = writeln!(s, "v {} {}", v, self.weights[v]);
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "e {u} {v}");
        }
        s
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

pub(crate) fn parse_field<T: FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::new(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| ParseError::new(line, format!("invalid {what} `{tok}`")))
}

/// Content of a line with any `#` comment removed, or `None` if blank.
pub(crate) fn strip_comment(raw: &str) -> Option<&str> {
    let body = raw.split('#').next().unwrap_or("").trim();
    (!body.is_empty()).then_some(body)
}

impl FromStr for WeightedGraph {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut graph: Option<WeightedGraph> = None;
        let mut declared_edges = 0usize;
        let mut seen_edges = 0usize;
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let Some(body) = strip_comment(raw) else { continue };
            let mut toks = body.split_whitespace();
            let tag = toks.next().unwrap_or_default();
            match (tag, graph.as_mut()) {
                ("p", None) => {
                    let n: usize = parse_field(toks.next(), line, "vertex count")?;
                    declared_edges = parse_field(toks.next(), line, "edge count")?;
                    graph = Some(WeightedGraph::new(n));
                }
                ("p", Some(_)) => return Err(ParseError::new(line, "duplicate `p` line")),
                (_, None) => return Err(ParseError::new(line, "expected `p <n> <m>` header first")),
                ("v", Some(g)) => {
                    let v: Vertex = parse_field(toks.next(), line, "vertex id")?;
                    let w = match toks.next() {
                        Some(tok) => parse_field(Some(tok), line, "weight")?,
                        None => 1.0,
                    };
                    g.set_weight(v, w).map_err(|e| ParseError::new(line, e.to_string()))?;
                }
                ("e", Some(g)) => {
                    let u: Vertex = parse_field(toks.next(), line, "endpoint")?;
                    let v: Vertex = parse_field(toks.next(), line, "endpoint")?;
                    g.add_edge(u, v).map_err(|e| ParseError::new(line, e.to_string()))?;
                    seen_edges += 1;
                }
                (other, Some(_)) => {
                    return Err(ParseError::new(line, format!("unknown line tag `{other}`")))
                }
            }
            if toks.next().is_some() {
                return Err(ParseError::new(line, "trailing tokens"));
            }
        }
        let graph = graph.ok_or_else(|| ParseError::new(last_line, "missing `p` header"))?;
        if seen_edges != declared_edges {
            return Err(ParseError::new(
                last_line,
                format!("header declares {declared_edges} edges, found {seen_edges}"),
            ));
        }
        Ok(graph)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_weights_and_comments() {
        let g: WeightedGraph = "# a path\np 3 2\nv 0 2.5\nv 2\ne 0 1\ne 1 2 # tail\n".parse().unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.weights(), &[2.5, 1.0, 1.0]);
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(0, 2));
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "e 0 1\n",
            "p 2 1\ne 0 0\n",
            "p 2 1\ne 0 2\n",
            "p 2 2\ne 0 1\ne 1 0\n",
            "p 2 0\nv 0 -1\n",
            "p 2 1\n",
            "p 2 0\nx 1\n",
            "p two 0\n",
        ] {
            assert!(bad.parse::<WeightedGraph>().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn vertex_set_rejects_duplicates() {
        assert_eq!(VertexSet::try_from_vec(vec![3, 1, 3]), Err(GraphError::DuplicateVertex(3)));
        assert_eq!(VertexSet::try_from_vec(vec![3, 1]).unwrap().as_slice(), &[1, 3]);
    }

    #[test]
    fn induced_relabels() {
        let g = WeightedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let (h, labels) = g.remove_vertices(&VertexSet::from([1]));
        assert_eq!(labels, vec![0, 2, 3]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(1, 2)]);
    }

    fn arb_graph() -> impl Strategy<Value = WeightedGraph> {
        (0usize..9).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            (
                proptest::collection::vec(any::<bool>(), pairs),
                proptest::collection::vec(0.0f64..100.0, n),
            )
                .prop_map(move |(mask, weights)| {
                    let mut g = WeightedGraph::new(n);
                    let mut k = 0;
                    for u in 0..n {
                        for v in u + 1..n {
                            if mask[k] {
                                g.add_edge(u, v).unwrap();
                            }
                            k += 1;
                        }
                    }
                    g.with_weights(&weights).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(g in arb_graph()) {
            let back: WeightedGraph = g.to_text().parse().unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
