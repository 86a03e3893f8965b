//! Finite simple graphs, induced subgraphs and the edge-list text format.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A finite simple graph on the vertex set `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Graph", 2)?;
        st.serialize_field("vertex_count", &self.vertex_count)?;
        st.serialize_field("edges", &self.edges)?;
        st.end()
    }
}

/// An induced subgraph together with the labels its vertices carried in the host graph.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Subgraph {
    pub graph: Graph,
    /// `labels[i]` is the host vertex that became vertex `i`.
    pub labels: Vec<usize>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range endpoints.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) has an endpoint >= vertex count {vertex_count}"
                )));
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
        }
        Ok(Self::from_edge_set(vertex_count, set))
    }

    fn from_edge_set(vertex_count: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self { vertex_count, edges, adjacency }
    }

    /// Graph without edges.
    pub fn empty(vertex_count: usize) -> Self {
        Self::from_edge_set(vertex_count, BTreeSet::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adjacency[x]
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adjacency[x].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Subgraph induced on `vertices` (duplicates ignored, order normalised).
    pub fn induced(&self, vertices: &[usize]) -> Subgraph {
        let labels: Vec<usize> = vertices.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let mut position = vec![usize::MAX; self.vertex_count];
        for (i, &v) in labels.iter().enumerate() {
            position[v] = i;
        }
        let mut edges = BTreeSet::new();
        for (i, &v) in labels.iter().enumerate() {
            for &w in &self.adjacency[v] {
                let j = position[w];
                if j != usize::MAX && i < j {
                    edges.insert((i, j));
                }
            }
        }
        Subgraph { graph: Self::from_edge_set(labels.len(), edges), labels }
    }

    /// Induced subgraph on the neighbours of `x`.
    pub fn unit_sphere(&self, x: usize) -> Subgraph {
        self.induced(&self.adjacency[x])
    }

    /// Vertex set of the unit ball `{x} ∪ S(x)`.
    pub fn unit_ball(&self, x: usize) -> Vec<usize> {
        let mut ball = self.adjacency[x].clone();
        let at = ball.partition_point(|&w| w < x);
        ball.insert(at, x);
        ball
    }

    /// The graph with `x` and its edges deleted.
    pub fn remove_vertex(&self, x: usize) -> Subgraph {
        let keep: Vec<usize> = (0..self.vertex_count).filter(|&v| v != x).collect();
        self.induced(&keep)
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True for graphs with exactly one component (the empty graph is not connected).
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges.iter().all(|&(a, b)| {
            let (na, nb) = (&self.adjacency[a], &self.adjacency[b]);
            !na.iter().any(|w| nb.binary_search(w).is_ok())
        })
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count;
        let edges = self.edges().chain(other.edges().map(|(a, b)| (a + shift, b + shift)));
        Self::from_edge_set(shift + other.vertex_count, edges.collect())
    }

    /// Parses the edge-list format: first line the vertex count, then one `i j` pair per line.
    /// `#` starts a comment; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertex_count: Option<usize> = None;
        let mut edges = BTreeSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let parse_id = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse { line, message: format!("`{s}` is not a vertex id") })
            };
            match vertex_count {
                None => {
                    if fields.len() != 1 {
                        return Err(Error::Parse { line, message: "expected the vertex count".into() });
                    }
                    vertex_count = Some(parse_id(fields[0])?);
                }
                Some(n) => {
                    if fields.len() != 2 {
                        return Err(Error::Parse { line, message: format!("expected `i j`, got `{content}`") });
                    }
                    let (a, b) = (parse_id(fields[0])?, parse_id(fields[1])?);
                    if a == b {
                        return Err(Error::Parse { line, message: format!("self-loop at vertex {a}") });
                    }
                    if a >= n || b >= n {
                        return Err(Error::Parse {
                            line,
                            message: format!("vertex id out of range in `{content}` (n = {n})"),
                        });
                    }
                    if !edges.insert((a.min(b), a.max(b))) {
                        return Err(Error::Parse { line, message: format!("duplicate edge `{content}`") });
                    }
                }
            }
        }
        let n = vertex_count.ok_or(Error::Parse { line: 0, message: "missing vertex count".into() })?;
        Ok(Self::from_edge_set(n, edges))
    }

    /// Canonical text form: vertex count, then edges in lexicographic order.
    pub fn serialize(&self) -> String {
        let mut out = format!("{}\n", self.vertex_count);
        for (a, b) in self.edges() {
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }
}
