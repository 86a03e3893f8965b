//! The clique (Whitney) complex of a graph.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A complete subgraph, stored as its strictly increasing vertex list. The increasing
/// order is the orientation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex(pub Vec<usize>);

impl Simplex {
    /// Sorts and deduplicates the given vertices.
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Dimension, i.e. vertex count minus one. Panics on the empty simplex.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The codimension-one face obtained by deleting the `k`-th vertex.
    pub fn face(&self, k: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(k);
        Simplex(v)
    }

    pub fn contains(&self, other: &Simplex) -> bool {
        other.0.iter().all(|x| self.0.binary_search(x).is_ok())
    }
}

impl fmt::Display for Simplex {
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

/// All cliques of a graph, grouped by dimension and sorted lexicographically.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    graph: Graph,
    simplices_by_dim: Vec<Vec<Simplex>>,
    index_of: HashMap<Simplex, (usize, usize)>,
    offsets: Vec<usize>,
}

impl SimplicialComplex {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Number of nonempty dimensions, so the top dimension is `levels() - 1`.
    pub fn levels(&self) -> usize {
        self.simplices_by_dim.len()
    }

    pub fn simplices(&self, p: usize) -> &[Simplex] {
        self.simplices_by_dim.get(p).map_or(&[], Vec::as_slice)
    }

    pub fn simplices_by_dim(&self) -> &[Vec<Simplex>] {
        &self.simplices_by_dim
    }

    /// All simplices in the global order: by dimension, then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices_by_dim.iter().flatten()
    }

    /// `(v_0, v_1, ...)`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices_by_dim.iter().map(Vec::len).collect()
    }

    pub fn v(&self, p: usize) -> usize {
        self.simplices(p).len()
    }

    /// Total number of simplices.
    pub fn size(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    /// Start of each dimension block in the global order; has `levels() + 1` entries.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// `(dimension, position within that dimension)`.
    pub fn index_of(&self, s: &Simplex) -> Option<(usize, usize)> {
        self.index_of.get(s).copied()
    }

    pub fn global_index(&self, s: &Simplex) -> Option<usize> {
        self.index_of(s).map(|(p, i)| self.offsets[p] + i)
    }

    pub fn require(&self, s: &Simplex) -> Result<usize> {
        self.global_index(s).ok_or_else(|| Error::NotInComplex(s.0.clone()))
    }

    pub fn simplex_at(&self, global: usize) -> &Simplex {
        let p = self.dim_of_index(global);
        &self.simplices_by_dim[p][global - self.offsets[p]]
    }

    pub fn dim_of_index(&self, global: usize) -> usize {
        self.offsets.partition_point(|&o| o <= global) - 1
    }

    /// Dimension of every simplex in the global order.
    pub fn grading(&self) -> Vec<usize> {
        self.simplices_by_dim
            .iter()
            .enumerate()
            .flat_map(|(p, s)| std::iter::repeat_n(p, s.len()))
            .collect()
    }

    /// `Σ (-1)^p v_p`.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices_by_dim
            .iter()
            .enumerate()
            .map(|(p, s)| if p % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }
}

/// Enumerates all cliques of `g` with dimension at most `max_dim`.
pub fn build_complex(g: &Graph, max_dim: Option<usize>) -> SimplicialComplex {
    let mut simplices_by_dim: Vec<Vec<Simplex>> = Vec::new();
    if g.vertex_count() > 0 {
        simplices_by_dim.push((0..g.vertex_count()).map(|v| Simplex(vec![v])).collect());
    }
    while let Some(last) = simplices_by_dim.last() {
        if max_dim.is_some_and(|m| simplices_by_dim.len() > m) {
            break;
        }
        let mut next = Vec::new();
        for s in last {
            let top = *s.0.last().expect("nonempty simplex");
            for &w in g.neighbors(top) {
                if w > top && s.0.iter().all(|&u| g.has_edge(u, w)) {
                    let mut v = s.0.clone();
                    v.push(w);
                    next.push(Simplex(v));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        // Extension by larger vertices already yields lexicographic order per parent;
        // parents are sorted, so `next` is sorted too.
        simplices_by_dim.push(next);
    }
    let mut offsets = vec![0];
    let mut index_of = HashMap::new();
    for (p, list) in simplices_by_dim.iter().enumerate() {
        for (i, s) in list.iter().enumerate() {
            index_of.insert(s.clone(), (p, i));
        }
        offsets.push(offsets[p] + list.len());
    }
    SimplicialComplex { graph: g.clone(), simplices_by_dim, index_of, offsets }
}

/// Euler characteristic `Σ (-1)^p v_p` of a complex.
pub fn euler_characteristic(c: &SimplicialComplex) -> i64 {
    c.euler_characteristic()
}
