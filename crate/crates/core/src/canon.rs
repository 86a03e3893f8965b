//! Colour refinement, a canonical labelling for small graphs and enumeration of
//! unlabelled graphs by vertex augmentation.

use std::collections::{BTreeSet, HashSet};

use crate::graph::Graph;

/// Ordered partition of the vertex set into cells.
pub type Partition = Vec<Vec<usize>>;

/// Refines `partition` until it is equitable: every vertex of a cell has the same
/// number of neighbours in every other cell. Split cells keep their position and
/// the pieces are ordered by their neighbour-count signature, so the result depends
/// only on the graph structure and the input order of cells.
pub fn refine(g: &Graph, partition: &Partition) -> Partition {
    let mut cells = partition.clone();
    loop {
        let mut cell_of = vec![0usize; g.vertex_count()];
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        let mut next: Partition = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = vec![0usize; cells.len()];
                    for &w in g.neighbors(v) {
                        sig[cell_of[w]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    let mut piece: Vec<usize> = keyed[start..i].iter().map(|k| k.1).collect();
                    piece.sort_unstable();
                    next.push(piece);
                    start = i;
                }
            }
            if keyed[0].0 != keyed[keyed.len() - 1].0 {
                changed = true;
            }
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

fn unit_partition(g: &Graph) -> Partition {
    if g.vertex_count() == 0 {
        Vec::new()
    } else {
        vec![(0..g.vertex_count()).collect()]
    }
}

fn relabel(g: &Graph, order: &[usize]) -> Graph {
    let mut position = vec![0usize; order.len()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    Graph::new(g.vertex_count(), g.edges().map(|(a, b)| (position[a], position[b])))
        .expect("relabelling preserves validity")
}

/// An isomorphic copy of `g` with vertices ordered by their equitable-refinement cell
/// (ties broken by the original label). Not canonical, but isomorphic graphs often
/// coincide, which makes it a cheap memo key.
pub fn refined_relabel(g: &Graph) -> Graph {
    let cells = refine(g, &unit_partition(g));
    let order: Vec<usize> = cells.into_iter().flatten().collect();
    relabel(g, &order)
}

type Code = Vec<(usize, usize)>;

fn leaf_code(g: &Graph, cells: &Partition) -> Code {
    let mut position = vec![0usize; g.vertex_count()];
    for (i, cell) in cells.iter().enumerate() {
        position[cell[0]] = i;
    }
    let mut code: Code = g
        .edges()
        .map(|(a, b)| {
            let (x, y) = (position[a], position[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    code.sort_unstable();
    code
}

fn individualize(cells: &Partition, at: usize, v: usize) -> Partition {
    let mut out = Vec::with_capacity(cells.len() + 1);
    for (i, cell) in cells.iter().enumerate() {
        if i == at {
            out.push(vec![v]);
            out.push(cell.iter().copied().filter(|&w| w != v).collect());
        } else {
            out.push(cell.clone());
        }
    }
    out
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Code, Vec<usize>)>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Partition) {
        let cells = refine(self.g, &cells);
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(at) = target else {
            let code = leaf_code(self.g, &cells);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                let order = cells.iter().map(|c| c[0]).collect();
                self.best = Some((code, order));
            }
            return;
        };
        for &v in &cells[at].clone() {
            self.descend(individualize(&cells, at, v));
        }
    }
}

/// Canonical labelling by individualisation and refinement. Isomorphic graphs map to
/// identical graphs. The search is exhaustive below the refinement, so it is meant
/// for small or irregular graphs.
pub fn canonical_form(g: &Graph) -> Graph {
    let mut search = Search { g, best: None };
    search.descend(unit_partition(g));
    match search.best {
        Some((_, order)) => relabel(g, &order),
        None => g.clone(),
    }
}

/// All unlabelled graphs on exactly `n` vertices whose every induced subgraph satisfies
/// `hereditary`, in canonical form. The predicate must be closed under vertex deletion.
pub fn enumerate_graphs(n: usize, hereditary: impl Fn(&Graph) -> bool) -> Vec<Graph> {
    let mut level: Vec<Graph> = vec![Graph::empty(0)];
    for k in 0..n {
        let mut seen: HashSet<Code> = HashSet::new();
        let mut next = Vec::new();
        for base in &level {
            for mask in 0u64..(1u64 << k) {
                let extra = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| (i, k));
                let Ok(candidate) = Graph::new(k + 1, base.edges().chain(extra)) else {
                    continue;
                };
                if !hereditary(&candidate) {
                    continue;
                }
                let canon = canonical_form(&candidate);
                if seen.insert(canon.edges().collect()) {
                    next.push(canon);
                }
            }
        }
        next.sort_by_key(|g| g.edges().collect::<BTreeSet<_>>());
        level = next;
    }
    level
}
