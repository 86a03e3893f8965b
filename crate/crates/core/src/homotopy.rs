//! Contractibility of graphs, contraction by vertex removal, and Čech covers with their nerves.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::canon::refined_relabel;
use crate::complex::build_complex;
use crate::error::{Error, Result};
use crate::graph::{Graph, Subgraph};
use crate::hodge::{betti, BettiVector};

/// Recursive subproblems larger than this are not decided.
pub const MAX_RECURSION_VERTICES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Contractibility {
    Contractible,
    NotContractible,
    Undecided,
}

impl Contractibility {
    pub fn is_contractible(self) -> bool {
        self == Contractibility::Contractible
    }
}

type MemoKey = (usize, Vec<(usize, usize)>);

fn memo() -> &'static Mutex<HashMap<MemoKey, Contractibility>> {
    static MEMO: OnceLock<Mutex<HashMap<MemoKey, Contractibility>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

fn memo_key(g: &Graph) -> MemoKey {
    let r = refined_relabel(g);
    (r.vertex_count(), r.edges().collect())
}

fn is_cone(g: &Graph) -> bool {
    let n = g.vertex_count();
    (0..n).any(|x| g.degree(x) + 1 == n)
}

/// `g` is contractible if it is a single vertex, or some vertex has a contractible
/// unit sphere and deleting it leaves a contractible graph.
pub fn is_contractible(g: &Graph) -> Contractibility {
    use Contractibility::*;
    let n = g.vertex_count();
    if n == 0 {
        return NotContractible;
    }
    if n == 1 || is_cone(g) {
        return Contractible;
    }
    if !g.is_connected() {
        return NotContractible;
    }
    if n > MAX_RECURSION_VERTICES {
        return Undecided;
    }
    let key = memo_key(g);
    if let Some(&hit) = memo().lock().expect("memo lock").get(&key) {
        return hit;
    }
    let mut outcome = NotContractible;
    for x in 0..n {
        let sphere = is_contractible(&g.unit_sphere(x).graph);
        if sphere == NotContractible {
            continue;
        }
        let rest = is_contractible(&g.remove_vertex(x).graph);
        match (sphere, rest) {
            (Contractible, Contractible) => {
                outcome = Contractible;
                break;
            }
            (_, NotContractible) => {}
            _ => outcome = Undecided,
        }
    }
    memo().lock().expect("memo lock").insert(key, outcome);
    outcome
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Contraction {
    /// The remaining graph, with host labels.
    pub reduced: Subgraph,
    /// Host vertices in the order they were removed.
    pub removed: Vec<usize>,
}

/// Repeatedly deletes the lowest-labelled vertex whose unit sphere is contractible.
pub fn contract(g: &Graph) -> Contraction {
    let mut current = g.induced(&(0..g.vertex_count()).collect::<Vec<_>>());
    let mut removed = Vec::new();
    'outer: loop {
        for x in 0..current.graph.vertex_count() {
            if is_contractible(&current.graph.unit_sphere(x).graph).is_contractible() {
                removed.push(current.labels[x]);
                let next = current.graph.remove_vertex(x);
                let labels = next.labels.iter().map(|&i| current.labels[i]).collect();
                current = Subgraph { graph: next.graph, labels };
                continue 'outer;
            }
        }
        break;
    }
    Contraction { reduced: current, removed }
}

/// A finite family of vertex subsets of a host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub patches: Vec<Vec<usize>>,
}

impl Cover {
    /// Patches are sorted and deduplicated; empty patches are rejected.
    pub fn new(patches: Vec<Vec<usize>>) -> Result<Self> {
        let mut out = Vec::with_capacity(patches.len());
        for (i, mut p) in patches.into_iter().enumerate() {
            p.sort_unstable();
            p.dedup();
            if p.is_empty() {
                return Err(Error::InvalidParameter(format!("patch {i} is empty")));
            }
            out.push(p);
        }
        Ok(Self { patches: out })
    }

    /// One patch per line, vertex ids separated by whitespace. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut patches = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let patch = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|e| Error::Parse { line: lineno + 1, message: format!("{tok:?}: {e}") })
                })
                .collect::<Result<Vec<_>>>()?;
            patches.push(patch);
        }
        Self::new(patches)
    }

    /// The cover by all unit balls.
    pub fn unit_balls(g: &Graph) -> Self {
        Self { patches: (0..g.vertex_count()).map(|x| g.unit_ball(x)).collect() }
    }

    pub fn len(&self) -> usize {
        self.patches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patches.is_empty()
    }

    pub fn serialize(&self) -> String {
        self.patches
            .iter()
            .map(|p| p.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ") + "\n")
            .collect()
    }

    fn intersection(&self, indices: &[usize]) -> Vec<usize> {
        let mut acc = self.patches[indices[0]].clone();
        for &i in &indices[1..] {
            acc.retain(|v| self.patches[i].binary_search(v).is_ok());
        }
        acc
    }

    fn check_against(&self, g: &Graph) -> Result<()> {
        let n = g.vertex_count();
        let mut covered = vec![false; n];
        for p in &self.patches {
            for &v in p {
                if v >= n {
                    return Err(Error::InvalidParameter(format!("patch vertex {v} outside 0..{n}")));
                }
                covered[v] = true;
            }
        }
        let missing: Vec<usize> = (0..n).filter(|&v| !covered[v]).collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::NotCovering(missing))
        }
    }
}

/// An intersection of patches that fails the contractibility requirement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Offender {
    pub patches: Vec<usize>,
    pub vertices: Vec<usize>,
    pub status: Contractibility,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverValidation {
    /// Largest number of patches whose common intersection was examined.
    pub max_order: usize,
    pub disconnected_patches: Vec<usize>,
    /// Simplices of the host complex not contained in any single patch.
    pub uncovered_simplices: Vec<Vec<usize>>,
    pub non_contractible: Vec<Offender>,
    /// Cliques of the nerve (order at least 3) whose patches have no common vertex.
    pub empty_clique_intersections: Vec<Vec<usize>>,
}

impl CoverValidation {
    pub fn contractible_intersections(&self) -> bool {
        self.disconnected_patches.is_empty() && self.non_contractible.is_empty()
    }

    pub fn covers_simplices(&self) -> bool {
        self.uncovered_simplices.is_empty()
    }

    pub fn flag_condition(&self) -> bool {
        self.empty_clique_intersections.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.contractible_intersections() && self.covers_simplices() && self.flag_condition()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Nerve {
    /// One vertex per patch; `a ~ b` iff the patches share a vertex.
    pub graph: Graph,
    /// Shared vertices for every nerve edge.
    #[serde(serialize_with = "witness_list")]
    pub witnesses: BTreeMap<(usize, usize), Vec<usize>>,
    pub validation: CoverValidation,
}

fn witness_list<S: serde::Serializer>(
    w: &BTreeMap<(usize, usize), Vec<usize>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Witness<'a> {
        edge: (usize, usize),
        shared: &'a [usize],
    }
    s.collect_seq(w.iter().map(|(&edge, shared)| Witness { edge, shared }))
}

/// Nerve with pairwise validation.
pub fn nerve(g: &Graph, cover: &Cover) -> Result<Nerve> {
    nerve_with_order(g, cover, 2)
}

/// Nerve whose validation examines intersections of up to `max_order` patches
/// (`usize::MAX` for every clique of the nerve).
pub fn nerve_with_order(g: &Graph, cover: &Cover, max_order: usize) -> Result<Nerve> {
    cover.check_against(g)?;
    let m = cover.len();
    let mut witnesses = BTreeMap::new();
    for a in 0..m {
        for b in a + 1..m {
            let shared = cover.intersection(&[a, b]);
            if !shared.is_empty() {
                witnesses.insert((a, b), shared);
            }
        }
    }
    let graph = Graph::new(m, witnesses.keys().copied())?;

    let disconnected_patches =
        (0..m).filter(|&i| !g.induced(&cover.patches[i]).graph.is_connected()).collect();
    let uncovered_simplices = build_complex(g, None)
        .iter()
        .filter(|s| !cover.patches.iter().any(|p| s.vertices().iter().all(|v| p.binary_search(v).is_ok())))
        .map(|s| s.vertices().to_vec())
        .collect();
    let mut non_contractible = Vec::new();
    let mut empty_clique_intersections = Vec::new();
    let max_order = max_order.max(1);
    let cliques = build_complex(&graph, Some(max_order.min(m.max(1)) - 1));
    let mut examined = 0;
    for s in cliques.iter() {
        let idx = s.vertices();
        examined = examined.max(idx.len());
        let shared = cover.intersection(idx);
        if shared.is_empty() {
            empty_clique_intersections.push(idx.to_vec());
            continue;
        }
        let status = is_contractible(&g.induced(&shared).graph);
        if status != Contractibility::Contractible {
            non_contractible.push(Offender { patches: idx.to_vec(), vertices: shared, status });
        }
    }
    let validation = CoverValidation {
        max_order: examined,
        disconnected_patches,
        uncovered_simplices,
        non_contractible,
        empty_clique_intersections,
    };
    Ok(Nerve { graph, witnesses, validation })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CechOutcome {
    Equal,
    Mismatch,
    NotCechCover,
    FlagViolated,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CechVerdict {
    pub outcome: CechOutcome,
    pub graph_betti: BettiVector,
    /// Present only when the cover passed validation.
    pub nerve_betti: Option<BettiVector>,
    pub validation: CoverValidation,
}

fn trimmed(b: &BettiVector) -> &[usize] {
    let end = b.b.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
    &b.b[..end]
}

/// Compares the Betti numbers of `g` with those of the nerve of `cover`, after
/// validating every intersection indexed by a clique of the nerve and checking that
/// each simplex of `g` lies in some patch.
pub fn cech_betti_check(g: &Graph, cover: &Cover) -> Result<CechVerdict> {
    let n = nerve_with_order(g, cover, usize::MAX)?;
    let graph_betti = betti(&build_complex(g, None));
    let v = n.validation;
    let (outcome, nerve_betti) = if !v.contractible_intersections() || !v.covers_simplices() {
        (CechOutcome::NotCechCover, None)
    } else if !v.flag_condition() {
        (CechOutcome::FlagViolated, None)
    } else {
        let nb = betti(&build_complex(&n.graph, None));
        let outcome = if trimmed(&nb) == trimmed(&graph_betti) { CechOutcome::Equal } else { CechOutcome::Mismatch };
        (outcome, Some(nb))
    };
    Ok(CechVerdict { outcome, graph_betti, nerve_betti, validation: v })
}
