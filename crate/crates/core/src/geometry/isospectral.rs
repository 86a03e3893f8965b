use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::canon::enumerate_graphs;
use crate::complex::{build_complex, SimplicialComplex};
use crate::eigen::eigenvalues_sym;
use crate::error::Result;
use crate::graph::Graph;
use crate::operators::{dirac, laplacian};

/// Spectra agreeing to this absolute tolerance count as equal.
pub const ISOSPECTRAL_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsospectralLevel {
    Adjacency,
    L0,
    AllForms,
    Dirac,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsospectralVerdict {
    pub level: IsospectralLevel,
    pub isospectral: bool,
    /// Largest eigenvalue difference over the compared blocks (infinite on a size mismatch).
    pub max_deviation: f64,
    /// Form degrees whose spectra differ; `[0]` for single-matrix levels.
    pub mismatched_blocks: Vec<usize>,
}

/// Largest difference between two ascending spectra, or `None` if their sizes differ.
pub fn compare_spectra(a: &[f64], b: &[f64]) -> Option<f64> {
    (a.len() == b.len()).then(|| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

/// Compares per-degree spectra and lists the degrees that disagree.
pub fn compare_block_spectra(level: IsospectralLevel, a: &[Vec<f64>], b: &[Vec<f64>]) -> IsospectralVerdict {
    let mut mismatched_blocks = Vec::new();
    let mut max_deviation: f64 = 0.0;
    for p in 0..a.len().max(b.len()) {
        let empty = Vec::new();
        let (x, y) = (a.get(p).unwrap_or(&empty), b.get(p).unwrap_or(&empty));
        match compare_spectra(x, y) {
            Some(dev) => {
                max_deviation = max_deviation.max(dev);
                if dev > ISOSPECTRAL_TOLERANCE {
                    mismatched_blocks.push(p);
                }
            }
            None => {
                max_deviation = f64::INFINITY;
                mismatched_blocks.push(p);
            }
        }
    }
    IsospectralVerdict { level, isospectral: mismatched_blocks.is_empty(), max_deviation, mismatched_blocks }
}

fn adjacency(g: &Graph) -> DMatrix<f64> {
    let n = g.vertex_count();
    DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 })
}

fn spectra_at(c: &SimplicialComplex, level: IsospectralLevel) -> Result<Vec<Vec<f64>>> {
    let blocks = |take: usize| -> Result<Vec<Vec<f64>>> {
        laplacian(c).blocks.iter().take(take).map(|b| eigenvalues_sym(&b.map(|x| x as f64))).collect()
    };
    Ok(match level {
        IsospectralLevel::Adjacency => vec![eigenvalues_sym(&adjacency(c.graph()))?],
        IsospectralLevel::L0 => {
            let mut b = blocks(1)?;
            if b.is_empty() {
                b.push(Vec::new());
            }
            b
        }
        IsospectralLevel::AllForms => blocks(usize::MAX)?,
        IsospectralLevel::Dirac => vec![eigenvalues_sym(&dirac(c).to_f64())?],
    })
}

pub fn isospectral_check(cg: &SimplicialComplex, ch: &SimplicialComplex, level: IsospectralLevel) -> Result<IsospectralVerdict> {
    Ok(compare_block_spectra(level, &spectra_at(cg, level)?, &spectra_at(ch, level)?))
}

/// A pair of non-isomorphic connected triangle-free graphs with equal `L_0` spectra.
#[derive(Clone, Debug, Serialize)]
pub struct LiftingCase {
    pub g: Vec<(usize, usize)>,
    pub h: Vec<(usize, usize)>,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub dirac: IsospectralVerdict,
}

/// Exhaustive search through connected triangle-free graphs with at most `max_n`
/// vertices for `L_0`-cospectral pairs, each compared at the Dirac level.
pub fn lifting_search(max_n: usize) -> Result<Vec<LiftingCase>> {
    let mut cases = Vec::new();
    for n in 1..=max_n {
        let graphs: Vec<Graph> =
            enumerate_graphs(n, Graph::is_triangle_free).into_iter().filter(Graph::is_connected).collect();
        let mut with_spectra = Vec::with_capacity(graphs.len());
        for g in graphs {
            let c = build_complex(&g, None);
            let l0 = spectra_at(&c, IsospectralLevel::L0)?;
            with_spectra.push((g, c, l0));
        }
        for i in 0..with_spectra.len() {
            for j in i + 1..with_spectra.len() {
                let (g, cg, lg) = &with_spectra[i];
                let (h, ch, lh) = &with_spectra[j];
                if g.edge_count() != h.edge_count() {
                    continue;
                }
                if !compare_block_spectra(IsospectralLevel::L0, lg, lh).isospectral {
                    continue;
                }
                cases.push(LiftingCase {
                    g: g.edges().collect(),
                    h: h.edges().collect(),
                    vertex_count: n,
                    edge_count: g.edge_count(),
                    dirac: isospectral_check(cg, ch, IsospectralLevel::Dirac)?,
                });
            }
        }
    }
    Ok(cases)
}
