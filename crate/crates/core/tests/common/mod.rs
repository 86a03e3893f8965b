#![allow(dead_code)]

use dirac_core::Graph;
use rand::Rng;

/// Erdős–Rényi graph `G(n, p)`.
pub fn erdos_renyi(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges).expect("valid random graph")
}

/// Ascending copy.
pub fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

/// Expands `(value, multiplicity)` pairs into an ascending list.
pub fn multiset(items: &[(f64, usize)]) -> Vec<f64> {
    sorted(items.iter().flat_map(|&(x, k)| std::iter::repeat_n(x, k)).collect())
}

/// Largest entrywise difference, or infinity on a length mismatch.
pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Random graphs with `1..=max_n` vertices, each pair joined with probability 1/2.
pub fn arb_graph(max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            Graph::new(n, pairs.zip(bits).filter(|(_, keep)| *keep).map(|(e, _)| e)).expect("valid graph")
        })
    })
}
