//! Built-in graph families and the five Platonic solids plus the Petersen graph.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Names accepted by [`generate`].
pub const GENERATOR_NAMES: [&str; 11] = [
    "complete",
    "cycle",
    "star",
    "path",
    "wheel",
    "tetrahedron",
    "cube",
    "octahedron",
    "dodecahedron",
    "icosahedron",
    "petersen",
];

fn need(name: &str, min: usize, got: usize) -> Result<()> {
    if got < min {
        return Err(Error::GeneratorSize { name: name.to_string(), min, got });
    }
    Ok(())
}

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    Graph::new(n, edges).expect("generator edge lists are valid")
}

/// K_n.
pub fn complete(n: usize) -> Result<Graph> {
    need("complete", 1, n)?;
    Ok(build(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))))
}

/// C_n on vertices 0..n in cyclic order.
pub fn cycle(n: usize) -> Result<Graph> {
    need("cycle", 3, n)?;
    Ok(build(n, (0..n).map(|i| (i, (i + 1) % n))))
}

/// Star with `n` leaves 1..=n around the centre 0.
pub fn star(n: usize) -> Result<Graph> {
    need("star", 1, n)?;
    Ok(build(n + 1, (1..=n).map(|i| (0, i))))
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Result<Graph> {
    need("path", 1, n)?;
    Ok(build(n, (1..n).map(|i| (i - 1, i))))
}

/// Wheel with hub 0 and rim cycle 1..=n.
pub fn wheel(n: usize) -> Result<Graph> {
    need("wheel", 3, n)?;
    let spokes = (1..=n).map(|i| (0, i));
    let rim = (1..=n).map(move |i| (i, i % n + 1));
    Ok(build(n + 1, spokes.chain(rim)))
}

/// Generalised Petersen graph G(n, k): outer cycle 0..n, inner star polygon n..2n.
fn generalized_petersen(n: usize, k: usize) -> Graph {
    let outer = (0..n).map(|i| (i, (i + 1) % n));
    let spokes = (0..n).map(|i| (i, n + i));
    let inner = (0..n).map(|i| (n + i, n + (i + k) % n));
    build(2 * n, outer.chain(spokes).chain(inner))
}

pub fn tetrahedron() -> Graph {
    complete(4).expect("K4")
}

/// Vertices are 3-bit codes; edges join codes at Hamming distance one.
pub fn cube() -> Graph {
    let edges = (0..8usize).flat_map(|a| [1usize, 2, 4].into_iter().map(move |bit| (a, a ^ bit)));
    build(8, edges.filter(|&(a, b)| a < b))
}

/// K_{2,2,2}; the antipodal pairs are (0,1), (2,3), (4,5).
pub fn octahedron() -> Graph {
    let edges = (0..6usize).flat_map(|a| (a + 1..6).map(move |b| (a, b)));
    build(6, edges.filter(|&(a, b)| a / 2 != b / 2))
}

/// Vertex 0 on top, upper ring 1..=5, lower ring 6..=10, vertex 11 at the bottom.
pub fn icosahedron() -> Graph {
    let mut edges = Vec::with_capacity(30);
    for i in 0..5 {
        let (u, u_next) = (1 + i, 1 + (i + 1) % 5);
        let (l, l_next) = (6 + i, 6 + (i + 1) % 5);
        edges.extend([(0, u), (u, u_next), (u, l), (u_next, l), (l, l_next), (l, 11)]);
    }
    build(12, edges)
}

pub fn dodecahedron() -> Graph {
    generalized_petersen(10, 2)
}

pub fn petersen() -> Graph {
    generalized_petersen(5, 2)
}

/// Default size used when a parametrised family is requested without `n`.
pub fn default_size(name: &str) -> Option<usize> {
    match name {
        "complete" | "cycle" => Some(5),
        "star" | "path" | "wheel" => Some(4),
        _ => None,
    }
}

/// Looks up a generator by name. Fixed graphs ignore `n`.
pub fn generate(name: &str, n: Option<usize>) -> Result<Graph> {
    let size = || n.or_else(|| default_size(name)).unwrap_or(0);
    match name {
        "complete" => complete(size()),
        "cycle" => cycle(size()),
        "star" => star(size()),
        "path" => path(size()),
        "wheel" => wheel(size()),
        "tetrahedron" => Ok(tetrahedron()),
        "cube" => Ok(cube()),
        "octahedron" => Ok(octahedron()),
        "dodecahedron" => Ok(dodecahedron()),
        "icosahedron" => Ok(icosahedron()),
        "petersen" => Ok(petersen()),
        other => Err(Error::UnknownGenerator(other.to_string())),
    }
}

/// Every built-in generator at its default size, paired with its name.
pub fn all_defaults() -> Vec<(&'static str, Graph)> {
    GENERATOR_NAMES
        .iter()
        .map(|&name| (name, generate(name, None).expect("defaults are valid")))
        .collect()
}
