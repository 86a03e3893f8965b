use num_rational::Rational64;
use serde::Serialize;

use crate::complex::build_complex;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::operators::incidences;

/// `(V_0(x), V_1(x), ...)`: clique counts of the unit sphere `S(x)`.
pub fn sphere_clique_counts(g: &Graph, x: usize) -> Vec<usize> {
    build_complex(&g.unit_sphere(x).graph, None).f_vector()
}

/// `K(x) = 1 + Σ_{k≥1} (-1)^k V_{k-1}(x) / (k+1)`.
pub fn vertex_curvature(g: &Graph, x: usize) -> Rational64 {
    sphere_clique_counts(g, x)
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let k = j as i64 + 1;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            Rational64::new(sign * v as i64, k + 1)
        })
        .fold(Rational64::from_integer(1), |a, b| a + b)
}

/// Curvature from traces of the up-Laplacians `U_q = d_q* d_q` of the unit sphere,
/// with `U_{-1} = [V_0]` from the augmentation map: `K(x) = 1 + Σ_{k≥1} (-1)^k tr(U_{k-2}) / (k(k+1))`.
pub fn curvature_operator_form(g: &Graph, x: usize) -> Rational64 {
    let sphere = build_complex(&g.unit_sphere(x).graph, None);
    let mut traces = vec![sphere.v(0) as i64];
    for d in incidences(&sphere) {
        let d = d.to_dense();
        traces.push((d.transpose() * &d).trace());
    }
    traces
        .iter()
        .enumerate()
        .map(|(j, &t)| {
            let k = j as i64 + 1;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            Rational64::new(sign * t, k * (k + 1))
        })
        .fold(Rational64::from_integer(1), |a, b| a + b)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureReport {
    #[serde(serialize_with = "super::ratio_serde::serialize_vec")]
    pub per_vertex: Vec<Rational64>,
    #[serde(serialize_with = "super::ratio_serde::serialize")]
    pub total: Rational64,
    pub sphere_counts: Vec<Vec<usize>>,
    pub euler_characteristic: i64,
}

impl CurvatureReport {
    pub fn gauss_bonnet_holds(&self) -> bool {
        self.total == Rational64::from_integer(self.euler_characteristic)
    }
}

/// Curvature at every vertex, cross-checked against the operator form.
pub fn curvature(g: &Graph) -> Result<CurvatureReport> {
    let mut per_vertex = Vec::with_capacity(g.vertex_count());
    let mut sphere_counts = Vec::with_capacity(g.vertex_count());
    for x in 0..g.vertex_count() {
        let k = vertex_curvature(g, x);
        let op = curvature_operator_form(g, x);
        if k != op {
            return Err(Error::IdentityViolation(format!("curvature at {x}: clique form {k}, operator form {op}")));
        }
        per_vertex.push(k);
        sphere_counts.push(sphere_clique_counts(g, x));
    }
    let total = per_vertex.iter().fold(Rational64::from_integer(0), |a, b| a + b);
    let euler_characteristic = build_complex(g, None).euler_characteristic();
    Ok(CurvatureReport { per_vertex, total, sphere_counts, euler_characteristic })
}
