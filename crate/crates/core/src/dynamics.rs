//! Heat, wave and Schrödinger evolution of cochains, and the discrete map
//! `T(f, g) = (g - sDf, f)`.

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cochain::Cochain;
use crate::complex::SimplicialComplex;
use crate::eigen::{eigen_sym, SymmetricEigen};
use crate::error::{Error, Result};
use crate::operators::{dirac, laplacian};

/// Harmonic components of a wave velocity above this relative size are rejected.
pub const HARMONIC_TOLERANCE: f64 = 1e-8;

/// Cached eigendecompositions of `D` and of every block `L_p`.
#[derive(Clone, Debug)]
pub struct DiracFlow {
    d: DMatrix<f64>,
    dirac: SymmetricEigen,
    blocks: Vec<SymmetricEigen>,
    offsets: Vec<usize>,
    grading: Vec<usize>,
    zero: f64,
}

/// A sampled evolution. The state at sample `k` is taken at time `times[k] · direction`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvolutionTrace {
    pub times: Vec<f64>,
    pub direction: Complex64,
    pub states: Vec<Cochain<Complex64>>,
    pub norms: Vec<f64>,
    pub supertraces: Vec<Complex64>,
}

fn dot_c(q: &[f64], x: &[Complex64]) -> Complex64 {
    q.iter().zip(x).map(|(a, b)| b * a).sum()
}

impl DiracFlow {
    pub fn new(c: &SimplicialComplex) -> Result<Self> {
        let d = dirac(c).to_f64();
        let dirac_eig = eigen_sym(&d)?;
        let blocks = laplacian(c).blocks.iter().map(|b| eigen_sym(&b.map(|x| x as f64))).collect::<Result<Vec<_>>>()?;
        let zero = 1e-9 * dirac_eig.max_abs().max(1.0);
        Ok(Self { d, dirac: dirac_eig, blocks, offsets: c.offsets().to_vec(), grading: c.grading(), zero })
    }

    pub fn size(&self) -> usize {
        self.d.nrows()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.dirac.max_abs()
    }

    pub fn dirac_matrix(&self) -> &DMatrix<f64> {
        &self.d
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.size() {
            return Err(Error::DimensionMismatch { expected: self.size(), got: n });
        }
        Ok(())
    }

    fn column(&self, k: usize) -> Vec<f64> {
        self.dirac.eigenvectors.column(k).iter().copied().collect()
    }

    /// `Σ_k φ(λ_k) <q_k, x> q_k` for a function of the Dirac eigenvalue.
    fn dirac_function(&self, x: &[Complex64], phi: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); x.len()];
        for (k, &lambda) in self.dirac.eigenvalues.iter().enumerate() {
            let q = self.column(k);
            let coeff = dot_c(&q, x) * phi(lambda);
            for (o, qi) in out.iter_mut().zip(&q) {
                *o += coeff * qi;
            }
        }
        out
    }

    fn is_zero(&self, lambda: f64) -> bool {
        lambda.abs() <= self.zero
    }

    /// `D f`.
    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        (&self.d * DVector::from_column_slice(f)).iter().copied().collect()
    }

    /// `D⁺ f`, the pseudo-inverse (zero on `ker D`).
    pub fn apply_pseudo_inverse(&self, f: &[f64]) -> Vec<f64> {
        let x: Vec<Complex64> = f.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let zero = self.zero;
        self.dirac_function(&x, |l| if l.abs() <= zero { Complex64::new(0.0, 0.0) } else { Complex64::new(1.0 / l, 0.0) })
            .iter()
            .map(|z| z.re)
            .collect()
    }

    /// Projection onto `ker D`, the harmonic forms.
    pub fn harmonic_projection(&self, f: &[f64]) -> Vec<f64> {
        let x: Vec<Complex64> = f.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let zero = self.zero;
        self.dirac_function(&x, |l| Complex64::new(if l.abs() <= zero { 1.0 } else { 0.0 }, 0.0))
            .iter()
            .map(|z| z.re)
            .collect()
    }

    /// `exp(-tL) f0`, block by block.
    pub fn heat_evolve(&self, f0: &Cochain<Complex64>, t: Complex64) -> Result<Cochain<Complex64>> {
        self.check_len(f0.len())?;
        let mut out = vec![Complex64::new(0.0, 0.0); f0.len()];
        for (p, eig) in self.blocks.iter().enumerate() {
            let range = self.offsets[p]..self.offsets[p + 1];
            let x = &f0.values[range.clone()];
            for (k, &mu) in eig.eigenvalues.iter().enumerate() {
                let q: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
                let coeff = dot_c(&q, x) * (-t * mu).exp();
                for (o, qi) in out[range.clone()].iter_mut().zip(&q) {
                    *o += coeff * qi;
                }
            }
        }
        Ok(Cochain::new(f0.degree, out))
    }

    /// `str(exp(-tL)) = Σ_p (-1)^p Σ_k exp(-t μ_{p,k})`.
    pub fn heat_supertrace(&self, t: Complex64) -> Complex64 {
        self.blocks
            .iter()
            .enumerate()
            .map(|(p, eig)| {
                let s: Complex64 = eig.eigenvalues.iter().map(|&mu| (-t * mu).exp()).sum();
                if p % 2 == 0 {
                    s
                } else {
                    -s
                }
            })
            .sum()
    }

    /// `str(exp(itD))`, summed eigenpair by eigenpair with parity weights.
    pub fn schrodinger_supertrace(&self, t: f64) -> Complex64 {
        (0..self.size())
            .map(|k| {
                let q = self.dirac.eigenvectors.column(k);
                let w: f64 = q.iter().zip(&self.grading).map(|(x, &p)| if p % 2 == 0 { x * x } else { -x * x }).sum();
                Complex64::new(0.0, t * self.dirac.eigenvalues[k]).exp() * w
            })
            .sum()
    }

    /// Solution of `u'' = -L u` with `u(0) = u0`, `u'(0) = v0`:
    /// `cos(Dt) u0 + sin(Dt) D⁺ v0` and its time derivative.
    pub fn wave_evolve(&self, u0: &Cochain, v0: &Cochain, t: f64) -> Result<(Cochain, Cochain)> {
        self.check_len(u0.len())?;
        self.check_len(v0.len())?;
        let harmonic_norm = Cochain::total(self.harmonic_projection(&v0.values)).norm();
        if harmonic_norm > HARMONIC_TOLERANCE * v0.norm().max(1.0) {
            return Err(Error::Unsolvable { harmonic_norm });
        }
        let mut position = vec![0.0; u0.len()];
        let mut velocity = vec![0.0; u0.len()];
        for (k, &lambda) in self.dirac.eigenvalues.iter().enumerate() {
            let q = self.column(k);
            let a: f64 = q.iter().zip(&u0.values).map(|(x, y)| x * y).sum();
            let b: f64 = q.iter().zip(&v0.values).map(|(x, y)| x * y).sum();
            let (pos, vel) = if self.is_zero(lambda) {
                (a, 0.0)
            } else {
                let (s, c) = (lambda * t).sin_cos();
                (c * a + s / lambda * b, -lambda * s * a + c * b)
            };
            for i in 0..q.len() {
                position[i] += pos * q[i];
                velocity[i] += vel * q[i];
            }
        }
        Ok((Cochain::new(u0.degree, position), Cochain::new(v0.degree, velocity)))
    }

    /// `‖v‖² + ‖D u‖²`.
    pub fn wave_energy(&self, u: &Cochain, v: &Cochain) -> f64 {
        let du = Cochain::total(self.apply(&u.values)).norm();
        v.norm().powi(2) + du * du
    }

    /// `ψ = u - i D⁺ v`.
    pub fn wave_to_psi(&self, u: &Cochain, v: &Cochain) -> Cochain<Complex64> {
        let w = self.apply_pseudo_inverse(&v.values);
        Cochain::new(u.degree, u.values.iter().zip(w).map(|(&a, b)| Complex64::new(a, -b)).collect())
    }

    /// `exp(iDt) ψ0`.
    pub fn schrodinger_evolve(&self, psi0: &Cochain<Complex64>, t: f64) -> Result<Cochain<Complex64>> {
        self.check_len(psi0.len())?;
        Ok(Cochain::new(psi0.degree, self.dirac_function(&psi0.values, |l| Complex64::new(0.0, l * t).exp())))
    }

    /// Default step scale `0.9 · 2 / λ_max`, or 1 when `D = 0`.
    pub fn default_map_scale(&self) -> f64 {
        let r = self.spectral_radius();
        if r <= self.zero {
            1.0
        } else {
            0.9 * 2.0 / r
        }
    }

    fn check_scale(&self, scale: f64) -> Result<()> {
        if scale <= 0.0 || !scale.is_finite() {
            return Err(Error::InvalidParameter(format!("map scale must be positive, got {scale}")));
        }
        if scale * self.spectral_radius() >= 2.0 {
            return Err(Error::InvalidParameter(format!(
                "scaled spectral radius {} is not below 2",
                scale * self.spectral_radius()
            )));
        }
        Ok(())
    }

    /// One application of `T(f, g) = (g - s D f, f)`.
    pub fn map_step(&self, f: &[f64], g: &[f64], scale: f64) -> (Vec<f64>, Vec<f64>) {
        let df = self.apply(f);
        (g.iter().zip(df).map(|(a, b)| a - scale * b).collect(), f.to_vec())
    }

    /// `T^steps (f, g)`; `scale` defaults to [`DiracFlow::default_map_scale`].
    pub fn discrete_map(&self, f: &Cochain, g: &Cochain, steps: usize, scale: Option<f64>) -> Result<(Cochain, Cochain)> {
        self.check_len(f.len())?;
        self.check_len(g.len())?;
        let s = scale.unwrap_or_else(|| self.default_map_scale());
        self.check_scale(s)?;
        let (mut a, mut b) = (f.values.clone(), g.values.clone());
        for _ in 0..steps {
            (a, b) = self.map_step(&a, &b, s);
        }
        Ok((Cochain::new(f.degree, a), Cochain::new(g.degree, b)))
    }

    /// Matrix of `T` on the doubled space, `[[-sD, 1], [1, 0]]`.
    pub fn map_matrix(&self, scale: f64) -> DMatrix<f64> {
        let n = self.size();
        let mut t = DMatrix::zeros(2 * n, 2 * n);
        t.view_mut((0, 0), (n, n)).copy_from(&(&self.d * -scale));
        t.view_mut((0, n), (n, n)).fill_with_identity();
        t.view_mut((n, 0), (n, n)).fill_with_identity();
        t
    }

    /// `str(T^n)` on the doubled space, both copies graded by simplex dimension.
    pub fn map_power_supertrace(&self, n: u32, scale: f64) -> f64 {
        let t = self.map_matrix(scale);
        let mut power = DMatrix::identity(t.nrows(), t.ncols());
        for _ in 0..n {
            power = &power * &t;
        }
        let size = self.size();
        (0..2 * size).map(|i| if self.grading[i % size].is_multiple_of(2) { power[(i, i)] } else { -power[(i, i)] }).sum()
    }

    fn sample(&self, times: &[f64], direction: Complex64, state_at: impl Fn(f64) -> Result<(Cochain<Complex64>, Complex64)>) -> Result<EvolutionTrace> {
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("sample times must be strictly increasing".into()));
        }
        let mut trace = EvolutionTrace { times: times.to_vec(), direction, states: Vec::new(), norms: Vec::new(), supertraces: Vec::new() };
        for &tau in times {
            let (state, st) = state_at(tau)?;
            trace.norms.push(state.norm());
            trace.states.push(state);
            trace.supertraces.push(st);
        }
        Ok(trace)
    }

    /// Heat flow sampled at `times[k] · direction`, with `str(exp(-τL))` per sample.
    pub fn heat_trace(&self, f0: &Cochain<Complex64>, direction: Complex64, times: &[f64]) -> Result<EvolutionTrace> {
        self.sample(times, direction, |tau| {
            let t = direction * tau;
            Ok((self.heat_evolve(f0, t)?, self.heat_supertrace(t)))
        })
    }

    /// Wave positions, with `str(cos(τD))` per sample.
    pub fn wave_trace(&self, u0: &Cochain, v0: &Cochain, times: &[f64]) -> Result<EvolutionTrace> {
        self.sample(times, Complex64::new(1.0, 0.0), |tau| {
            let (u, _) = self.wave_evolve(u0, v0, tau)?;
            Ok((u.to_complex(), Complex64::new(self.schrodinger_supertrace(tau).re, 0.0)))
        })
    }

    /// Schrödinger states, with `str(exp(iτD))` per sample.
    pub fn schrodinger_trace(&self, psi0: &Cochain<Complex64>, times: &[f64]) -> Result<EvolutionTrace> {
        self.sample(times, Complex64::new(1.0, 0.0), |tau| Ok((self.schrodinger_evolve(psi0, tau)?, self.schrodinger_supertrace(tau))))
    }

    /// Iterates of the first component of `T`, with `str(T^k)` per step.
    pub fn map_trace(&self, f: &Cochain, g: &Cochain, steps: usize, scale: Option<f64>) -> Result<EvolutionTrace> {
        self.check_len(f.len())?;
        self.check_len(g.len())?;
        let s = scale.unwrap_or_else(|| self.default_map_scale());
        self.check_scale(s)?;
        let (mut a, mut b) = (f.values.clone(), g.values.clone());
        let t = self.map_matrix(s);
        let mut power = DMatrix::identity(t.nrows(), t.ncols());
        let size = self.size();
        let mut trace = EvolutionTrace {
            times: Vec::new(),
            direction: Complex64::new(1.0, 0.0),
            states: Vec::new(),
            norms: Vec::new(),
            supertraces: Vec::new(),
        };
        for k in 0..=steps {
            if k > 0 {
                (a, b) = self.map_step(&a, &b, s);
                power = &power * &t;
            }
            let st: f64 = (0..2 * size).map(|i| if self.grading[i % size].is_multiple_of(2) { power[(i, i)] } else { -power[(i, i)] }).sum();
            let state = Cochain::new(f.degree, a.clone()).to_complex();
            trace.times.push(k as f64);
            trace.norms.push(state.norm());
            trace.states.push(state);
            trace.supertraces.push(Complex64::new(st, 0.0));
        }
        Ok(trace)
    }
}

/// Exact ingredients of `str(T²)`: `T² = [[s²L + 1, -sD], [-sD, 1]]`, so
/// `str(T²) = s² str(L) + 2 str(1)` with `str(L) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSupertrace {
    pub str_laplacian: i64,
    pub str_identity: i64,
    /// `2 str(1)`, valid because `str(L)` vanishes.
    pub value: i64,
}

pub fn map_supertrace_squared(c: &SimplicialComplex) -> Result<MapSupertrace> {
    let str_laplacian: i64 =
        laplacian(c).traces().iter().enumerate().map(|(p, &t)| if p % 2 == 0 { t } else { -t }).sum();
    if str_laplacian != 0 {
        return Err(Error::IdentityViolation(format!("str(L) = {str_laplacian}, expected 0")));
    }
    let str_identity = c.euler_characteristic();
    Ok(MapSupertrace { str_laplacian, str_identity, value: 2 * str_identity })
}

/// Breadth-first distance from `source` in the graph whose edges are the nonzero
/// entries of `D` (codimension-one incidences).
pub fn incidence_distances(c: &SimplicialComplex, source: usize) -> Vec<Option<usize>> {
    let d = dirac(c).matrix;
    let n = d.nrows();
    let mut dist = vec![None; n];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(i) = queue.pop_front() {
        let di = dist[i].expect("queued vertices have a distance");
        for j in 0..n {
            if d[(i, j)] != 0 && dist[j].is_none() {
                dist[j] = Some(di + 1);
                queue.push_back(j);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use crate::generators;
    use crate::graph::Graph;

    fn flow(g: Graph) -> (SimplicialComplex, DiracFlow) {
        let c = build_complex(&g, None);
        let f = DiracFlow::new(&c).unwrap();
        (c, f)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn heat_at_zero_is_identity() {
        let (_, fl) = flow(generators::wheel(4).unwrap());
        let f0 = Cochain::total((0..fl.size()).map(|i| c(i as f64, -1.0)).collect());
        let out = fl.heat_evolve(&f0, c(0.0, 0.0)).unwrap();
        for (a, b) in out.values.iter().zip(&f0.values) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn heat_converges_to_constants_on_triangle() {
        let (_, fl) = flow(generators::complete(3).unwrap());
        let mut v = vec![c(0.0, 0.0); 7];
        v[0] = c(1.0, 0.0);
        let out = fl.heat_evolve(&Cochain::total(v), c(50.0, 0.0)).unwrap();
        for i in 0..3 {
            assert!((out.values[i] - c(1.0 / 3.0, 0.0)).norm() < 1e-12);
        }
        assert!(out.values[3..].iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn heat_supertrace_limits() {
        let (cx, fl) = flow(generators::cycle(5).unwrap());
        assert!((fl.heat_supertrace(c(0.0, 0.0)) - c(0.0, 0.0)).norm() < 1e-12);
        assert!((fl.heat_supertrace(c(1.0, 2.0)).re - cx.euler_characteristic() as f64).abs() < 1e-10);
    }

    #[test]
    fn single_mode_wave() {
        let (_, fl) = flow(generators::octahedron());
        let k = fl.size() - 1;
        let lambda = fl.dirac.eigenvalues[k];
        let u0 = Cochain::total(fl.column(k));
        let v0 = Cochain::total(vec![0.0; fl.size()]);
        let (u, _) = fl.wave_evolve(&u0, &v0, 0.7).unwrap();
        for (a, b) in u.values.iter().zip(&u0.values) {
            assert!((a - (lambda * 0.7).cos() * b).abs() < 1e-12);
        }
        let (u, v) = fl.wave_evolve(&u0, &v0, 0.0).unwrap();
        assert_eq!(u.len(), u0.len());
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn wave_rejects_harmonic_velocity() {
        let (_, fl) = flow(generators::cycle(4).unwrap());
        let u0 = Cochain::total(vec![0.0; 8]);
        let mut v = vec![0.0; 8];
        v[0] = 1.0;
        assert!(matches!(fl.wave_evolve(&u0, &Cochain::total(v), 1.0), Err(Error::Unsolvable { .. })));
    }

    #[test]
    fn schrodinger_group_property() {
        let (_, fl) = flow(generators::petersen());
        let psi = Cochain::total((0..fl.size()).map(|i| c((i as f64).sin(), (i as f64).cos())).collect());
        let a = fl.schrodinger_evolve(&fl.schrodinger_evolve(&psi, 0.4).unwrap(), 1.1).unwrap();
        let b = fl.schrodinger_evolve(&psi, 1.5).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((x - y).norm() < 1e-10);
        }
        assert!((b.norm() - psi.norm()).abs() < 1e-9 * psi.norm());
    }

    #[test]
    fn edgeless_map_swaps() {
        let (_, fl) = flow(Graph::empty(3));
        assert_eq!(fl.default_map_scale(), 1.0);
        let f = Cochain::total(vec![1.0, 2.0, 3.0]);
        let g = Cochain::total(vec![4.0, 5.0, 6.0]);
        let (a, b) = fl.discrete_map(&f, &g, 1, None).unwrap();
        assert_eq!((a.values.clone(), b.values.clone()), (g.values.clone(), f.values.clone()));
        let (a, b) = fl.discrete_map(&f, &g, 2, None).unwrap();
        assert_eq!((a, b), (f, g));
    }

    #[test]
    fn map_scale_window() {
        let (_, fl) = flow(generators::complete(3).unwrap());
        let z = Cochain::total(vec![0.0; 7]);
        assert!(fl.discrete_map(&z, &z, 1, Some(0.0)).is_err());
        assert!(fl.discrete_map(&z, &z, 1, Some(2.0 / 3f64.sqrt())).is_err());
        assert!(fl.discrete_map(&z, &z, 1, Some(1.0)).is_ok());
    }

    #[test]
    fn map_supertrace_on_triangle() {
        let (cx, fl) = flow(generators::complete(3).unwrap());
        assert_eq!(map_supertrace_squared(&cx).unwrap().value, 2);
        let s = fl.default_map_scale();
        assert!((fl.map_power_supertrace(2, s) - 2.0).abs() < 1e-10);
    }

    #[test]
    fn forward_difference_step() {
        let (_, fl) = flow(generators::path(3).unwrap());
        let f: Vec<f64> = (0..5).map(|i| i as f64 * 0.5).collect();
        let s = 0.3;
        let df = fl.apply(&f);
        let g: Vec<f64> = f.iter().zip(&df).map(|(a, b)| a + s * b).collect();
        let (next, prev) = fl.map_step(&f, &g, s);
        assert_eq!(prev, f);
        for (x, y) in next.iter().zip(&f) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn traces_are_sampled_in_order() {
        let (_, fl) = flow(generators::complete(3).unwrap());
        let f0 = Cochain::total(vec![c(1.0, 0.0); 7]);
        let tr = fl.heat_trace(&f0, c(1.0, 1.0), &[0.0, 0.5, 1.0]).unwrap();
        assert_eq!(tr.states.len(), 3);
        assert!(tr.supertraces.iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-10));
        assert!(fl.heat_trace(&f0, c(1.0, 0.0), &[1.0, 0.5]).is_err());
        let f = Cochain::total(vec![1.0; 7]);
        let mt = fl.map_trace(&f, &f, 3, None).unwrap();
        assert_eq!(mt.times, vec![0.0, 1.0, 2.0, 3.0]);
        assert!((mt.supertraces[2].re - 2.0).abs() < 1e-10);
    }
}
