//! Dirac and Laplacian spectra, supertraces, Dirac complexity and the pairing of
//! bosonic and fermionic eigenvalue multiplicities.

use std::ops::Range;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::eigen::{eigen_sym, SymmetricEigen};
use crate::error::{Error, Result};
use crate::hodge::betti;
use crate::operators::{dirac, laplacian};

/// Relative gap that separates two eigenvalue clusters.
pub const CLUSTER_GAP: f64 = 1e-7;
/// Relative threshold below which an eigenvalue counts as zero.
pub const ZERO_TOLERANCE: f64 = 1e-9;

/// How each eigenpair is attached to the form degrees.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "values")]
pub enum Grading {
    /// Form degree of every eigenvalue (Laplacian blocks).
    Degree(Vec<usize>),
    /// `Σ_x (-1)^{dim x} q(x)²` for every eigenvector (Dirac spectra).
    Parity(Vec<f64>),
    None,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    #[serde(skip)]
    pub eigenvectors: Option<DMatrix<f64>>,
    pub grading: Grading,
    pub zero_tolerance: f64,
}

impl Spectrum {
    fn from_eigen(eig: SymmetricEigen, grading: Grading) -> Self {
        let zero_tolerance = ZERO_TOLERANCE * eig.max_abs().max(1.0);
        Spectrum { eigenvalues: eig.eigenvalues, eigenvectors: Some(eig.eigenvectors), grading, zero_tolerance }
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |a, &x| a.max(x.abs()))
    }

    pub fn zero_count(&self) -> usize {
        self.eigenvalues.iter().filter(|x| x.abs() <= self.zero_tolerance).count()
    }

    pub fn positive_count(&self) -> usize {
        self.eigenvalues.iter().filter(|&&x| x > self.zero_tolerance).count()
    }

    /// Drops the eigenvectors.
    pub fn without_vectors(mut self) -> Self {
        self.eigenvectors = None;
        self
    }

    /// Largest `|λ_i + λ_{n-1-i}|`; zero when the spectrum is symmetric under negation.
    pub fn negation_asymmetry(&self) -> f64 {
        let n = self.len();
        (0..n).map(|i| (self.eigenvalues[i] + self.eigenvalues[n - 1 - i]).abs()).fold(0.0, f64::max)
    }

    /// Eigenvalue index ranges separated by gaps above `CLUSTER_GAP * max(1, max|λ|)`.
    pub fn clusters(&self) -> Vec<Range<usize>> {
        cluster_sorted(&self.eigenvalues, CLUSTER_GAP * self.max_abs().max(1.0))
    }
}

/// Splits an ascending list wherever consecutive values differ by more than `gap`.
pub fn cluster_sorted(values: &[f64], gap: f64) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > gap {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// Spectrum of an arbitrary symmetric matrix, eigenvectors retained.
pub fn eigen_spectrum(m: &DMatrix<f64>) -> Result<Spectrum> {
    Ok(Spectrum::from_eigen(eigen_sym(m)?, Grading::None))
}

fn parity_weights(c: &SimplicialComplex, vectors: &DMatrix<f64>) -> Vec<f64> {
    let grading = c.grading();
    vectors
        .column_iter()
        .map(|q| q.iter().zip(&grading).map(|(x, &p)| if p % 2 == 0 { x * x } else { -x * x }).sum())
        .collect()
}

/// `sqrt(2 · max vertex degree)`.
pub fn spectral_bound(c: &SimplicialComplex) -> f64 {
    (2.0 * c.graph().max_degree() as f64).sqrt()
}

/// Spectrum of `D`, checked for symmetry under negation and against the degree bound.
pub fn dirac_spectrum(c: &SimplicialComplex) -> Result<Spectrum> {
    let eig = eigen_sym(&dirac(c).to_f64())?;
    let weights = parity_weights(c, &eig.eigenvectors);
    let spectrum = Spectrum::from_eigen(eig, Grading::Parity(weights));
    let asym = spectrum.negation_asymmetry();
    if asym > ZERO_TOLERANCE * spectrum.max_abs().max(1.0) {
        return Err(Error::IdentityViolation(format!("Dirac spectrum not symmetric under negation (gap {asym:e})")));
    }
    let bound = spectral_bound(c);
    if spectrum.max_abs() > bound + 1e-9 {
        return Err(Error::IdentityViolation(format!(
            "Dirac eigenvalue {} exceeds sqrt(2 deg) = {bound}",
            spectrum.max_abs()
        )));
    }
    Ok(spectrum)
}

/// Spectrum of each Laplacian block `L_p`.
pub fn laplacian_spectra(c: &SimplicialComplex) -> Result<Vec<Spectrum>> {
    laplacian(c)
        .blocks
        .iter()
        .enumerate()
        .map(|(p, b)| {
            let eig = eigen_sym(&b.map(|x| x as f64))?;
            let n = eig.len();
            Ok(Spectrum::from_eigen(eig, Grading::Degree(vec![p; n])))
        })
        .collect()
}

/// Eigenvalues of the even-degree blocks of `L`, ascending.
pub fn bosonic_spectrum(c: &SimplicialComplex) -> Result<Vec<f64>> {
    graded_pool(c, 0)
}

/// Eigenvalues of the odd-degree blocks of `L`, ascending.
pub fn fermionic_spectrum(c: &SimplicialComplex) -> Result<Vec<f64>> {
    graded_pool(c, 1)
}

fn graded_pool(c: &SimplicialComplex, parity: usize) -> Result<Vec<f64>> {
    let mut out: Vec<f64> = laplacian_spectra(c)?
        .into_iter()
        .enumerate()
        .filter(|(p, _)| p % 2 == parity)
        .flat_map(|(_, s)| s.eigenvalues)
        .collect();
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// The exponents `f` used in supertrace sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiracFunction {
    /// `f(x) = -t x²`, giving the heat kernel `exp(-tL)`.
    Heat,
    /// `f(x) = i t x`, giving `exp(itD)`.
    Schrodinger,
    /// `f(x) = sin(t x)`.
    Sine,
    /// `f(x) = t x⁴`.
    Quartic,
}

impl DiracFunction {
    pub const ALL: [DiracFunction; 4] =
        [DiracFunction::Heat, DiracFunction::Schrodinger, DiracFunction::Sine, DiracFunction::Quartic];

    pub fn eval(self, x: f64, t: Complex64) -> Complex64 {
        match self {
            DiracFunction::Heat => -t * x * x,
            DiracFunction::Schrodinger => Complex64::i() * t * x,
            DiracFunction::Sine => (t * x).sin(),
            DiracFunction::Quartic => t * x.powi(4),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DiracFunction::Heat => "-t x^2",
            DiracFunction::Schrodinger => "i t x",
            DiracFunction::Sine => "sin(t x)",
            DiracFunction::Quartic => "t x^4",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuperTraceReport {
    pub function: String,
    pub t: Complex64,
    pub value: Complex64,
    pub expected: i64,
    pub deviation: f64,
    /// Largest distance of a cluster's parity weight from the nearest integer.
    pub parity_residual: f64,
}

/// Dirac eigendecomposition with the parity weight of every eigenvalue cluster,
/// reused across supertrace evaluations.
#[derive(Clone, Debug)]
pub struct GradedDiracEigen {
    pub spectrum: Spectrum,
    /// `(mean eigenvalue, graded dimension)` per cluster.
    pub clusters: Vec<(f64, i64)>,
    pub parity_residual: f64,
    pub euler_characteristic: i64,
}

impl GradedDiracEigen {
    pub fn new(c: &SimplicialComplex) -> Result<Self> {
        let spectrum = dirac_spectrum(c)?;
        let Grading::Parity(weights) = &spectrum.grading else { unreachable!("Dirac spectra carry parity weights") };
        let mut clusters = Vec::new();
        let mut parity_residual: f64 = 0.0;
        for range in spectrum.clusters() {
            let w: f64 = weights[range.clone()].iter().sum();
            let n = w.round();
            parity_residual = parity_residual.max((w - n).abs());
            let mean = spectrum.eigenvalues[range.clone()].iter().sum::<f64>() / range.len() as f64;
            clusters.push((mean, n as i64));
        }
        Ok(Self { spectrum, clusters, parity_residual, euler_characteristic: c.euler_characteristic() })
    }

    /// `str(exp(f(D)))`, summed over eigenvalue clusters with their graded dimension.
    pub fn supertrace_with(&self, label: &str, t: Complex64, f: impl Fn(f64) -> Complex64) -> Result<SuperTraceReport> {
        let at_zero = f(0.0).norm();
        if at_zero > 1e-12 {
            return Err(Error::FunctionNotZeroAtOrigin(at_zero));
        }
        // Clusters of graded dimension zero contribute nothing, even where exp(f) overflows.
        let value: Complex64 =
            self.clusters.iter().filter(|&&(_, n)| n != 0).map(|&(lambda, n)| f(lambda).exp() * n as f64).sum();
        let expected = self.euler_characteristic;
        Ok(SuperTraceReport {
            function: label.to_string(),
            t,
            value,
            expected,
            deviation: (value - expected as f64).norm(),
            parity_residual: self.parity_residual,
        })
    }

    pub fn supertrace(&self, f: DiracFunction, t: Complex64) -> SuperTraceReport {
        self.supertrace_with(f.label(), t, |x| f.eval(x, t)).expect("built-in functions vanish at zero")
    }

    /// `Σ_i w_i exp(f(λ_i))` without clustering; only well conditioned for bounded `exp(f)`.
    pub fn direct_supertrace(&self, f: impl Fn(f64) -> Complex64) -> Complex64 {
        let Grading::Parity(weights) = &self.spectrum.grading else { unreachable!() };
        self.spectrum.eigenvalues.iter().zip(weights).map(|(&l, &w)| f(l).exp() * w).sum()
    }
}

/// `str(exp(f(D)))` for one of the built-in exponents.
pub fn supertrace(c: &SimplicialComplex, f: DiracFunction, t: Complex64) -> Result<SuperTraceReport> {
    Ok(GradedDiracEigen::new(c)?.supertrace(f, t))
}

/// `str(exp(f(D)))` for a caller-supplied `f` with `f(0) = 0`.
pub fn supertrace_with(
    c: &SimplicialComplex,
    label: &str,
    t: Complex64,
    f: impl Fn(f64) -> Complex64,
) -> Result<SuperTraceReport> {
    GradedDiracEigen::new(c)?.supertrace_with(label, t, f)
}

/// Product of the nonzero Dirac eigenvalues as `sign · exp(log_magnitude)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Complexity {
    pub sign: i8,
    pub log_magnitude: f64,
    pub zero_count: usize,
}

impl Complexity {
    pub fn value(&self) -> f64 {
        self.sign as f64 * self.log_magnitude.exp()
    }
}

pub fn dirac_complexity(c: &SimplicialComplex) -> Result<Complexity> {
    complexity_from_spectrum(c, &dirac_spectrum(c)?)
}

fn complexity_from_spectrum(c: &SimplicialComplex, s: &Spectrum) -> Result<Complexity> {
    let mut log_magnitude = 0.0;
    let mut negatives = 0usize;
    for &l in s.eigenvalues.iter().filter(|l| l.abs() > s.zero_tolerance) {
        log_magnitude += l.abs().ln();
        if l < 0.0 {
            negatives += 1;
        }
    }
    let zero_count = s.zero_count();
    let harmonic = betti(c).total();
    if zero_count != harmonic {
        return Err(Error::IdentityViolation(format!(
            "{zero_count} zero Dirac eigenvalues but the Betti numbers sum to {harmonic}"
        )));
    }
    let sign = if negatives.is_multiple_of(2) { 1 } else { -1 };
    Ok(Complexity { sign, log_magnitude, zero_count })
}

/// `Σ (v_p - b_p) / 2`, checked against the number of positive Dirac eigenvalues.
pub fn signless_euler_poincare(c: &SimplicialComplex) -> Result<usize> {
    let b = betti(c);
    let twice: usize = c.f_vector().iter().zip(&b.b).map(|(v, b)| v - b).sum();
    if !twice.is_multiple_of(2) {
        return Err(Error::IdentityViolation(format!("Σ (v_p - b_p) = {twice} is odd")));
    }
    let positive = dirac_spectrum(c)?.positive_count();
    if positive != twice / 2 {
        return Err(Error::IdentityViolation(format!(
            "{positive} positive Dirac eigenvalues, but Σ (v_p - b_p) / 2 = {}",
            twice / 2
        )));
    }
    Ok(positive)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityRow {
    pub eigenvalue: f64,
    /// `dim E_λ^p` for each form degree `p`.
    pub dims: Vec<usize>,
    pub alternating_sum: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityTable {
    /// Zero row first (when the complex is nonempty), then ascending.
    pub rows: Vec<MultiplicityRow>,
    pub zero_tolerance: f64,
    pub cluster_gap: f64,
    pub warnings: Vec<String>,
}

impl MultiplicityTable {
    pub fn zero_row(&self) -> Option<&MultiplicityRow> {
        self.rows.first().filter(|r| r.eigenvalue == 0.0)
    }

    /// Rows with a positive eigenvalue whose alternating sum is not zero.
    pub fn unpaired(&self) -> Vec<&MultiplicityRow> {
        self.rows.iter().filter(|r| r.eigenvalue != 0.0 && r.alternating_sum != 0).collect()
    }

    pub fn row_near(&self, lambda: f64, tol: f64) -> Option<&MultiplicityRow> {
        self.rows.iter().find(|r| (r.eigenvalue - lambda).abs() <= tol)
    }
}

/// Pools the eigenvalues of all `L_p`, clusters them and tabulates `dim E_λ^p`.
pub fn multiplicity_pairing(c: &SimplicialComplex) -> Result<MultiplicityTable> {
    let spectra = laplacian_spectra(c)?;
    let levels = spectra.len();
    let mut pooled: Vec<(f64, usize)> =
        spectra.iter().enumerate().flat_map(|(p, s)| s.eigenvalues.iter().map(move |&l| (l, p))).collect();
    pooled.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let scale = pooled.iter().fold(1.0f64, |a, x| a.max(x.0.abs()));
    let zero_tolerance = ZERO_TOLERANCE * scale;
    let cluster_gap = CLUSTER_GAP * scale;

    let split = pooled.partition_point(|x| x.0 <= zero_tolerance);
    let mut warnings = Vec::new();
    if split > 0 && split < pooled.len() {
        let gap = pooled[split].0 - pooled[split - 1].0;
        if gap < 10.0 * zero_tolerance {
            warnings.push(format!("zero and nonzero eigenvalues separated by only {gap:e}"));
        }
    }
    let row = |range: &[(f64, usize)], eigenvalue: f64| {
        let mut dims = vec![0usize; levels];
        for &(_, p) in range {
            dims[p] += 1;
        }
        let alternating_sum = dims.iter().enumerate().map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        MultiplicityRow { eigenvalue, dims, alternating_sum }
    };
    let mut rows = Vec::new();
    if levels > 0 {
        rows.push(row(&pooled[..split], 0.0));
    }
    let rest = &pooled[split..];
    let values: Vec<f64> = rest.iter().map(|x| x.0).collect();
    let ranges = cluster_sorted(&values, cluster_gap);
    for w in ranges.windows(2) {
        let gap = values[w[1].start] - values[w[0].end - 1];
        if gap < 10.0 * cluster_gap {
            warnings.push(format!("clusters near {} split by a gap of only {gap:e}", values[w[1].start]));
        }
    }
    for r in ranges {
        let mean = values[r.clone()].iter().sum::<f64>() / r.len() as f64;
        rows.push(row(&rest[r], mean));
    }
    Ok(MultiplicityTable { rows, zero_tolerance, cluster_gap, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use crate::generators;
    use crate::graph::Graph;

    fn complex(g: Graph) -> SimplicialComplex {
        build_complex(&g, None)
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len(), "{a:?} vs {b:?}");
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn complete_graph_dirac_spectrum() {
        for n in 1..=6usize {
            let s = dirac_spectrum(&complex(generators::complete(n).unwrap())).unwrap();
            let m = (1usize << (n - 1)) - 1;
            let r = (n as f64).sqrt();
            let mut expected = vec![-r; m];
            expected.push(0.0);
            expected.extend(vec![r; m]);
            assert_close(&s.eigenvalues, &expected, 1e-9);
        }
    }

    #[test]
    fn cycle_dirac_spectrum() {
        for n in 4..=9usize {
            let s = dirac_spectrum(&complex(generators::cycle(n).unwrap())).unwrap();
            let expected: Vec<f64> = (0..n)
                .flat_map(|k| {
                    let r = (2.0 - 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos()).max(0.0).sqrt();
                    [r, -r]
                })
                .collect();
            assert_close(&s.eigenvalues, &sorted(expected), 1e-9);
        }
    }

    #[test]
    fn star_dirac_spectrum() {
        for n in 1..=6usize {
            let s = dirac_spectrum(&complex(generators::star(n).unwrap())).unwrap();
            // n leaves: L_0 of K_{1,n} has spectrum {0, 1^(n-1), n+1}.
            let r = ((n + 1) as f64).sqrt();
            let mut expected = vec![-r, 0.0, r];
            expected.extend(vec![-1.0; n - 1]);
            expected.extend(vec![1.0; n - 1]);
            assert_close(&s.eigenvalues, &sorted(expected), 1e-9);
        }
    }

    #[test]
    fn laplacian_block_spectra() {
        let c4 = laplacian_spectra(&complex(generators::cycle(4).unwrap())).unwrap();
        assert_close(&c4[0].eigenvalues, &[0.0, 2.0, 2.0, 4.0], 1e-10);
        let octa = laplacian_spectra(&complex(generators::octahedron())).unwrap();
        assert_close(&octa[0].eigenvalues, &[0.0, 4.0, 4.0, 4.0, 6.0, 6.0], 1e-10);
    }

    #[test]
    fn trace_identities() {
        for (name, g) in generators::all_defaults() {
            let c = complex(g);
            let s = dirac_spectrum(&c).unwrap();
            let sum: f64 = s.eigenvalues.iter().sum();
            let sq: f64 = s.eigenvalues.iter().map(|x| x * x).sum();
            let nnz = dirac(&c).matrix.iter().filter(|&&x| x != 0).count() as f64;
            assert!(sum.abs() < 1e-9, "{name}");
            assert!((sq - nnz).abs() < 1e-8, "{name}");
            assert!(sq / s.len() as f64 <= 2.0 * c.graph().max_degree() as f64 + 1e-9, "{name}");
        }
    }

    #[test]
    fn supertraces_at_origin_count_simplices() {
        let c = complex(generators::wheel(5).unwrap());
        let g = GradedDiracEigen::new(&c).unwrap();
        for f in DiracFunction::ALL {
            let r = g.supertrace(f, Complex64::new(0.0, 0.0));
            assert!(r.deviation < 1e-12);
            assert_eq!(r.expected, 1);
        }
    }

    #[test]
    fn supertrace_rejects_offset_functions() {
        let c = complex(generators::complete(3).unwrap());
        let err = supertrace_with(&c, "cos", Complex64::new(1.0, 0.0), |x| Complex64::new(x.cos(), 0.0)).unwrap_err();
        assert!(matches!(err, Error::FunctionNotZeroAtOrigin(_)));
    }

    #[test]
    fn clustered_and_direct_supertraces_agree_when_bounded() {
        let c = complex(generators::octahedron());
        let g = GradedDiracEigen::new(&c).unwrap();
        let t = Complex64::new(1.0, 2.0);
        let clustered = g.supertrace(DiracFunction::Heat, t).value;
        let direct = g.direct_supertrace(|x| DiracFunction::Heat.eval(x, t));
        assert!((clustered - direct).norm() < 1e-10);
        assert!(g.parity_residual < 1e-10);
    }

    #[test]
    fn complexity_of_small_complexes() {
        let c4 = dirac_complexity(&complex(generators::cycle(4).unwrap())).unwrap();
        assert_eq!(c4.sign, -1);
        assert!((c4.log_magnitude - 16f64.ln()).abs() < 1e-9);
        assert_eq!(c4.zero_count, 2);
        let pt = dirac_complexity(&complex(Graph::empty(1))).unwrap();
        assert_eq!((pt.sign, pt.log_magnitude, pt.zero_count), (1, 0.0, 1));
    }

    #[test]
    fn tree_complexity_sign_follows_edge_parity() {
        let trees = [
            generators::path(2).unwrap(),
            generators::path(5).unwrap(),
            generators::star(2).unwrap(),
            generators::star(5).unwrap(),
            Graph::new(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap(),
        ];
        for g in trees {
            let e = g.edge_count();
            let c = complex(g);
            assert_eq!(signless_euler_poincare(&c).unwrap(), e);
            let k = dirac_complexity(&c).unwrap();
            assert_eq!(k.sign, if e % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn tetrahedron_pairs() {
        let c = complex(generators::tetrahedron());
        assert_eq!(signless_euler_poincare(&c).unwrap(), 7);
        assert_eq!(signless_euler_poincare(&complex(Graph::empty(1))).unwrap(), 0);
    }

    #[test]
    fn triangle_multiplicities() {
        let t = multiplicity_pairing(&complex(generators::complete(3).unwrap())).unwrap();
        assert_eq!(t.zero_row().unwrap().dims, vec![1, 0, 0]);
        let row = t.row_near(3.0, 1e-9).unwrap();
        assert_eq!(row.dims, vec![2, 3, 1]);
        assert_eq!(row.alternating_sum, 0);
        assert!(t.unpaired().is_empty());
        assert!(t.warnings.is_empty());
    }

    #[test]
    fn cluster_splitting() {
        assert_eq!(cluster_sorted(&[0.0, 0.0, 1.0, 1.0 + 1e-12, 2.0], 1e-7), vec![0..2, 2..4, 4..5]);
        assert!(cluster_sorted(&[], 1.0).is_empty());
    }
}
