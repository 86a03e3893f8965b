//! Betti numbers, harmonic forms and the Hodge decomposition.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::cochain::Cochain;
use crate::complex::SimplicialComplex;
use crate::eigen::eigen_sym;
use crate::error::{Error, Result};
use crate::exact;
use crate::operators::{incidence, incidences, laplacian};

/// `(b_0, b_1, ...)`, one entry per nonempty dimension of the complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector {
    pub b: Vec<usize>,
}

impl BettiVector {
    /// `Σ (-1)^p b_p`.
    pub fn euler_characteristic(&self) -> i64 {
        self.b.iter().enumerate().map(|(p, &x)| if p % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
    }

    pub fn total(&self) -> usize {
        self.b.iter().sum()
    }

    pub fn get(&self, p: usize) -> usize {
        self.b.get(p).copied().unwrap_or(0)
    }
}

/// `b_p = v_p - rank d_p - rank d_{p-1}` with ranks computed exactly.
pub fn betti(c: &SimplicialComplex) -> BettiVector {
    let ranks: Vec<usize> = incidences(c).iter().map(|d| exact::rank(&d.to_dense())).collect();
    let b = (0..c.levels())
        .map(|p| {
            let up = ranks.get(p).copied().unwrap_or(0);
            let down = if p > 0 { ranks[p - 1] } else { 0 };
            c.v(p) - up - down
        })
        .collect();
    BettiVector { b }
}

fn zero_threshold(eigenvalues: &[f64]) -> f64 {
    1e-9 * eigenvalues.iter().fold(1.0f64, |a, &x| a.max(x.abs()))
}

fn check_degree(c: &SimplicialComplex, p: usize) -> Result<()> {
    if p >= c.levels() {
        return Err(Error::DegreeOutOfRange { p, limit: c.levels().saturating_sub(1) });
    }
    Ok(())
}

/// Orthonormal basis of `ker L_p`. Its size is cross-checked against the exact `b_p`.
pub fn harmonic_basis(c: &SimplicialComplex, p: usize) -> Result<Vec<Cochain>> {
    check_degree(c, p)?;
    let lp = laplacian(c).blocks.swap_remove(p).map(|x| x as f64);
    let eig = eigen_sym(&lp)?;
    let zero = zero_threshold(&eig.eigenvalues);
    let basis: Vec<Cochain> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, l)| l.abs() <= zero)
        .map(|(k, _)| Cochain::graded(p, eig.eigenvectors.column(k).iter().copied().collect()))
        .collect();
    let expected = betti(c).get(p);
    if basis.len() != expected {
        return Err(Error::IdentityViolation(format!(
            "numeric kernel of L_{p} has dimension {}, exact Betti number is {expected}",
            basis.len()
        )));
    }
    Ok(basis)
}

/// `g = exact + coexact + harmonic` with the parts in `im d`, `im d*` and `ker L`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HodgeSplit {
    pub exact: Cochain,
    pub coexact: Cochain,
    pub harmonic: Cochain,
}

impl HodgeSplit {
    /// Largest absolute pairwise inner product between the three parts.
    pub fn max_overlap(&self) -> f64 {
        let dot = |a: &Cochain, b: &Cochain| a.values.iter().zip(&b.values).map(|(x, y)| x * y).sum::<f64>().abs();
        dot(&self.exact, &self.coexact).max(dot(&self.exact, &self.harmonic)).max(dot(&self.coexact, &self.harmonic))
    }

    pub fn sum(&self) -> Vec<f64> {
        (0..self.exact.len()).map(|i| self.exact.values[i] + self.coexact.values[i] + self.harmonic.values[i]).collect()
    }
}

/// Orthogonal projection of `g` onto the range of the positive semidefinite `m`.
fn project_onto_range(m: &DMatrix<f64>, g: &DVector<f64>) -> Result<DVector<f64>> {
    let eig = eigen_sym(m)?;
    let zero = zero_threshold(&eig.eigenvalues);
    let mut out = DVector::zeros(g.len());
    for (k, &l) in eig.eigenvalues.iter().enumerate() {
        if l.abs() > zero {
            let q = eig.eigenvectors.column(k);
            out += q.dot(g) * q;
        }
    }
    Ok(out)
}

pub fn hodge_decompose(c: &SimplicialComplex, p: usize, g: &Cochain) -> Result<HodgeSplit> {
    check_degree(c, p)?;
    if let Some(q) = g.degree {
        if q != p {
            return Err(Error::DimensionMismatch { expected: p, got: q });
        }
    }
    if g.len() != c.v(p) {
        return Err(Error::DimensionMismatch { expected: c.v(p), got: g.len() });
    }
    let n = c.v(p);
    let v = DVector::from_column_slice(&g.values);
    let exact = if p > 0 {
        let d = incidence(c, p - 1)?.to_dense().map(|x| x as f64);
        project_onto_range(&(&d * d.transpose()), &v)?
    } else {
        DVector::zeros(n)
    };
    let coexact = if p + 1 < c.levels() {
        let d = incidence(c, p)?.to_dense().map(|x| x as f64);
        project_onto_range(&(d.transpose() * &d), &v)?
    } else {
        DVector::zeros(n)
    };
    let mut harmonic = DVector::zeros(n);
    for h in harmonic_basis(c, p)? {
        let h = DVector::from_column_slice(&h.values);
        harmonic += h.dot(&v) * h;
    }
    let wrap = |x: DVector<f64>| Cochain::graded(p, x.iter().copied().collect());
    Ok(HodgeSplit { exact: wrap(exact), coexact: wrap(coexact), harmonic: wrap(harmonic) })
}
