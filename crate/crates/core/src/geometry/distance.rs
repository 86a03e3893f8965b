use nalgebra::DMatrix;
use num_rational::Rational64;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::eigen::{check_symmetric, eigenvalues_sym};
use crate::error::{Error, Result};
use crate::operators::{augment, maximal_simplex_degree};

/// Fraction of the union of simplices that belongs to exactly one of the two complexes.
/// Vertices are matched by label.
pub fn simplex_distance(cg: &SimplicialComplex, ch: &SimplicialComplex) -> Rational64 {
    let pair = augment(cg, ch);
    if pair.size() == 0 {
        return Rational64::from_integer(0);
    }
    Rational64::new(pair.differing() as i64, pair.size() as i64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistanceReport {
    #[serde(serialize_with = "super::ratio_serde::serialize")]
    pub simplex_distance: Rational64,
    pub spectral_distance: f64,
    /// `2 · deg · simplex_distance`.
    pub lidskii_bound: f64,
    pub max_degree_used: usize,
    pub union_size: usize,
    pub bound_holds: bool,
}

/// `(1/v) Σ |λ_j - μ_j|` over the ascending spectra of the augmented Dirac matrices.
pub fn spectral_distance(cg: &SimplicialComplex, ch: &SimplicialComplex) -> Result<DistanceReport> {
    let pair = augment(cg, ch);
    let v = pair.size();
    let max_degree_used = maximal_simplex_degree(cg).max(maximal_simplex_degree(ch));
    let simplex = simplex_distance(cg, ch);
    let ratio = *simplex.numer() as f64 / *simplex.denom() as f64;
    let lidskii_bound = 2.0 * max_degree_used as f64 * ratio;
    let spectral_distance = if v == 0 {
        0.0
    } else {
        let a = eigenvalues_sym(&pair.d_g.map(|x| x as f64))?;
        let b = eigenvalues_sym(&pair.d_h.map(|x| x as f64))?;
        a.iter().zip(&b).map(|(x, y)| (x - y).abs()).sum::<f64>() / v as f64
    };
    Ok(DistanceReport {
        simplex_distance: simplex,
        spectral_distance,
        lidskii_bound,
        max_degree_used,
        union_size: v,
        bound_holds: spectral_distance <= lidskii_bound + 1e-9,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LidskiiReport {
    /// `Σ |α_j - β_j|` over ascending eigenvalues.
    pub lhs: f64,
    /// `Σ_{ij} |A - B|_{ij}`.
    pub rhs: f64,
    pub holds: bool,
}

pub fn lidskii_check(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<LidskiiReport> {
    check_symmetric(a)?;
    check_symmetric(b)?;
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch { expected: a.nrows(), got: b.nrows() });
    }
    let alpha = eigenvalues_sym(a)?;
    let beta = eigenvalues_sym(b)?;
    let lhs = alpha.iter().zip(&beta).map(|(x, y)| (x - y).abs()).sum();
    let rhs = (a - b).iter().map(|x| x.abs()).sum();
    Ok(LidskiiReport { lhs, rhs, holds: lhs <= rhs + 1e-9 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use crate::generators;
    use crate::graph::Graph;

    #[test]
    fn triangle_versus_path() {
        let g = build_complex(&generators::complete(3).unwrap(), None);
        let h = build_complex(&Graph::new(3, [(0, 1), (1, 2)]).unwrap(), None);
        assert_eq!(simplex_distance(&g, &h), Rational64::new(2, 7));
        let r = spectral_distance(&g, &h).unwrap();
        // Sorted spectra {-√3,-√3,-√3,0,√3,√3,√3} and {-√3,-1,0,0,0,1,√3}.
        let expected = (4.0 * 3f64.sqrt() - 2.0) / 7.0;
        assert!((r.spectral_distance - expected).abs() < 1e-12);
        assert_eq!(r.max_degree_used, 3);
        assert!(r.bound_holds);
    }

    #[test]
    fn identical_graphs() {
        let g = build_complex(&generators::petersen(), None);
        assert_eq!(simplex_distance(&g, &g), Rational64::from_integer(0));
        let r = spectral_distance(&g, &g).unwrap();
        assert_eq!(r.spectral_distance, 0.0);
    }

    #[test]
    fn lidskii_basic() {
        let a = DMatrix::from_diagonal_element(2, 2, 1.0);
        assert_eq!(lidskii_check(&a, &a).unwrap(), LidskiiReport { lhs: 0.0, rhs: 0.0, holds: true });
        let p = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let q = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 0.0, 1.0]);
        let r = lidskii_check(&p, &q).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (0.0, 2.0, true));
        assert!(lidskii_check(&p, &DMatrix::zeros(3, 3)).is_err());
    }
}
