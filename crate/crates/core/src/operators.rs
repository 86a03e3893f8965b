//! Signed incidence matrices, the Dirac operator, Hodge Laplacian blocks, augmented
//! operator pairs and the Poisson solver.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};

use crate::cochain::Cochain;
use crate::complex::{Simplex, SimplicialComplex};
use crate::eigen::eigen_sym;
use crate::error::{Error, Result};

/// Sparse exterior derivative `d_p` from p-forms to (p+1)-forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedIncidence {
    pub p: usize,
    pub rows: usize,
    pub cols: usize,
    /// `(row, col, sign)` with `row` a (p+1)-simplex and `col` one of its faces.
    pub entries: Vec<(usize, usize, i8)>,
}

impl SignedIncidence {
    pub fn to_dense(&self) -> DMatrix<i64> {
        let mut m = DMatrix::zeros(self.rows, self.cols);
        for &(r, c, s) in &self.entries {
            m[(r, c)] = s as i64;
        }
        m
    }

    /// `d f` for a p-cochain `f`.
    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.rows];
        for &(r, c, s) in &self.entries {
            out[r] += s as f64 * f[c];
        }
        out
    }

    /// `d* g` for a (p+1)-cochain `g`.
    pub fn apply_adjoint(&self, g: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for &(r, c, s) in &self.entries {
            out[c] += s as f64 * g[r];
        }
        out
    }
}

/// `d_p` with the sign `(-1)^k` on the face that omits the k-th vertex.
pub fn incidence(c: &SimplicialComplex, p: usize) -> Result<SignedIncidence> {
    if p + 1 >= c.levels() {
        return Err(Error::DegreeOutOfRange { p, limit: c.levels().saturating_sub(1) });
    }
    let mut entries = Vec::with_capacity(c.v(p + 1) * (p + 2));
    for (row, s) in c.simplices(p + 1).iter().enumerate() {
        for k in 0..=p + 1 {
            let (_, col) = c.index_of(&s.face(k)).expect("complex is closed under faces");
            entries.push((row, col, if k % 2 == 0 { 1 } else { -1 }));
        }
    }
    Ok(SignedIncidence { p, rows: c.v(p + 1), cols: c.v(p), entries })
}

/// All incidence matrices `d_0, ..., d_{top-1}`.
pub fn incidences(c: &SimplicialComplex) -> Vec<SignedIncidence> {
    (0..c.levels().saturating_sub(1)).map(|p| incidence(c, p).expect("p below top")).collect()
}

/// `D = d + d*` on the full cochain space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiracMatrix {
    pub matrix: DMatrix<i64>,
    /// Start of each degree block; `levels + 1` entries.
    pub offsets: Vec<usize>,
}

impl DiracMatrix {
    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        self.matrix.map(|x| x as f64)
    }

    /// Exact integer square.
    pub fn square(&self) -> DMatrix<i64> {
        &self.matrix * &self.matrix
    }
}

pub fn dirac(c: &SimplicialComplex) -> DiracMatrix {
    let n = c.size();
    let offsets = c.offsets().to_vec();
    let mut matrix = DMatrix::zeros(n, n);
    for d in incidences(c) {
        let (ro, co) = (offsets[d.p + 1], offsets[d.p]);
        for &(r, col, s) in &d.entries {
            matrix[(ro + r, co + col)] = s as i64;
            matrix[(co + col, ro + r)] = s as i64;
        }
    }
    DiracMatrix { matrix, offsets }
}

/// The diagonal blocks `L_p` of `L = D²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplacianBlocks {
    pub blocks: Vec<DMatrix<i64>>,
}

impl LaplacianBlocks {
    pub fn block(&self, p: usize) -> Option<&DMatrix<i64>> {
        self.blocks.get(p)
    }

    pub fn traces(&self) -> Vec<i64> {
        self.blocks.iter().map(|b| b.trace()).collect()
    }

    /// Reassembles the block-diagonal `L`.
    pub fn assemble(&self) -> DMatrix<i64> {
        let n: usize = self.blocks.iter().map(|b| b.nrows()).sum();
        let mut m = DMatrix::zeros(n, n);
        let mut at = 0;
        for b in &self.blocks {
            m.view_mut((at, at), b.shape()).copy_from(b);
            at += b.nrows();
        }
        m
    }
}

/// `L_p = d_p* d_p + d_{p-1} d_{p-1}*`.
pub fn laplacian(c: &SimplicialComplex) -> LaplacianBlocks {
    let ds: Vec<DMatrix<i64>> = incidences(c).iter().map(SignedIncidence::to_dense).collect();
    let blocks = (0..c.levels())
        .map(|p| {
            let mut block = DMatrix::zeros(c.v(p), c.v(p));
            if let Some(d) = ds.get(p) {
                block += d.transpose() * d;
            }
            if p > 0 {
                let d = &ds[p - 1];
                block += d * d.transpose();
            }
            block
        })
        .collect();
    LaplacianBlocks { blocks }
}

/// Two complexes written over the union of their simplices, padded with zero rows
/// and columns where a simplex is missing.
#[derive(Clone, Debug)]
pub struct AugmentedPair {
    /// Ordered by dimension, then lexicographically.
    pub union: Vec<Simplex>,
    pub d_g: DMatrix<i64>,
    pub d_h: DMatrix<i64>,
    pub in_g: Vec<bool>,
    pub in_h: Vec<bool>,
}

impl AugmentedPair {
    pub fn size(&self) -> usize {
        self.union.len()
    }

    /// Number of union simplices present in exactly one of the two complexes.
    pub fn differing(&self) -> usize {
        self.in_g.iter().zip(&self.in_h).filter(|(a, b)| a != b).count()
    }
}

/// Vertices are identified by label; the two graphs may have different vertex counts.
pub fn augment(cg: &SimplicialComplex, ch: &SimplicialComplex) -> AugmentedPair {
    let set: BTreeSet<(usize, &Simplex)> = cg.iter().chain(ch.iter()).map(|s| (s.dim(), s)).collect();
    let union: Vec<Simplex> = set.into_iter().map(|(_, s)| s.clone()).collect();
    let position = |s: &Simplex| {
        union.binary_search_by(|u| (u.dim(), u).cmp(&(s.dim(), s))).expect("simplex is in the union")
    };
    let embed = |c: &SimplicialComplex| {
        let n = union.len();
        let mut m = DMatrix::zeros(n, n);
        let mut present = vec![false; n];
        let map: Vec<usize> = c.iter().map(position).collect();
        for &i in &map {
            present[i] = true;
        }
        let d = dirac(c);
        for (i, j, &x) in d.matrix.triplet_iter() {
            if x != 0 {
                m[(map[i], map[j])] = x;
            }
        }
        (m, present)
    };
    let (d_g, in_g) = embed(cg);
    let (d_h, in_h) = embed(ch);
    AugmentedPair { union, d_g, d_h, in_g, in_h }
}

trait TripletIter {
    fn triplet_iter(&self) -> impl Iterator<Item = (usize, usize, &i64)>;
}

impl TripletIter for DMatrix<i64> {
    fn triplet_iter(&self) -> impl Iterator<Item = (usize, usize, &i64)> {
        let rows = self.nrows();
        self.iter().enumerate().map(move |(k, x)| (k % rows, k / rows, x))
    }
}

/// Solves `L_p A = j` with `A ⊥ ker L_p`, via the pseudo-inverse from the
/// eigendecomposition of `L_p`.
pub fn solve_poisson(c: &SimplicialComplex, p: usize, j: &Cochain) -> Result<Cochain> {
    if p >= c.levels() {
        return Err(Error::DegreeOutOfRange { p, limit: c.levels().saturating_sub(1) });
    }
    if let Some(q) = j.degree {
        if q != p {
            return Err(Error::DimensionMismatch { expected: p, got: q });
        }
    }
    if j.len() != c.v(p) {
        return Err(Error::DimensionMismatch { expected: c.v(p), got: j.len() });
    }
    let lp = laplacian(c).blocks.swap_remove(p).map(|x| x as f64);
    let eig = eigen_sym(&lp)?;
    let zero = 1e-9 * eig.max_abs().max(1.0);
    let rhs = DVector::from_column_slice(&j.values);
    let mut harmonic = DVector::zeros(rhs.len());
    let mut solution = DVector::zeros(rhs.len());
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        let q = eig.eigenvectors.column(k);
        let coeff = q.dot(&rhs);
        if lambda.abs() <= zero {
            harmonic += coeff * q;
        } else {
            solution += (coeff / lambda) * q;
        }
    }
    let harmonic_norm = harmonic.norm();
    if harmonic_norm > 1e-8 * rhs.norm().max(1.0) {
        return Err(Error::Unsolvable { harmonic_norm });
    }
    Ok(Cochain::graded(p, solution.iter().copied().collect()))
}

/// Largest number of codimension-one faces plus cofaces over all simplices, i.e. the
/// largest count of nonzero entries in a column of `D`.
pub fn maximal_simplex_degree(c: &SimplicialComplex) -> usize {
    let d = dirac(c);
    (0..d.size()).map(|j| d.matrix.column(j).iter().filter(|&&x| x != 0).count()).max().unwrap_or(0)
}
