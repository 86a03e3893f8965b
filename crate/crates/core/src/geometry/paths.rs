use nalgebra::DMatrix;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::operators::dirac;

/// Codimension-one neighbours (faces and cofaces) of every simplex, by global index.
fn hasse_neighbors(c: &SimplicialComplex) -> Vec<Vec<usize>> {
    let d = dirac(c).matrix;
    (0..d.nrows()).map(|i| (0..d.ncols()).filter(|&j| d[(i, j)] != 0).collect()).collect()
}

/// Number of walks of length `k` from `x` to `y` through codimension-one incidences
/// that stay inside one corridor of two adjacent dimensions, `{p-1, p}` or `{p, p+1}`
/// where `p = dim x`. The corridor is fixed by the first step.
pub fn count_paths(c: &SimplicialComplex, x: &Simplex, y: &Simplex, k: usize) -> Result<u128> {
    let xi = c.require(x)?;
    let yi = c.require(y)?;
    if k == 0 {
        return Ok(u128::from(xi == yi));
    }
    let neighbors = hasse_neighbors(c);
    let p = x.dim();
    let corridors = [p.checked_sub(1).map(|q| (q, p)), Some((p, p + 1))];
    let mut total = 0u128;
    for (lo, hi) in corridors.into_iter().flatten() {
        let mut walks = vec![0u128; c.size()];
        walks[xi] = 1;
        for _ in 0..k {
            let mut next = vec![0u128; c.size()];
            for (i, &w) in walks.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                for &j in &neighbors[i] {
                    let dj = c.dim_of_index(j);
                    if dj >= lo && dj <= hi {
                        next[j] += w;
                    }
                }
            }
            walks = next;
        }
        total += walks[yi];
    }
    Ok(total)
}

/// `D^k` in exact integer arithmetic.
pub fn dirac_power(c: &SimplicialComplex, k: u32) -> DMatrix<i128> {
    let d = dirac(c).matrix.map(i128::from);
    let mut out = DMatrix::<i128>::identity(d.nrows(), d.ncols());
    for _ in 0..k {
        out = &out * &d;
    }
    out
}

/// `(D^k)_{xy}`.
pub fn dirac_power_entry(c: &SimplicialComplex, x: &Simplex, y: &Simplex, k: u32) -> Result<i128> {
    let xi = c.require(x)?;
    let yi = c.require(y)?;
    Ok(dirac_power(c, k)[(xi, yi)])
}

/// Sums of the diagonal of `D^length` over even- and over odd-dimensional simplices.
pub fn closed_path_parity(c: &SimplicialComplex, length: u32) -> Result<(i128, i128)> {
    if length == 0 {
        return Err(Error::InvalidParameter("closed path parity needs a positive length".into()));
    }
    let power = dirac_power(c, length);
    let (mut even, mut odd) = (0i128, 0i128);
    for i in 0..c.size() {
        if c.dim_of_index(i).is_multiple_of(2) {
            even += power[(i, i)];
        } else {
            odd += power[(i, i)];
        }
    }
    Ok((even, odd))
}
