//! Exact rank of integer matrices by fraction-free (Bareiss) elimination.

#![allow(clippy::needless_range_loop)]

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Rank over the rationals. Entries are promoted to big integers, so intermediate
/// growth cannot overflow.
pub fn rank(m: &DMatrix<i64>) -> usize {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| (0..cols).map(|j| BigInt::from(m[(i, j)])).collect()).collect();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows)
            .filter(|&r| !a[r][col].is_zero())
            .max_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()).then(y.cmp(&x)));
        let Some(pivot) = pivot else { continue };
        a.swap(rank, pivot);
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                for j in col + 1..cols {
                    row[j] = &row[j] * &prow[col] / &prev;
                }
            } else {
                for j in col + 1..cols {
                    row[j] = (&row[j] * &prow[col] - &row[col] * &prow[j]) / &prev;
                }
                row[col] = BigInt::zero();
            }
        }
        prev = prow[col].clone();
        rank += 1;
    }
    rank
}
