use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::operators::laplacian;

fn coface_count(c: &SimplicialComplex, x: &Simplex) -> usize {
    c.simplices(x.dim() + 1).iter().filter(|s| s.contains(x)).count()
}

/// Number of `(p+1)`-simplices containing the p-simplex `x`, read off the diagonal of
/// `L_p` and checked against a direct count.
pub fn p_degree(c: &SimplicialComplex, x: &Simplex) -> Result<usize> {
    let (p, i) = c.index_of(x).ok_or_else(|| Error::NotInComplex(x.0.clone()))?;
    let diagonal = laplacian(c).blocks[p][(i, i)];
    let from_diagonal = if p > 0 { diagonal - (p as i64 + 1) } else { diagonal };
    let direct = coface_count(c, x);
    if from_diagonal != direct as i64 {
        return Err(Error::IdentityViolation(format!(
            "deg_{p}{x}: diagonal formula gives {from_diagonal}, direct count {direct}"
        )));
    }
    Ok(direct)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HandshakeRow {
    pub p: usize,
    pub trace: i64,
    /// `(p+2) v_{p+1}`.
    pub literal_rhs: i64,
    pub literal_holds: bool,
    /// `(p+1) v_p [p > 0] + (p+2) v_{p+1}`, the trace of both parts of `L_p`.
    pub full_rhs: i64,
    pub full_holds: bool,
    /// `Σ_x deg_p(x)` by direct coface counting; equals `v_{p+1} (p+2)`.
    pub coface_sum: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HandshakeReport {
    pub rows: Vec<HandshakeRow>,
    /// `Σ_p (-1)^p tr(L_p + 1)`.
    pub str_l_plus_one: i64,
    pub euler_characteristic: i64,
}

impl HandshakeReport {
    /// Literal statement `tr(L_p) = (p+2) v_{p+1}` for every `p` below the top dimension.
    pub fn literal_holds_below_top(&self) -> bool {
        let n = self.rows.len();
        self.rows.iter().take(n.saturating_sub(1)).all(|r| r.literal_holds)
    }

    pub fn full_holds(&self) -> bool {
        self.rows.iter().all(|r| r.full_holds)
    }

    pub fn telescopes(&self) -> bool {
        self.str_l_plus_one == self.euler_characteristic
    }
}

/// Trace identities for every Laplacian block, in exact integer arithmetic.
pub fn handshake_check(c: &SimplicialComplex) -> HandshakeReport {
    let traces = laplacian(c).traces();
    let v = |p: usize| c.v(p) as i64;
    let rows = traces
        .iter()
        .enumerate()
        .map(|(p, &trace)| {
            let pi = p as i64;
            let literal_rhs = (pi + 2) * v(p + 1);
            let full_rhs = if p > 0 { (pi + 1) * v(p) } else { 0 } + literal_rhs;
            let coface_sum: i64 = c.simplices(p).iter().map(|x| coface_count(c, x) as i64).sum();
            HandshakeRow {
                p,
                trace,
                literal_rhs,
                literal_holds: trace == literal_rhs,
                full_rhs,
                full_holds: trace == full_rhs,
                coface_sum,
            }
        })
        .collect();
    let str_l_plus_one =
        traces.iter().enumerate().map(|(p, &t)| if p % 2 == 0 { t + v(p) } else { -(t + v(p)) }).sum();
    HandshakeReport { rows, str_l_plus_one, euler_characteristic: c.euler_characteristic() }
}
