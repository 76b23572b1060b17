use num_traits::Zero;

use super::linsolve::inverse;
use super::poly::eigenmatrix_entry;
use super::{IndexPair, Rat, SchemeParams};
use crate::error::{Error, Result};

/// The full second eigenmatrix together with its inverse, from which Krein
/// numbers are read off by expanding products of rows back in the row basis.
#[derive(Debug, Clone)]
pub struct KreinTable {
    params: SchemeParams,
    /// `q[l][k] = Q_l(k)` with `l` indexing `L` and `k` indexing `K`.
    q: Vec<Vec<Rat>>,
    /// Inverse of the `|K| x |L|` matrix `M[k][l] = Q_l(k)`.
    inv: Vec<Vec<Rat>>,
}

impl KreinTable {
    pub fn new(params: &SchemeParams) -> Result<Self> {
        let q: Vec<Vec<Rat>> = params
            .l()
            .iter()
            .map(|&ij| params.k().iter().map(|&kh| eigenmatrix_entry(params, ij, kh)).collect())
            .collect();
        let size = params.l().len();
        let by_k: Vec<Vec<Rat>> =
            (0..size).map(|k| (0..size).map(|l| q[l][k].clone()).collect()).collect();
        let inv = inverse(&by_k).map_err(|e| {
            Error::SingularSystem(format!("eigenmatrix of {params} is not invertible: {e}"))
        })?;
        Ok(KreinTable { params: params.clone(), q, inv })
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    /// `Q_{ij}(kh)` from the cached table.
    pub fn q_value(&self, ij: IndexPair, kh: IndexPair) -> Result<&Rat> {
        let l = self.l_idx(ij)?;
        let k = self
            .params
            .k_index(kh)
            .ok_or_else(|| Error::OutOfRange(format!("{kh} is not in K")))?;
        Ok(&self.q[l][k])
    }

    fn l_idx(&self, p: IndexPair) -> Result<usize> {
        self.params
            .l_index(p)
            .ok_or_else(|| Error::OutOfRange(format!("{p} is not in L for {}", self.params)))
    }

    /// All coefficients `q_{ij,i'j'}^{rs}` for `rs` ranging over `L`.
    pub fn row(&self, ij: IndexPair, ij2: IndexPair) -> Result<Vec<Rat>> {
        let a = self.l_idx(ij)?;
        let b = self.l_idx(ij2)?;
        let rhs: Vec<Rat> = self.q[a].iter().zip(&self.q[b]).map(|(x, y)| x * y).collect();
        Ok(self
            .inv
            .iter()
            .map(|inv_row| inv_row.iter().zip(&rhs).map(|(c, v)| c * v).sum())
            .collect())
    }

    /// Krein number `q_{ij,i'j'}^{rs}`.
    pub fn get(&self, ij: IndexPair, ij2: IndexPair, rs: IndexPair) -> Result<Rat> {
        let r = self.l_idx(rs)?;
        let a = self.l_idx(ij)?;
        let b = self.l_idx(ij2)?;
        let mut acc = Rat::zero();
        for (k, c) in self.inv[r].iter().enumerate() {
            if !c.is_zero() {
                acc += c * &self.q[a][k] * &self.q[b][k];
            }
        }
        Ok(acc)
    }
}

/// Krein number `q_{ij,i'j'}^{rs}`, from the exact expansion
/// `Q_{ij}(kh) Q_{i'j'}(kh) = sum_{rs in L} q^{rs} Q_{rs}(kh)` over all `kh` in `K`.
pub fn krein(params: &SchemeParams, ij: IndexPair, ij2: IndexPair, rs: IndexPair) -> Result<Rat> {
    params.require_l(ij)?;
    params.require_l(ij2)?;
    params.require_l(rs)?;
    KreinTable::new(params)?.get(ij, ij2, rs)
}
