use std::collections::HashMap;

use nalgebra::DVector;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::DesignArray;
use crate::error::{Error, Result};
use crate::exactmath::{binom, pow, IndexPair, Rat, SchemeParams};
use crate::scheme::{counts_are_zero, enumerate_wrs, pairing_exponent, NumericIdempotentSet, ABS_TOL};

/// `T = {(i,j) in L : i <= r, j <= s} \ {(0,0)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSetT {
    r: usize,
    s: usize,
    pairs: Vec<IndexPair>,
}

impl IndexSetT {
    pub fn new(params: &SchemeParams, r: usize, s: usize) -> Result<Self> {
        params.require_l(IndexPair::new(r, s))?;
        let pairs = params
            .l()
            .iter()
            .copied()
            .filter(|p| p.i <= r && p.j <= s && *p != IndexPair::ZERO)
            .collect();
        Ok(IndexSetT { r, s, pairs })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn pairs(&self) -> &[IndexPair] {
        &self.pairs
    }
}

/// `sum_{x in X} (a, x)` for `a` in `W_{rs'}`.
pub fn full_set_character_sum(params: &SchemeParams, r: usize, s2: usize) -> BigInt {
    if s2 > 0 {
        return BigInt::from(0);
    }
    let (n, w) = (params.n() as i64, params.w() as i64);
    pow(params.q() as i64 - 1, params.w()) * binom(n - r as i64, w - r as i64)
}

/// Exact test of `A_{rs'}^T phi_Y = (|Y|/|X|) A_{rs'}^T phi_X` for every
/// `s' <= s`, in cyclotomic arithmetic.
pub fn tdesign_spectral_check(y: &DesignArray, r: usize, s: usize) -> Result<bool> {
    let params = y.params();
    params.require_l(IndexPair::new(r, s))?;
    if (r, s) == (0, 0) {
        return Err(Error::Precondition("(r,s) must differ from (0,0)".into()));
    }
    if r > params.m() {
        return Err(Error::Precondition(format!(
            "r={r} exceeds m={}; the characterization needs r <= m",
            params.m()
        )));
    }
    let order = params.q() - 1;
    let ratio = Rat::new(BigInt::from(y.len()), params.vertex_count());
    let mut counts = vec![0i64; order];
    for s2 in 0..=s {
        let target = ratio.clone() * Rat::from_integer(full_set_character_sum(params, r, s2));
        if !target.is_integer() {
            return Ok(false);
        }
        let target = target
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::Internal("character sum overflow".into()))?;
        for a in enumerate_wrs(params, r, s2)? {
            counts.iter_mut().for_each(|c| *c = 0);
            for row in y.rows() {
                if let Some(e) = pairing_exponent(a.coords(), row.coords(), order) {
                    counts[e] += 1;
                }
            }
            counts[0] -= target;
            if !counts_are_zero(&counts) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Floating test of `E_ij phi_Y = (|Y|/|X|) E_ij phi_X` for every `(i,j)` in `T`.
pub fn tdesign_idempotent_check(y: &DesignArray, t: &IndexSetT, set: &NumericIdempotentSet) -> Result<bool> {
    if set.params() != y.params() {
        return Err(Error::Precondition("idempotents were computed for other parameters".into()));
    }
    let pos: HashMap<&[u8], usize> = set.vertices().iter().enumerate().map(|(k, v)| (v.coords(), k)).collect();
    let dim = set.vertices().len();
    let mut phi_y = DVector::<f64>::zeros(dim);
    for row in y.rows() {
        let k = pos[row.coords()];
        phi_y[k] += 1.0;
    }
    let phi_x = DVector::<f64>::from_element(dim, 1.0);
    let scale = y.len() as f64 / dim as f64;
    for &ij in t.pairs() {
        let e = set
            .projector(ij)
            .ok_or_else(|| Error::OutOfRange(format!("no projector for {ij}")))?;
        let diff = e * &phi_y - e * &phi_x * scale;
        if diff.amax() > ABS_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::verify_rs_design;
    use crate::scheme::{enumerate_vertices, numeric_idempotents, pairing, CycInt};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fig1() -> DesignArray {
        let rows = ["00111", "01022", "02203", "10033", "20302", "33001", "30220", "22010", "11100", "03330"]
            .iter()
            .map(|r| r.bytes().map(|b| b - b'0').collect())
            .collect();
        DesignArray::new(SchemeParams::new(5, 3, 4).unwrap(), rows).unwrap()
    }

    #[test]
    fn full_set_sum_matches_direct() {
        for (n, w, q) in [(4, 2, 3), (5, 3, 4), (4, 2, 4)] {
            let params = SchemeParams::new(n, w, q).unwrap();
            let xs = enumerate_vertices(&params).unwrap();
            for &rs in params.l().iter().filter(|p| p.i <= params.m()) {
                for a in enumerate_wrs(&params, rs.i, rs.j).unwrap() {
                    let mut total = CycInt::zero(q - 1);
                    for x in &xs {
                        total = &total + &pairing(&a, x, q);
                    }
                    assert_eq!(total.to_integer(), Some(full_set_character_sum(&params, rs.i, rs.j)));
                }
            }
        }
    }

    #[test]
    fn index_set_t() {
        let params = SchemeParams::new(5, 3, 4).unwrap();
        let t = IndexSetT::new(&params, 2, 1).unwrap();
        let pairs: Vec<_> = t.pairs().iter().map(|p| (p.i, p.j)).collect();
        assert_eq!(pairs, vec![(1, 0), (1, 1), (2, 0), (2, 1)]);
    }

    #[test]
    fn spectral_examples() {
        let y = fig1();
        assert!(tdesign_spectral_check(&y, 2, 1).unwrap());
        assert!(!tdesign_spectral_check(&y.without_row(3).unwrap(), 2, 1).unwrap());
        let x = DesignArray::full(y.params()).unwrap();
        for &rs in y.params().l().iter().filter(|p| p.i <= 2 && **p != IndexPair::ZERO) {
            assert!(tdesign_spectral_check(&x, rs.i, rs.j).unwrap());
        }
        assert!(matches!(tdesign_spectral_check(&y, 3, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn idempotent_check_fig1() {
        let y = fig1();
        let set = numeric_idempotents(y.params()).unwrap();
        let t = IndexSetT::new(y.params(), 2, 1).unwrap();
        assert!(tdesign_idempotent_check(&y, &t, &set).unwrap());
        assert!(!tdesign_idempotent_check(&y.without_row(0).unwrap(), &t, &set).unwrap());
        let x = DesignArray::full(y.params()).unwrap();
        assert!(tdesign_idempotent_check(&x, &t, &set).unwrap());
    }

    #[test]
    fn idempotent_check_agrees_on_random_subsets() {
        let params = SchemeParams::new(4, 2, 3).unwrap();
        let set = numeric_idempotents(&params).unwrap();
        let t = IndexSetT::new(&params, 2, 1).unwrap();
        let x = DesignArray::full(&params).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut idx: Vec<usize> = (0..x.len()).collect();
        for _ in 0..50 {
            idx.shuffle(&mut rng);
            let y = x.select(&idx[..5]).unwrap();
            assert_eq!(
                tdesign_idempotent_check(&y, &t, &set).unwrap(),
                tdesign_spectral_check(&y, 2, 1).unwrap()
            );
            assert_eq!(verify_rs_design(&y, 2, 1).unwrap().is_design, tdesign_spectral_check(&y, 2, 1).unwrap());
        }
    }
}
