use std::collections::HashMap;

use itertools::Itertools;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactmath::{binom, pow, SchemeParams};
use crate::scheme::{enumerate_vertices, Vector};

/// Upper limit on candidate-constraint incidences held in memory.
pub const INCIDENCE_CAP: u128 = 50_000_000;

/// Index-1 `(r, s)`-designs as exact covers: one constraint per triple
/// `(R, S, omega)`, one candidate per vertex, and `x` covers `(R, S, omega)`
/// when `R` lies in the support of `x` and `x` restricted to `S` is `omega`.
#[derive(Debug, Clone)]
pub struct CoverProblem {
    params: SchemeParams,
    r: usize,
    s: usize,
    constraints: usize,
    candidates: Vec<Vector>,
    incidence: Vec<Vec<usize>>,
}

impl CoverProblem {
    pub fn new(params: &SchemeParams, r: usize, s: usize) -> Result<Self> {
        let (n, w, q) = (params.n(), params.w(), params.q());
        if s > r || r > w {
            return Err(Error::OutOfRange(format!("need s <= r <= w, got (r,s)=({r},{s}) with w={w}")));
        }
        let constraints = binom(n as i64, r as i64) * binom(r as i64, s as i64) * pow(q as i64 - 1, s);
        let per_row = binom(w as i64, r as i64) * binom(r as i64, s as i64);
        let incidences = (params.vertex_count() * &per_row).to_u128().unwrap_or(u128::MAX);
        if incidences > INCIDENCE_CAP {
            return Err(Error::TooLarge { what: "cover incidences", size: incidences, cap: INCIDENCE_CAP });
        }
        let constraints = constraints.to_usize().ok_or_else(|| Error::Internal("constraint count overflow".into()))?;

        let mut ids: HashMap<(u64, u64, Vec<u8>), usize> = HashMap::with_capacity(constraints);
        for r_set in (0..n).combinations(r) {
            let r_mask = mask(&r_set);
            for s_set in r_set.iter().copied().combinations(s) {
                let s_mask = mask(&s_set);
                let omegas = (0..s).map(|_| 1..q as u8).multi_cartesian_product();
                let omegas: Box<dyn Iterator<Item = Vec<u8>>> =
                    if s == 0 { Box::new(std::iter::once(Vec::new())) } else { Box::new(omegas) };
                for omega in omegas {
                    let next = ids.len();
                    ids.insert((r_mask, s_mask, omega), next);
                }
            }
        }
        debug_assert_eq!(ids.len(), constraints);

        let candidates = enumerate_vertices(params)?;
        let incidence = candidates
            .iter()
            .map(|x| {
                let support: Vec<usize> = (0..n).filter(|&c| x.coords()[c] != 0).collect();
                let mut cols = Vec::new();
                for r_set in support.iter().copied().combinations(r) {
                    let r_mask = mask(&r_set);
                    for s_set in r_set.iter().copied().combinations(s) {
                        let omega = s_set.iter().map(|&c| x.coords()[c]).collect();
                        cols.push(ids[&(r_mask, mask(&s_set), omega)]);
                    }
                }
                cols.sort_unstable();
                cols
            })
            .collect();
        Ok(CoverProblem { params: params.clone(), r, s, constraints, candidates, incidence })
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn constraint_count(&self) -> usize {
        self.constraints
    }

    /// Candidates in lexicographic order.
    pub fn candidates(&self) -> &[Vector] {
        &self.candidates
    }

    /// Sorted constraint indices covered by candidate `idx`.
    pub fn covered_by(&self, idx: usize) -> &[usize] {
        &self.incidence[idx]
    }
}

fn mask(coords: &[usize]) -> u64 {
    coords.iter().fold(0, |m, &c| m | (1 << c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn counts() {
        for (n, w, q, r, s) in [(5, 3, 4, 2, 1), (4, 2, 3, 1, 1), (3, 2, 3, 2, 1), (5, 3, 3, 3, 2), (4, 2, 3, 0, 0)] {
            let params = SchemeParams::new(n, w, q).unwrap();
            let p = CoverProblem::new(&params, r, s).unwrap();
            let expected = binom(n as i64, r as i64) * binom(r as i64, s as i64) * pow(q as i64 - 1, s);
            assert_eq!(p.constraint_count(), expected.to_usize().unwrap());
            let per = (binom(w as i64, r as i64) * binom(r as i64, s as i64)).to_usize().unwrap();
            for idx in 0..p.candidates().len() {
                assert_eq!(p.covered_by(idx).len(), per);
            }
        }
    }

    #[test]
    fn every_constraint_is_coverable() {
        let params = SchemeParams::new(5, 3, 4).unwrap();
        let p = CoverProblem::new(&params, 2, 1).unwrap();
        let mut hits = vec![0usize; p.constraint_count()];
        for idx in 0..p.candidates().len() {
            for &c in p.covered_by(idx) {
                hits[c] += 1;
            }
        }
        // C(n-r, w-r) supports through R, (q-1)^(w-s) fillings off S
        assert!(hits.iter().all(|&h| h == 3 * 9));
    }

    #[test]
    fn rejects_bad_indices() {
        let params = SchemeParams::new(4, 2, 3).unwrap();
        assert!(CoverProblem::new(&params, 3, 1).is_err());
        assert!(CoverProblem::new(&params, 1, 2).is_err());
    }
}
