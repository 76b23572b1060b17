use std::fmt;

use crate::error::{Error, Result};

/// Largest supported coordinate count; supports are stored as `u64` bitmasks.
pub const MAX_N: usize = 64;
/// Largest supported alphabet; symbols are stored as `u8`.
pub const MAX_Q: usize = 256;

/// A double index: `(i, j)` for an idempotent in `L`, or `(k, h)` for a
/// relation in `K`. Ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexPair {
    pub i: usize,
    pub j: usize,
}

impl IndexPair {
    pub const ZERO: IndexPair = IndexPair { i: 0, j: 0 };

    pub const fn new(i: usize, j: usize) -> Self {
        IndexPair { i, j }
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl From<(usize, usize)> for IndexPair {
    fn from((i, j): (usize, usize)) -> Self {
        IndexPair { i, j }
    }
}

/// The parameters `(n, w, q)` of the scheme on weight-`w` words of length `n`
/// over a `q`-letter alphabet, with the derived index sets.
///
/// `L = {(i,j) : 0 <= j <= i <= w, i - j <= m}` indexes the primitive
/// idempotents and `K = {(k,h) : 0 <= h <= k <= w, h <= m}` the relations,
/// where `m = min(w, n - w)`. Both lists are kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeParams {
    n: usize,
    w: usize,
    q: usize,
    m: usize,
    l: Vec<IndexPair>,
    k: Vec<IndexPair>,
}

impl SchemeParams {
    pub fn new(n: usize, w: usize, q: usize) -> Result<Self> {
        if w > n {
            return Err(Error::InvalidParams(format!("weight w={w} exceeds length n={n}")));
        }
        if q < 2 {
            return Err(Error::InvalidParams(format!("alphabet size q={q} must be at least 2")));
        }
        if n > MAX_N {
            return Err(Error::InvalidParams(format!("n={n} exceeds supported maximum {MAX_N}")));
        }
        if q > MAX_Q {
            return Err(Error::InvalidParams(format!("q={q} exceeds supported maximum {MAX_Q}")));
        }
        let m = w.min(n - w);
        let mut l = Vec::new();
        for i in 0..=w {
            for j in 0..=i {
                if i - j <= m {
                    l.push(IndexPair::new(i, j));
                }
            }
        }
        let mut k = Vec::new();
        for kk in 0..=w {
            for h in 0..=kk.min(m) {
                k.push(IndexPair::new(kk, h));
            }
        }
        Ok(SchemeParams { n, w, q, m, l, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Idempotent index set, lexicographic.
    pub fn l(&self) -> &[IndexPair] {
        &self.l
    }

    /// Relation index set, lexicographic.
    pub fn k(&self) -> &[IndexPair] {
        &self.k
    }

    pub fn in_l(&self, p: IndexPair) -> bool {
        p.j <= p.i && p.i <= self.w && p.i - p.j <= self.m
    }

    pub fn in_k(&self, p: IndexPair) -> bool {
        p.j <= p.i && p.i <= self.w && p.j <= self.m
    }

    pub fn l_index(&self, p: IndexPair) -> Option<usize> {
        self.l.binary_search(&p).ok()
    }

    pub fn k_index(&self, p: IndexPair) -> Option<usize> {
        self.k.binary_search(&p).ok()
    }

    pub(crate) fn require_l(&self, p: IndexPair) -> Result<()> {
        if self.in_l(p) {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("{p} is not in L for {self}")))
        }
    }

    pub(crate) fn require_k(&self, p: IndexPair) -> Result<()> {
        if self.in_k(p) {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("{p} is not in K for {self}")))
        }
    }

    /// `|X| = C(n,w) (q-1)^w`, the number of vertices.
    pub fn vertex_count(&self) -> num_bigint::BigInt {
        super::binom(self.n as i64, self.w as i64) * super::pow(self.q as i64 - 1, self.w)
    }
}

impl fmt::Display for SchemeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n,w,q)=({},{},{})", self.n, self.w, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expected_size(p: &SchemeParams) -> usize {
        (0..=p.m()).map(|d| p.w() - d + 1).sum()
    }

    #[test]
    fn l_and_k_have_equal_size() {
        for n in 1..=9 {
            for w in 0..=n {
                let p = SchemeParams::new(n, w, 3).unwrap();
                assert_eq!(p.l().len(), p.k().len(), "{p}");
                assert_eq!(p.l().len(), expected_size(&p), "{p}");
            }
        }
    }

    #[test]
    fn l_for_4_2() {
        let p = SchemeParams::new(4, 2, 3).unwrap();
        let l: Vec<_> = p.l().iter().map(|x| (x.i, x.j)).collect();
        assert_eq!(l, vec![(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]);
    }

    #[test]
    fn l_excludes_large_gaps() {
        // m = min(3, 2) = 2, so (3,0) is excluded from L but (3,0) is in K.
        let p = SchemeParams::new(5, 3, 4).unwrap();
        assert!(!p.in_l(IndexPair::new(3, 0)));
        assert!(p.in_k(IndexPair::new(3, 0)));
        assert!(!p.in_k(IndexPair::new(3, 3)));
        assert!(p.in_l(IndexPair::new(3, 3)));
    }

    #[test]
    fn rejects_bad_params() {
        assert!(SchemeParams::new(3, 4, 3).is_err());
        assert!(SchemeParams::new(3, 1, 1).is_err());
        assert!(SchemeParams::new(65, 1, 3).is_err());
    }
}
