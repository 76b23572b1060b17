use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A family of `w`-subsets of `{1, ..., n}` intended as an `r`-design.
/// Blocks are stored sorted, 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDesign {
    n: usize,
    w: usize,
    r: usize,
    blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockWitness {
    /// The `r`-subset (1-based) whose coverage differs.
    pub points: Vec<usize>,
    pub observed: u64,
    pub expected: u64,
}

impl BlockDesign {
    pub fn new(n: usize, w: usize, r: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if w > n || r > w || n > crate::exactmath::MAX_N {
            return Err(Error::Ingredient(format!("block design needs r <= w <= n <= 64, got n={n} w={w} r={r}")));
        }
        let mut sorted = Vec::with_capacity(blocks.len());
        for (idx, mut b) in blocks.into_iter().enumerate() {
            b.sort_unstable();
            let ok = b.len() == w && b.iter().all(|&p| (1..=n).contains(&p)) && b.windows(2).all(|p| p[0] < p[1]);
            if !ok {
                return Err(Error::Ingredient(format!("block {} is not a {w}-subset of 1..={n}: {b:?}", idx + 1)));
            }
            sorted.push(b);
        }
        Ok(BlockDesign { n, w, r, blocks: sorted })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// The common number of blocks through every `r`-subset of points, or the
/// lexicographically first `r`-subset that disagrees with `{1..r}`.
pub fn block_design_verify(b: &BlockDesign) -> std::result::Result<u64, BlockWitness> {
    let mut cover: HashMap<u64, u64> = HashMap::new();
    for block in &b.blocks {
        for sub in block.iter().combinations(b.r) {
            *cover.entry(sub.iter().fold(0u64, |m, &&p| m | (1 << (p - 1)))).or_default() += 1;
        }
    }
    let mut expected = None;
    for sub in (1..=b.n).combinations(b.r) {
        let mask = sub.iter().fold(0u64, |m, &p| m | (1 << (p - 1)));
        let c = cover.get(&mask).copied().unwrap_or(0);
        match expected {
            None => expected = Some(c),
            Some(e) if e != c => return Err(BlockWitness { points: sub, observed: c, expected: e }),
            _ => {}
        }
    }
    Ok(expected.unwrap_or(0))
}

/// A Steiner triple system on `n` points: Bose's construction for
/// `n = 3 (mod 6)` and Skolem's for `n = 1 (mod 6)`.
pub fn sts(n: usize) -> Result<BlockDesign> {
    if n < 3 || !(n % 6 == 1 || n % 6 == 3) {
        return Err(Error::Precondition(format!("no Steiner triple system on {n} points (need n = 1 or 3 mod 6)")));
    }
    let mut blocks = if n % 6 == 3 { bose(n) } else { skolem(n) };
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    BlockDesign::new(n, 3, 2, blocks)
}

// points (x, i) with x in Z_v, i in Z_3, numbered x + v*i + 1
fn bose(n: usize) -> Vec<Vec<usize>> {
    let v = n / 3;
    let half = v.div_ceil(2);
    let op = |x: usize, y: usize| ((x + y) * half) % v;
    let pt = |x: usize, i: usize| x + v * (i % 3) + 1;
    let mut blocks = Vec::new();
    for x in 0..v {
        blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
    }
    for i in 0..3 {
        for x in 0..v {
            for y in x + 1..v {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

// points (x, i) with x in Z_{2t}, i in Z_3, numbered x + 2t*i + 1, and the point at infinity n
fn skolem(n: usize) -> Vec<Vec<usize>> {
    let t = (n - 1) / 6;
    let order = 2 * t;
    // half-idempotent commutative quasigroup: Z_{2t} addition, renamed 2k -> k, 2k+1 -> t+k
    let op = |x: usize, y: usize| {
        let z = (x + y) % order;
        if z.is_multiple_of(2) {
            z / 2
        } else {
            t + z / 2
        }
    };
    let pt = |x: usize, i: usize| x + order * (i % 3) + 1;
    let mut blocks = Vec::new();
    for x in 0..t {
        blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
    }
    for x in 0..t {
        for i in 0..3 {
            blocks.push(vec![n, pt(t + x, i), pt(x, i + 1)]);
        }
    }
    for i in 0..3 {
        for x in 0..order {
            for y in x + 1..order {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

/// Every `w`-subset of `{1, ..., n}`, as an `r`-design.
pub fn complete_design(n: usize, w: usize, r: usize) -> Result<BlockDesign> {
    BlockDesign::new(n, w, r, (1..=n).combinations(w).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::binom;
    use num_traits::ToPrimitive;

    fn fano() -> Vec<Vec<usize>> {
        ["123", "145", "167", "246", "257", "347", "356"]
            .iter()
            .map(|s| s.bytes().map(|b| (b - b'0') as usize).collect())
            .collect()
    }

    #[test]
    fn fano_plane() {
        let b = BlockDesign::new(7, 3, 2, fano()).unwrap();
        assert_eq!(block_design_verify(&b), Ok(1));
        let mut minus = fano();
        minus.pop();
        let w = block_design_verify(&BlockDesign::new(7, 3, 2, minus).unwrap()).unwrap_err();
        assert_eq!(w.points, vec![3, 5]);
        assert_eq!((w.observed, w.expected), (0, 1));
    }

    #[test]
    fn complete_designs() {
        for n in 1..=7 {
            for w in 0..=n {
                for r in 0..=w {
                    let b = complete_design(n, w, r).unwrap();
                    let expected = binom((n - r) as i64, (w - r) as i64).to_u64().unwrap();
                    assert_eq!(block_design_verify(&b), Ok(expected));
                }
            }
        }
    }

    #[test]
    fn steiner_triple_systems() {
        for n in (3..=31).filter(|n| n % 6 == 1 || n % 6 == 3) {
            let b = sts(n).unwrap();
            assert_eq!(b.len(), n * (n - 1) / 6, "n={n}");
            assert_eq!(block_design_verify(&b), Ok(1), "n={n}");
        }
        assert_eq!(sts(7).unwrap().len(), 7);
        assert_eq!(sts(9).unwrap().len(), 12);
        assert!(sts(5).is_err());
        assert!(sts(1).is_err());
    }

    #[test]
    fn malformed_blocks() {
        assert!(BlockDesign::new(7, 3, 2, vec![vec![1, 2, 8]]).is_err());
        assert!(BlockDesign::new(7, 3, 2, vec![vec![1, 2, 2]]).is_err());
        assert!(BlockDesign::new(7, 3, 2, vec![vec![1, 2]]).is_err());
    }
}
