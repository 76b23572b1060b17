use itertools::Itertools;

use crate::error::{Error, Result};

/// An array whose rows are words over `{1, ..., levels}`, intended to have
/// every `strength`-tuple appear equally often in any `strength` columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoArray {
    levels: usize,
    factors: usize,
    strength: usize,
    rows: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OaWitness {
    /// 1-based columns.
    pub columns: Vec<usize>,
    pub tuple: Vec<u8>,
    pub observed: u64,
    pub expected: u64,
}

impl OrthoArray {
    pub fn new(levels: usize, factors: usize, strength: usize, rows: Vec<Vec<u8>>) -> Result<Self> {
        if levels == 0 || levels > 255 || strength > factors {
            return Err(Error::Ingredient(format!(
                "orthogonal array needs 1 <= levels <= 255 and strength <= factors, got levels={levels} factors={factors} strength={strength}"
            )));
        }
        for (idx, row) in rows.iter().enumerate() {
            if row.len() != factors {
                return Err(Error::Ingredient(format!("OA row {} has {} entries, expected {factors}", idx + 1, row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&c| c == 0 || c as usize > levels) {
                return Err(Error::Ingredient(format!("OA row {} has symbol {bad} outside 1..={levels}", idx + 1)));
            }
        }
        Ok(OrthoArray { levels, factors, strength, rows })
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn strength(&self) -> usize {
        self.strength
    }

    pub fn runs(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// The first `k` columns.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k < self.strength || k > self.factors {
            return Err(Error::Ingredient(format!("cannot keep {k} of {} columns at strength {}", self.factors, self.strength)));
        }
        let rows = self.rows.iter().map(|r| r[..k].to_vec()).collect();
        OrthoArray::new(self.levels, k, self.strength, rows)
    }
}

/// The common count of every `strength`-tuple in every set of `strength`
/// columns, or the first column set and tuple where it fails.
pub fn oa_verify(a: &OrthoArray) -> std::result::Result<u64, OaWitness> {
    let (t, v) = (a.strength, a.levels);
    let cells = v.pow(t as u32);
    let mut expected = None;
    for cols in (0..a.factors).combinations(t) {
        let mut counts = vec![0u64; cells];
        for row in &a.rows {
            let cell = cols.iter().fold(0usize, |acc, &c| acc * v + (row[c] as usize - 1));
            counts[cell] += 1;
        }
        for (cell, &c) in counts.iter().enumerate() {
            match expected {
                None => expected = Some(c),
                Some(e) if e != c => {
                    return Err(OaWitness {
                        columns: cols.iter().map(|c| c + 1).collect(),
                        tuple: decode(cell, t, v),
                        observed: c,
                        expected: e,
                    })
                }
                _ => {}
            }
        }
    }
    Ok(expected.unwrap_or(a.rows.len() as u64))
}

fn decode(mut cell: usize, t: usize, v: usize) -> Vec<u8> {
    let mut out = vec![0u8; t];
    for slot in out.iter_mut().rev() {
        *slot = (cell % v) as u8 + 1;
        cell /= v;
    }
    out
}

/// Rows `(a, a, ..., a)` for `a = 1, ..., q-1`: strength 1, index 1.
pub fn trivial_oa(w: usize, q: usize) -> Result<OrthoArray> {
    if q < 2 || w < 1 || q > 256 {
        return Err(Error::Precondition(format!("trivial OA needs q >= 2 and w >= 1, got q={q} w={w}")));
    }
    let rows = (1..q).map(|a| vec![a as u8; w]).collect();
    OrthoArray::new(q - 1, w, 1, rows)
}

/// All `(q-1)^w` words: strength `w`, index 1.
pub fn full_factorial_oa(w: usize, q: usize) -> Result<OrthoArray> {
    if !(2..=256).contains(&q) {
        return Err(Error::Precondition(format!("q={q} outside 2..=256")));
    }
    let rows: Vec<Vec<u8>> = (0..w).map(|_| 1..q as u8).multi_cartesian_product().collect();
    let rows = if w == 0 { vec![Vec::new()] } else { rows };
    OrthoArray::new(q - 1, w, w, rows)
}

/// `OA((q-1)^2, 4, q-1, 2)` with rows `(x, y, x+y, x+ay)` over the field of
/// order `q-1`, `a` a field element other than 0 and 1, symbols shifted by one.
pub fn mols_oa(q: usize) -> Result<OrthoArray> {
    if q == 3 || q == 7 {
        return Err(Error::Precondition(format!("no OA((q-1)^2, 4, q-1, 2) is constructed for q={q}")));
    }
    let order = q.saturating_sub(1);
    if order < 3 {
        return Err(Error::Precondition(format!("q-1 = {order} is below 3")));
    }
    if q > 256 {
        return Err(Error::Precondition(format!("q={q} exceeds 256")));
    }
    let field = GaloisField::new(order)
        .ok_or_else(|| Error::Precondition(format!("q-1 = {order} is not a prime power; supply the OA from a file")))?;
    let a = 2;
    let mut rows = Vec::with_capacity(order * order);
    for x in 0..order {
        for y in 0..order {
            let cols = [x, y, field.add(x, y), field.add(x, field.mul(a, y))];
            rows.push(cols.iter().map(|&c| c as u8 + 1).collect());
        }
    }
    OrthoArray::new(order, 4, 2, rows)
}

/// `GF(p^k)` with elements encoded as base-`p` digit strings of polynomials.
struct GaloisField {
    p: usize,
    k: usize,
    /// Monic irreducible modulus, coefficients low degree first, length `k+1`.
    modulus: Vec<usize>,
}

impl GaloisField {
    fn new(order: usize) -> Option<Self> {
        let (p, k) = prime_power(order)?;
        let modulus = (0..p.pow(k as u32))
            .map(|low| {
                let mut m = digits(low, p, k);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))?;
        Some(GaloisField { p, k, modulus })
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (da, db) = (digits(a, self.p, self.k), digits(b, self.p, self.k));
        undigits(&da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect::<Vec<_>>(), self.p)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let prod = poly_mul(&digits(a, self.p, self.k), &digits(b, self.p, self.k), self.p);
        let mut rem = poly_rem(&prod, &self.modulus, self.p);
        rem.resize(self.k, 0);
        undigits(&rem, self.p)
    }
}

fn prime_power(n: usize) -> Option<(usize, usize)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let (mut m, mut k) = (n, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

fn digits(mut x: usize, p: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(x % p);
        x /= p;
    }
    out
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn poly_mul(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn poly_rem(a: &[usize], m: &[usize], p: usize) -> Vec<usize> {
    let deg = m.len() - 1;
    let mut r = a.to_vec();
    for top in (deg..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        for (i, &mi) in m.iter().enumerate() {
            r[top - deg + i] = (r[top - deg + i] + p * p - c * mi % p) % p;
        }
    }
    r.truncate(deg);
    r
}

fn is_irreducible(m: &[usize], p: usize) -> bool {
    let deg = m.len() - 1;
    // no monic factor of degree 1..=deg/2
    (1..=deg / 2).all(|d| {
        (0..p.pow(d as u32)).all(|low| {
            let mut f = digits(low, p, d);
            f.push(1);
            poly_rem(m, &f, p).iter().any(|&c| c != 0)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_arrays() {
        let a = trivial_oa(3, 4).unwrap();
        assert_eq!(a.runs(), 3);
        assert_eq!(oa_verify(&a), Ok(1));
        let b = trivial_oa(1, 2).unwrap();
        assert_eq!(b.rows(), &[vec![1]]);
        assert_eq!(oa_verify(&b), Ok(1));
        for w in 1..5 {
            for q in 2..7 {
                assert_eq!(oa_verify(&trivial_oa(w, q).unwrap()), Ok(1));
            }
        }
    }

    #[test]
    fn mols_arrays() {
        let a = mols_oa(4).unwrap();
        assert_eq!((a.runs(), a.factors(), a.levels()), (9, 4, 3));
        assert_eq!(oa_verify(&a), Ok(1));
        let b = mols_oa(5).unwrap();
        assert_eq!((b.runs(), b.levels()), (16, 4));
        assert_eq!(oa_verify(&b), Ok(1));
        for q in [6, 8, 9, 10, 12, 14, 17, 26, 28] {
            assert_eq!(oa_verify(&mols_oa(q).unwrap()), Ok(1), "q={q}");
        }
        assert!(mols_oa(3).is_err());
        assert!(mols_oa(7).is_err());
        assert!(mols_oa(11).is_err());
        assert!(mols_oa(2).is_err());
    }

    #[test]
    fn field_axioms_gf9() {
        let f = GaloisField::new(9).unwrap();
        for a in 1..9 {
            assert_eq!((1..9).filter(|&b| f.mul(a, b) == 1).count(), 1);
        }
    }

    #[test]
    fn duplicated_row_breaks_strength() {
        let a = mols_oa(4).unwrap();
        let mut rows = a.rows().to_vec();
        rows.push(rows[0].clone());
        let w = oa_verify(&OrthoArray::new(3, 4, 2, rows).unwrap()).unwrap_err();
        assert_eq!(w.columns, vec![1, 2]);
        assert_eq!(w.tuple, vec![1, 2]);
        assert_eq!((w.observed, w.expected), (1, 2));
    }

    #[test]
    fn full_factorial() {
        let a = full_factorial_oa(3, 3).unwrap();
        assert_eq!(a.runs(), 8);
        assert_eq!(oa_verify(&a), Ok(1));
        assert!(OrthoArray::new(2, 2, 1, vec![vec![0, 1]]).is_err());
    }
}
