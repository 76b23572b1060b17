use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::DesignArray;
use crate::error::{Error, Result};
use crate::exactmath::{binom, pow};

/// Largest number of `(R, S, omega)` triples the verifier will walk.
pub const TRIPLE_CAP: u128 = 200_000_000;

/// A constraint `(R, S, omega)`: 0-based coordinates, `S` a subset of `R`,
/// `omega` aligned with `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple {
    pub r_set: Vec<usize>,
    pub s_set: Vec<usize>,
    pub omega: Vec<u8>,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based = |v: &[usize]| v.iter().map(|c| (c + 1).to_string()).join(",");
        write!(
            f,
            "R={{{}}} S={{{}}} omega=({})",
            one_based(&self.r_set),
            one_based(&self.s_set),
            self.omega.iter().join(",")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub triple: Triple,
    pub observed: u64,
    pub expected: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub is_design: bool,
    pub lambda: Option<u64>,
    pub witness: Option<Witness>,
}

fn mask_of(coords: &[usize], n: usize) -> Result<u64> {
    let mut mask = 0u64;
    for &c in coords {
        if c >= n {
            return Err(Error::OutOfRange(format!("coordinate {} outside 1..={n}", c + 1)));
        }
        if mask & (1 << c) != 0 {
            return Err(Error::OutOfRange(format!("coordinate {} repeated", c + 1)));
        }
        mask |= 1 << c;
    }
    Ok(mask)
}

/// `m_{R,S}(Y, omega)`: rows nonzero on all of `R` that read `omega` on `S`.
pub fn count_mrs(y: &DesignArray, r_set: &[usize], s_set: &[usize], omega: &[u8]) -> Result<u64> {
    let n = y.params().n();
    let r_mask = mask_of(r_set, n)?;
    let s_mask = mask_of(s_set, n)?;
    if s_mask & !r_mask != 0 {
        return Err(Error::OutOfRange("S is not a subset of R".into()));
    }
    if omega.len() != s_set.len() {
        return Err(Error::OutOfRange(format!("|omega| = {} but |S| = {}", omega.len(), s_set.len())));
    }
    let q = y.params().q();
    if let Some(&bad) = omega.iter().find(|&&o| o == 0 || o as usize >= q) {
        return Err(Error::OutOfRange(format!("omega symbol {bad} outside 1..{q}")));
    }
    Ok(y.rows()
        .iter()
        .filter(|row| row.support() & r_mask == r_mask)
        .filter(|row| s_set.iter().zip(omega).all(|(&c, &o)| row.get(c) == o))
        .count() as u64)
}

/// Checks the `(r, s)`-design property, walking every `(R, S, omega)` in
/// lexicographic order and reporting the first triple whose count differs
/// from that of the very first triple.
pub fn verify_rs_design(y: &DesignArray, r: usize, s: usize) -> Result<VerifyReport> {
    let params = y.params();
    let (n, w, q) = (params.n(), params.w(), params.q());
    if s > r || r > w {
        return Err(Error::OutOfRange(format!("need 0 <= s <= r <= w, got (r,s)=({r},{s}) with w={w}")));
    }
    let triples = binom(n as i64, r as i64) * binom(r as i64, s as i64) * pow(q as i64 - 1, s);
    if triples > TRIPLE_CAP.into() {
        return Err(Error::TooLarge {
            what: "constraint triples",
            size: triples.to_u128().unwrap_or(u128::MAX),
            cap: TRIPLE_CAP,
        });
    }

    // inverted index: r-subset of a support -> rows containing it
    let mut index: HashMap<u64, Vec<u32>> = HashMap::new();
    for (idx, row) in y.rows().iter().enumerate() {
        let support: Vec<usize> = (0..n).filter(|&c| row.get(c) != 0).collect();
        for sub in support.iter().combinations(r) {
            let mask = sub.iter().fold(0u64, |m, &&c| m | (1 << c));
            index.entry(mask).or_default().push(idx as u32);
        }
    }

    let r_sets: Vec<Vec<usize>> = (0..n).combinations(r).collect();
    let symbols = q - 1;
    let cells = symbols.pow(s as u32);
    let tally = |r_set: &[usize], s_set: &[usize]| -> Vec<u64> {
        let mask = r_set.iter().fold(0u64, |m, &c| m | (1 << c));
        let mut counts = vec![0u64; cells];
        for &idx in index.get(&mask).map(Vec::as_slice).unwrap_or(&[]) {
            let row = &y.rows()[idx as usize];
            let cell = s_set.iter().fold(0usize, |acc, &c| acc * symbols + (row.get(c) as usize - 1));
            counts[cell] += 1;
        }
        counts
    };

    let first_s: Vec<usize> = r_sets[0].iter().copied().take(s).collect();
    let lambda = tally(&r_sets[0], &first_s)[0];

    let witness = r_sets.par_iter().find_map_first(|r_set| {
        r_set.iter().copied().combinations(s).find_map(|s_set| {
            let counts = tally(r_set, &s_set);
            counts.iter().position(|&c| c != lambda).map(|cell| Witness {
                triple: Triple { r_set: r_set.clone(), s_set: s_set.clone(), omega: decode(cell, s, symbols) },
                observed: counts[cell],
                expected: lambda,
            })
        })
    });
    Ok(match witness {
        None => VerifyReport { is_design: true, lambda: Some(lambda), witness: None },
        Some(w) => VerifyReport { is_design: false, lambda: None, witness: Some(w) },
    })
}

fn decode(mut cell: usize, s: usize, symbols: usize) -> Vec<u8> {
    let mut out = vec![0u8; s];
    for slot in out.iter_mut().rev() {
        *slot = (cell % symbols) as u8 + 1;
        cell /= symbols;
    }
    out
}
