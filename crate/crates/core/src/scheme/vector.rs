use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::MAX_N;

/// A word of length `n` over `{0, ..., q-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(Vec<u8>);

impl Vector {
    pub fn new(coords: Vec<u8>, q: usize) -> Result<Self> {
        if coords.len() > MAX_N {
            return Err(Error::InvalidRow(format!("length {} exceeds {MAX_N}", coords.len())));
        }
        if let Some(&bad) = coords.iter().find(|&&c| c as usize >= q) {
            return Err(Error::InvalidRow(format!("symbol {bad} outside 0..{q}")));
        }
        Ok(Vector(coords))
    }

    pub(crate) fn from_raw(coords: Vec<u8>) -> Self {
        Vector(coords)
    }

    pub fn coords(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    /// Hamming weight: number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&c| c != 0).count()
    }

    /// Multiplicative weight: number of coordinates outside `{0, 1}`.
    pub fn mult_weight(&self) -> usize {
        self.0.iter().filter(|&&c| c > 1).count()
    }

    /// Support as a bitmask, bit `i` set iff coordinate `i` is nonzero.
    pub fn support(&self) -> u64 {
        mask_where(&self.0, |c| c != 0)
    }

    /// Coordinates holding a symbol other than 0 or 1, as a bitmask.
    pub fn nonunit_support(&self) -> u64 {
        mask_where(&self.0, |c| c > 1)
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.0
    }
}

fn mask_where(coords: &[u8], f: impl Fn(u8) -> bool) -> u64 {
    coords
        .iter()
        .enumerate()
        .filter(|(_, &c)| f(c))
        .fold(0u64, |m, (i, _)| m | (1u64 << i))
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
