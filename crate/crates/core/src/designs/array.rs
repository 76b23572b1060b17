use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactmath::SchemeParams;
use crate::scheme::{enumerate_vertices, Vector};

/// A collection of weight-`w` words, kept in input order.
///
/// Arrays built with [`DesignArray::new`] are duplicate-free. Derived designs
/// may repeat rows and are built with [`DesignArray::multiset`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignArray {
    params: SchemeParams,
    rows: Vec<Vector>,
}

impl DesignArray {
    pub fn new(params: SchemeParams, rows: Vec<Vec<u8>>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(idx, r)| {
                check_row(&params, &r).map_err(|e| Error::InvalidRow(format!("row {}: {e}", idx + 1)))?;
                Ok(Vector::from_raw(r))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_vectors(params, rows)
    }

    pub fn from_vectors(params: SchemeParams, rows: Vec<Vector>) -> Result<Self> {
        let mut seen: HashMap<&Vector, usize> = HashMap::with_capacity(rows.len());
        for (idx, row) in rows.iter().enumerate() {
            check_row(&params, row.coords()).map_err(|e| Error::InvalidRow(format!("row {}: {e}", idx + 1)))?;
            if let Some(&first) = seen.get(row) {
                return Err(Error::DuplicateRow { row: idx + 1, first: first + 1 });
            }
            seen.insert(row, idx);
        }
        Ok(DesignArray { params, rows })
    }

    /// Like [`DesignArray::from_vectors`] but keeps repeated rows.
    pub fn multiset(params: SchemeParams, rows: Vec<Vector>) -> Result<Self> {
        for (idx, row) in rows.iter().enumerate() {
            check_row(&params, row.coords()).map_err(|e| Error::InvalidRow(format!("row {}: {e}", idx + 1)))?;
        }
        Ok(DesignArray { params, rows })
    }

    /// The whole vertex set `X`.
    pub fn full(params: &SchemeParams) -> Result<Self> {
        Ok(DesignArray { params: params.clone(), rows: enumerate_vertices(params)? })
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn has_repeated_rows(&self) -> bool {
        let mut sorted: Vec<&Vector> = self.rows.iter().collect();
        sorted.sort();
        sorted.windows(2).any(|w| w[0] == w[1])
    }

    /// A copy with row `idx` (0-based) removed.
    pub fn without_row(&self, idx: usize) -> Result<Self> {
        if idx >= self.rows.len() {
            return Err(Error::OutOfRange(format!("row {idx} of {}", self.rows.len())));
        }
        let mut rows = self.rows.clone();
        rows.remove(idx);
        Ok(DesignArray { params: self.params.clone(), rows })
    }

    /// The subarray of the given rows (0-based), in the given order.
    pub fn select(&self, idx: &[usize]) -> Result<Self> {
        let rows = idx
            .iter()
            .map(|&i| self.rows.get(i).cloned().ok_or_else(|| Error::OutOfRange(format!("row {i}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_vectors(self.params.clone(), rows)
    }
}

fn check_row(params: &SchemeParams, row: &[u8]) -> std::result::Result<(), String> {
    if row.len() != params.n() {
        return Err(format!("has {} symbols, expected {}", row.len(), params.n()));
    }
    if let Some(&bad) = row.iter().find(|&&c| c as usize >= params.q()) {
        return Err(format!("symbol {bad} outside 0..{}", params.q() - 1));
    }
    let weight = row.iter().filter(|&&c| c != 0).count();
    if weight != params.w() {
        return Err(format!("has weight {weight}, expected {}", params.w()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> SchemeParams {
        SchemeParams::new(4, 2, 3).unwrap()
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(DesignArray::new(p(), vec![vec![1, 1, 0, 0], vec![2, 0, 0, 1]]).is_ok());
        assert!(matches!(
            DesignArray::new(p(), vec![vec![1, 1, 0, 0], vec![1, 1, 0, 0]]),
            Err(Error::DuplicateRow { row: 2, first: 1 })
        ));
        assert!(DesignArray::new(p(), vec![vec![1, 1, 1, 0]]).is_err());
        assert!(DesignArray::new(p(), vec![vec![3, 1, 0, 0]]).is_err());
        assert!(DesignArray::new(p(), vec![vec![1, 1, 0]]).is_err());
    }

    #[test]
    fn multiset_keeps_repeats() {
        let v = Vector::new(vec![1, 1, 0, 0], 3).unwrap();
        let y = DesignArray::multiset(p(), vec![v.clone(), v]).unwrap();
        assert!(y.has_repeated_rows());
        assert_eq!(y.len(), 2);
    }

    #[test]
    fn full_is_x() {
        assert_eq!(DesignArray::full(&p()).unwrap().len(), 24);
    }
}
