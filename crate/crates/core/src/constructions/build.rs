use std::collections::BTreeMap;

use super::blocks::{block_design_verify, complete_design, BlockDesign};
use super::oa::{full_factorial_oa, mols_oa, oa_verify, trivial_oa, OrthoArray};
use crate::designs::{verify_rs_design, DesignArray};
use crate::error::{Error, Result};
use crate::exactmath::SchemeParams;
use crate::scheme::Vector;

/// A design produced by a construction, already re-verified.
#[derive(Debug, Clone)]
pub struct Constructed {
    pub design: DesignArray,
    pub r: usize,
    pub s: usize,
    pub lambda: u64,
}

/// Places every row of `a` on every block of `b` (the `k`-th smallest point of
/// the block receives the `k`-th symbol of the row), giving an
/// `(r, s)`-design with index `lambda_1 lambda_2`.
pub fn construction_a(b: &BlockDesign, a: &OrthoArray) -> Result<Constructed> {
    if a.factors() != b.w() {
        return Err(Error::Ingredient(format!(
            "OA has {} factors but blocks have size {}",
            a.factors(),
            b.w()
        )));
    }
    if a.strength() > b.r() {
        return Err(Error::Ingredient(format!(
            "OA strength {} exceeds block design strength {}",
            a.strength(),
            b.r()
        )));
    }
    let lambda1 = block_design_verify(b).map_err(|w| {
        Error::Ingredient(format!(
            "not a {}-design: points {:?} lie in {} blocks, expected {}",
            b.r(),
            w.points,
            w.observed,
            w.expected
        ))
    })?;
    let lambda2 = oa_verify(a).map_err(|w| {
        Error::Ingredient(format!(
            "not an OA of strength {}: tuple {:?} occurs {} times in columns {:?}, expected {}",
            a.strength(),
            w.tuple,
            w.observed,
            w.columns,
            w.expected
        ))
    })?;
    let params = SchemeParams::new(b.n(), b.w(), a.levels() + 1)?;
    let mut rows = Vec::with_capacity(b.len() * a.runs());
    for block in b.blocks() {
        for oa_row in a.rows() {
            let mut word = vec![0u8; b.n()];
            for (&point, &sym) in block.iter().zip(oa_row) {
                word[point - 1] = sym;
            }
            rows.push(Vector::from_raw(word));
        }
    }
    let design = DesignArray::from_vectors(params, rows)?;
    let (r, s) = (b.r(), a.strength());
    let lambda = lambda1 * lambda2;
    let report = verify_rs_design(&design, r, s)?;
    if report.lambda != Some(lambda) {
        return Err(Error::IdentityViolated(format!(
            "construction output is not an ({r},{s})-design with index {lambda}: {report:?}"
        )));
    }
    Ok(Constructed { design, r, s, lambda })
}

/// A built-in index-1 `OA(v, w, q-1, s)`, when one is available.
pub fn default_oa(w: usize, q: usize, s: usize) -> Result<OrthoArray> {
    match s {
        _ if s > w => Err(Error::Precondition(format!("strength {s} exceeds w={w}"))),
        _ if s == w => full_factorial_oa(w, q),
        0 => OrthoArray::new(q - 1, w, 0, vec![vec![1; w]]),
        1 => trivial_oa(w, q),
        2 if w <= 4 => mols_oa(q)?.truncate(w),
        _ => Err(Error::Ingredient(format!(
            "no built-in index-1 OA with {w} factors, {} levels and strength {s}; supply one from a file",
            q - 1
        ))),
    }
}

/// The `r = w` family: an index-1 OA of strength `s` placed on every
/// `w`-subset, giving a `(w, s)`-design with index 1.
pub fn full_design(params: &SchemeParams, s: usize, oa: Option<&OrthoArray>) -> Result<Constructed> {
    let owned;
    let a = match oa {
        Some(a) => a,
        None => {
            owned = default_oa(params.w(), params.q(), s)?;
            &owned
        }
    };
    if a.strength() != s || a.levels() != params.q() - 1 {
        return Err(Error::Ingredient(format!(
            "OA has strength {} over {} levels, expected strength {s} over {}",
            a.strength(),
            a.levels(),
            params.q() - 1
        )));
    }
    if oa_verify(a) != Ok(1) {
        return Err(Error::Ingredient("the OA must have index 1".into()));
    }
    construction_a(&complete_design(params.n(), params.w(), params.w())?, a)
}

/// Tries to read `y` as Construction A output for an `(r, s)`-design: the
/// rows must split into equally sized groups with identical supports, every
/// group carrying the same array of nonzero symbols, with that array an OA
/// of strength `s` and the supports an `r`-design. Returns the ingredients
/// when this succeeds.
pub fn decompose_construction_a(y: &DesignArray, r: usize, s: usize) -> Option<(BlockDesign, OrthoArray)> {
    let params = y.params();
    let mut groups: BTreeMap<u64, Vec<Vec<u8>>> = BTreeMap::new();
    for row in y.rows() {
        let content = row.coords().iter().copied().filter(|&c| c != 0).collect();
        groups.entry(row.support()).or_default().push(content);
    }
    let mut contents = groups.values().map(|g| {
        let mut g = g.clone();
        g.sort();
        g
    });
    let first = contents.next()?;
    if contents.any(|g| g != first) {
        return None;
    }
    let blocks = groups
        .keys()
        .map(|&mask| (0..params.n()).filter(|c| mask & (1 << c) != 0).map(|c| c + 1).collect())
        .collect();
    let b = BlockDesign::new(params.n(), params.w(), r, blocks).ok()?;
    let a = OrthoArray::new(params.q() - 1, params.w(), s, first).ok()?;
    (block_design_verify(&b).is_ok() && oa_verify(&a).is_ok()).then_some((b, a))
}
