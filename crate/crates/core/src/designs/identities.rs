use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::verify::verify_rs_design;
use super::DesignArray;
use crate::error::{Error, Result};
use crate::exactmath::{binom, pow, IndexPair, Rat, SchemeParams};
use crate::scheme::Vector;

fn check_coords(n: usize, coords: &[usize], what: &str) -> Result<u64> {
    let mut mask = 0u64;
    for &c in coords {
        if c >= n || mask & (1 << c) != 0 {
            return Err(Error::OutOfRange(format!("{what} coordinate {} invalid for n={n}", c + 1)));
        }
        mask |= 1 << c;
    }
    Ok(mask)
}

/// Index of the `(r', s')` subdesign of an `(r, s)`-design with index `lambda`:
/// `(q-1)^(s-s') C(n-r', r-r') / C(w-r', r-r') * lambda`.
pub fn lambda_formula(params: &SchemeParams, r: usize, s: usize, lambda: &BigInt, r2: usize, s2: usize) -> Rat {
    let (n, w, q) = (params.n() as i64, params.w() as i64, params.q() as i64);
    let d = (r - r2) as i64;
    Rat::new(
        pow(q - 1, s - s2) * binom(n - r2 as i64, d) * lambda,
        binom(w - r2 as i64, d),
    )
}

/// The table of `lambda_{r',s'}` for `s' <= s`, `s' <= r' <= r`, each value
/// confirmed by recounting `Y` directly.
pub fn lambda_table(y: &DesignArray, r: usize, s: usize, lambda: u64) -> Result<BTreeMap<IndexPair, Rat>> {
    let params = y.params();
    if s > r || r > params.w() {
        return Err(Error::OutOfRange(format!("(r,s)=({r},{s}) with w={}", params.w())));
    }
    let lam = BigInt::from(lambda);
    let mut out = BTreeMap::new();
    for s2 in 0..=s {
        for r2 in s2..=r {
            let value = lambda_formula(params, r, s, &lam, r2, s2);
            if !value.is_integer() {
                return Err(Error::IdentityViolated(format!("lambda_({r2},{s2}) = {value} is not an integer")));
            }
            let rep = verify_rs_design(y, r2, s2)?;
            let observed = rep.lambda.map(BigInt::from);
            if observed.as_ref() != Some(value.numer()) {
                return Err(Error::IdentityViolated(format!(
                    "lambda_({r2},{s2}): formula {value}, direct count {}",
                    observed.map_or_else(|| "not constant".to_string(), |v| v.to_string())
                )));
            }
            out.insert(IndexPair::new(r2, s2), value);
        }
    }
    Ok(out)
}

/// `|Y| = (q-1)^s C(n,r) / C(w,r) * lambda`.
pub fn cardinality_formula(params: &SchemeParams, r: usize, s: usize, lambda: &BigInt) -> Rat {
    let (n, w, q) = (params.n() as i64, params.w() as i64, params.q() as i64);
    Rat::new(pow(q - 1, s) * binom(n, r as i64) * lambda, binom(w, r as i64))
}

/// Rows nonzero on `R'` and equal to `omega'` on `S'`, restricted to the
/// coordinates outside `R'`. The result lives in `J_q(w - r', n - r')` and may
/// repeat rows.
pub fn derived_design(y: &DesignArray, r_set: &[usize], s_set: &[usize], omega: &[u8]) -> Result<DesignArray> {
    let params = y.params();
    let n = params.n();
    let r_mask = check_coords(n, r_set, "R'")?;
    let s_mask = check_coords(n, s_set, "S'")?;
    if s_mask & !r_mask != 0 || omega.len() != s_set.len() || r_set.len() > params.w() {
        return Err(Error::OutOfRange("need S' within R', |omega'| = |S'| and |R'| <= w".into()));
    }
    if omega.iter().any(|&o| o == 0 || o as usize >= params.q()) {
        return Err(Error::OutOfRange("omega' symbols must be nonzero".into()));
    }
    let keep: Vec<usize> = (0..n).filter(|c| r_mask & (1 << c) == 0).collect();
    let rows = y
        .rows()
        .iter()
        .filter(|row| row.support() & r_mask == r_mask)
        .filter(|row| s_set.iter().zip(omega).all(|(&c, &o)| row.get(c) == o))
        .map(|row| Vector::from_raw(keep.iter().map(|&c| row.get(c)).collect()))
        .collect();
    let derived = SchemeParams::new(n - r_set.len(), params.w() - r_set.len(), params.q())?;
    DesignArray::multiset(derived, rows)
}

/// Rows nonzero on `R'`, equal to `omega'` on `S'` and zero on all of `T`,
/// checked against `(q-1)^(s-s') C(n-r'-t, w-r') / C(n-r, w-r) * lambda`.
#[allow(clippy::too_many_arguments)]
pub fn avoidance_count(
    y: &DesignArray,
    r: usize,
    s: usize,
    lambda: u64,
    r_set: &[usize],
    s_set: &[usize],
    omega: &[u8],
    t_set: &[usize],
) -> Result<u64> {
    let params = y.params();
    let (n, w, q) = (params.n(), params.w(), params.q());
    let r_mask = check_coords(n, r_set, "R'")?;
    let s_mask = check_coords(n, s_set, "S'")?;
    let t_mask = check_coords(n, t_set, "T")?;
    let (r2, s2, t) = (r_set.len(), s_set.len(), t_set.len());
    if s > r || r > w {
        return Err(Error::Precondition(format!("(r,s)=({r},{s}) with w={w}")));
    }
    if s_mask & !r_mask != 0 || s2 > s || r2 > r || t_mask & r_mask != 0 || t > r - r2 || omega.len() != s2 {
        return Err(Error::Precondition(format!(
            "need S' within R', |S'| <= s, |R'| <= r, T disjoint from R' and |T| <= r - |R'|; got |R'|={r2} |S'|={s2} |T|={t}"
        )));
    }
    if omega.iter().any(|&o| o == 0 || o as usize >= q) {
        return Err(Error::Precondition("omega' symbols must be nonzero".into()));
    }
    let observed = y
        .rows()
        .iter()
        .filter(|row| row.support() & r_mask == r_mask && row.support() & t_mask == 0)
        .filter(|row| s_set.iter().zip(omega).all(|(&c, &o)| row.get(c) == o))
        .count() as u64;
    let (ni, wi) = (n as i64, w as i64);
    let expected = Rat::new(
        pow(q as i64 - 1, s - s2) * binom(ni - r2 as i64 - t as i64, wi - r2 as i64) * BigInt::from(lambda),
        binom(ni - r as i64, wi - r as i64),
    );
    if Rat::from_integer(observed.into()) != expected {
        return Err(Error::IdentityViolated(format!("avoidance count {observed}, formula {expected}")));
    }
    Ok(observed)
}

/// For `r - s >= n - w`, an `(r, s)`-design with index `lambda` is also a
/// `(w, s)`-design with index `lambda / C(n-r, w-r)`. Returns `(w, s, lambda')`
/// after re-verifying.
pub fn reduce_to_w(y: &DesignArray, r: usize, s: usize, lambda: u64) -> Result<(usize, usize, u64)> {
    let params = y.params();
    let (n, w) = (params.n(), params.w());
    if s > r || r > w {
        return Err(Error::Precondition(format!("(r,s)=({r},{s}) with w={w}")));
    }
    if r - s < n - w {
        return Err(Error::Precondition(format!("r - s = {} is below n - w = {}", r - s, n - w)));
    }
    let divisor = binom((n - r) as i64, (w - r) as i64);
    let (quot, rem) = BigInt::from(lambda).div_rem(&divisor);
    if !rem.is_zero() {
        return Err(Error::IdentityViolated(format!("lambda = {lambda} is not divisible by C(n-r,w-r) = {divisor}")));
    }
    let reduced = quot.to_u64().ok_or_else(|| Error::Internal("lambda' overflow".into()))?;
    let rep = verify_rs_design(y, w, s)?;
    if rep.lambda != Some(reduced) {
        return Err(Error::IdentityViolated(format!(
            "expected a ({w},{s})-design with index {reduced}, verifier found {:?}",
            rep.lambda
        )));
    }
    Ok((w, s, reduced))
}
