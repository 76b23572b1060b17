use num_bigint::BigInt;

use super::{binom, pow, ratio, IndexPair, Rat, SchemeParams};
use crate::error::{Error, Result};

fn split_sum(n: i64, e: i64, f: i64, q: i64) -> BigInt {
    let tail: BigInt = (0..=f).map(|l| pow(q - 2, l as usize) * binom(e, l)).sum();
    binom(n, e) * tail
}

/// Fisher-type lower bound for `T`-designs with
/// `T = {(i,j) in L : i <= r, j <= s} \ {(0,0)}`:
/// `C(n, floor(r/2)) * sum_{l <= floor(s/2)} (q-2)^l C(floor(r/2), l)`.
///
/// The closed form is the multiplicity sum over
/// `{(i,j) in L : i <= r/2, j <= s/2}` only while `floor(r/2) <= m`; callers
/// that need a valid bound should stay in that range (it holds for `r <= m`).
pub fn fisher_bound(params: &SchemeParams, r: usize, s: usize) -> Result<BigInt> {
    let rs = IndexPair::new(r, s);
    params.require_l(rs)?;
    if rs == IndexPair::ZERO {
        return Err(Error::OutOfRange("Fisher bound needs (r,s) != (0,0)".into()));
    }
    Ok(split_sum(params.n() as i64, (r / 2) as i64, (s / 2) as i64, params.q() as i64))
}

/// Refinement of the Fisher-type bound for odd `r = 2e + 1` with `r <= m`:
/// `(n/w) C(n-1, e) sum_{l <= f} (q-2)^l C(e, l)` for `s = 2f`, and `q - 1`
/// times that for `s = 2f + 1`. Returned as a rational; no rounding.
pub fn fisher_bound_odd(params: &SchemeParams, r: usize, s: usize) -> Result<Rat> {
    if r.is_multiple_of(2) {
        return Err(Error::Precondition(format!("r={r} is even")));
    }
    params.require_l(IndexPair::new(r, s))?;
    if r > params.m() {
        return Err(Error::Precondition(format!("r={r} exceeds m={}", params.m())));
    }
    let (n, w, q) = (params.n() as i64, params.w() as i64, params.q() as i64);
    let e = ((r - 1) / 2) as i64;
    let f = (s / 2) as i64;
    let base = ratio(n, w) * Rat::from_integer(split_sum(n - 1, e, f, q));
    Ok(if s % 2 == 1 { base * Rat::from_integer((q - 1).into()) } else { base })
}

/// Natural lower bound `(q-1)^s C(n,r) / C(w,r)`, attained exactly by index-1 designs.
pub fn natural_bound(params: &SchemeParams, r: usize, s: usize) -> Result<Rat> {
    if s > r || r > params.w() {
        return Err(Error::OutOfRange(format!(
            "natural bound needs s <= r <= w, got (r,s)=({r},{s}) with w={}",
            params.w()
        )));
    }
    let (n, w, q) = (params.n() as i64, params.w() as i64, params.q() as i64);
    Ok(Rat::new(pow(q - 1, s) * binom(n, r as i64), binom(w, r as i64)))
}
