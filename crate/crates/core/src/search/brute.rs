use itertools::Itertools;
use num_traits::ToPrimitive;

use crate::designs::{verify_rs_design, DesignArray};
use crate::error::{Error, Result};
use crate::exactmath::{binom, natural_bound, to_integer, SchemeParams};

/// Default limit on `|X|` for exhaustive subset enumeration.
pub const BRUTE_FORCE_CAP: usize = 24;

/// Counts index-1 `(r, s)`-designs by checking every subset of `X` of
/// natural-bound size with the combinatorial verifier. Returns 0 when the
/// natural bound is not an integer. `size_cap` overrides the default limit
/// on `|X|`.
pub fn brute_force_count(params: &SchemeParams, r: usize, s: usize, size_cap: Option<usize>) -> Result<u64> {
    let Some(size) = to_integer(&natural_bound(params, r, s)?) else {
        return Ok(0);
    };
    let x = DesignArray::full(params)?;
    let cap = size_cap.unwrap_or(BRUTE_FORCE_CAP);
    if x.len() > cap {
        return Err(Error::TooLarge { what: "|X| for brute force", size: x.len() as u128, cap: cap as u128 });
    }
    let size = size.to_usize().ok_or_else(|| Error::Internal("bound overflow".into()))?;
    let subsets = binom(x.len() as i64, size as i64).to_u128().unwrap_or(u128::MAX);
    if subsets > 1 << 32 {
        return Err(Error::TooLarge { what: "subsets to enumerate", size: subsets, cap: 1 << 32 });
    }
    let mut count = 0;
    for idx in (0..x.len()).combinations(size) {
        let y = x.select(&idx)?;
        let report = verify_rs_design(&y, r, s)?;
        if report.is_design && report.lambda == Some(1) {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        let p = SchemeParams::new(3, 2, 3).unwrap();
        assert!(brute_force_count(&p, 2, 1, None).unwrap() > 0);
        // C(5,2)/C(3,2) = 10/3
        assert_eq!(brute_force_count(&SchemeParams::new(5, 3, 2).unwrap(), 2, 0, None).unwrap(), 0);
        let big = SchemeParams::new(5, 3, 4).unwrap();
        assert!(matches!(brute_force_count(&big, 2, 1, None), Err(Error::TooLarge { .. })));
    }
}
