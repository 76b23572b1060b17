//! Exact integer and rational arithmetic for the scheme: binomials, the
//! Krawtchouk and Hahn families, the second eigenmatrix, multiplicities,
//! Krein numbers and the cardinality bounds.
//!
//! Nothing in this module touches floating point.

mod bounds;
mod krein;
pub mod linsolve;
mod params;
mod poly;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use bounds::{fisher_bound, fisher_bound_odd, natural_bound};
pub use krein::{krein, KreinTable};
pub use params::{IndexPair, SchemeParams, MAX_N, MAX_Q};
pub use poly::{eigenmatrix_q, hahn, krawtchouk, multiplicity};

/// Exact rational, always in lowest terms with a positive denominator.
pub type Rat = num_rational::BigRational;

/// Binomial coefficient `C(a, k)`, zero whenever `a < 0`, `k < 0` or `k > a`.
pub fn binom(a: i64, k: i64) -> BigInt {
    if a < 0 || k < 0 || k > a {
        return BigInt::zero();
    }
    let k = k.min(a - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= a - t;
        acc /= t + 1;
    }
    acc
}

/// `base^exp` with `0^0 = 1`.
pub fn pow(base: i64, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

pub(crate) fn rat(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

pub(crate) fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rat {
    Rat::new(num.into(), den.into())
}

/// Integer value of `r`, if it is one.
pub fn to_integer(r: &Rat) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// True when `r` is a non-negative rational.
pub fn is_nonnegative(r: &Rat) -> bool {
    !r.is_negative()
}
