//! Exact arithmetic in the group ring of the cyclic group of order `N`,
//! read as elements of `Z[zeta]` for a primitive `N`-th root of unity.
//!
//! Values are stored as coefficient vectors over `zeta^0 .. zeta^(N-1)`; that
//! representation is not unique, so equality and zero tests reduce modulo the
//! cyclotomic polynomial `Phi_N`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone)]
pub struct CycInt {
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "cyclic order must be positive");
        CycInt { coeffs: vec![BigInt::zero(); order] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0)
    }

    /// `zeta^e`.
    pub fn monomial(order: usize, e: usize) -> Self {
        let mut v = Self::zero(order);
        v.coeffs[e % order] = BigInt::one();
        v
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "cyclic order must be positive");
        CycInt { coeffs }
    }

    pub fn from_counts(counts: &[i64]) -> Self {
        Self::from_coeffs(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add_monomial(&mut self, e: usize, times: i64) {
        let n = self.order();
        self.coeffs[e % n] += times;
    }

    /// Complex conjugate: `zeta^k -> zeta^(-k)`.
    pub fn conj(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for (k, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(n - k) % n] += c;
        }
        out
    }

    /// Canonical coordinates: the remainder modulo `Phi_N`, of length `phi(N)`.
    pub fn canonical(&self) -> Vec<BigInt> {
        reduce_mod_cyclotomic(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        cyc_is_zero(self)
    }

    /// The value as a rational integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        let c = self.canonical();
        if c.iter().skip(1).all(Zero::is_zero) {
            Some(c.into_iter().next().unwrap_or_default())
        } else {
            None
        }
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "mismatched cyclic orders");
    }
}

/// True iff `sum_k c_k zeta^k = 0`, i.e. `Phi_N` divides `sum_k c_k x^k` in `Z[x]`.
pub fn cyc_is_zero(v: &CycInt) -> bool {
    v.canonical().iter().all(Zero::is_zero)
}

/// Zero test on small integer coefficients without building a `CycInt`.
pub(crate) fn counts_are_zero(counts: &[i64]) -> bool {
    if counts.iter().all(|&c| c == 0) {
        return true;
    }
    let coeffs: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
    reduce_mod_cyclotomic(&coeffs).iter().all(Zero::is_zero)
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.check_order(other);
        (self - other).is_zero()
    }
}

impl Eq for CycInt {}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.check_order(rhs);
        CycInt { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.check_order(rhs);
        CycInt { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.check_order(rhs);
        let n = self.order();
        let mut out = CycInt::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[(i + j) % n] += a * b;
                }
            }
        }
        out
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| if k == 0 { c.to_string() } else { format!("{c}*z^{k}") })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Coefficients (low degree first) of the cyclotomic polynomial `Phi_n`.
pub fn cyclotomic_polynomial(n: usize) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    assert!(n >= 1);
    // x^n - 1 = prod_{d | n} Phi_d
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = BigInt::from(-1);
    num[n] = BigInt::one();
    for d in (1..n).filter(|&d| n.is_multiple_of(d)) {
        let phi_d = cyclotomic_polynomial(d);
        num = exact_divide(&num, &phi_d);
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(n, Arc::clone(&p));
    p
}

fn exact_divide(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let (quot, rem) = divide_monic(num, den);
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Division by a monic polynomial; returns (quotient, remainder).
fn divide_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return (vec![BigInt::zero()], rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for top in (dd..rem.len()).rev() {
        let c = rem[top].clone();
        if c.is_zero() {
            continue;
        }
        let shift = top - dd;
        quot[shift] = c.clone();
        for (k, dk) in den.iter().enumerate() {
            rem[shift + k] -= &c * dk;
        }
    }
    rem.truncate(dd);
    (quot, rem)
}

fn reduce_mod_cyclotomic(coeffs: &[BigInt]) -> Vec<BigInt> {
    let phi = cyclotomic_polynomial(coeffs.len());
    let deg = phi.len() - 1;
    let (_, mut rem) = divide_monic(coeffs, &phi);
    rem.resize(deg, BigInt::zero());
    rem
}
