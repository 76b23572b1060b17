use num_bigint::BigInt;
use num_traits::Zero;

use super::{binom, pow, rat, IndexPair, Rat, SchemeParams};
use crate::error::{Error, Result};

fn krawtchouk_sum(i: i64, n: i64, q: i64, x: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for l in 0..=i {
        let term = pow(q - 1, (i - l) as usize) * binom(n - x, i - l) * binom(x, l);
        if l % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Krawtchouk polynomial `K_i(n, q, x) = sum_l (-1)^l (q-1)^(i-l) C(n-x, i-l) C(x, l)`.
pub fn krawtchouk(i: i64, n: i64, q: i64, x: i64) -> Result<Rat> {
    if i < 0 || i > n {
        return Err(Error::OutOfRange(format!("Krawtchouk degree {i} outside 0..={n}")));
    }
    Ok(rat(krawtchouk_sum(i, n, q, x)))
}

/// Hahn polynomial `Q_i(n, w, x)` of the Johnson scheme `J(n, w)`, evaluated
/// from its defining sum:
///
/// `(C(n,i) - C(n,i-1)) / (C(w,x) C(n-w,x)) * sum_r (-1)^r C(i,r) C(w-i,x-r) C(n-w-i,x-r)`.
pub fn hahn(i: i64, n: i64, w: i64, x: i64) -> Result<Rat> {
    if n < 0 || w < 0 || w > n {
        return Err(Error::OutOfRange(format!("Hahn parameters n={n}, w={w}")));
    }
    let m = w.min(n - w);
    if i < 0 || i > m {
        return Err(Error::OutOfRange(format!("Hahn degree {i} outside 0..={m}")));
    }
    if x < 0 || x > m {
        return Err(Error::OutOfRange(format!("Hahn point {x} outside 0..={m}")));
    }
    Ok(hahn_unchecked(i, n, w, x))
}

fn hahn_unchecked(i: i64, n: i64, w: i64, x: i64) -> Rat {
    let mut sum = BigInt::zero();
    for r in 0..=x {
        let term = binom(i, r) * binom(w - i, x - r) * binom(n - w - i, x - r);
        if r % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let lead = binom(n, i) - binom(n, i - 1);
    let valency = binom(w, x) * binom(n - w, x);
    Rat::new(lead * sum, valency)
}

/// Entry `Q_{i,j}(k,h)` of the second eigenmatrix:
/// `C(n,j)/C(w,j) * K_j(w-h, q-1, k-h) * Q_{i-j}(n-j, w-j, h)`.
pub fn eigenmatrix_q(params: &SchemeParams, ij: IndexPair, kh: IndexPair) -> Result<Rat> {
    params.require_l(ij)?;
    params.require_k(kh)?;
    Ok(eigenmatrix_entry(params, ij, kh))
}

pub(crate) fn eigenmatrix_entry(params: &SchemeParams, ij: IndexPair, kh: IndexPair) -> Rat {
    let (n, w, q) = (params.n() as i64, params.w() as i64, params.q() as i64);
    let (i, j) = (ij.i as i64, ij.j as i64);
    let (k, h) = (kh.i as i64, kh.j as i64);
    // K_j(w-h, q-1, k-h) vanishes identically when j > w-h; the Hahn factor
    // is then evaluated outside its range, so short-circuit.
    let kraw = krawtchouk_sum(j, w - h, q - 1, k - h);
    if kraw.is_zero() {
        return Rat::zero();
    }
    let scale = Rat::new(binom(n, j), binom(w, j));
    scale * rat(kraw) * hahn_unchecked(i - j, n - j, w - j, h)
}

/// Multiplicity `m_{i,j} = (q-2)^j C(n,j) (C(n-j,i-j) - C(n-j,i-j-1))`.
pub fn multiplicity(params: &SchemeParams, ij: IndexPair) -> Result<BigInt> {
    params.require_l(ij)?;
    let (n, q) = (params.n() as i64, params.q() as i64);
    let (i, j) = (ij.i as i64, ij.j as i64);
    Ok(pow(q - 2, ij.j) * binom(n, j) * (binom(n - j, i - j) - binom(n - j, i - j - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(n: usize, w: usize, q: usize) -> SchemeParams {
        SchemeParams::new(n, w, q).unwrap()
    }

    #[test]
    fn krawtchouk_examples() {
        assert_eq!(krawtchouk(0, 5, 4, 3).unwrap(), Rat::one());
        assert_eq!(krawtchouk(1, 5, 4, 0).unwrap(), rat(15));
        assert_eq!(krawtchouk(1, 5, 4, 5).unwrap(), rat(-5));
        assert!(krawtchouk(6, 5, 4, 0).is_err());
    }

    #[test]
    fn krawtchouk_zero_degree_is_one() {
        for n in 0..6 {
            for q in 2..6 {
                for x in 0..=n {
                    assert_eq!(krawtchouk(0, n, q, x).unwrap(), Rat::one());
                }
            }
        }
    }

    // Independent oracle: K_i(x) is the coefficient of z^i in
    // (1 + (q-1) z)^(n-x) (1 - z)^x, expanded by repeated convolution.
    fn krawtchouk_generating(i: i64, n: i64, q: i64, x: i64) -> BigInt {
        let mut poly = vec![BigInt::one()];
        let mul = |poly: &Vec<BigInt>, a: i64| {
            let mut out = vec![BigInt::zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                out[d] += c;
                out[d + 1] += c * a;
            }
            out
        };
        for _ in 0..(n - x) {
            poly = mul(&poly, q - 1);
        }
        for _ in 0..x {
            poly = mul(&poly, -1);
        }
        poly.get(i as usize).cloned().unwrap_or_default()
    }

    #[test]
    fn krawtchouk_matches_generating_function() {
        for n in 0..8 {
            for q in 2..6 {
                for i in 0..=n {
                    for x in 0..=n {
                        assert_eq!(
                            krawtchouk(i, n, q, x).unwrap(),
                            rat(krawtchouk_generating(i, n, q, x)),
                            "K_{i}({n},{q},{x})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn hahn_examples() {
        assert_eq!(hahn(1, 4, 2, 0).unwrap(), rat(3));
        // Direct evaluation at x=1: (4-1)/(2*2) * (C(1,1)C(1,1) - C(1,0)C(1,0)) = 0.
        assert_eq!(hahn(1, 4, 2, 1).unwrap(), Rat::zero());
        assert!(hahn(3, 4, 2, 0).is_err());
        assert!(hahn(1, 4, 2, 3).is_err());
    }

    #[test]
    fn hahn_zero_degree_is_one() {
        for n in 1..10 {
            for w in 0..=n {
                let m = w.min(n - w);
                for x in 0..=m {
                    assert_eq!(hahn(0, n, w, x).unwrap(), Rat::one(), "n={n} w={w} x={x}");
                }
            }
        }
    }

    // The Hahn values at x = 0 are the Johnson-scheme multiplicities.
    #[test]
    fn hahn_at_zero_is_johnson_multiplicity() {
        for n in 1..10i64 {
            for w in 0..=n {
                for i in 0..=w.min(n - w) {
                    let expected = binom(n, i) - binom(n, i - 1);
                    assert_eq!(hahn(i, n, w, 0).unwrap(), rat(expected));
                }
            }
        }
    }

    #[test]
    fn eigenmatrix_trivial_row_is_one() {
        for (n, w, q) in [(3, 1, 3), (4, 2, 3), (5, 3, 4), (6, 4, 3), (7, 3, 2)] {
            let params = p(n, w, q);
            for &kh in params.k() {
                assert_eq!(eigenmatrix_q(&params, IndexPair::ZERO, kh).unwrap(), Rat::one());
            }
        }
    }

    #[test]
    fn eigenmatrix_first_column_is_multiplicity() {
        for n in 1..=7 {
            for w in 0..=n {
                for q in 2..=5 {
                    let params = p(n, w, q);
                    for &ij in params.l() {
                        let qv = eigenmatrix_q(&params, ij, IndexPair::ZERO).unwrap();
                        assert_eq!(qv, rat(multiplicity(&params, ij).unwrap()), "{params} {ij}");
                    }
                }
            }
        }
    }

    #[test]
    fn eigenmatrix_rejects_bad_indices() {
        let params = p(5, 3, 4);
        assert!(eigenmatrix_q(&params, IndexPair::new(3, 0), IndexPair::ZERO).is_err());
        assert!(eigenmatrix_q(&params, IndexPair::ZERO, IndexPair::new(3, 3)).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        let params = p(5, 3, 4);
        assert_eq!(multiplicity(&params, IndexPair::ZERO).unwrap(), BigInt::one());
        assert_eq!(multiplicity(&params, IndexPair::new(1, 1)).unwrap(), BigInt::from(10));
        let total: BigInt = params.l().iter().map(|&ij| multiplicity(&params, ij).unwrap()).sum();
        assert_eq!(total, BigInt::from(270));
    }

    #[test]
    fn multiplicity_q2_kills_j_positive() {
        let params = p(6, 3, 2);
        for &ij in params.l() {
            let mult = multiplicity(&params, ij).unwrap();
            if ij.j > 0 {
                assert!(mult.is_zero());
            }
        }
    }

    #[test]
    fn multiplicities_sum_to_vertex_count() {
        for n in 1..=7 {
            for w in 0..=n {
                for q in 2..=5 {
                    let params = p(n, w, q);
                    let total: BigInt =
                        params.l().iter().map(|&ij| multiplicity(&params, ij).unwrap()).sum();
                    assert_eq!(total, params.vertex_count(), "{params}");
                }
            }
        }
    }

    // Finite differences of order d+1 vanish on a degree-d polynomial.
    fn finite_difference(values: &[Rat], order: usize) -> Vec<Rat> {
        let mut v = values.to_vec();
        for _ in 0..order {
            v = v.windows(2).map(|p| &p[1] - &p[0]).collect();
        }
        v
    }

    #[test]
    fn eigenmatrix_bidegree() {
        for (n, w, q) in [(7, 3, 4), (8, 4, 3), (9, 4, 5), (10, 5, 3)] {
            let params = p(n, w, q);
            let m = params.m();
            for &ij in params.l() {
                // degree j in k for fixed h
                for h in 0..=m {
                    let vals: Vec<Rat> =
                        (h..=w).map(|k| eigenmatrix_entry(&params, ij, IndexPair::new(k, h))).collect();
                    if vals.len() > ij.j + 1 {
                        for d in finite_difference(&vals, ij.j + 1) {
                            assert!(d.is_zero(), "{params} {ij} h={h}");
                        }
                    }
                }
                // degree at most i in h for fixed k
                for k in 0..=w {
                    let vals: Vec<Rat> = (0..=k.min(m))
                        .map(|h| eigenmatrix_entry(&params, ij, IndexPair::new(k, h)))
                        .collect();
                    if vals.len() > ij.i + 1 {
                        for d in finite_difference(&vals, ij.i + 1) {
                            assert!(d.is_zero(), "{params} {ij} k={k}");
                        }
                    }
                }
            }
        }
    }
}
