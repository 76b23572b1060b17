//! Characters of the cyclic group on `{1, ..., q-1}` (symbol `a` standing for
//! the residue `a - 1` mod `q - 1`) and the pairing built from them.

use super::cyclotomic::CycInt;
use super::vector::Vector;
use crate::error::{Error, Result};

/// `psi_a(b) = zeta^((a-1)(b-1) mod (q-1))` for nonzero symbols `a`, `b`.
pub fn character(a: u8, b: u8, q: usize) -> Result<CycInt> {
    if a == 0 || b == 0 || a as usize >= q || b as usize >= q {
        return Err(Error::OutOfRange(format!("character needs symbols in 1..{q}, got ({a},{b})")));
    }
    let order = q - 1;
    Ok(CycInt::monomial(order, char_exponent(a, b, order)))
}

#[inline]
pub(crate) fn char_exponent(a: u8, b: u8, order: usize) -> usize {
    ((a as usize - 1) * (b as usize - 1)) % order
}

/// Exponent `e` with `(a, x) = zeta^e`, or `None` when the pairing vanishes
/// (some coordinate in the support of `a` is zero in `x`).
#[inline]
pub(crate) fn pairing_exponent(a: &[u8], x: &[u8], order: usize) -> Option<usize> {
    let mut e = 0usize;
    for (&ai, &xi) in a.iter().zip(x) {
        if ai == 0 {
            continue;
        }
        if xi == 0 {
            return None;
        }
        e += char_exponent(ai, xi, order);
    }
    Some(e % order)
}

/// `(a, x) = prod_{i in supp a} psi_{a_i}(x_i)` with `psi_c(0) = 0`.
pub fn pairing(a: &Vector, x: &Vector, q: usize) -> CycInt {
    assert_eq!(a.len(), x.len(), "pairing of words of different length");
    let order = q - 1;
    match pairing_exponent(a.coords(), x.coords(), order) {
        Some(e) => CycInt::monomial(order, e),
        None => CycInt::zero(order),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn v(c: &[u8], q: usize) -> Vector {
        Vector::new(c.to_vec(), q).unwrap()
    }

    #[test]
    fn principal_character() {
        for q in 2..10 {
            for b in 1..q as u8 {
                assert_eq!(character(1, b, q).unwrap(), CycInt::one(q - 1));
            }
        }
    }

    #[test]
    fn examples_q4() {
        assert_eq!(character(2, 2, 4).unwrap(), CycInt::monomial(3, 1));
        assert_eq!(character(3, 3, 4).unwrap(), CycInt::monomial(3, 4));
        assert_eq!(character(3, 3, 4).unwrap(), CycInt::monomial(3, 1));
        assert!(character(0, 1, 4).is_err());
    }

    #[test]
    fn symmetry_and_orthogonality() {
        for q in 2..=9usize {
            let order = q - 1;
            for a in 1..q as u8 {
                let mut sum = CycInt::zero(order);
                for b in 1..q as u8 {
                    let ab = character(a, b, q).unwrap();
                    assert_eq!(ab, character(b, a, q).unwrap());
                    sum = &sum + &ab;
                }
                let expected = if a == 1 { BigInt::from(order) } else { BigInt::from(0) };
                assert_eq!(sum.to_integer(), Some(expected), "q={q} a={a}");
            }
        }
    }

    #[test]
    fn pairing_examples() {
        // support of a not inside support of x
        assert!(pairing(&v(&[1, 1, 0], 3), &v(&[1, 0, 1], 3), 3).is_zero());
        // all-ones a gives 1 whenever supported
        assert_eq!(pairing(&v(&[1, 0, 1], 4), &v(&[3, 2, 2], 4), 4), CycInt::one(3));
        // q=3: psi_2(2) = zeta = -1
        let val = pairing(&v(&[2, 0], 3), &v(&[2, 1], 3), 3);
        assert_eq!(val, CycInt::monomial(2, 1));
        assert_eq!(val.to_integer(), Some(BigInt::from(-1)));
        // the zero word pairs to the empty product
        assert_eq!(pairing(&v(&[0, 0], 3), &v(&[0, 2], 3), 3), CycInt::one(2));
    }
}
