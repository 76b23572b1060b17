//! The scheme `J_q(w,n)` realised concretely: its vertices, relations,
//! characters and the matrices built from them.

mod bose_mesner;
mod characters;
mod cyclotomic;
mod idempotents;
mod vector;

pub use bose_mesner::{
    adjacency, build_a, build_c, verify_crs_algebra, CharMatrix, CrsAlgebraReport, IntMatrix,
    DENSE_CAP,
};
pub use characters::{character, pairing};
pub use cyclotomic::{cyc_is_zero, cyclotomic_polynomial, CycInt};
pub use idempotents::{
    component_coefficients, components_of_c, numeric_idempotents, NumericIdempotentSet,
    ABS_TOL, CLUSTER_REL_GAP,
};
pub use vector::Vector;

pub(crate) use characters::pairing_exponent;
pub(crate) use cyclotomic::counts_are_zero;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactmath::{binom, pow, IndexPair, SchemeParams};

/// Default cap on the number of vertices materialised by [`enumerate_vertices`].
pub const VERTEX_CAP: usize = 1_000_000;

/// All words of weight `w`, in lexicographic order.
pub fn enumerate_vertices(params: &SchemeParams) -> Result<Vec<Vector>> {
    enumerate_vertices_capped(params, VERTEX_CAP)
}

pub fn enumerate_vertices_capped(params: &SchemeParams, cap: usize) -> Result<Vec<Vector>> {
    let count = params.vertex_count();
    if count > cap.into() {
        return Err(Error::TooLarge {
            what: "vertex count",
            size: count.to_u128().unwrap_or(u128::MAX),
            cap: cap as u128,
        });
    }
    let q = params.q() as u8;
    let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
    let mut buf = vec![0u8; params.n()];
    fill_weight(&mut buf, 0, params.w(), q, &mut |word| out.push(Vector::from_raw(word.to_vec())));
    Ok(out)
}

// Walks coordinate `pos..` placing exactly `left` nonzero symbols, in lex order.
fn fill_weight(buf: &mut [u8], pos: usize, left: usize, q: u8, emit: &mut dyn FnMut(&[u8])) {
    let n = buf.len();
    if pos == n {
        if left == 0 {
            emit(buf);
        }
        return;
    }
    if n - pos > left {
        buf[pos] = 0;
        fill_weight(buf, pos + 1, left, q, emit);
    }
    if left > 0 {
        for sym in 1..q {
            buf[pos] = sym;
            fill_weight(buf, pos + 1, left - 1, q, emit);
        }
        buf[pos] = 0;
    }
}

/// The relation `(w - e(x,y), w - n(x,y))` joining two vertices.
pub fn relation(x: &Vector, y: &Vector) -> Result<IndexPair> {
    if x.len() != y.len() {
        return Err(Error::InvalidRow(format!("lengths {} and {} differ", x.len(), y.len())));
    }
    let w = x.weight();
    if y.weight() != w {
        return Err(Error::WeightMismatch(w, y.weight()));
    }
    Ok(relation_unchecked(x.coords(), y.coords(), w))
}

#[inline]
pub(crate) fn relation_unchecked(x: &[u8], y: &[u8], w: usize) -> IndexPair {
    let mut e = 0;
    let mut common = 0;
    for (&a, &b) in x.iter().zip(y) {
        if a != 0 && b != 0 {
            common += 1;
            if a == b {
                e += 1;
            }
        }
    }
    IndexPair::new(w - e, w - common)
}

/// `W_{rs}`: words of Hamming weight `r` with exactly `s` coordinates outside
/// `{0, 1}`, in lexicographic order.
pub fn enumerate_wrs(params: &SchemeParams, r: usize, s: usize) -> Result<Vec<Vector>> {
    let n = params.n();
    if s > r || r > n {
        return Err(Error::OutOfRange(format!("W_rs needs 0 <= s <= r <= n, got r={r} s={s} n={n}")));
    }
    let size = binom(n as i64, r as i64) * binom(r as i64, s as i64) * pow(params.q() as i64 - 2, s);
    if size > VERTEX_CAP.into() {
        return Err(Error::TooLarge {
            what: "|W_rs|",
            size: size.to_u128().unwrap_or(u128::MAX),
            cap: VERTEX_CAP as u128,
        });
    }
    let q = params.q() as u8;
    let mut out = Vec::new();
    let mut buf = vec![0u8; n];
    fill_weight(&mut buf, 0, r, q, &mut |word| {
        if word.iter().filter(|&&c| c > 1).count() == s {
            out.push(Vector::from_raw(word.to_vec()));
        }
    });
    Ok(out)
}
