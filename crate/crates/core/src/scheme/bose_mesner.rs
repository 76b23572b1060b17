use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_traits::{Signed, ToPrimitive, Zero};

use super::characters::pairing_exponent;
use super::cyclotomic::CycInt;
use super::{enumerate_vertices, enumerate_wrs, relation_unchecked, Vector};
use crate::error::{Error, Result};
use crate::exactmath::linsolve::{solve, Solution};
use crate::exactmath::{binom, pow, IndexPair, Rat, SchemeParams};

/// Largest vertex count for which dense `|X| x |X|` matrices are built.
pub const DENSE_CAP: usize = 1000;

fn check_dense(len: usize) -> Result<()> {
    if len > DENSE_CAP {
        return Err(Error::TooLarge { what: "|X| for dense matrices", size: len as u128, cap: DENSE_CAP as u128 });
    }
    Ok(())
}

/// The character matrix `A_{rs}`: rows are vertices, columns are the words of
/// `W_{rs}`, and entry `(x, a)` is the pairing `(a, x)`.
#[derive(Debug, Clone)]
pub struct CharMatrix {
    order: usize,
    rows: Vec<Vector>,
    cols: Vec<Vector>,
    /// `zeta` exponents, `None` for a zero entry.
    exps: Vec<Option<usize>>,
}

impl CharMatrix {
    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn cols(&self) -> &[Vector] {
        &self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> CycInt {
        match self.exps[row * self.cols.len() + col] {
            Some(e) => CycInt::monomial(self.order, e),
            None => CycInt::zero(self.order),
        }
    }

    pub(crate) fn exponent(&self, row: usize, col: usize) -> Option<usize> {
        self.exps[row * self.cols.len() + col]
    }
}

pub fn build_a(params: &SchemeParams, r: usize, s: usize) -> Result<CharMatrix> {
    params.require_l(IndexPair::new(r, s))?;
    let rows = enumerate_vertices(params)?;
    check_dense(rows.len())?;
    let cols = enumerate_wrs(params, r, s)?;
    let order = params.q() - 1;
    let exps = rows
        .iter()
        .flat_map(|x| cols.iter().map(move |a| pairing_exponent(a.coords(), x.coords(), order)))
        .collect();
    Ok(CharMatrix { order, rows, cols, exps })
}

/// A dense square integer matrix indexed by the vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, x: usize, y: usize) -> i64 {
        self.data[x * self.dim + y]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|x| (0..x).all(|y| self.get(x, y) == self.get(y, x)))
    }

    /// Entry `(x, y)` of the product `self * other`.
    pub fn product_entry(&self, other: &IntMatrix, x: usize, y: usize) -> i64 {
        (0..self.dim).map(|z| self.get(x, z) * other.get(z, y)).sum()
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |x, y| self.get(x, y) as f64)
    }
}

/// `C_{rs} = A_{rs} conj(A_{rs})^T`, reduced to integers.
pub fn build_c(params: &SchemeParams, r: usize, s: usize) -> Result<IntMatrix> {
    let a = build_a(params, r, s)?;
    let dim = a.rows.len();
    let ncols = a.cols.len();
    let mut data = vec![0i64; dim * dim];
    let mut counts = vec![0i64; a.order];
    for x in 0..dim {
        for y in x..dim {
            counts.iter_mut().for_each(|c| *c = 0);
            for col in 0..ncols {
                if let (Some(ex), Some(ey)) = (a.exponent(x, col), a.exponent(y, col)) {
                    counts[(ex + a.order - ey) % a.order] += 1;
                }
            }
            let value = CycInt::from_counts(&counts)
                .to_integer()
                .and_then(|v| v.to_i64())
                .ok_or_else(|| Error::Internal(format!("C_({r},{s}) entry ({x},{y}) is not a rational integer")))?;
            data[x * dim + y] = value;
            data[y * dim + x] = value;
        }
    }
    Ok(IntMatrix { dim, data })
}

/// The adjacency matrix of relation `kh` as a dense real matrix.
pub fn adjacency(params: &SchemeParams, vertices: &[Vector], kh: IndexPair) -> Result<DMatrix<f64>> {
    params.require_k(kh)?;
    check_dense(vertices.len())?;
    let w = params.w();
    let n = vertices.len();
    Ok(DMatrix::from_fn(n, n, |x, y| {
        f64::from(relation_unchecked(vertices[x].coords(), vertices[y].coords(), w) == kh)
    }))
}

/// Outcome of [`verify_crs_algebra`]: for every ordered pair of `L` indices
/// with equal second coordinate, the exact coefficients `a_i` of
/// `C_{rs} C_{kh} = sum_i a_i C_{is}`.
#[derive(Debug, Clone)]
pub struct CrsAlgebraReport {
    pub params: SchemeParams,
    pub products_checked: usize,
    pub zero_products: usize,
    pub expansions: BTreeMap<(IndexPair, IndexPair), Vec<(usize, Rat)>>,
}

/// Checks that every `C_{rs}` is symmetric, lies in the Bose-Mesner algebra
/// and has diagonal `C(w,r) C(r,s) (q-2)^s`, and that
/// `C_{rs} C_{kh} = delta_{sh} sum_{i=s}^{min(r,k)} a_i C_{is}` with
/// `a_{min(r,k)} > 0` and every other `a_i >= 0`.
///
/// The lower coefficients can vanish: `C_{w0}` is the indicator of equal
/// supports, so `C_{10} C_{w0}` is a multiple of `C_{10}` alone.
pub fn verify_crs_algebra(params: &SchemeParams) -> Result<CrsAlgebraReport> {
    let vertices = enumerate_vertices(params)?;
    check_dense(vertices.len())?;
    let w = params.w();
    let dim = vertices.len();

    // one representative column per nonempty relation class, seen from vertex 0
    let mut reps: BTreeMap<IndexPair, usize> = BTreeMap::new();
    for y in 0..dim {
        reps.entry(relation_unchecked(vertices[0].coords(), vertices[y].coords(), w)).or_insert(y);
    }
    let classes: Vec<(IndexPair, usize)> = reps.into_iter().collect();

    let mut cs: BTreeMap<IndexPair, IntMatrix> = BTreeMap::new();
    for &rs in params.l() {
        let c = build_c(params, rs.i, rs.j)?;
        check_c_structure(params, &vertices, rs, &c)?;
        cs.insert(rs, c);
    }

    let class_vector = |m: &IntMatrix| -> Vec<Rat> {
        classes.iter().map(|&(_, y)| Rat::from_integer(m.get(0, y).into())).collect()
    };

    let mut report = CrsAlgebraReport {
        params: params.clone(),
        products_checked: 0,
        zero_products: 0,
        expansions: BTreeMap::new(),
    };
    for (&rs, c1) in &cs {
        for (&kh, c2) in &cs {
            report.products_checked += 1;
            let product: Vec<Rat> = classes
                .iter()
                .map(|&(_, y)| Rat::from_integer(c1.product_entry(c2, 0, y).into()))
                .collect();
            let is_zero = product.iter().all(Zero::is_zero);
            if rs.j != kh.j {
                if !is_zero {
                    return Err(Error::IdentityViolated(format!(
                        "C_{rs} C_{kh} is nonzero although the second indices differ"
                    )));
                }
                report.zero_products += 1;
                continue;
            }
            let s = rs.j;
            let basis: Vec<usize> = params.l().iter().filter(|p| p.j == s).map(|p| p.i).collect();
            let columns: Vec<Vec<Rat>> = basis.iter().map(|&i| class_vector(&cs[&IndexPair::new(i, s)])).collect();
            if columns.iter().all(|c| c.iter().all(Zero::is_zero)) {
                // W_{is} is empty for all i (q = 2, s > 0)
                if !is_zero {
                    return Err(Error::IdentityViolated(format!("C_{rs} C_{kh} is nonzero in a zero family")));
                }
                report.zero_products += 1;
                continue;
            }
            let system: Vec<Vec<Rat>> = (0..classes.len())
                .map(|row| columns.iter().map(|col| col[row].clone()).collect())
                .collect();
            let coeffs = match solve(&system, &product) {
                Solution::Unique(v) => v,
                Solution::Inconsistent => {
                    return Err(Error::IdentityViolated(format!(
                        "C_{rs} C_{kh} is not in the span of the C_(i,{s})"
                    )))
                }
                Solution::Underdetermined(_) => {
                    return Err(Error::Internal(format!("the C_(i,{s}) are linearly dependent")))
                }
            };
            let top = rs.i.min(kh.i);
            let mut expansion = Vec::new();
            for (&i, a) in basis.iter().zip(coeffs) {
                let in_range = s <= i && i <= top;
                let ok = if i == top {
                    a.is_positive()
                } else if in_range {
                    !a.is_negative()
                } else {
                    a.is_zero()
                };
                if !ok {
                    return Err(Error::IdentityViolated(format!(
                        "coefficient of C_({i},{s}) in C_{rs} C_{kh} is {a}"
                    )));
                }
                if in_range {
                    expansion.push((i, a));
                }
            }
            report.expansions.insert((rs, kh), expansion);
        }
    }
    Ok(report)
}

fn check_c_structure(params: &SchemeParams, vertices: &[Vector], rs: IndexPair, c: &IntMatrix) -> Result<()> {
    if !c.is_symmetric() {
        return Err(Error::IdentityViolated(format!("C_{rs} is not symmetric")));
    }
    let (r, s) = (rs.i as i64, rs.j as i64);
    let diag = binom(params.w() as i64, r) * binom(r, s) * pow(params.q() as i64 - 2, rs.j);
    let w = params.w();
    let mut by_class: BTreeMap<IndexPair, i64> = BTreeMap::new();
    for x in 0..vertices.len() {
        if num_bigint::BigInt::from(c.get(x, x)) != diag {
            return Err(Error::IdentityViolated(format!("C_{rs} diagonal entry {} != {diag}", c.get(x, x))));
        }
        for y in 0..vertices.len() {
            let class = relation_unchecked(vertices[x].coords(), vertices[y].coords(), w);
            let v = c.get(x, y);
            if *by_class.entry(class).or_insert(v) != v {
                return Err(Error::IdentityViolated(format!("C_{rs} is not constant on relation {class}")));
            }
        }
    }
    Ok(())
}
