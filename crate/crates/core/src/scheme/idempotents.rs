//! Floating-point primitive idempotents, used only as a structural cross-check
//! of the exact layer.

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;

use super::bose_mesner::{adjacency, build_c, DENSE_CAP};
use super::{enumerate_vertices, Vector};
use crate::error::{Error, Result};
use crate::exactmath::{multiplicity, IndexPair, SchemeParams};

/// Absolute tolerance for matrix identities and zero coefficients.
pub const ABS_TOL: f64 = 1e-8;
/// Relative eigenvalue gap separating clusters.
pub const CLUSTER_REL_GAP: f64 = 1e-6;
/// Coefficients at or above this magnitude count as clearly nonzero.
const NONZERO_FLOOR: f64 = 1e4 * ABS_TOL;
const SPAN_IN: f64 = 1e-6;
const SPAN_OUT: f64 = 1e-3;

#[derive(Debug, Clone)]
pub struct NumericIdempotentSet {
    params: SchemeParams,
    vertices: Vec<Vector>,
    labels: Vec<IndexPair>,
    projectors: Vec<DMatrix<f64>>,
    ranks: Vec<usize>,
}

impl NumericIdempotentSet {
    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    /// Labels in `L` order.
    pub fn labels(&self) -> &[IndexPair] {
        &self.labels
    }

    pub fn projector(&self, ij: IndexPair) -> Option<&DMatrix<f64>> {
        self.labels.iter().position(|&l| l == ij).map(|k| &self.projectors[k])
    }

    pub fn rank(&self, ij: IndexPair) -> Option<usize> {
        self.labels.iter().position(|&l| l == ij).map(|k| self.ranks[k])
    }

    /// Largest entrywise deviation from `sum P = I` and `P_a P_b = delta_ab P_a`.
    pub fn projector_defect(&self) -> f64 {
        let dim = self.vertices.len();
        let mut sum = DMatrix::<f64>::zeros(dim, dim);
        let mut worst: f64 = 0.0;
        for (a, pa) in self.projectors.iter().enumerate() {
            sum += pa;
            worst = worst.max((pa - pa.transpose()).amax());
            for (b, pb) in self.projectors.iter().enumerate().skip(a) {
                let prod = pa * pb;
                let dev = if a == b { (prod - pa).amax() } else { prod.amax() };
                worst = worst.max(dev);
            }
        }
        worst.max((sum - DMatrix::<f64>::identity(dim, dim)).amax())
    }
}

/// Diagonalises `sum_kh sqrt(p_kh) A_kh`, with `p_kh` the odd primes
/// `3, 5, 7, ...` assigned to `K` in lexicographic order, and
/// labels the resulting eigenprojectors through the filtration by the
/// `C_{kh}`, walking `L` in lexicographic order.
pub fn numeric_idempotents(params: &SchemeParams) -> Result<NumericIdempotentSet> {
    let vertices = enumerate_vertices(params)?;
    let dim = vertices.len();
    if dim > DENSE_CAP {
        return Err(Error::TooLarge { what: "|X| for dense matrices", size: dim as u128, cap: DENSE_CAP as u128 });
    }

    let mut generic = DMatrix::<f64>::zeros(dim, dim);
    for (&kh, prime) in params.k().iter().zip(primes_from_three()) {
        generic += adjacency(params, &vertices, kh)? * (prime as f64).sqrt();
    }
    let eig = generic.symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let scale = eig.eigenvalues.amax().max(1.0);
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for &idx in &order {
        let v = eig.eigenvalues[idx];
        if clusters.is_empty() || v - last > CLUSTER_REL_GAP * scale {
            clusters.push(Vec::new());
        }
        clusters.last_mut().unwrap().push(idx);
        last = v;
    }
    let bases: Vec<DMatrix<f64>> = clusters
        .iter()
        .map(|idx| DMatrix::from_fn(dim, idx.len(), |row, col| eig.eigenvectors[(row, idx[col])]))
        .collect();

    let mut mults = Vec::with_capacity(params.l().len());
    for &ij in params.l() {
        mults.push(multiplicity(params, ij)?.to_usize().unwrap_or(usize::MAX));
    }
    let expected_clusters = mults.iter().filter(|&&m| m > 0).count();
    if clusters.len() != expected_clusters {
        return Err(Error::AmbiguousSpectrum(format!(
            "{params}: found {} eigenvalue clusters, expected {expected_clusters}",
            clusters.len()
        )));
    }

    // eigenvalue of C_kh on each cluster
    let mut spectra: Vec<DVector<f64>> = Vec::with_capacity(params.l().len());
    for &kh in params.l() {
        let c = build_c(params, kh.i, kh.j)?.to_f64();
        spectra.push(DVector::from_iterator(
            bases.len(),
            bases.iter().map(|v| (v.transpose() * &c * v).trace() / v.ncols() as f64),
        ));
    }

    let mut orthonormal: Vec<DVector<f64>> = Vec::new();
    let mut assigned: Vec<Option<usize>> = vec![None; params.l().len()];
    let mut taken = vec![false; bases.len()];
    for (step, &ij) in params.l().iter().enumerate() {
        let mut v = spectra[step].clone();
        let norm0 = v.norm();
        for u in &orthonormal {
            let d = u.dot(&v);
            v -= u * d;
        }
        if norm0 > 0.0 && v.norm() > 1e-9 * norm0 {
            let n = v.norm();
            orthonormal.push(v / n);
        }
        let mut fresh = Vec::new();
        for c in (0..bases.len()).filter(|&c| !taken[c]) {
            let inside: f64 = orthonormal.iter().map(|u| u[c] * u[c]).sum();
            let residual = (1.0 - inside).max(0.0);
            if residual < SPAN_IN {
                fresh.push(c);
            } else if residual < SPAN_OUT {
                return Err(Error::AmbiguousSpectrum(format!(
                    "{params}: cluster {c} has span residual {residual:e} at step {ij}"
                )));
            }
        }
        let want = usize::from(mults[step] > 0);
        if fresh.len() != want {
            return Err(Error::AmbiguousSpectrum(format!(
                "{params}: {} new clusters enter the filtration at {ij}, expected {want}",
                fresh.len()
            )));
        }
        if let Some(&c) = fresh.first() {
            taken[c] = true;
            assigned[step] = Some(c);
        }
    }

    let mut projectors = Vec::with_capacity(params.l().len());
    let mut ranks = Vec::with_capacity(params.l().len());
    for (step, &ij) in params.l().iter().enumerate() {
        let (proj, rank) = match assigned[step] {
            Some(c) => (&bases[c] * bases[c].transpose(), bases[c].ncols()),
            None => (DMatrix::zeros(dim, dim), 0),
        };
        if rank != mults[step] {
            return Err(Error::AmbiguousSpectrum(format!(
                "{params}: E_{ij} has rank {rank}, multiplicity is {}",
                mults[step]
            )));
        }
        projectors.push(proj);
        ranks.push(rank);
    }
    Ok(NumericIdempotentSet { params: params.clone(), vertices, labels: params.l().to_vec(), projectors, ranks })
}

fn primes_from_three() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0))
}

/// Coefficients `trace(C_{rs} P) / rank(P)` of `C_{rs}` in the projector
/// basis, for every label of positive rank.
pub fn component_coefficients(set: &NumericIdempotentSet, r: usize, s: usize) -> Result<Vec<(IndexPair, f64)>> {
    let c = build_c(&set.params, r, s)?.to_f64();
    Ok(set
        .labels
        .iter()
        .zip(&set.projectors)
        .zip(&set.ranks)
        .filter(|(_, &rank)| rank > 0)
        .map(|((&ij, p), &rank)| (ij, (&c * p).trace() / rank as f64))
        .collect())
}

/// The components of `C_{rs}`: labels whose coefficient is clearly nonzero.
pub fn components_of_c(set: &NumericIdempotentSet, r: usize, s: usize) -> Result<Vec<IndexPair>> {
    let mut out = Vec::new();
    for (ij, coeff) in component_coefficients(set, r, s)? {
        let mag = coeff.abs();
        if mag >= NONZERO_FLOOR {
            out.push(ij);
        } else if mag > ABS_TOL {
            return Err(Error::AmbiguousSpectrum(format!(
                "coefficient of E_{ij} in C_({r},{s}) is {coeff:e}, inside the tolerance band"
            )));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::eigenmatrix_q;
    use num_traits::ToPrimitive;

    fn p(n: usize, w: usize, q: usize) -> SchemeParams {
        SchemeParams::new(n, w, q).unwrap()
    }

    #[test]
    fn ranks_match_multiplicities() {
        let params = p(4, 2, 3);
        let set = numeric_idempotents(&params).unwrap();
        for &ij in params.l() {
            assert_eq!(set.rank(ij).unwrap().to_u64(), multiplicity(&params, ij).unwrap().to_u64());
        }
        assert!(set.projector_defect() < ABS_TOL);
        let e00 = set.projector(IndexPair::ZERO).unwrap();
        assert!(e00.iter().all(|v| (v - 1.0 / 24.0).abs() < ABS_TOL));
    }

    #[test]
    fn projectors_match_eigenmatrix() {
        for (n, w, q) in [(3, 1, 3), (4, 2, 3), (4, 2, 4), (4, 2, 2)] {
            let params = p(n, w, q);
            let set = numeric_idempotents(&params).unwrap();
            let dim = set.vertices().len();
            for &ij in params.l() {
                let mut expected = DMatrix::<f64>::zeros(dim, dim);
                for &kh in params.k() {
                    let qv = eigenmatrix_q(&params, ij, kh).unwrap().to_f64().unwrap();
                    expected += adjacency(&params, set.vertices(), kh).unwrap() * qv;
                }
                expected /= dim as f64;
                let dev = (expected - set.projector(ij).unwrap()).amax();
                assert!(dev < ABS_TOL, "{params} {ij} deviation {dev:e}");
            }
        }
    }

    #[test]
    fn components_at_4_2_3() {
        let params = p(4, 2, 3);
        let set = numeric_idempotents(&params).unwrap();
        let pair = |i, j| IndexPair::new(i, j);
        assert_eq!(components_of_c(&set, 0, 0).unwrap(), vec![pair(0, 0)]);
        assert_eq!(components_of_c(&set, 2, 0).unwrap(), vec![pair(0, 0), pair(1, 0), pair(2, 0)]);
        assert_eq!(components_of_c(&set, 2, 1).unwrap(), vec![pair(1, 1), pair(2, 1)]);
    }
}
