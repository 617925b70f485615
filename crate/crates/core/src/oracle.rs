//! Floating-point cross-check: isotypic projectors from a spectral
//! decomposition of the class sums, independent of the exact pipeline.

use faer::{Mat, Side};
use num_complex::Complex64;

use crate::clifford::CliffordContext;
use crate::cyclotomic::CycMatrix;

/// Eigenvalues closer than this (relative to the largest entry) are merged.
const CLUSTER_TOLERANCE: f64 = 1e-6;

fn max_abs(m: &Mat<Complex64>) -> f64 {
    let mut best = 0.0f64;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            best = best.max(m[(i, j)].norm());
        }
    }
    best
}

fn hermitian_part(k: &Mat<Complex64>, skew: bool) -> Mat<Complex64> {
    Mat::from_fn(k.nrows(), k.ncols(), |i, j| {
        let (a, b) = (k[(i, j)], k[(j, i)].conj());
        if skew {
            (a - b) * Complex64::new(0.0, -0.5)
        } else {
            (a + b) * 0.5
        }
    })
}

/// Splits each orthonormal block of `spaces` into eigenspaces of the
/// Hermitian matrix `h`.
fn refine(spaces: Vec<Mat<Complex64>>, h: &Mat<Complex64>) -> Vec<Mat<Complex64>> {
    let scale = max_abs(h).max(1.0);
    let mut out = Vec::with_capacity(spaces.len());
    for v in spaces {
        if v.ncols() == 1 {
            out.push(v);
            continue;
        }
        let restricted = v.adjoint() * h * &v;
        let eig = restricted
            .self_adjoint_eigen(Side::Lower)
            .expect("Hermitian eigendecomposition converges");
        let values: Vec<f64> = (0..v.ncols()).map(|i| eig.S()[i].re).collect();
        let vectors = eig.U();
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let mut start = 0;
        while start < order.len() {
            let mut end = start + 1;
            while end < order.len()
                && values[order[end]] - values[order[end - 1]] < CLUSTER_TOLERANCE * scale
            {
                end += 1;
            }
            let cols = &order[start..end];
            let block = Mat::from_fn(vectors.nrows(), cols.len(), |i, j| vectors[(i, cols[j])]);
            out.push(&v * &block);
            start = end;
        }
    }
    out
}

/// Orthogonal projectors onto the joint eigenspaces of a commuting family
/// of normal matrices, refined by the Hermitian and skew-Hermitian part of
/// each member in turn.
pub fn joint_eigenprojectors(family: &[Mat<Complex64>]) -> Vec<Mat<Complex64>> {
    let n = family[0].nrows();
    let mut spaces = vec![Mat::<Complex64>::identity(n, n)];
    for k in family {
        spaces = refine(spaces, &hermitian_part(k, false));
        spaces = refine(spaces, &hermitian_part(k, true));
    }
    spaces.iter().map(|v| v * v.adjoint()).collect()
}

/// Spectral projectors for the class sums of normal subgroup `k`.
pub fn normal_projectors(ctx: &CliffordContext, k: usize) -> Vec<Mat<Complex64>> {
    let family: Vec<Mat<Complex64>> = ctx
        .normal(k)
        .class_sums()
        .iter()
        .map(CycMatrix::to_complex)
        .collect();
    joint_eigenprojectors(&family)
}

pub fn max_abs_difference(a: &Mat<Complex64>, b: &Mat<Complex64>) -> f64 {
    max_abs(&(a - b))
}

/// The oracle projector closest to `exact`, with its entrywise deviation.
pub fn closest(exact: &CycMatrix, oracle: &[Mat<Complex64>]) -> Option<(usize, f64)> {
    let target = exact.to_complex();
    oracle
        .iter()
        .map(|p| max_abs_difference(p, &target))
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
}
