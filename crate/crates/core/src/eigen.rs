//! Thin wrapper over faer's dense self-adjoint eigensolver.
//!
//! Always runs sequentially so repeated runs are bitwise identical.

use faer::diag::Diag;
use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::{self, ComputeEigenvectors};
use faer::traits::ComplexField;
use faer::{c64, Mat, MatRef, Par};

use crate::error::{Error, Result};

fn evd_raw<T: ComplexField>(a: MatRef<'_, T>) -> Result<(Diag<T>, Mat<T>)> {
    let n = a.nrows();
    debug_assert_eq!(n, a.ncols());
    let par = Par::Seq;
    let mut u = Mat::<T>::zeros(n, n);
    let mut s = Diag::<T>::zeros(n);
    let mut buf = MemBuffer::new(evd::self_adjoint_evd_scratch::<T>(
        n,
        ComputeEigenvectors::Yes,
        par,
        Default::default(),
    ));
    evd::self_adjoint_evd(
        a,
        s.as_mut(),
        Some(u.as_mut()),
        par,
        MemStack::new(&mut buf),
        Default::default(),
    )
    .map_err(|_| Error::NoConvergence)?;
    Ok((s, u))
}

fn ascending_order(values: &[f64]) -> Result<Vec<usize>> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NoConvergence);
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    Ok(order)
}

/// Eigenpairs of a real symmetric matrix (lower triangle is read),
/// eigenvalues ascending.
pub(crate) fn symmetric_eigen(a: MatRef<'_, f64>) -> Result<(Vec<f64>, Mat<f64>)> {
    let (s, u) = evd_raw(a)?;
    let raw: Vec<f64> = (0..s.dim()).map(|i| s[i]).collect();
    let order = ascending_order(&raw)?;
    let values = order.iter().map(|&k| raw[k]).collect();
    let vectors = Mat::from_fn(u.nrows(), order.len(), |i, j| u[(i, order[j])]);
    Ok((values, vectors))
}

/// Eigenpairs of a complex Hermitian matrix, eigenvalues ascending.
pub(crate) fn hermitian_eigen(a: MatRef<'_, c64>) -> Result<(Vec<f64>, Mat<c64>)> {
    let (s, u) = evd_raw(a)?;
    let raw: Vec<f64> = (0..s.dim()).map(|i| s[i].re).collect();
    let order = ascending_order(&raw)?;
    let values = order.iter().map(|&k| raw[k]).collect();
    let vectors = Mat::from_fn(u.nrows(), order.len(), |i, j| u[(i, order[j])]);
    Ok((values, vectors))
}

/// Index of the entry with the largest magnitude; near-ties (relative
/// 1e-10) go to the smallest index.
pub(crate) fn dominant_index(magnitudes: &[f64]) -> usize {
    let max = magnitudes.iter().copied().fold(0.0f64, f64::max);
    magnitudes
        .iter()
        .position(|&m| m >= max * (1.0 - 1e-10))
        .unwrap_or(0)
}

/// Flips column `j` of each listed matrix if the dominant entry of
/// `reference`'s column `j` is negative.
pub(crate) fn sign_normalize_column(
    reference: &mut Mat<f64>,
    j: usize,
    others: &mut [&mut Mat<f64>],
) {
    let col = reference.col(j);
    let mags: Vec<f64> = col.iter().map(|x| x.abs()).collect();
    let k = dominant_index(&mags);
    if col[k] < 0.0 {
        for x in reference.col_mut(j).iter_mut() {
            *x = -*x;
        }
        for m in others.iter_mut() {
            for x in m.col_mut(j).iter_mut() {
                *x = -*x;
            }
        }
    }
}
