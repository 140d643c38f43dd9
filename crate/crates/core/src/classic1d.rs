//! Discrete time–frequency Slepian vectors through the unitary DFT.
//!
//! Column `l` (0-based) of the DFT matrix has frequency
//! `ω_l = 2π (l + 1 − ⌈(N−1)/2⌉) / N` and row `k` holds `e^{jω_l k} / √N`.
//! The band keeps the `N_W` columns of smallest `|ω|`; at equal `|ω|` the
//! negative frequency comes first.

use std::f64::consts::PI;

use faer::{c64, Mat, MatRef};

use crate::eigen;
use crate::error::{Error, Result};

/// Frequency of DFT column `l` (0-based).
pub fn omega(n: usize, l: usize) -> f64 {
    let shift = n.saturating_sub(1).div_ceil(2) as f64;
    2.0 * PI * (l as f64 + 1.0 - shift) / n as f64
}

/// Unitary DFT matrix `F`, `F[k][l] = e^{jω_l k} / √N`.
pub fn dft_matrix(n: usize) -> Result<Mat<c64>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "DFT length must be >= 2, got {n}"
        )));
    }
    let scale = 1.0 / (n as f64).sqrt();
    let omegas: Vec<f64> = (0..n).map(|l| omega(n, l)).collect();
    Ok(Mat::from_fn(n, n, |k, l| {
        let (s, c) = (omegas[l] * k as f64).sin_cos();
        c64::new(c * scale, s * scale)
    }))
}

/// DFT columns ordered by `|ω|` ascending, negative frequency first on ties.
pub fn band_indices(n: usize, n_w: usize) -> Result<Vec<usize>> {
    if n < 2 || n_w == 0 || n_w > n {
        return Err(Error::Bandwidth { n_w, available: n });
    }
    // Integer frequency index keeps ties exact.
    let mut cols: Vec<(i64, usize)> = (0..n).map(|l| (frequency_index(n, l), l)).collect();
    cols.sort_by_key(|&(m, _)| (m.abs(), m > 0));
    Ok(cols.into_iter().take(n_w).map(|(_, l)| l).collect())
}

/// Signal length, band size, and concentration interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DftDesign {
    n: usize,
    n_w: usize,
    interval: Vec<usize>,
}

impl DftDesign {
    /// `interval` may be any non-empty set of sample indices.
    pub fn new(n: usize, n_w: usize, interval: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "signal length must be >= 2, got {n}"
            )));
        }
        if n_w == 0 || n_w > n {
            return Err(Error::Bandwidth { n_w, available: n });
        }
        let mut interval: Vec<usize> = interval.into_iter().collect();
        interval.sort_unstable();
        interval.dedup();
        if interval.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&last) = interval.last() {
            if last >= n {
                return Err(Error::NodeOutOfRange {
                    index: last,
                    n_nodes: n,
                });
            }
        }
        Ok(DftDesign { n, n_w, interval })
    }

    /// Contiguous interval of `n_s` samples around `center`:
    /// `center − ⌊(n_s−1)/2⌋ ..= center + ⌊n_s/2⌋`.
    pub fn centered(n: usize, n_s: usize, center: usize, n_w: usize) -> Result<Self> {
        if n_s == 0 {
            return Err(Error::EmptySubset);
        }
        let before = (n_s - 1) / 2;
        let start = center.checked_sub(before).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "interval of {n_s} samples around {center} starts before 0"
            ))
        })?;
        if start + n_s > n {
            return Err(Error::InvalidArgument(format!(
                "interval of {n_s} samples around {center} runs past N = {n}"
            )));
        }
        Self::new(n, n_w, start..start + n_s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_w(&self) -> usize {
        self.n_w
    }

    pub fn n_s(&self) -> usize {
        self.interval.len()
    }

    pub fn interval(&self) -> &[usize] {
        &self.interval
    }

    /// Reflects the interval `k ↦ N − 1 − k`.
    pub fn reflected(&self) -> Self {
        DftDesign {
            n: self.n,
            n_w: self.n_w,
            interval: self
                .interval
                .iter()
                .rev()
                .map(|&k| self.n - 1 - k)
                .collect(),
        }
    }

    pub fn shannon_number(&self) -> f64 {
        self.n_w as f64 * self.n_s() as f64 / self.n as f64
    }
}

/// Integer frequency of DFT column `l`: `ω_l = 2π m / N`.
fn frequency_index(n: usize, l: usize) -> i64 {
    l as i64 + 1 - n.saturating_sub(1).div_ceil(2) as i64
}

/// Unitary map from a real cosine/sine basis of the band to the band's DFT
/// coefficients, or `None` if the band is not closed under `m ↦ −m (mod N)`.
fn real_band_transform(n: usize, band: &[usize]) -> Option<Mat<c64>> {
    let ms: Vec<i64> = band.iter().map(|&l| frequency_index(n, l)).collect();
    let pos = |m: i64| ms.iter().position(|&x| (x - m).rem_euclid(n as i64) == 0);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut t = Mat::<c64>::zeros(band.len(), band.len());
    let mut col = 0;
    for (a, &m) in ms.iter().enumerate() {
        let b = pos(-m)?;
        if b == a {
            t[(a, col)] = c64::new(1.0, 0.0);
            col += 1;
        } else if m > 0 {
            t[(a, col)] = c64::new(h, 0.0);
            t[(b, col)] = c64::new(h, 0.0);
            t[(a, col + 1)] = c64::new(0.0, -h);
            t[(b, col + 1)] = c64::new(0.0, h);
            col += 2;
        }
    }
    Some(t)
}

#[derive(Debug, Clone)]
pub struct Slepian1dBasis {
    vectors: Mat<c64>,
    coefficients: Mat<c64>,
    mu: Vec<f64>,
    interval: Vec<usize>,
}

/// Solves `C ŝ = μ ŝ` with `C = Wᴴ Fᴴ S F W` and synthesizes `s = F W ŝ`.
///
/// When the band is symmetric about DC the eigenvectors are chosen real.
/// Each vector's global phase is fixed so that its largest-magnitude sample
/// is real and positive.
pub fn slepian_1d(design: &DftDesign) -> Result<Slepian1dBasis> {
    let n = design.n;
    let f = dft_matrix(n)?;
    let band = band_indices(n, design.n_w)?;
    let fw = Mat::from_fn(n, band.len(), |k, a| f[(k, band[a])]);
    let rows = Mat::from_fn(design.interval.len(), band.len(), |r, a| {
        fw[(design.interval[r], a)]
    });
    let gram = rows.adjoint() * &rows;
    let nw = band.len();
    let c = Mat::from_fn(nw, nw, |a, b| (gram[(a, b)] + gram[(b, a)].conj()) * 0.5);

    let (mut mu, mut coefficients) = match real_band_transform(n, &band) {
        // A band closed under negation carries a real orthonormal basis;
        // solving in it keeps (near-)degenerate eigenvectors real.
        Some(t) => {
            let cr = t.adjoint() * &c * &t;
            let cr = Mat::from_fn(nw, nw, |a, b| 0.5 * (cr[(a, b)].re + cr[(b, a)].re));
            let (mu, asc) = eigen::symmetric_eigen(cr.as_ref())?;
            let asc = Mat::from_fn(nw, nw, |i, j| c64::new(asc[(i, j)], 0.0));
            (mu, &t * &asc)
        }
        None => eigen::hermitian_eigen(c.as_ref())?,
    };
    mu.reverse();
    coefficients = Mat::from_fn(nw, nw, |i, j| coefficients[(i, nw - 1 - j)]);
    let mut vectors = &fw * &coefficients;

    for j in 0..nw {
        let col = vectors.col(j);
        let mags: Vec<f64> = col.iter().map(|z| z.norm()).collect();
        let k = eigen::dominant_index(&mags);
        let pivot = col[k];
        let phase = pivot.conj() * (1.0 / pivot.norm());
        for z in vectors.col_mut(j).iter_mut() {
            *z *= phase;
        }
        for z in coefficients.col_mut(j).iter_mut() {
            *z *= phase;
        }
    }

    Ok(Slepian1dBasis {
        vectors,
        coefficients,
        mu,
        interval: design.interval.clone(),
    })
}

impl Slepian1dBasis {
    /// Concentrations, descending.
    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    /// `N × N_W` complex vectors.
    pub fn vectors(&self) -> MatRef<'_, c64> {
        self.vectors.as_ref()
    }

    pub fn coefficients(&self) -> MatRef<'_, c64> {
        self.coefficients.as_ref()
    }

    /// Largest imaginary part over all phase-normalized vectors.
    pub fn imag_residue(&self) -> f64 {
        self.vectors
            .col_iter()
            .flat_map(|c| c.iter().map(|z| z.im.abs()).collect::<Vec<_>>())
            .fold(0.0, f64::max)
    }

    /// Real parts of the vectors, or `None` when some imaginary part
    /// exceeds `1e-8` (asymmetric band or interval).
    pub fn real_vectors(&self) -> Option<Mat<f64>> {
        (self.imag_residue() < 1e-8).then(|| {
            Mat::from_fn(self.vectors.nrows(), self.vectors.ncols(), |i, j| {
                self.vectors[(i, j)].re
            })
        })
    }

    /// Number of vectors with `μ > threshold`.
    pub fn count_above(&self, threshold: f64) -> usize {
        self.mu.iter().filter(|&&m| m > threshold).count()
    }

    pub fn interval(&self) -> &[usize] {
        &self.interval
    }

    /// `Vᴴ V` and `Vᴴ S V`.
    pub fn grams(&self) -> (Mat<c64>, Mat<c64>) {
        let rows = Mat::from_fn(self.interval.len(), self.vectors.ncols(), |r, k| {
            self.vectors[(self.interval[r], k)]
        });
        (
            self.vectors.adjoint() * &self.vectors,
            rows.adjoint() * &rows,
        )
    }
}
