//! Slepian bases on graphs.
//!
//! Two designs share the same band-limited coordinates `ĝ` (coefficients on
//! the first `N_W` Laplacian eigenvectors, `g = U_W ĝ`):
//!
//! - **Concentration**: maximize the energy fraction inside the subset,
//!   `μ = ĝᵀ C ĝ / ĝᵀ ĝ` with `C = U_Wᵀ S U_W`. Eigenvalues lie in `[0, 1]`
//!   and are reported in descending order.
//! - **Embedding**: extremize the modified embedded distance
//!   `ξ = ĝᵀ C_emb ĝ` with `C_emb = Λ_W^{1/2} C Λ_W^{1/2}`. Eigenvalues act as
//!   frequencies localized to the subset and are reported ascending.
//!
//! With the subset equal to the whole node set, `C = I` and `C_emb = Λ_W`, so
//! the embedding design falls back to the Laplacian eigenbasis itself.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use faer::{Mat, MatRef};

use crate::eigen;
use crate::error::{Error, Result};
use crate::spectral::{BandLimit, LaplacianSpectrum};

/// Selected nodes, sorted and unique. Acts as the diagonal 0/1 selector `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSubset {
    indices: Vec<usize>,
    n_nodes: usize,
}

impl NodeSubset {
    /// Accepts indices in any order; duplicates are rejected.
    pub fn new(indices: impl IntoIterator<Item = usize>, n_nodes: usize) -> Result<Self> {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        if indices.is_empty() {
            return Err(Error::EmptySubset);
        }
        indices.sort_unstable();
        for w in indices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateSubsetNode(w[0]));
            }
        }
        if let Some(&last) = indices.last() {
            if last >= n_nodes {
                return Err(Error::NodeOutOfRange {
                    index: last,
                    n_nodes,
                });
            }
        }
        Ok(NodeSubset { indices, n_nodes })
    }

    pub fn full(n_nodes: usize) -> Self {
        NodeSubset {
            indices: (0..n_nodes).collect(),
            n_nodes,
        }
    }

    /// One node index per line; `#` starts a comment.
    pub fn parse(text: &str, n_nodes: usize) -> Result<Self> {
        let mut indices = Vec::new();
        let mut seen = vec![false; n_nodes];
        for (lineno, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let line = lineno + 1;
            let idx: usize = content.parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid node index {content:?}"),
            })?;
            if idx >= n_nodes {
                return Err(Error::NodeOutOfRange {
                    index: idx,
                    n_nodes,
                }
                .at_line(line));
            }
            if std::mem::replace(&mut seen[idx], true) {
                return Err(Error::DuplicateSubsetNode(idx).at_line(line));
            }
            indices.push(idx);
        }
        Self::new(indices, n_nodes)
    }

    pub fn load(path: impl AsRef<Path>, n_nodes: usize) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, n_nodes)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// `N_S`, the trace of the selector.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn contains(&self, node: usize) -> bool {
        self.indices.binary_search(&node).is_ok()
    }

    /// Diagonal of `S` as a dense 0/1 vector.
    pub fn selector(&self) -> Vec<f64> {
        let mut s = vec![0.0; self.n_nodes];
        for &i in &self.indices {
            s[i] = 1.0;
        }
        s
    }

    /// `Σ_{i∈S} x_i y_i`, i.e. `xᵀ S y`.
    pub fn inner(&self, x: &[f64], y: &[f64]) -> f64 {
        self.indices.iter().map(|&i| x[i] * y[i]).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Design {
    /// Energy concentration `μ`, sorted descending.
    Concentration,
    /// Modified embedded distance `ξ`, sorted ascending.
    Embedding,
}

impl fmt::Display for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Design::Concentration => "concentration",
            Design::Embedding => "embedding",
        })
    }
}

impl FromStr for Design {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "concentration" => Ok(Design::Concentration),
            "embedding" => Ok(Design::Embedding),
            other => Err(Error::InvalidArgument(format!(
                "unknown design {other:?} (expected concentration or embedding)"
            ))),
        }
    }
}

/// `K = N_W · N_S / N`.
pub fn shannon_number(n_w: usize, n_s: usize, n: usize) -> Result<f64> {
    if n_w == 0 || n_s == 0 || n == 0 || n_s > n || n_w > n {
        return Err(Error::InvalidArgument(format!(
            "Shannon number needs 0 < N_W, N_S <= N (got N_W={n_w}, N_S={n_s}, N={n})"
        )));
    }
    Ok(n_w as f64 * n_s as f64 / n as f64)
}

/// `C` or `C_emb` together with everything needed to synthesize a basis.
#[derive(Debug, Clone)]
pub struct ConcentrationMatrix<'a> {
    spectrum: &'a LaplacianSpectrum,
    band: BandLimit,
    subset: NodeSubset,
    design: Design,
    concentration: Mat<f64>,
    entries: Mat<f64>,
}

impl<'a> ConcentrationMatrix<'a> {
    pub fn design(&self) -> Design {
        self.design
    }

    /// The matrix whose eigendecomposition defines the design.
    pub fn entries(&self) -> MatRef<'_, f64> {
        self.entries.as_ref()
    }

    /// Plain concentration matrix `C`, regardless of design.
    pub fn concentration(&self) -> MatRef<'_, f64> {
        self.concentration.as_ref()
    }

    pub fn trace(&self) -> f64 {
        (0..self.entries.nrows())
            .map(|i| self.entries[(i, i)])
            .sum()
    }

    pub fn spectrum(&self) -> &'a LaplacianSpectrum {
        self.spectrum
    }

    pub fn band(&self) -> BandLimit {
        self.band
    }

    pub fn subset(&self) -> &NodeSubset {
        &self.subset
    }
}

/// `√λ` for the first `n_w` eigenvalues. Values under the spectrum's zero
/// tolerance (including roundoff below zero) are taken as exactly zero.
fn sqrt_band_eigenvalues(spectrum: &LaplacianSpectrum, n_w: usize) -> Vec<f64> {
    let tol = spectrum.zero_tolerance();
    spectrum.eigenvalues()[..n_w]
        .iter()
        .map(|&l| if l < tol { 0.0 } else { l.sqrt() })
        .collect()
}

fn assemble_concentration(
    spectrum: &LaplacianSpectrum,
    band: BandLimit,
    subset: &NodeSubset,
) -> Result<Mat<f64>> {
    if subset.n_nodes() != spectrum.n_nodes() {
        return Err(Error::LengthMismatch {
            expected: spectrum.n_nodes(),
            got: subset.n_nodes(),
        });
    }
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let n_w = band.n_w();
    if n_w > spectrum.m_computed() {
        return Err(Error::Bandwidth {
            n_w,
            available: spectrum.m_computed(),
        });
    }
    let u = spectrum.eigenvectors();
    let rows = Mat::from_fn(subset.len(), n_w, |r, a| u[(subset.indices()[r], a)]);
    let gram = rows.transpose() * &rows;
    Ok(Mat::from_fn(n_w, n_w, |a, b| {
        0.5 * (gram[(a, b)] + gram[(b, a)])
    }))
}

/// `C = U_Wᵀ S U_W`, entry `(a, b)` is `Σ_{i∈S} U_ia U_ib`.
pub fn concentration_matrix<'a>(
    spectrum: &'a LaplacianSpectrum,
    band: BandLimit,
    subset: &NodeSubset,
) -> Result<ConcentrationMatrix<'a>> {
    let c = assemble_concentration(spectrum, band, subset)?;
    Ok(ConcentrationMatrix {
        spectrum,
        band,
        subset: subset.clone(),
        design: Design::Concentration,
        entries: c.clone(),
        concentration: c,
    })
}

/// `C_emb = Λ_W^{1/2} C Λ_W^{1/2}`, entry `(a, b)` is `√(λ_a λ_b) C_ab`.
pub fn embedding_concentration_matrix<'a>(
    spectrum: &'a LaplacianSpectrum,
    band: BandLimit,
    subset: &NodeSubset,
) -> Result<ConcentrationMatrix<'a>> {
    let c = assemble_concentration(spectrum, band, subset)?;
    let root = sqrt_band_eigenvalues(spectrum, band.n_w());
    let emb = Mat::from_fn(c.nrows(), c.ncols(), |a, b| root[a] * root[b] * c[(a, b)]);
    Ok(ConcentrationMatrix {
        spectrum,
        band,
        subset: subset.clone(),
        design: Design::Embedding,
        entries: emb,
        concentration: c,
    })
}

/// Embedded distance `gᵀLg`, energy concentration `gᵀSg`, and modified
/// embedded distance `ĝᵀ C_emb ĝ` of one unit-norm signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossMetrics {
    pub lambda: f64,
    pub mu: f64,
    pub xi: f64,
}

/// Cross-metrics of an arbitrary unit-norm, band-limited signal.
///
/// `ĝ = U_Wᵀ g`, so any component outside the band is ignored by the
/// `ξ` metric.
pub fn cross_metrics(
    spectrum: &LaplacianSpectrum,
    band: BandLimit,
    subset: &NodeSubset,
    g: &[f64],
) -> Result<CrossMetrics> {
    let n = spectrum.n_nodes();
    if g.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: g.len(),
        });
    }
    if subset.n_nodes() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: subset.n_nodes(),
        });
    }
    let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(Error::NotUnitNorm(norm));
    }
    let n_w = band.n_w();
    let u = spectrum.eigenvectors();
    let root = sqrt_band_eigenvalues(spectrum, n_w);
    let coeffs: Vec<f64> = (0..n_w)
        .map(|a| u.col(a).iter().zip(g).map(|(x, y)| x * y).sum::<f64>() * root[a])
        .collect();
    // ξ = ‖S U_W Λ_W^{1/2} ĝ‖²
    let xi = subset
        .indices()
        .iter()
        .map(|&i| {
            let y: f64 = (0..n_w).map(|a| u[(i, a)] * coeffs[a]).sum();
            y * y
        })
        .sum();
    Ok(CrossMetrics {
        lambda: spectrum
            .graph()
            .laplacian_quadratic_form(spectrum.kind(), g)?,
        mu: subset.inner(g, g),
        xi,
    })
}

/// A Slepian family for one design.
#[derive(Debug, Clone)]
pub struct SlepianBasis {
    vectors: Mat<f64>,
    coefficients: Mat<f64>,
    values: Vec<f64>,
    metrics: Vec<CrossMetrics>,
    design: Design,
    subset: NodeSubset,
    band: BandLimit,
}

/// Eigendecomposition of `C`: the maximally concentrated band-limited
/// signals, `μ` descending.
pub fn slepian_concentration(cm: &ConcentrationMatrix<'_>) -> Result<SlepianBasis> {
    if cm.design != Design::Concentration {
        return Err(Error::DesignMismatch(
            "slepian_concentration needs a concentration matrix",
        ));
    }
    build_basis(cm, true)
}

/// Eigendecomposition of `C_emb`: signals ordered by increasing modified
/// embedded distance `ξ`.
pub fn slepian_embedding(cm: &ConcentrationMatrix<'_>) -> Result<SlepianBasis> {
    if cm.design != Design::Embedding {
        return Err(Error::DesignMismatch(
            "slepian_embedding needs an embedding concentration matrix",
        ));
    }
    build_basis(cm, false)
}

/// Runs the design matching `design` end to end.
pub fn slepian_basis(
    spectrum: &LaplacianSpectrum,
    band: BandLimit,
    subset: &NodeSubset,
    design: Design,
) -> Result<SlepianBasis> {
    match design {
        Design::Concentration => {
            slepian_concentration(&concentration_matrix(spectrum, band, subset)?)
        }
        Design::Embedding => {
            slepian_embedding(&embedding_concentration_matrix(spectrum, band, subset)?)
        }
    }
}

fn build_basis(cm: &ConcentrationMatrix<'_>, descending: bool) -> Result<SlepianBasis> {
    let n_w = cm.band.n_w();
    let (mut values, mut coefficients) = eigen::symmetric_eigen(cm.entries.as_ref())?;
    if descending {
        values.reverse();
        coefficients = Mat::from_fn(n_w, n_w, |i, j| coefficients[(i, n_w - 1 - j)]);
    }
    let u_w = cm.spectrum.eigenvectors().subcols(0, n_w);
    let mut vectors = u_w * &coefficients;
    for j in 0..n_w {
        eigen::sign_normalize_column(&mut vectors, j, &mut [&mut coefficients]);
    }

    let graph = cm.spectrum.graph();
    let kind = cm.spectrum.kind();
    let root = sqrt_band_eigenvalues(cm.spectrum, n_w);
    let c = cm.concentration.as_ref();
    let mut metrics = Vec::with_capacity(n_w);
    for k in 0..n_w {
        let v: Vec<f64> = vectors.col(k).iter().copied().collect();
        let y: Vec<f64> = (0..n_w).map(|a| root[a] * coefficients[(a, k)]).collect();
        let mut xi = 0.0;
        for a in 0..n_w {
            for b in 0..n_w {
                xi += y[a] * c[(a, b)] * y[b];
            }
        }
        metrics.push(CrossMetrics {
            lambda: graph.laplacian_quadratic_form(kind, &v)?,
            mu: cm.subset.inner(&v, &v),
            xi,
        });
    }

    Ok(SlepianBasis {
        vectors,
        coefficients,
        values,
        metrics,
        design: cm.design,
        subset: cm.subset.clone(),
        band: cm.band,
    })
}

impl SlepianBasis {
    pub fn design(&self) -> Design {
        self.design
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `N × N_W`, column `k` is `s_k = U_W ŝ_k`.
    pub fn vectors(&self) -> MatRef<'_, f64> {
        self.vectors.as_ref()
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.col(k).iter().copied().collect()
    }

    /// `N_W × N_W`, column `k` is `ŝ_k`.
    pub fn coefficients(&self) -> MatRef<'_, f64> {
        self.coefficients.as_ref()
    }

    /// `μ_k` (descending) or `ξ_k` (ascending) depending on the design.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn metrics(&self) -> &[CrossMetrics] {
        &self.metrics
    }

    pub fn subset(&self) -> &NodeSubset {
        &self.subset
    }

    pub fn band(&self) -> BandLimit {
        self.band
    }

    pub fn shannon_number(&self) -> f64 {
        self.band.n_w() as f64 * self.subset.len() as f64 / self.subset.n_nodes() as f64
    }

    /// `f − V Vᵀ f`, the part of `f` outside the band. The vectors are
    /// orthonormal for both designs, so this is the band complement.
    pub fn out_of_band(&self, f: &[f64]) -> Result<Vec<f64>> {
        let n = self.vectors.nrows();
        if f.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: f.len(),
            });
        }
        let mut out = f.to_vec();
        for col in self.vectors.col_iter() {
            let c: f64 = col.iter().zip(f).map(|(a, b)| a * b).sum();
            for (o, v) in out.iter_mut().zip(col.iter()) {
                *o -= c * v;
            }
        }
        Ok(out)
    }

    /// `Vᵀ V`.
    pub fn graph_gram(&self) -> Mat<f64> {
        self.vectors.transpose() * &self.vectors
    }

    /// `Vᵀ S V`.
    pub fn subset_gram(&self) -> Mat<f64> {
        let rows = Mat::from_fn(self.subset.len(), self.len(), |r, k| {
            self.vectors[(self.subset.indices()[r], k)]
        });
        rows.transpose() * &rows
    }

    /// Largest off-diagonal magnitude of `Vᵀ S V`.
    ///
    /// Zero up to roundoff for the concentration design. For the embedding
    /// design it generally is not, since `C` and `C_emb` need not commute;
    /// this reports how far from subset-orthogonal that family is.
    pub fn subset_offdiag_max(&self) -> f64 {
        let g = self.subset_gram();
        let mut worst: f64 = 0.0;
        for i in 0..g.nrows() {
            for j in 0..g.ncols() {
                if i != j {
                    worst = worst.max(g[(i, j)].abs());
                }
            }
        }
        worst
    }
}
