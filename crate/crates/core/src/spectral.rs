//! Laplacian eigendecomposition and the graph Fourier transform.
//!
//! Conventions every [`LaplacianSpectrum`] follows:
//! - eigenvalues ascending,
//! - eigenvectors orthonormal columns,
//! - in each column the entry of largest magnitude is positive (near-ties
//!   resolved toward the smallest node index).

use faer::{Mat, MatRef};

use crate::eigen;
use crate::error::{Error, Result};
use crate::graph::{Graph, LaplacianKind};

#[derive(Debug, Clone)]
pub struct LaplacianSpectrum {
    graph: Graph,
    kind: LaplacianKind,
    eigenvalues: Vec<f64>,
    eigenvectors: Mat<f64>,
}

/// Computes the `m` smallest eigenpairs of the chosen Laplacian.
///
/// Uses a dense decomposition; fine up to a few thousand nodes.
pub fn eig_laplacian(graph: &Graph, kind: LaplacianKind, m: usize) -> Result<LaplacianSpectrum> {
    let n = graph.n_nodes();
    if m == 0 || m > n {
        return Err(Error::EigenCount {
            requested: m,
            available: n,
        });
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let l = graph.laplacian(kind)?;
    let (mut values, full) = eigen::symmetric_eigen(l.as_ref())?;
    values.truncate(m);
    let mut vectors = full.subcols(0, m).to_owned();
    for j in 0..m {
        eigen::sign_normalize_column(&mut vectors, j, &mut []);
    }
    Ok(LaplacianSpectrum {
        graph: graph.clone(),
        kind,
        eigenvalues: values,
        eigenvectors: vectors,
    })
}

impl LaplacianSpectrum {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn kind(&self) -> LaplacianKind {
        self.kind
    }

    pub fn n_nodes(&self) -> usize {
        self.graph.n_nodes()
    }

    /// Number of computed eigenpairs `M`.
    pub fn m_computed(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `N × M` matrix `U` with the eigenvectors as columns.
    pub fn eigenvectors(&self) -> MatRef<'_, f64> {
        self.eigenvectors.as_ref()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        self.eigenvectors.col(k).iter().copied().collect()
    }

    /// Eigenvalues below this are treated as zero.
    pub fn zero_tolerance(&self) -> f64 {
        let top = self.eigenvalues.last().copied().unwrap_or(0.0);
        1e-8 * top.max(1.0)
    }

    /// Keeps only the first `m` eigenpairs.
    pub fn truncated(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.m_computed() {
            return Err(Error::EigenCount {
                requested: m,
                available: self.m_computed(),
            });
        }
        Ok(LaplacianSpectrum {
            graph: self.graph.clone(),
            kind: self.kind,
            eigenvalues: self.eigenvalues[..m].to_vec(),
            eigenvectors: self.eigenvectors.subcols(0, m).to_owned(),
        })
    }

    /// Graph Fourier coefficients `Uᵀ f`.
    pub fn gft_forward(&self, signal: &[f64]) -> Result<Vec<f64>> {
        check_len(self.n_nodes(), signal.len())?;
        let u = self.eigenvectors.as_ref();
        Ok((0..self.m_computed())
            .map(|k| u.col(k).iter().zip(signal).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Synthesis `U ĝ`.
    pub fn gft_inverse(&self, coefficients: &[f64]) -> Result<Vec<f64>> {
        check_len(self.m_computed(), coefficients.len())?;
        let mut out = vec![0.0; self.n_nodes()];
        for (k, &c) in coefficients.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            for (o, u) in out.iter_mut().zip(self.eigenvectors.col(k).iter()) {
                *o += c * u;
            }
        }
        Ok(out)
    }

    /// Eigenvector of the smallest non-zero eigenvalue.
    pub fn fiedler_vector(&self) -> Result<Vec<f64>> {
        if self.m_computed() < 2 {
            return Err(Error::InvalidArgument(
                "the Fiedler vector needs at least 2 computed eigenpairs".into(),
            ));
        }
        let tol = self.zero_tolerance();
        let k = self
            .eigenvalues
            .iter()
            .position(|&l| l >= tol)
            .ok_or_else(|| {
                Error::InvalidArgument("no non-zero eigenvalue among the computed pairs".into())
            })?;
        Ok(self.eigenvector(k))
    }
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, got })
    }
}

/// Number `N_W` of lowest-frequency eigenvectors retained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BandLimit(usize);

impl BandLimit {
    pub fn new(n_w: usize, spectrum: &LaplacianSpectrum) -> Result<Self> {
        if n_w == 0 || n_w > spectrum.m_computed() {
            return Err(Error::Bandwidth {
                n_w,
                available: spectrum.m_computed(),
            });
        }
        Ok(BandLimit(n_w))
    }

    pub fn n_w(self) -> usize {
        self.0
    }
}
