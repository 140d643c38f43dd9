//! Spectral windows applied through the Laplacian eigenbasis or a Slepian
//! basis, and the sine-of-eigenvector test signal.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::slepian::{Design, SlepianBasis};
use crate::spectral::LaplacianSpectrum;

/// Gain as a function of a spectral abscissa (`λ`, `ξ` or `μ`).
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralWindow {
    /// `exp(−t·x)`
    HeatKernel(f64),
    /// `1` for `x ≤ cutoff`, else `0`
    IdealLowPass(f64),
    /// Piecewise-linear through `(x, gain)` knots, clamped at both ends.
    Table(Vec<(f64, f64)>),
}

impl SpectralWindow {
    pub fn heat(t: f64) -> Result<Self> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "heat kernel time must be positive, got {t}"
            )));
        }
        Ok(SpectralWindow::HeatKernel(t))
    }

    pub fn lowpass(cutoff: f64) -> Result<Self> {
        if cutoff.is_nan() {
            return Err(Error::InvalidArgument("low-pass cutoff is NaN".into()));
        }
        Ok(SpectralWindow::IdealLowPass(cutoff))
    }

    /// Knots must have strictly increasing abscissae.
    pub fn table(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::InvalidArgument("window table is empty".into()));
        }
        if knots.iter().any(|(x, g)| !x.is_finite() || !g.is_finite()) {
            return Err(Error::InvalidArgument(
                "window table has non-finite values".into(),
            ));
        }
        if knots.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidArgument(
                "window table abscissae must be strictly increasing".into(),
            ));
        }
        Ok(SpectralWindow::Table(knots))
    }

    /// Parses `heat:<t>`, `lowpass:<cutoff>` or `table:<path>`; the table
    /// file holds `x,gain` rows.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let (kind, arg) = spec.split_once(':').ok_or_else(|| {
            Error::InvalidArgument(format!("window spec {spec:?} is not `kind:arg`"))
        })?;
        let number = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("invalid number {s:?} in window spec")))
        };
        match kind {
            "heat" => Self::heat(number(arg)?),
            "lowpass" => Self::lowpass(number(arg)?),
            "table" => Self::load_table(arg),
            other => Err(Error::InvalidArgument(format!(
                "unknown window kind {other:?} (expected heat, lowpass or table)"
            ))),
        }
    }

    pub fn parse_table(text: &str) -> Result<Self> {
        let mut knots = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split(',').map(str::trim).collect();
            let parsed: Option<(f64, f64)> = match fields.as_slice() {
                [x, g] => x.parse().ok().zip(g.parse().ok()),
                _ => None,
            };
            match parsed {
                Some(k) => knots.push(k),
                // Tolerate a single header row.
                None if knots.is_empty() && fields.len() == 2 => continue,
                None => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        message: "expected `x,gain`".into(),
                    })
                }
            }
        }
        Self::table(knots)
    }

    pub fn load_table(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_table(&text)
    }

    pub fn gain(&self, x: f64) -> f64 {
        match self {
            SpectralWindow::HeatKernel(t) => (-t * x).exp(),
            SpectralWindow::IdealLowPass(cutoff) => {
                if x <= *cutoff {
                    1.0
                } else {
                    0.0
                }
            }
            SpectralWindow::Table(knots) => {
                let first = knots[0];
                let last = knots[knots.len() - 1];
                if x <= first.0 {
                    return first.1;
                }
                if x >= last.0 {
                    return last.1;
                }
                let hi = knots.partition_point(|k| k.0 <= x);
                let (x0, g0) = knots[hi - 1];
                let (x1, g1) = knots[hi];
                g0 + (g1 - g0) * (x - x0) / (x1 - x0)
            }
        }
    }
}

impl fmt::Display for SpectralWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralWindow::HeatKernel(t) => write!(f, "heat:{t}"),
            SpectralWindow::IdealLowPass(c) => write!(f, "lowpass:{c}"),
            SpectralWindow::Table(k) => write!(f, "table[{} knots]", k.len()),
        }
    }
}

/// `U h(Λ) Uᵀ f` over the computed eigenpairs.
///
/// With fewer eigenpairs than nodes the out-of-band part `f − UUᵀf` is
/// dropped, unless `passthrough` adds it back unchanged.
pub fn filter_laplacian(
    spectrum: &LaplacianSpectrum,
    window: &SpectralWindow,
    signal: &[f64],
    passthrough: bool,
) -> Result<Vec<f64>> {
    let coeffs = spectrum.gft_forward(signal)?;
    let shaped: Vec<f64> = coeffs
        .iter()
        .zip(spectrum.eigenvalues())
        .map(|(c, &l)| c * window.gain(l))
        .collect();
    let mut out = spectrum.gft_inverse(&shaped)?;
    if passthrough {
        let in_band = spectrum.gft_inverse(&coeffs)?;
        for ((o, f), p) in out.iter_mut().zip(signal).zip(&in_band) {
            *o += f - p;
        }
    }
    Ok(out)
}

/// `Σ_k h(v_k) s_k (s_kᵀ f)` where `v_k` are the basis eigenvalues.
///
/// The window is meant for `ξ` (embedding design). A concentration basis
/// uses `μ` as abscissa and is only accepted when `allow_mu_abscissa` is set.
pub fn filter_slepian(
    basis: &SlepianBasis,
    window: &SpectralWindow,
    signal: &[f64],
    allow_mu_abscissa: bool,
) -> Result<Vec<f64>> {
    if basis.design() == Design::Concentration && !allow_mu_abscissa {
        return Err(Error::DesignMismatch(
            "filtering a concentration basis uses μ as abscissa; enable it explicitly",
        ));
    }
    let v = basis.vectors();
    if signal.len() != v.nrows() {
        return Err(Error::LengthMismatch {
            expected: v.nrows(),
            got: signal.len(),
        });
    }
    let mut out = vec![0.0; signal.len()];
    for (k, &value) in basis.values().iter().enumerate() {
        let col = v.col(k);
        let proj: f64 = col.iter().zip(signal).map(|(a, b)| a * b).sum();
        let c = window.gain(value) * proj;
        for (o, s) in out.iter_mut().zip(col.iter()) {
            *o += c * s;
        }
    }
    Ok(out)
}

/// `g_i = sin(2π·cycles·(v_i − min v)/(max v − min v))` for eigenvector
/// number `index` (1-based, so 2 is the Fiedler vector).
pub fn synth_eigvec_signal(
    spectrum: &LaplacianSpectrum,
    index: usize,
    cycles: u32,
) -> Result<Vec<f64>> {
    if index == 0 || index > spectrum.m_computed() {
        return Err(Error::InvalidArgument(format!(
            "eigenvector index {index} out of range 1..={}",
            spectrum.m_computed()
        )));
    }
    let v = spectrum.eigenvector(index - 1);
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if hi - lo <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::ConstantEigenvector(index));
    }
    let phase = 2.0 * PI * cycles as f64;
    Ok(v.iter()
        .map(|&x| (phase * (x - lo) / (hi - lo)).sin())
        .collect())
}
