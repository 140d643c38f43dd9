//! Slepian bases on graphs.
//!
//! Given a connected graph, a node subset and a spectral bandwidth `N_W`,
//! this crate builds band-limited signal families that trade off spectral
//! band-limitation against concentration on the subset:
//!
//! - [`slepian::slepian_concentration`] maximizes the energy fraction `μ`
//!   inside the subset;
//! - [`slepian::slepian_embedding`] extremizes the modified embedded
//!   distance `ξ`, a frequency measured locally on the subset.
//!
//! Supporting pieces: graph and mesh loading ([`graph`], [`mesh`]), the
//! Laplacian eigenbasis and graph Fourier transform ([`spectral`]), the 1-D
//! DFT counterpart ([`classic1d`]) and spectral filtering ([`filtering`]).
//!
//! ```
//! use graph_slepian::{generators, eig_laplacian, BandLimit, Design, LaplacianKind, NodeSubset};
//!
//! let graph = generators::grid(6, 6);
//! let spectrum = eig_laplacian(&graph, LaplacianKind::Normalized, 12).unwrap();
//! let band = BandLimit::new(12, &spectrum).unwrap();
//! let subset = NodeSubset::new([0, 1, 2, 6, 7, 8, 12, 13, 14], 36).unwrap();
//! let basis = graph_slepian::slepian_basis(&spectrum, band, &subset, Design::Concentration).unwrap();
//! assert!(basis.values()[0] <= 1.0 + 1e-12);
//! ```

pub mod classic1d;
mod eigen;
pub mod error;
pub mod filtering;
pub mod generators;
pub mod graph;
pub mod io;
pub mod mesh;
pub mod slepian;
pub mod spectral;

pub use faer::{c64, Mat, MatRef};

pub use classic1d::{band_indices, dft_matrix, slepian_1d, DftDesign, Slepian1dBasis};
pub use error::{Error, Result};
pub use filtering::{filter_laplacian, filter_slepian, synth_eigvec_signal, SpectralWindow};
pub use graph::{load_edge_list, parse_edge_list, DegreeVector, Edge, Graph, LaplacianKind};
pub use mesh::{load_mesh_off, parse_off, TriMesh};
pub use slepian::{
    concentration_matrix, cross_metrics, embedding_concentration_matrix, shannon_number,
    slepian_basis, slepian_concentration, slepian_embedding, ConcentrationMatrix, CrossMetrics,
    Design, NodeSubset, SlepianBasis,
};
pub use spectral::{eig_laplacian, BandLimit, LaplacianSpectrum};
