//! Normalized Laplacian spectra of central graphs and of central vertex and
//! edge joins of regular graphs.
//!
//! Every closed-form spectrum has a direct counterpart (dense symmetric
//! eigendecomposition of the normalized Laplacian), and Kemeny's constant and
//! the degree Kirchhoff index are available through spectral sums, closed
//! forms, and effective resistances.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix it to `f64`, which every tolerance quoted in the docs assumes.

pub mod cospectral;
pub mod error;
pub mod format;
pub mod graph;
pub mod invariants;
pub mod numeric;
pub mod scalar;
pub mod spectra;
pub mod verify;

pub use cospectral::{build_cospectral_family, check_cospectral, CospectralOutcome, Witness};
pub use error::{Error, Result};
pub use format::{emit_edge_list, emit_graph6, parse_edge_list, parse_graph, parse_graph6};
pub use graph::{
    as_regular, central_edge_join, central_graph, central_vertex_join, complement, family, Family,
    Graph, RegularGraph, VertexLabeling, VertexRole,
};
pub use invariants::{
    degree_kirchhoff_from_spectrum, degree_kirchhoff_resistance_oracle, kemeny_cej_closed,
    kemeny_central_closed, kemeny_cvj_closed, kemeny_from_spectrum, Route, Transcription,
};
pub use numeric::{eigenvalues_sym, poly_roots, pseudoinverse, spectra_equal};
pub use scalar::Real;
pub use spectra::{
    cej_spectrum_closed, central_spectrum_closed, closed_spectrum, cvj_spectrum_closed,
    direct_spectrum, normalized_laplacian, regular_nl_spectrum, Composite, PieceValue,
};

pub type SymMatrix = numeric::SymMatrix<f64>;
pub type Spectrum = numeric::Spectrum<f64>;
pub type Polynomial = numeric::Polynomial<f64>;
pub type ClosedFormSpectrum = spectra::ClosedFormSpectrum<f64>;
pub type InvariantReport = invariants::InvariantReport<f64>;
pub type CospectralCertificate = cospectral::CospectralCertificate<f64>;
