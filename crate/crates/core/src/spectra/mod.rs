//! Spectra of symmetric matrices, exact characteristic polynomials and quotient matrices.

mod charpoly;
mod eigen;
mod matrix;
mod poly;
mod quotient;

pub use charpoly::{char_poly_exact, CharPoly};
pub(crate) use eigen::EigenScratch;
pub use eigen::{eigenvalues_symmetric, index, spectral_radius, spectrum, Spectrum, DEFAULT_TOL, MAX_SWEEPS};
pub use matrix::Matrix;
pub use poly::Poly;
pub use quotient::{quotient_matrix, verify_quotient_spectrum, QuotientMatrix, QuotientSpectrumReport};
