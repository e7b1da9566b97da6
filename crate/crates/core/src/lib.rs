//! Magic squares as produced by MATLAB's `magic(n)`, their numerically computed
//! spectra, and the closed-form spectral approximations that explain them.
//!
//! The crate is split along the data flow:
//!
//! * [`numerics`]: dense real/complex matrices, the DFT matrix, a balanced
//!   Hessenberg + Francis double-shift QR eigensolver, LU solves, spectral
//!   norms and numerical rank.
//! * [`magic_gen`]: bit-exact Siamese, Strachey and criss-cross generators.
//! * [`circulant`]: circulant, g-row circulant and reverse-circulant algebra.
//! * [`decompose`]: the structural splittings of each parity class.
//! * [`spectra`]: approximate spectra, error reports, Bauer-Fike certificates
//!   and the odd-order error curve.
//! * [`cli`]: the `magic-spectra` command-line front end.

pub mod circulant;
pub mod cli;
pub mod decompose;
pub mod error;
pub mod magic_gen;
pub mod numerics;
pub mod spectra;

pub use error::{Error, Result};
pub use magic_gen::{magic, MagicSquare, Parity};
pub use numerics::{DenseMatrix, Spectrum, SpectrumSource, ToleranceConfig};
