//! Closed-form approximate spectra, eigenvalue matching and error reports,
//! Bauer-Fike certificates, exact eigenpairs of the even classes, and the
//! odd-order error curve.

mod approx;
mod certificate;
mod curve;
mod exact;
pub mod format;
mod matching;
mod report;

pub use approx::{approx_spectrum, ApproxEntry, ApproxSpectrum};
pub use certificate::{bauer_fike_certificate, BauerFikeCertificate};
pub use curve::{error_curve, is_prime, ErrorCurvePoint};
pub use exact::{doubly_even_exact_pairs, singly_even_exact_pairs, DoublyEvenPairs, ExactPair};
pub use matching::min_cost_assignment;
pub use report::{match_and_report, EigenErrorRow, ErrorReport, RowKind};

use crate::error::Result;
use crate::magic_gen::magic;
use crate::numerics::{eigen_decompose, Spectrum, ToleranceConfig};

/// Dense eigensolver spectrum of `magic(n)`.
pub fn numeric_spectrum(n: usize, cfg: &ToleranceConfig, want_vectors: bool) -> Result<Spectrum> {
    eigen_decompose(&magic(n)?.to_matrix(), cfg, want_vectors)
}

/// `match_and_report` of the numeric spectrum of `magic(n)` against
/// `approx_spectrum(n)`. Eigenvectors are computed so that every eigenpair is
/// held to the `cfg.eig_tol` residual threshold before it is reported.
pub fn report_for(n: usize, cfg: &ToleranceConfig) -> Result<ErrorReport> {
    let approx = approx_spectrum(n)?;
    match_and_report(&numeric_spectrum(n, cfg, true)?, &approx, cfg)
}
