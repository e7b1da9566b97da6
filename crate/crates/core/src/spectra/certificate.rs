use num_complex::Complex64;
use serde::Serialize;

use super::approx::{approx_spectrum, ApproxEntry};
use super::numeric_spectrum;
use super::report::match_and_report;
use crate::circulant::reverse_circulant_eigenpairs;
use crate::decompose::{odd_decompose, verify_perturbation_identity};
use crate::error::{Error, Result};
use crate::numerics::{cdot, ToleranceConfig};

/// Bauer-Fike bound for `M_n = J S + J T` around the reverse circulant `J S`.
#[derive(Clone, Debug, Serialize)]
pub struct BauerFikeCertificate {
    pub n: usize,
    /// Condition number of the eigenvector matrix of `J S`.
    pub kappa: f64,
    /// `||S^{-1} T||_2`.
    pub perturbation_norm: f64,
    pub certified_bound: f64,
    pub empirical_e_n: f64,
    pub pass: bool,
}

/// The eigenvectors of `J S` are checked to be orthonormal, so `kappa = 1`.
/// The empirical error matches the computed spectrum of `M_n` against the
/// eigenvalues of `J S` built from its circulant eigenpairs.
pub fn bauer_fike_certificate(n: usize, cfg: &ToleranceConfig) -> Result<BauerFikeCertificate> {
    let d = odd_decompose(n)?;
    let perturbation_norm = verify_perturbation_identity(&d, cfg)?;

    let pairs = reverse_circulant_eigenpairs(&d.s)?;
    let mut worst: f64 = 0.0;
    for (a, pa) in pairs.iter().enumerate() {
        for (b, pb) in pairs.iter().enumerate().skip(a) {
            let expect = if a == b { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            worst = worst.max((cdot(&pa.vector, &pb.vector) - expect).norm());
        }
    }
    if worst > 1e-10 {
        return Err(Error::Consistency(format!(
            "J S eigenvectors at n = {n} deviate from orthonormal by {worst:e}"
        )));
    }
    let kappa = 1.0;

    let mut approx = approx_spectrum(n)?;
    approx.special[0] = pairs[0].value;
    approx.entries = pairs[1..]
        .iter()
        .map(|p| ApproxEntry {
            j: if p.value >= 0.0 { p.j as i64 } else { -(p.j as i64) },
            value: p.value,
        })
        .collect();
    approx.entries.sort_by(|a, b| a.value.total_cmp(&b.value));
    let report = match_and_report(&numeric_spectrum(n, cfg, true)?, &approx, cfg)?;

    let certified_bound = kappa * perturbation_norm;
    Ok(BauerFikeCertificate {
        n,
        kappa,
        perturbation_norm,
        certified_bound,
        empirical_e_n: report.e_n,
        pass: report.e_n <= certified_bound,
    })
}
