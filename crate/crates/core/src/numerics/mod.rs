//! Self-contained dense linear algebra.

mod dft;
mod eigen;
mod lu;
mod matrix;
mod norm;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub use dft::{dft_matrix, fourier_mode, omega};
pub use eigen::eigen_decompose;
pub use lu::{determinant, solve_linear, LuFactors};
pub use matrix::{cdot, cnorm, dot, norm2, ComplexMatrix, DenseMatrix};
pub use norm::{leading_singular_values, numerical_rank, spectral_norm};

/// Thresholds shared by the eigensolver, the norm estimators and the zero classifier.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ToleranceConfig {
    /// Relative eigenpair residual threshold, against `||A||`.
    pub eig_tol: f64,
    /// QR sweeps allowed per eigenvalue before giving up.
    pub max_qr_iters: usize,
    /// An eigenvalue with `|mu| <= zero_threshold * ||A||_F` counts as zero.
    pub zero_threshold: f64,
    pub norm_iters: usize,
    pub norm_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eig_tol: 1e-12,
            max_qr_iters: 100,
            zero_threshold: 1e-9,
            norm_iters: 10_000,
            norm_tol: 1e-13,
        }
    }
}

impl ToleranceConfig {
    pub const TOL_ENV_VAR: &'static str = "MAGIC_SPECTRA_TOL";

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("eig_tol", self.eig_tol),
            ("zero_threshold", self.zero_threshold),
            ("norm_tol", self.norm_tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        if self.max_qr_iters == 0 || self.norm_iters == 0 {
            return Err(Error::InvalidConfig("iteration caps must be positive".into()));
        }
        Ok(())
    }

    /// Defaults, with `eig_tol` taken from `MAGIC_SPECTRA_TOL` when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Self::default();
        if let Ok(raw) = std::env::var(Self::TOL_ENV_VAR) {
            cfg.eig_tol = raw.trim().parse().map_err(|_| {
                Error::InvalidConfig(format!("{} is not a number: {raw:?}", Self::TOL_ENV_VAR))
            })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumSource {
    Numeric,
    ClosedForm,
}

/// Eigenvalues, sorted by `(re, im)` ascending, optionally with unit eigenvectors.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: Vec<Complex64>,
    pub vectors: Option<Vec<Vec<Complex64>>>,
    pub source: SpectrumSource,
    /// Norm of the originating matrix (Frobenius), used to classify zeros.
    pub scale: Option<f64>,
}

impl Spectrum {
    pub fn closed_form(values: Vec<Complex64>, vectors: Option<Vec<Vec<Complex64>>>) -> Self {
        let mut s = Self {
            values,
            vectors,
            source: SpectrumSource::ClosedForm,
            scale: None,
        };
        s.sort();
        s
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// Sort values (and vectors alongside) by real part, then imaginary part.
    pub fn sort(&mut self) {
        let mut idx: Vec<usize> = (0..self.values.len()).collect();
        idx.sort_by(|&a, &b| {
            let (x, y) = (self.values[a], self.values[b]);
            x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
        });
        self.values = idx.iter().map(|&i| self.values[i]).collect();
        if let Some(vecs) = &self.vectors {
            self.vectors = Some(idx.iter().map(|&i| vecs[i].clone()).collect());
        }
    }

    /// The magnitude below which an eigenvalue is treated as zero.
    pub fn zero_cutoff(&self, cfg: &ToleranceConfig) -> f64 {
        let scale = self
            .scale
            .unwrap_or_else(|| self.values.iter().fold(0.0, |m, z| m.max(z.norm())));
        cfg.zero_threshold * scale
    }

    /// Largest `||A x - lambda x||_2 / ||x||_2` over stored eigenpairs.
    pub fn max_residual(&self, a: &DenseMatrix) -> Option<f64> {
        let vecs = self.vectors.as_ref()?;
        let worst = self
            .values
            .iter()
            .zip(vecs)
            .map(|(lambda, x)| {
                let ax = a.mul_complex_vec(x);
                let r: Vec<Complex64> = ax.iter().zip(x).map(|(p, q)| p - lambda * q).collect();
                cnorm(&r) / cnorm(x)
            })
            .fold(0.0, f64::max);
        Some(worst)
    }
}

/// Multiset comparison: greedily pairs each value of `a` to its nearest
/// unused value of `b` and returns the largest relative distance.
/// `floor` guards the denominator for values at or near zero.
pub fn multiset_rel_distance(a: &[Complex64], b: &[Complex64], floor: f64) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    let mut order: Vec<usize> = (0..a.len()).collect();
    // pair largest-magnitude values first so small values do not steal partners
    order.sort_by(|&i, &j| a[j].norm().total_cmp(&a[i].norm()));
    for i in order {
        let (best, dist) = b
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, z)| (k, (a[i] - z).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))?;
        used[best] = true;
        worst = worst.max(dist / a[i].norm().max(floor));
    }
    Some(worst)
}
