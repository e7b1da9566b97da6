//! Circulant, g-row circulant and reverse-circulant matrices.
//!
//! All three are stored by their first row (plus the stride for g-row
//! circulants) and realized densely on demand. Circulant spectra come from the
//! DFT: `lambda_j = sum_k a_k omega^{kj}` with eigenvector the Fourier mode `v_j`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{cnorm, fourier_mode, omega, DenseMatrix, Spectrum};

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Matrix whose row `i` is the first row cyclically shifted right by `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct CirculantMatrix {
    first_row: Vec<f64>,
}

impl CirculantMatrix {
    pub fn new(first_row: Vec<f64>) -> Result<Self> {
        if first_row.is_empty() {
            return Err(Error::InvalidDimension("circulant of order 0".into()));
        }
        Ok(Self { first_row })
    }

    pub fn order(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[f64] {
        &self.first_row
    }

    /// `C(i, j) = a[(j - i) mod n]`, 0-based.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let n = self.order();
        self.first_row[(j + n - i % n) % n]
    }

    pub fn realize(&self) -> DenseMatrix {
        let n = self.order();
        DenseMatrix::from_fn(n, n, |i, j| self.entry(i, j))
    }

    /// `lambda_j = a . v_j`, indexed by mode `j = 0..n-1`.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        let n = self.order();
        (0..n)
            .map(|j| {
                self.first_row
                    .iter()
                    .enumerate()
                    .map(|(k, a)| omega(n, (k * j) as i64) * *a)
                    .sum()
            })
            .collect()
    }
}

/// Circulant spectrum with unit Fourier-mode eigenvectors, sorted.
pub fn circulant_spectrum(c: &CirculantMatrix) -> Spectrum {
    let n = c.order();
    let norm = (n as f64).sqrt();
    let vectors = (0..n)
        .map(|j| fourier_mode(n, j).into_iter().map(|z| z / norm).collect())
        .collect();
    Spectrum::closed_form(c.eigenvalues(), Some(vectors))
}

/// Each row is the previous one shifted right by `g` positions, with
/// `gcd(g, n) = 1`. `g = 1` is an ordinary circulant.
#[derive(Clone, Debug, PartialEq)]
pub struct GRowCirculant {
    g: usize,
    first_row: Vec<f64>,
}

impl GRowCirculant {
    pub fn new(g: usize, first_row: Vec<f64>) -> Result<Self> {
        let n = first_row.len();
        if n == 0 {
            return Err(Error::InvalidDimension("g-row circulant of order 0".into()));
        }
        if gcd(g % n, n) != 1 && n > 1 {
            return Err(Error::InvalidStride { n, g });
        }
        Ok(Self { g: g % n, first_row })
    }

    pub fn order(&self) -> usize {
        self.first_row.len()
    }

    pub fn stride(&self) -> usize {
        self.g
    }

    pub fn first_row(&self) -> &[f64] {
        &self.first_row
    }

    /// `R(i, j) = a[(j - g i) mod n]`, 0-based.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let n = self.order();
        self.first_row[(j + n - (self.g * i) % n) % n]
    }

    /// Dense `P_g C`: row `i` of the circulant `C` sharing this first row,
    /// taken at position `g i mod n`.
    pub fn realize(&self) -> DenseMatrix {
        g_circulant_realize(self)
    }

    pub fn as_circulant(&self) -> Option<CirculantMatrix> {
        (self.g == 1 || self.order() == 1).then(|| CirculantMatrix {
            first_row: self.first_row.clone(),
        })
    }
}

/// The g-row circulant with first row `e_1^T`: a row permutation.
pub fn stride_permutation(n: usize, g: usize) -> Result<DenseMatrix> {
    let mut e1 = vec![0.0; n];
    if n > 0 {
        e1[0] = 1.0;
    }
    Ok(GRowCirculant::new(g, e1)?.realize())
}

pub fn g_circulant_realize(r: &GRowCirculant) -> DenseMatrix {
    let n = r.order();
    let base = CirculantMatrix {
        first_row: r.first_row.clone(),
    };
    DenseMatrix::from_fn(n, n, |i, j| base.entry((r.g * i) % n, j))
}

/// First row `a = [m, m+1, ..., 2m, 0, 1, ..., m-1]` of the circulant `X_n`.
pub fn xn_first_row(n: usize) -> Result<Vec<f64>> {
    if n % 2 == 0 {
        return Err(Error::Parity { n, expected: "odd" });
    }
    let m = (n - 1) / 2;
    Ok((0..n).map(|k| ((m + k) % n) as f64).collect())
}

/// Closed-form `X_n` eigenvalues indexed by mode:
/// `lambda_0 = n(n-1)/2`, `lambda_j = (-1)^j (i n / 2) csc(pi j / n)`.
pub fn xn_closed_form_eigenvalues(n: usize) -> Result<Vec<Complex64>> {
    if n % 2 == 0 {
        return Err(Error::Parity { n, expected: "odd" });
    }
    if n < 3 {
        return Err(Error::UnsupportedOrder(n));
    }
    let nf = n as f64;
    Ok((0..n)
        .map(|j| {
            if j == 0 {
                Complex64::new(nf * (nf - 1.0) / 2.0, 0.0)
            } else {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                Complex64::new(0.0, sign * nf / (2.0 * (PI * j as f64 / nf).sin()))
            }
        })
        .collect())
}

pub fn xn_closed_form_spectrum(n: usize) -> Result<Spectrum> {
    Ok(Spectrum::closed_form(xn_closed_form_eigenvalues(n)?, None))
}

/// An eigenpair of `J C` for a circulant `C`.
#[derive(Clone, Debug)]
pub struct ReverseCirculantEigenpair {
    /// Circulant mode the pair was built from.
    pub j: usize,
    pub value: f64,
    /// Unit-norm eigenvector.
    pub vector: Vec<Complex64>,
}

/// Eigenpairs of `J C`.
///
/// For `j = 1..` paired with `n - j`, the phase `p = omega^{-j} lambda_j / |lambda_j|`
/// gives `J C (v_j + p v_{n-j}) = |lambda_j| (v_j + p v_{n-j})` and
/// `J C (v_j - p v_{n-j}) = -|lambda_j| (v_j - p v_{n-j})`. Mode 0 keeps
/// `(lambda_0, v_0)`; for even `n` the self-paired mode `n/2` gives
/// `(-lambda_{n/2}, v_{n/2})`. All returned vectors are orthonormal.
pub fn reverse_circulant_eigenpairs(c: &CirculantMatrix) -> Result<Vec<ReverseCirculantEigenpair>> {
    let n = c.order();
    let lambdas = c.eigenvalues();
    let biggest = lambdas.iter().fold(0.0, |m: f64, z| m.max(z.norm()));
    let unit = |v: Vec<Complex64>| {
        let s = cnorm(&v);
        v.into_iter().map(|z| z / s).collect::<Vec<_>>()
    };

    let mut pairs = Vec::with_capacity(n);
    pairs.push(ReverseCirculantEigenpair {
        j: 0,
        value: lambdas[0].re,
        vector: unit(fourier_mode(n, 0)),
    });
    for j in 1..=(n - 1) / 2 {
        let lambda = lambdas[j];
        let modulus = lambda.norm();
        if modulus <= 1e-12 * biggest || modulus == 0.0 {
            return Err(Error::DegenerateSpectrum { j });
        }
        let phase = omega(n, -(j as i64)) * lambda / modulus;
        let vj = fourier_mode(n, j);
        let vmirror = fourier_mode(n, n - j);
        for sign in [1.0, -1.0] {
            let v = vj.iter().zip(&vmirror).map(|(a, b)| a + phase * b * sign).collect();
            pairs.push(ReverseCirculantEigenpair {
                j,
                value: sign * modulus,
                vector: unit(v),
            });
        }
    }
    if n % 2 == 0 && n > 1 {
        let j = n / 2;
        pairs.push(ReverseCirculantEigenpair {
            j,
            value: -lambdas[j].re,
            vector: unit(fourier_mode(n, j)),
        });
    }
    Ok(pairs)
}

/// Values and vectors of [`reverse_circulant_eigenpairs`] as a sorted spectrum.
pub fn reverse_circulant_spectrum(c: &CirculantMatrix) -> Result<Spectrum> {
    let pairs = reverse_circulant_eigenpairs(c)?;
    let values = pairs.iter().map(|p| Complex64::new(p.value, 0.0)).collect();
    let vectors = pairs.into_iter().map(|p| p.vector).collect();
    Ok(Spectrum::closed_form(values, Some(vectors)))
}
