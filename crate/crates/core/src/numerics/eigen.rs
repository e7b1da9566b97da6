//! Real nonsymmetric eigensolver.
//!
//! Pipeline: diagonal balancing, Householder reduction to upper Hessenberg
//! form, Francis implicit double-shift QR with deflation on the Hessenberg
//! matrix. Eigenvectors come from inverse iteration on the Hessenberg matrix
//! and are mapped back through the Householder and balancing transforms.

use num_complex::Complex64;

use super::{cnorm, DenseMatrix, Spectrum, SpectrumSource, ToleranceConfig};
use crate::error::{Error, Result};

const RADIX: f64 = 2.0;
const INVERSE_ITERATION_STEPS: usize = 8;

pub fn eigen_decompose(a: &DenseMatrix, cfg: &ToleranceConfig, want_vectors: bool) -> Result<Spectrum> {
    cfg.validate()?;
    if !a.is_square() || a.is_empty() {
        return Err(Error::InvalidDimension(format!(
            "eigen_decompose needs a non-empty square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if a.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidDimension("matrix has non-finite entries".into()));
    }
    let n = a.rows();
    let frob = a.frobenius_norm();

    let mut h = a.clone();
    let scale = balance(&mut h);
    let q = reduce_to_hessenberg(&mut h);
    let hess = h.clone();
    let values = francis_qr(h, cfg.max_qr_iters)?;

    let vectors = if want_vectors {
        let mut vecs = Vec::with_capacity(n);
        for (idx, &lambda) in values.iter().enumerate() {
            let y = inverse_iteration(&hess, lambda, idx);
            let mut x: Vec<Complex64> = q.mul_complex_vec(&y);
            for (xi, d) in x.iter_mut().zip(&scale) {
                *xi *= *d;
            }
            let nx = cnorm(&x);
            x.iter_mut().for_each(|v| *v /= nx);
            vecs.push(x);
        }
        Some(vecs)
    } else {
        None
    };

    let mut spectrum = Spectrum {
        values,
        vectors,
        source: SpectrumSource::Numeric,
        scale: Some(frob),
    };
    if let Some(worst) = spectrum.max_residual(a) {
        if worst > cfg.eig_tol * frob.max(f64::MIN_POSITIVE) {
            return Err(Error::Convergence {
                routine: "inverse iteration",
                iterations: INVERSE_ITERATION_STEPS,
                partial: spectrum.values,
            });
        }
    }
    spectrum.sort();
    Ok(spectrum)
}

/// Scale rows and columns by powers of two so that row and column norms are
/// comparable. Returns `d` with `A_balanced = D^{-1} A D`.
fn balance(a: &mut DenseMatrix) -> Vec<f64> {
    let n = a.rows();
    let sqrdx = RADIX * RADIX;
    let mut scale = vec![1.0; n];
    loop {
        let mut done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in (0..n).filter(|&j| j != i) {
                c += a[(j, i)].abs();
                r += a[(i, j)].abs();
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                scale[i] *= f;
                for j in 0..n {
                    a[(i, j)] /= f;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
        if done {
            return scale;
        }
    }
}

/// In-place Householder reduction `A <- Q^T A Q`; returns the orthogonal `Q`.
fn reduce_to_hessenberg(a: &mut DenseMatrix) -> DenseMatrix {
    let n = a.rows();
    let mut q = DenseMatrix::identity(n);
    if n < 3 {
        return q;
    }
    for k in 0..n - 2 {
        let mut v: Vec<f64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let mut alpha = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        if v[0] > 0.0 {
            alpha = -alpha;
        }
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv == 0.0 {
            continue;
        }
        for j in k..n {
            let s: f64 = v.iter().enumerate().map(|(i, vi)| vi * a[(k + 1 + i, j)]).sum();
            let f = 2.0 * s / vv;
            for (i, vi) in v.iter().enumerate() {
                a[(k + 1 + i, j)] -= f * vi;
            }
        }
        for m in [&mut *a, &mut q] {
            for i in 0..n {
                let s: f64 = v.iter().enumerate().map(|(j, vj)| m[(i, k + 1 + j)] * vj).sum();
                let f = 2.0 * s / vv;
                for (j, vj) in v.iter().enumerate() {
                    m[(i, k + 1 + j)] -= f * vj;
                }
            }
        }
        a[(k + 1, k)] = alpha;
        for i in k + 2..n {
            a[(i, k)] = 0.0;
        }
    }
    q
}

fn sign(magnitude: f64, of: f64) -> f64 {
    if of >= 0.0 {
        magnitude.abs()
    } else {
        -magnitude.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (destroyed).
/// `max_iters` bounds the sweeps spent on any one eigenvalue (or 2x2 block).
fn francis_qr(mut a: DenseMatrix, max_iters: usize) -> Result<Vec<Complex64>> {
    let n = a.rows();
    let mut wr = vec![0.0; n];
    let mut wi = vec![0.0; n];
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[(i, j)].abs();
        }
    }
    let mut nn = n as isize - 1;
    let mut t = 0.0;
    while nn >= 0 {
        let nu = nn as usize;
        let mut its = 0;
        loop {
            // locate a negligible subdiagonal element
            let mut l = nu;
            while l >= 1 {
                let mut s = a[(l - 1, l - 1)].abs() + a[(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[(l, l - 1)].abs() + s == s {
                    a[(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[(nu, nu)];
            if l == nu {
                wr[nu] = x + t;
                wi[nu] = 0.0;
                nn -= 1;
                break;
            }
            let mut y = a[(nu - 1, nu - 1)];
            let mut w = a[(nu, nu - 1)] * a[(nu - 1, nu)];
            if l == nu - 1 {
                // trailing 2x2 block: quadratic formula
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    let z = p + sign(z, p);
                    wr[nu - 1] = x + z;
                    wr[nu] = if z != 0.0 { x - w / z } else { x + z };
                    wi[nu - 1] = 0.0;
                    wi[nu] = 0.0;
                } else {
                    wr[nu - 1] = x + p;
                    wr[nu] = x + p;
                    wi[nu - 1] = -z;
                    wi[nu] = z;
                }
                nn -= 2;
                break;
            }
            if its == max_iters {
                let partial = (nu + 1..n).map(|i| Complex64::new(wr[i], wi[i])).collect();
                return Err(Error::Convergence {
                    routine: "Francis QR",
                    iterations: its,
                    partial,
                });
            }
            if its > 0 && its % 10 == 0 {
                // exceptional shift
                t += x;
                for i in 0..=nu {
                    a[(i, i)] -= x;
                }
                let s = a[(nu, nu - 1)].abs() + a[(nu - 1, nu - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;

            // look for two consecutive small subdiagonal elements
            let mut m = nu - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = a[(m, m)];
                r = x - z;
                let s = y - z;
                p = (r * s - w) / a[(m + 1, m)] + a[(m, m + 1)];
                q = a[(m + 1, m + 1)] - z - r - s;
                r = a[(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[(m, m - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[(m - 1, m - 1)].abs() + z.abs() + a[(m + 1, m + 1)].abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nu {
                a[(i, i - 2)] = 0.0;
                if i != m + 2 {
                    a[(i, i - 3)] = 0.0;
                }
            }

            // double-shift QR sweep on rows l..=nu, columns m..=nu
            for k in m..nu {
                if k != m {
                    p = a[(k, k - 1)];
                    q = a[(k + 1, k - 1)];
                    r = if k + 1 != nu { a[(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        a[(k, k - 1)] = -a[(k, k - 1)];
                    }
                } else {
                    a[(k, k - 1)] = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                for j in k..=nu {
                    let mut pj = a[(k, j)] + q * a[(k + 1, j)];
                    if k + 1 != nu {
                        pj += r * a[(k + 2, j)];
                        a[(k + 2, j)] -= pj * z;
                    }
                    a[(k + 1, j)] -= pj * y;
                    a[(k, j)] -= pj * x;
                }
                let mmin = nu.min(k + 3);
                for i in l..=mmin {
                    let mut pi = x * a[(i, k)] + y * a[(i, k + 1)];
                    if k + 1 != nu {
                        pi += z * a[(i, k + 2)];
                        a[(i, k + 2)] -= pi * r;
                    }
                    a[(i, k + 1)] -= pi * q;
                    a[(i, k)] -= pi;
                }
            }
        }
    }
    Ok(wr.into_iter().zip(wi).map(|(re, im)| Complex64::new(re, im)).collect())
}

/// Deterministic pseudo-random start vector; varies with `seed` so repeated
/// eigenvalues get different starting directions.
fn start_vector(n: usize, seed: usize) -> Vec<Complex64> {
    (0..n)
        .map(|i| {
            let mut z = (seed as u64)
                .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add((i as u64 + 1).wrapping_mul(0xBF58_476D_1CE4_E5B9));
            z = (z ^ (z >> 30)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^= z >> 31;
            let u = (z >> 11) as f64 / (1u64 << 53) as f64;
            Complex64::new(0.5 + u, 0.0)
        })
        .collect()
}

/// Inverse iteration with `H - lambda I` factored once (Hessenberg LU with
/// adjacent-row pivoting). Returns a unit vector.
fn inverse_iteration(h: &DenseMatrix, lambda: Complex64, seed: usize) -> Vec<Complex64> {
    let n = h.rows();
    let hnorm = h.frobenius_norm().max(f64::MIN_POSITIVE);
    let tiny = f64::EPSILON * hnorm;

    // u holds the upper-triangular factor; mults/swapped the elimination steps
    let mut u: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = if i == j { lambda } else { Complex64::new(0.0, 0.0) };
                    Complex64::new(h[(i, j)], 0.0) - d
                })
                .collect()
        })
        .collect();
    let mut mults = vec![Complex64::new(0.0, 0.0); n];
    let mut swapped = vec![false; n];
    for k in 0..n.saturating_sub(1) {
        if u[k + 1][k].norm() > u[k][k].norm() {
            u.swap(k, k + 1);
            swapped[k] = true;
        }
        if u[k][k].norm() < tiny {
            u[k][k] = Complex64::new(tiny, 0.0);
        }
        let l = u[k + 1][k] / u[k][k];
        mults[k] = l;
        if l.norm() != 0.0 {
            let (top, bottom) = u.split_at_mut(k + 1);
            for j in k..n {
                bottom[0][j] -= l * top[k][j];
            }
        }
    }
    if u[n - 1][n - 1].norm() < tiny {
        u[n - 1][n - 1] = Complex64::new(tiny, 0.0);
    }

    let solve = |b: &mut [Complex64]| {
        for k in 0..n.saturating_sub(1) {
            if swapped[k] {
                b.swap(k, k + 1);
            }
            let t = b[k];
            b[k + 1] -= mults[k] * t;
        }
        for i in (0..n).rev() {
            let s: Complex64 = (i + 1..n).map(|j| u[i][j] * b[j]).sum();
            b[i] = (b[i] - s) / u[i][i];
        }
    };

    let mut x = start_vector(n, seed);
    for _ in 0..INVERSE_ITERATION_STEPS {
        solve(&mut x);
        let nx = cnorm(&x);
        if !nx.is_finite() || nx == 0.0 {
            x = start_vector(n, seed + 1);
            continue;
        }
        x.iter_mut().for_each(|v| *v /= nx);
        let hx = h.mul_complex_vec(&x);
        let res: f64 = hx
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - lambda * b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if res <= 16.0 * f64::EPSILON * hnorm {
            break;
        }
    }
    x
}
