use super::{dot, norm2, DenseMatrix, ToleranceConfig};
use crate::error::{Error, Result};

/// `(1, 1/2, 1/3, ...)`, normalized.
fn harmonic_start(n: usize) -> Vec<f64> {
    let v: Vec<f64> = (1..=n).map(|k| 1.0 / k as f64).collect();
    let s = norm2(&v);
    v.into_iter().map(|x| x / s).collect()
}

fn orthogonalize(x: &mut [f64], basis: &[Vec<f64>]) {
    // two passes of classical Gram-Schmidt
    for _ in 0..2 {
        for b in basis {
            let c = dot(x, b);
            x.iter_mut().zip(b).for_each(|(xi, bi)| *xi -= c * bi);
        }
    }
}

/// Power iteration on `A^T A` restricted to the orthogonal complement of
/// `basis`. Returns `(sigma, right singular vector)`.
fn power_iterate(
    a: &DenseMatrix,
    at: &DenseMatrix,
    basis: &[Vec<f64>],
    cfg: &ToleranceConfig,
) -> Result<(f64, Vec<f64>)> {
    let n = a.cols();
    let mut starts = std::iter::once(harmonic_start(n)).chain((0..n).map(|j| {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        e
    }));
    let mut x = loop {
        let Some(mut x) = starts.next() else {
            // complement is empty or annihilated by A
            return Ok((0.0, vec![0.0; n]));
        };
        orthogonalize(&mut x, basis);
        let nx = norm2(&x);
        if nx > 1e-8 {
            x.iter_mut().for_each(|v| *v /= nx);
            if norm2(&a.mul_vec(&x)) > 0.0 {
                break x;
            }
        }
    };

    let mut prev = 0.0;
    for _ in 0..cfg.norm_iters {
        let mut y = at.mul_vec(&a.mul_vec(&x));
        orthogonalize(&mut y, basis);
        let rayleigh = dot(&x, &y);
        let ny = norm2(&y);
        if ny == 0.0 {
            return Ok((0.0, x));
        }
        x = y.into_iter().map(|v| v / ny).collect();
        if (rayleigh - prev).abs() <= cfg.norm_tol * rayleigh.abs() {
            // one more Rayleigh quotient with the updated vector
            let ax = a.mul_vec(&x);
            return Ok((norm2(&ax).max(rayleigh.max(0.0).sqrt()), x));
        }
        prev = rayleigh;
    }
    Err(Error::Convergence {
        routine: "power iteration",
        iterations: cfg.norm_iters,
        partial: Vec::new(),
    })
}

/// `sigma_max(A)` by power iteration on `A^T A`.
pub fn spectral_norm(a: &DenseMatrix, cfg: &ToleranceConfig) -> Result<f64> {
    if a.is_empty() {
        return Err(Error::InvalidDimension("spectral norm of an empty matrix".into()));
    }
    let at = a.transpose();
    power_iterate(a, &at, &[], cfg).map(|(s, _)| s)
}

/// The `k` largest singular values by deflated power iteration: each new
/// right singular vector is sought orthogonally to the ones already found.
pub fn leading_singular_values(a: &DenseMatrix, k: usize, cfg: &ToleranceConfig) -> Result<Vec<f64>> {
    if a.is_empty() {
        return Err(Error::InvalidDimension("singular values of an empty matrix".into()));
    }
    let at = a.transpose();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut sigmas = Vec::with_capacity(k);
    for _ in 0..k.min(a.cols()) {
        let (s, v) = power_iterate(a, &at, &basis, cfg)?;
        sigmas.push(s);
        if s == 0.0 {
            break;
        }
        basis.push(v);
    }
    sigmas.resize(k.min(a.cols()), 0.0);
    Ok(sigmas)
}

/// Numerical rank via Householder QR with column pivoting: the number of
/// diagonal entries of `R` exceeding `zero_threshold * sigma_max(A)`.
/// Column pivoting makes `|R_ii|` non-increasing, and the first
/// singular-value-sized gap shows up on the diagonal.
pub fn numerical_rank(a: &DenseMatrix, cfg: &ToleranceConfig) -> Result<usize> {
    if a.is_empty() {
        return Err(Error::InvalidDimension("rank of an empty matrix".into()));
    }
    let sigma = spectral_norm(a, cfg)?;
    if sigma == 0.0 {
        return Ok(0);
    }
    let cutoff = cfg.zero_threshold * sigma;
    let (m, n) = (a.rows(), a.cols());
    let mut r = a.clone();
    let mut rank = 0;
    for k in 0..m.min(n) {
        let col_norm = |r: &DenseMatrix, j: usize| (k..m).map(|i| r[(i, j)].powi(2)).sum::<f64>();
        let p = (k..n)
            .max_by(|&x, &y| col_norm(&r, x).total_cmp(&col_norm(&r, y)))
            .expect("non-empty");
        if p != k {
            for i in 0..m {
                let t = r[(i, k)];
                r[(i, k)] = r[(i, p)];
                r[(i, p)] = t;
            }
        }
        let alpha_mag = col_norm(&r, k).sqrt();
        if alpha_mag <= cutoff {
            break;
        }
        rank += 1;
        let alpha = if r[(k, k)] > 0.0 { -alpha_mag } else { alpha_mag };
        let mut v: Vec<f64> = (k..m).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv == 0.0 {
            continue;
        }
        for j in k..n {
            let s: f64 = v.iter().enumerate().map(|(i, vi)| vi * r[(k + i, j)]).sum();
            let f = 2.0 * s / vv;
            for (i, vi) in v.iter().enumerate() {
                r[(k + i, j)] -= f * vi;
            }
        }
    }
    Ok(rank)
}
