use std::f64::consts::PI;

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// `omega^power` with `omega = exp(-2 pi i / n)`, reducing the exponent mod `n` first.
pub fn omega(n: usize, power: i64) -> Complex64 {
    let k = power.rem_euclid(n as i64) as f64;
    Complex64::from_polar(1.0, -2.0 * PI * k / n as f64)
}

/// The `j`-th Fourier mode `(1, w^j, w^{2j}, ..., w^{(n-1)j})`.
pub fn fourier_mode(n: usize, j: usize) -> Vec<Complex64> {
    (0..n).map(|p| omega(n, (p * j) as i64)).collect()
}

/// `F_n(p, q) = omega^{(p-1)(q-1)}`; its columns are the Fourier modes.
pub fn dft_matrix(n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidDimension("DFT of order 0".into()));
    }
    Ok(ComplexMatrix::from_fn(n, n, |p, q| omega(n, (p * q) as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::cdot;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-15
    }

    #[test]
    fn small_orders() {
        assert!(dft_matrix(0).is_err());
        let f1 = dft_matrix(1).unwrap();
        assert!(close(f1[(0, 0)], Complex64::new(1.0, 0.0)));
        let f2 = dft_matrix(2).unwrap();
        assert!(close(f2[(1, 1)], Complex64::new(-1.0, 0.0)));
        assert!(close(f2[(0, 1)], Complex64::new(1.0, 0.0)));
        let f4 = dft_matrix(4).unwrap();
        assert!(close(f4[(1, 1)], Complex64::new(0.0, -1.0)));
    }

    #[test]
    fn unitary_up_to_n() {
        for n in 1..=32 {
            let f = dft_matrix(n).unwrap();
            let g = f.conj_transpose().matmul(&f).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let want = if i == j { n as f64 } else { 0.0 };
                    assert!((g[(i, j)] - want).norm() <= 1e-12 * n as f64, "n={n} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn modes_are_orthogonal() {
        let n = 9;
        for i in 0..n {
            for j in 0..n {
                let ip = cdot(&fourier_mode(n, i), &fourier_mode(n, j));
                let want = if i == j { n as f64 } else { 0.0 };
                assert!((ip - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn mirror_mode_is_conjugate() {
        let n = 7;
        for j in 1..n {
            let a = fourier_mode(n, n - j);
            let b = fourier_mode(n, j);
            for (x, y) in a.iter().zip(&b) {
                assert!(close(*x, y.conj()));
            }
        }
    }
}
