use crate::error::{Error, Result};
use crate::magic_gen::{generate_doubly_even, Parity};
use crate::numerics::DenseMatrix;

use super::require_exact;

/// `M_n = U S3 U^T` for the criss-cross square of order `n = 4k`, with
/// `U = [1, u, v]`, `S3 = [[n^2+1, 0, 0], [0, 0, n], [0, 1, 0]] / 2` and
/// `D3 = U^T U = (n/3) diag(3, n^2 - 1, 3)`.
#[derive(Clone, Debug)]
pub struct DoublyEvenFactors {
    pub n: usize,
    /// `[w; -flip(w)]`.
    pub u: Vec<i64>,
    /// Sign pattern `1, -1, -1, 1` repeated.
    pub v: Vec<i64>,
    /// First half of `u`: `(n-1), -(n-3), -(n-5), (n-7), ...`.
    pub w: Vec<i64>,
    pub u_mat: DenseMatrix,
    pub s3: DenseMatrix,
    pub d3: DenseMatrix,
}

/// `+1` when the 1-based position `p` has `p mod 4` in `{0, 1}`.
fn cadence(p: usize) -> i64 {
    if matches!(p % 4, 0 | 1) {
        1
    } else {
        -1
    }
}

pub fn doubly_even_factorize(n: usize) -> Result<DoublyEvenFactors> {
    if Parity::of(n) != Parity::DoublyEven {
        return Err(Error::Parity { n, expected: "doubly even (n = 4k)" });
    }
    let square = generate_doubly_even(n)?;
    let ni = n as i64;

    let w: Vec<i64> = (1..=n / 2).map(|p| cadence(p) * (ni - (2 * p as i64 - 1))).collect();
    let u: Vec<i64> = w.iter().copied().chain(w.iter().rev().map(|x| -x)).collect();
    let v: Vec<i64> = (1..=n).map(cadence).collect();

    let sum = |x: &[i64]| x.iter().sum::<i64>();
    let uv: i64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
    if sum(&u) != 0 || sum(&v) != 0 || uv != 0 {
        return Err(Error::Consistency(format!("u, v, 1 not mutually orthogonal at n = {n}")));
    }

    // 2 M = (n^2+1) 11^T + n u v^T + v u^T, all in integers
    let twice = DenseMatrix::from_fn(n, n, |i, j| {
        ((ni * ni + 1) + ni * u[i] * v[j] + v[i] * u[j]) as f64
    });
    if twice.as_slice().iter().any(|x| x % 2.0 != 0.0) {
        return Err(Error::Consistency(format!("2 M_n has odd entries at n = {n}")));
    }
    require_exact("U S3 U^T", &twice.scale(0.5), &square)?;

    let u_mat = DenseMatrix::from_fn(n, 3, |i, c| match c {
        0 => 1.0,
        1 => u[i] as f64,
        _ => v[i] as f64,
    });
    let nf = n as f64;
    let s3 = DenseMatrix::from_rows(&[
        vec![(nf * nf + 1.0) / 2.0, 0.0, 0.0],
        vec![0.0, 0.0, nf / 2.0],
        vec![0.0, 0.5, 0.0],
    ])?;
    let d3 = u_mat.transpose().matmul(&u_mat)?;
    let want_d3 = DenseMatrix::from_fn(3, 3, |i, j| match (i, j) {
        (1, 1) => nf * (nf * nf - 1.0) / 3.0,
        _ if i == j => nf,
        _ => 0.0,
    });
    // entries of D3 are integers; n(n^2 - 1) is divisible by 3
    if d3 != want_d3 {
        return Err(Error::Consistency(format!("U^T U differs from (n/3) diag(3, n^2-1, 3) at n = {n}")));
    }

    Ok(DoublyEvenFactors {
        n,
        u,
        v,
        w,
        u_mat,
        s3,
        d3,
    })
}

impl DoublyEvenFactors {
    /// `U S3 U^T` in floating point.
    pub fn reconstruct(&self) -> Result<DenseMatrix> {
        self.u_mat.matmul(&self.s3)?.matmul(&self.u_mat.transpose())
    }

    /// `S3 D3`, whose eigenpairs lift to the nonzero eigenpairs of `M_n`.
    pub fn core(&self) -> Result<DenseMatrix> {
        self.s3.matmul(&self.d3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_vectors() {
        let f = doubly_even_factorize(4).unwrap();
        assert_eq!(f.w, vec![3, -1]);
        assert_eq!(f.u, vec![3, -1, 1, -3]);
        assert_eq!(f.v, vec![1, -1, -1, 1]);
        let want = DenseMatrix::from_rows(&[
            vec![4.0, 0.0, 0.0],
            vec![0.0, 20.0, 0.0],
            vec![0.0, 0.0, 4.0],
        ])
        .unwrap();
        assert_eq!(f.d3, want);
    }

    #[test]
    fn eight_top_left() {
        let f = doubly_even_factorize(8).unwrap();
        assert_eq!(f.reconstruct().unwrap()[(0, 0)], 64.0);
    }

    #[test]
    fn rejects_other_parities() {
        assert!(doubly_even_factorize(6).is_err());
        assert!(doubly_even_factorize(9).is_err());
    }
}
