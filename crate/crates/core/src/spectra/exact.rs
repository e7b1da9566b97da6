use serde::Serialize;

use crate::decompose::doubly_even_factorize;
use crate::error::{Error, Result};
use crate::magic_gen::{generate_doubly_even, generate_singly_even, magic_sum, Parity};
use crate::numerics::{norm2, DenseMatrix};

/// An eigenpair known in closed form, with its measured residual
/// `||M x - lambda x|| / ||x||`.
#[derive(Clone, Debug, Serialize)]
pub struct ExactPair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
}

fn checked_pair(m: &DenseMatrix, value: f64, vector: Vec<f64>, tol: f64) -> Result<ExactPair> {
    let r: Vec<f64> = m.mul_vec(&vector).iter().zip(&vector).map(|(a, x)| a - value * x).collect();
    let residual = norm2(&r) / norm2(&vector);
    if residual.is_nan() || residual > tol * value.abs() {
        return Err(Error::Consistency(format!(
            "eigenpair for {value} has residual {residual:e} (allowed {:e})",
            tol * value.abs()
        )));
    }
    Ok(ExactPair { value, vector, residual })
}

/// `(-3m^2, [1; -1])` and `(3m^2, [1 - 3e_{k+1}; -(1 - 3e_{k+1})])`.
pub fn singly_even_exact_pairs(n: usize) -> Result<Vec<ExactPair>> {
    if Parity::of(n) != Parity::SinglyEven || n < 6 {
        return Err(Error::Parity { n, expected: "singly even (n = 4k + 2, n >= 6)" });
    }
    let square = generate_singly_even(n)?.to_matrix();
    let m = n / 2;
    let k = (m - 1) / 2;
    let value = 3.0 * (m * m) as f64;

    let flat: Vec<f64> = (0..n).map(|i| if i < m { 1.0 } else { -1.0 }).collect();
    let dented: Vec<f64> = (0..n)
        .map(|i| {
            let base = if i % m == k { -2.0 } else { 1.0 };
            if i < m {
                base
            } else {
                -base
            }
        })
        .collect();
    Ok(vec![
        checked_pair(&square, -value, flat, 1e-9)?,
        checked_pair(&square, value, dented, 1e-9)?,
    ])
}

#[derive(Clone, Debug, Serialize)]
pub struct DoublyEvenPairs {
    /// `(mu0, 1)`, then `(+l, sqrt(3n) u + sqrt(n^2-1) v)`, then `(-l, -sqrt(3n) u + sqrt(n^2-1) v)`.
    pub pairs: Vec<ExactPair>,
    /// The core `S3 D3` whose eigenvectors `y` lift to `x = U y`.
    pub core: DenseMatrix,
    /// `||S3 D3 y - lambda y|| / ||y||` for each pair.
    pub core_residuals: Vec<f64>,
}

pub fn doubly_even_exact_pairs(n: usize) -> Result<DoublyEvenPairs> {
    let factors = doubly_even_factorize(n)?;
    let square = generate_doubly_even(n)?.to_matrix();
    let nf = n as f64;
    let lambda = nf / 2.0 * ((nf * nf * nf - nf) / 3.0).sqrt();
    let (a, b) = ((3.0 * nf).sqrt(), (nf * nf - 1.0).sqrt());

    let lift = |sign: f64| -> Vec<f64> {
        factors.u.iter().zip(&factors.v).map(|(&u, &v)| sign * a * u as f64 + b * v as f64).collect()
    };
    let mu0 = magic_sum(n) as f64;
    let pairs = vec![
        checked_pair(&square, mu0, vec![1.0; n], 1e-10)?,
        checked_pair(&square, lambda, lift(1.0), 1e-10)?,
        checked_pair(&square, -lambda, lift(-1.0), 1e-10)?,
    ];

    let core = factors.core()?;
    let ys = [[1.0, 0.0, 0.0], [0.0, a, b], [0.0, -a, b]];
    let mut core_residuals = Vec::with_capacity(3);
    for (y, pair) in ys.iter().zip(&pairs) {
        core_residuals.push(checked_pair(&core, pair.value, y.to_vec(), 1e-10)?.residual);
    }
    Ok(DoublyEvenPairs {
        pairs,
        core,
        core_residuals,
    })
}
