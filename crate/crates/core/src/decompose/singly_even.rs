use crate::error::{Error, Result};
use crate::magic_gen::{generate_odd, generate_singly_even, magic_sum, Parity};
use crate::numerics::{numerical_rank, DenseMatrix, ToleranceConfig};

use super::{ones_outer, require_close, require_exact};

/// Block triangularization of the Strachey square of order `n = 2m = 4k + 2`:
///
/// ```text
/// Q M_n Q^T = [ m^2 A_m   m^2 B_m             ]
///             [ 0         2 M_m + 3 m^2 11^T  ]
/// ```
///
/// with `Q = [[I, -I], [I, I]] / sqrt 2`, `A_m = 1 [1 (k), -2, -2, -1 (k-1)] - 3 e_{k+1} w^T`,
/// `B_m = 1 [2 (k), -1, -1, -2 (k-1)] - 3 e_{k+1} w^T` and `w = e_1 - e_{k+1}`.
#[derive(Clone, Debug)]
pub struct SinglyEvenBlockForm {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub q: DenseMatrix,
    pub a_m: DenseMatrix,
    pub b_m: DenseMatrix,
    /// `2 M_m + 3 m^2 11^T`, the lower-right block.
    pub reduced: DenseMatrix,
    /// `Q M_n Q^T` as computed in floating point.
    pub rotated: DenseMatrix,
    /// Length `n`: `+1` at position `k+1`, `-1` at `n-k` (1-based).
    pub u: Vec<i64>,
    /// Length `n`: `+1` at position 1, `-1` at `k+1`.
    pub v: Vec<i64>,
    /// `sqrt 2 Q v`: `+1` at 1 and `m+1`, `-1` at `k+1` and `m+k+1`.
    pub tilde_v: Vec<i64>,
    /// Length `m`: `e_1 - e_{k+1}`.
    pub w: Vec<i64>,
    pub e_k1: Vec<i64>,
}

fn unit(len: usize, pos: usize) -> Vec<i64> {
    let mut e = vec![0; len];
    e[pos] = 1;
    e
}

fn to_f64(v: &[i64]) -> Vec<f64> {
    v.iter().map(|&x| x as f64).collect()
}

/// `1 r^T - 3 e_{k+1} w^T` for a row pattern `[p (k), q, q, p' (k-1)]`.
fn rank_two_block(m: usize, k: usize, row: &[f64], w: &[i64]) -> DenseMatrix {
    DenseMatrix::from_fn(m, m, |i, j| row[j] - if i == k { 3.0 * w[j] as f64 } else { 0.0 })
}

fn pattern(k: usize, lead: f64, mid: f64, tail: f64) -> Vec<f64> {
    let mut row = vec![lead; k];
    row.extend([mid, mid]);
    row.extend(std::iter::repeat(tail).take(k - 1));
    row
}

pub fn singly_even_block_form(n: usize) -> Result<SinglyEvenBlockForm> {
    if Parity::of(n) != Parity::SinglyEven || n < 6 {
        return Err(Error::Parity { n, expected: "singly even (n = 4k + 2, n >= 6)" });
    }
    let square = generate_singly_even(n)?;
    let m = n / 2;
    let k = (m - 1) / 2;
    let m2 = (m * m) as f64;
    let mu0 = magic_sum(n) as f64;
    let small = generate_odd(m)?.to_matrix();

    let mut u = vec![0; n];
    u[k] = 1;
    u[n - k - 1] = -1;
    let mut v = vec![0; n];
    v[0] = 1;
    v[k] = -1;
    let mut tilde_v = vec![0; n];
    tilde_v[0] = 1;
    tilde_v[m] = 1;
    tilde_v[k] = -1;
    tilde_v[m + k] = -1;
    let mut w = unit(m, 0);
    w[k] = -1;
    let e_k1 = unit(m, k);

    // Rank-structured form before rotation:
    // M_n = [[M_m, M_m + 2m^2], [M_m + 3m^2, M_m + m^2]]
    //       + [1; -1][3m^2 (k), 0 (2k+3), -m^2 (k-1)] - 3 m^2 u v^T
    let mut tail = vec![3.0 * m2; k];
    tail.extend(std::iter::repeat(0.0).take(2 * k + 3));
    tail.extend(std::iter::repeat(-m2).take(k - 1));
    let offsets = [[0.0, 2.0 * m2], [3.0 * m2, m2]];
    let additive = DenseMatrix::from_fn(n, n, |i, j| {
        let side = if i < m { 1.0 } else { -1.0 };
        small[(i % m, j % m)] + offsets[i / m][j / m] + side * tail[j]
            - 3.0 * m2 * (u[i] * v[j]) as f64
    });
    require_exact("singly even rank-structured form", &additive, &square)?;

    let r = std::f64::consts::FRAC_1_SQRT_2;
    let q = DenseMatrix::from_fn(n, n, |i, j| match (i < m, j < m) {
        _ if i % m != j % m => 0.0,
        (true, false) => -r,
        _ => r,
    });
    require_close("Q Q^T = I", &q.matmul(&q.transpose())?, &DenseMatrix::identity(n), 1e-14)?;

    // Q u = sqrt 2 [e_{k+1}; 0] and Q v = tilde_v / sqrt 2
    let qu = q.mul_vec(&to_f64(&u));
    let qv = q.mul_vec(&to_f64(&v));
    for i in 0..n {
        let want_u = if i == k { std::f64::consts::SQRT_2 } else { 0.0 };
        if (qu[i] - want_u).abs() > 1e-14 || (qv[i] - tilde_v[i] as f64 * r).abs() > 1e-14 {
            return Err(Error::Consistency(format!("Q u / Q v images wrong at index {i}")));
        }
    }

    let a_m = rank_two_block(m, k, &pattern(k, 1.0, -2.0, -1.0), &w);
    let b_m = rank_two_block(m, k, &pattern(k, 2.0, -1.0, -2.0), &w);
    let reduced = small.scale(2.0).add(&ones_outer(m).scale(3.0 * m2))?;
    let rotated = q.matmul(&square.to_matrix())?.matmul(&q.transpose())?;

    let tol = 1e-9 * mu0;
    require_close("upper-left block m^2 A_m", &rotated.submatrix(0, 0, m, m), &a_m.scale(m2), tol)?;
    require_close("upper-right block m^2 B_m", &rotated.submatrix(0, m, m, m), &b_m.scale(m2), tol)?;
    require_close("lower-left block", &rotated.submatrix(m, 0, m, m), &DenseMatrix::zeros(m, m), tol)?;
    require_close("lower-right block", &rotated.submatrix(m, m, m, m), &reduced, tol)?;

    if a_m.trace() != 0.0 || a_m.mul_vec(&vec![1.0; m]).iter().any(|&x| x != -3.0) {
        return Err(Error::Consistency(format!("A_m trace / row sums wrong at n = {n}")));
    }
    let rank = numerical_rank(&a_m, &ToleranceConfig::default())?;
    if rank != 2 {
        return Err(Error::Consistency(format!("A_m has rank {rank}, expected 2")));
    }

    Ok(SinglyEvenBlockForm {
        n,
        m,
        k,
        q,
        a_m,
        b_m,
        reduced,
        rotated,
        u,
        v,
        tilde_v,
        w,
        e_k1,
    })
}

impl SinglyEvenBlockForm {
    /// Largest entry of the lower-left block of `Q M_n Q^T`.
    pub fn lower_left_max(&self) -> f64 {
        self.rotated.submatrix(self.m, 0, self.m, self.m).max_abs()
    }
}
