use crate::circulant::{xn_first_row, CirculantMatrix, GRowCirculant};
use crate::error::{Error, Result};
use crate::magic_gen::{generate_odd, Parity};
use crate::numerics::{solve_linear, spectral_norm, DenseMatrix, ToleranceConfig};

use super::{ones_outer, require_close, require_exact};

/// `M_n = n J X + J Y` for the Siamese square of odd order `n = 2m + 1`.
///
/// `X` is circulant with first row `a = [m, ..., 2m, 0, ..., m-1]` and `Y` is
/// `(m+1)`-row circulant with first row `b = [1, 3, ..., 2m+1, 2, 4, ..., 2m]`.
/// Splitting off the rank-one part, `nX + Y = S + T` with
/// `S = nX + (m+1) 11^T` circulant and `T = Y - (m+1) 11^T` still `(m+1)`-row circulant.
#[derive(Clone, Debug)]
pub struct OddDecomposition {
    pub n: usize,
    pub m: usize,
    pub x: CirculantMatrix,
    pub y: GRowCirculant,
    pub s: CirculantMatrix,
    pub t: GRowCirculant,
    /// The permutation in `S^{-1} T = (nG - 11^T) / n^2`: `(m+1)`-row circulant
    /// with first row `e_{p+1}^T`, `p = -(m+1)^2 mod n` (so `e_2^T` at `n = 5`).
    pub g: GRowCirculant,
}

impl OddDecomposition {
    pub fn stride(&self) -> usize {
        self.m + 1
    }

    /// `n J X + J Y`, densely.
    pub fn reconstruct(&self) -> DenseMatrix {
        let n = self.n;
        let (x, y) = (self.x.realize(), self.y.realize());
        // J A reverses the rows of A
        DenseMatrix::from_fn(n, n, |i, j| n as f64 * x[(n - 1 - i, j)] + y[(n - 1 - i, j)])
    }
}

/// The first row `b` of `Y_n`: odd numbers `1..=2m+1` then even numbers `2..=2m`.
fn yn_first_row(m: usize) -> Vec<f64> {
    let odds = (0..=m).map(|p| (2 * p + 1) as f64);
    let evens = (1..=m).map(|p| (2 * p) as f64);
    odds.chain(evens).collect()
}

pub fn odd_decompose(n: usize) -> Result<OddDecomposition> {
    if Parity::of(n) != Parity::Odd {
        return Err(Error::Parity { n, expected: "odd" });
    }
    let square = generate_odd(n)?;
    let m = (n - 1) / 2;
    let g = m + 1;
    let shift = g as f64;

    let a = xn_first_row(n)?;
    let b = yn_first_row(m);
    let s_row = a.iter().map(|v| n as f64 * v + shift).collect();
    let t_row = b.iter().map(|v| v - shift).collect();
    // Y = X G + 11^T column-wise; matching b_0 = 1 to the zero of a fixes the offset
    let mut e_p = vec![0.0; n];
    e_p[(n - (g * g) % n) % n] = 1.0;

    let d = OddDecomposition {
        n,
        m,
        x: CirculantMatrix::new(a)?,
        y: GRowCirculant::new(g, b)?,
        s: CirculantMatrix::new(s_row)?,
        t: GRowCirculant::new(g, t_row)?,
        g: GRowCirculant::new(g, e_p)?,
    };

    require_exact("n J X + J Y", &d.reconstruct(), &square)?;
    let lhs = d.x.realize().scale(n as f64).add(&d.y.realize())?;
    let rhs = d.s.realize().add(&d.t.realize())?;
    if lhs != rhs {
        return Err(Error::Consistency(format!("S + T differs from nX + Y at n = {n}")));
    }
    Ok(d)
}

/// Checks `S^{-1} T = (nG - 11^T) / n^2` entrywise and returns `||S^{-1} T||_2`.
pub fn verify_perturbation_identity(d: &OddDecomposition, cfg: &ToleranceConfig) -> Result<f64> {
    let n = d.n as f64;
    let quotient = solve_linear(&d.s.realize(), &d.t.realize())?;
    let expected = d.g.realize().scale(n).sub(&ones_outer(d.n))?.scale(1.0 / (n * n));
    require_close("S^-1 T against (nG - 11^T)/n^2", &quotient, &expected, 1e-9)?;
    spectral_norm(&quotient, cfg)
}
