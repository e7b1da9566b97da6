use super::DenseMatrix;
use crate::error::{Error, Result};

/// Relative pivot floor: a pivot below this times `max |A|` means singular.
const PIVOT_FLOOR: f64 = 1e-14;

/// `P A = L U` with unit-lower `L` and `U` packed into one matrix.
#[derive(Clone, Debug)]
pub struct LuFactors {
    lu: DenseMatrix,
    perm: Vec<usize>,
    swaps: usize,
}

impl LuFactors {
    pub fn factor(a: &DenseMatrix) -> Result<Self> {
        if !a.is_square() || a.is_empty() {
            return Err(Error::InvalidDimension(format!(
                "LU needs a non-empty square matrix, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let n = a.rows();
        let floor = PIVOT_FLOOR * a.max_abs();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| lu[(i, k)].abs().total_cmp(&lu[(j, k)].abs()))
                .expect("non-empty range");
            let pivot = lu[(p, k)];
            if pivot.abs() < floor || pivot == 0.0 {
                return Err(Error::Singular { column: k, pivot });
            }
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
                swaps += 1;
            }
            for i in k + 1..n {
                let l = lu[(i, k)] / pivot;
                lu[(i, k)] = l;
                if l != 0.0 {
                    for j in k + 1..n {
                        lu[(i, j)] -= l * lu[(k, j)];
                    }
                }
            }
        }
        Ok(Self { lu, perm, swaps })
    }

    pub fn determinant(&self) -> f64 {
        let n = self.lu.rows();
        let d: f64 = (0..n).map(|i| self.lu[(i, i)]).product();
        if self.swaps % 2 == 0 {
            d
        } else {
            -d
        }
    }

    pub fn solve_vec(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.rows();
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|k| self.lu[(i, k)] * x[k]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|k| self.lu[(i, k)] * x[k]).sum();
            x[i] = (x[i] - s) / self.lu[(i, i)];
        }
        x
    }

    pub fn solve(&self, b: &DenseMatrix) -> Result<DenseMatrix> {
        if b.rows() != self.lu.rows() {
            return Err(Error::InvalidDimension(format!(
                "right-hand side has {} rows, expected {}",
                b.rows(),
                self.lu.rows()
            )));
        }
        let mut x = DenseMatrix::zeros(b.rows(), b.cols());
        for j in 0..b.cols() {
            for (i, v) in self.solve_vec(&b.col(j)).into_iter().enumerate() {
                x[(i, j)] = v;
            }
        }
        Ok(x)
    }
}

/// Solve `A X = B` by partial-pivot LU.
pub fn solve_linear(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    LuFactors::factor(a)?.solve(b)
}

/// Determinant via LU; a singular matrix has determinant zero.
pub fn determinant(a: &DenseMatrix) -> Result<f64> {
    match LuFactors::factor(a) {
        Ok(lu) => Ok(lu.determinant()),
        Err(Error::Singular { .. }) => Ok(0.0),
        Err(e) => Err(e),
    }
}
