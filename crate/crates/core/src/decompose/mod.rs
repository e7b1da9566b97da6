//! Structural decompositions of the generated squares, one per parity class,
//! each validated against `magic_gen` when built.

mod doubly_even;
mod odd;
mod singly_even;

pub use doubly_even::{doubly_even_factorize, DoublyEvenFactors};
pub use odd::{odd_decompose, verify_perturbation_identity, OddDecomposition};
pub use singly_even::{singly_even_block_form, SinglyEvenBlockForm};

use crate::error::{Error, Result};
use crate::magic_gen::MagicSquare;
use crate::numerics::DenseMatrix;

/// Requires `m` to equal the square entry for entry. Every entry of `m` is an
/// exact small integer here, so the comparison is exact.
fn require_exact(label: &str, m: &DenseMatrix, square: &MagicSquare) -> Result<()> {
    let n = square.order();
    for i in 0..n {
        for j in 0..n {
            let want = square.get(i, j) as f64;
            if m[(i, j)] != want {
                return Err(Error::Consistency(format!(
                    "{label}: entry ({i}, {j}) is {} but the n = {n} square has {want}",
                    m[(i, j)]
                )));
            }
        }
    }
    Ok(())
}

fn require_close(label: &str, got: &DenseMatrix, want: &DenseMatrix, tol: f64) -> Result<()> {
    let diff = got.max_abs_diff(want);
    if diff.is_nan() || diff > tol {
        return Err(Error::Consistency(format!("{label}: max deviation {diff:e} exceeds {tol:e}")));
    }
    Ok(())
}

fn ones_outer(n: usize) -> DenseMatrix {
    DenseMatrix::filled(n, n, 1.0)
}
