//! Magic squares exactly as MATLAB's `magic(n)` builds them.
//!
//! Index arithmetic inside the generators is 1-based, mirroring the MATLAB
//! listings line for line; [`Grid`] converts at the storage boundary.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::DenseMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    /// `n = 2m + 1`, Siamese method.
    Odd,
    /// `n = 4k + 2`, Strachey method.
    SinglyEven,
    /// `n = 4k`, criss-cross method.
    DoublyEven,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        match n % 4 {
            0 => Parity::DoublyEven,
            2 => Parity::SinglyEven,
            _ => Parity::Odd,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::SinglyEven => "singly even",
            Parity::DoublyEven => "doubly even",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `n(n^2 + 1) / 2`.
pub fn magic_sum(n: usize) -> i64 {
    let n = n as i64;
    n * (n * n + 1) / 2
}

/// 1-based view over a row-major integer buffer.
struct Grid {
    n: usize,
    cells: Vec<i64>,
}

impl Grid {
    fn zeros(n: usize) -> Self {
        Self {
            n,
            cells: vec![0; n * n],
        }
    }

    fn get(&self, i: usize, j: usize) -> i64 {
        self.cells[(i - 1) * self.n + (j - 1)]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.cells[(i - 1) * self.n + (j - 1)] = v;
    }

    /// `A([I, I+m], J) = A([I+m, I], J)`: swap row `i` with row `i + m` in column `j`.
    fn swap_rows_in_col(&mut self, i: usize, m: usize, j: usize) {
        let a = self.get(i, j);
        let b = self.get(i + m, j);
        self.set(i, j, b);
        self.set(i + m, j, a);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MagicSquare {
    n: usize,
    parity: Parity,
    entries: Vec<i64>,
}

impl MagicSquare {
    /// Wraps an `n x n` row-major grid. Only checks the shape and the parity
    /// tag; use [`MagicSquare::check`] for the magic property itself.
    pub fn from_entries(n: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidDimension(format!(
                "{} entries for an order-{n} square",
                entries.len()
            )));
        }
        Ok(Self {
            n,
            parity: Parity::of(n),
            entries,
        })
    }

    fn from_grid(grid: Grid) -> Self {
        Self {
            n: grid.n,
            parity: Parity::of(grid.n),
            entries: grid.cells,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn magic_sum(&self) -> i64 {
        magic_sum(self.n)
    }

    /// 0-based access.
    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.n + col]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.entries.chunks(self.n)
    }

    pub fn to_matrix(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j) as f64)
    }

    /// Verifies that entries are a permutation of `1..=n^2` and that every
    /// row, column and both diagonals sum to the magic sum.
    pub fn check(&self) -> Result<()> {
        let n = self.n;
        let mut seen = vec![false; n * n];
        for &v in &self.entries {
            let ok = v >= 1 && (v as usize) <= n * n && !seen[v as usize - 1];
            if !ok {
                return Err(Error::Consistency(format!(
                    "entry {v} breaks the permutation of 1..={}",
                    n * n
                )));
            }
            seen[v as usize - 1] = true;
        }
        let target = self.magic_sum();
        let mut sums: Vec<(String, i64)> = Vec::with_capacity(2 * n + 2);
        for i in 0..n {
            sums.push((format!("row {}", i + 1), (0..n).map(|j| self.get(i, j)).sum()));
            sums.push((format!("column {}", i + 1), (0..n).map(|j| self.get(j, i)).sum()));
        }
        sums.push(("diagonal".into(), (0..n).map(|i| self.get(i, i)).sum()));
        sums.push(("antidiagonal".into(), (0..n).map(|i| self.get(i, n - 1 - i)).sum()));
        if let Some((what, s)) = sums.into_iter().find(|(_, s)| *s != target) {
            return Err(Error::Consistency(format!("{what} sums to {s}, expected {target}")));
        }
        if self.parity != Parity::of(n) {
            return Err(Error::Consistency("parity tag does not match order".into()));
        }
        Ok(())
    }
}

impl fmt::Display for MagicSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(i64::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// MATLAB's `magic(n)` for `n >= 3`.
pub fn magic(n: usize) -> Result<MagicSquare> {
    if n < 3 {
        return Err(Error::UnsupportedOrder(n));
    }
    match Parity::of(n) {
        Parity::Odd => generate_odd(n),
        Parity::SinglyEven => generate_singly_even(n),
        Parity::DoublyEven => generate_doubly_even(n),
    }
}

/// Siamese method (MATLAB's for-loop variant).
pub fn generate_odd(n: usize) -> Result<MagicSquare> {
    Ok(MagicSquare::from_grid(siamese(n)?))
}

fn siamese(n: usize) -> Result<Grid> {
    if n % 2 == 0 {
        return Err(Error::Parity { n, expected: "odd" });
    }
    if n < 3 {
        return Err(Error::UnsupportedOrder(n));
    }
    let mut a = Grid::zeros(n);
    let mut i = 1;
    let mut j = (n + 1) / 2;
    for k in 1..=(n * n) as i64 {
        let (is, js) = (i, j);
        a.set(i, j, k);
        i = n - (n + 1 - i) % n;
        j = j % n + 1;
        if a.get(i, j) != 0 {
            i = is % n + 1;
            j = js;
        }
    }
    Ok(a)
}

/// Strachey method: four shifted copies of `magic(n/2)`, then column swaps.
pub fn generate_singly_even(n: usize) -> Result<MagicSquare> {
    if n % 4 != 2 {
        return Err(Error::Parity { n, expected: "congruent to 2 mod 4" });
    }
    if n < 6 {
        return Err(Error::UnsupportedOrder(n));
    }
    let m = n / 2;
    let sub = siamese(m)?;
    let mm = (m * m) as i64;

    // A = [A, A+2*m*m; A+3*m*m, A+m*m]
    let mut a = Grid::zeros(n);
    for i in 1..=m {
        for j in 1..=m {
            let v = sub.get(i, j);
            a.set(i, j, v);
            a.set(i, j + m, v + 2 * mm);
            a.set(i + m, j, v + 3 * mm);
            a.set(i + m, j + m, v + mm);
        }
    }

    let k = (m - 1) / 2;
    if k > 1 {
        let cols = (2..=k).chain(n - k + 2..=n);
        for j in cols {
            for i in 1..=m {
                a.swap_rows_in_col(i, m, j);
            }
        }
    }
    for i in (1..=k).chain(k + 2..=m) {
        a.swap_rows_in_col(i, m, 1);
    }
    a.swap_rows_in_col(k + 1, m, k + 1);
    Ok(MagicSquare::from_grid(a))
}

/// Criss-cross method: fill `1..n^2` row-wise, then reflect the entries on
/// the mod-4 mask `fix(mod(I,4)/2) == fix(mod(J,4)/2)` to `n^2 + 1 - M`.
pub fn generate_doubly_even(n: usize) -> Result<MagicSquare> {
    if n % 4 != 0 {
        return Err(Error::Parity { n, expected: "congruent to 0 mod 4" });
    }
    if n < 4 {
        return Err(Error::UnsupportedOrder(n));
    }
    let nn = (n * n) as i64;
    let mut a = Grid::zeros(n);
    for i in 1..=n {
        for j in 1..=n {
            let fill = ((i - 1) * n + j) as i64;
            let in_mask = (i % 4) / 2 == (j % 4) / 2;
            a.set(i, j, if in_mask { nn + 1 - fill } else { fill });
        }
    }
    Ok(MagicSquare::from_grid(a))
}
