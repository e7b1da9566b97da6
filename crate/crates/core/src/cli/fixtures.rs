//! Published spectra tables for odd orders 3 through 13, as printed: computed
//! eigenvalue, approximation and relative error, with the magic sum last.

pub const TABLE_ORDERS: [usize; 6] = [3, 5, 7, 9, 11, 13];

const TABLES: [(usize, &str); 6] = [
    (3, include_str!("../../fixtures/table_3.csv")),
    (5, include_str!("../../fixtures/table_5.csv")),
    (7, include_str!("../../fixtures/table_7.csv")),
    (9, include_str!("../../fixtures/table_9.csv")),
    (11, include_str!("../../fixtures/table_11.csv")),
    (13, include_str!("../../fixtures/table_13.csv")),
];

/// Rows of the table for order `n`, header skipped, cells as printed.
pub fn fixture_rows(n: usize) -> Option<Vec<[String; 3]>> {
    let (_, raw) = TABLES.iter().find(|(order, _)| *order == n)?;
    let rows = raw
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut cells = l.split(',').map(|c| c.trim().to_string());
            let mut next = || cells.next().unwrap_or_default();
            [next(), next(), next()]
        })
        .collect();
    Some(rows)
}

/// Cell-by-cell comparison of printed rows against the fixture.
#[derive(Clone, Debug, PartialEq)]
pub struct FixtureComparison {
    pub n: usize,
    pub cells: usize,
    /// `(row, column, expected, got)` for every differing cell.
    pub mismatches: Vec<(usize, usize, String, String)>,
}

impl FixtureComparison {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn compare_fixture(n: usize, printed: &[[String; 3]]) -> Option<FixtureComparison> {
    let expected = fixture_rows(n)?;
    let mut mismatches = Vec::new();
    for r in 0..expected.len().max(printed.len()) {
        for c in 0..3 {
            let want = expected.get(r).map(|row| row[c].clone()).unwrap_or_default();
            let got = printed.get(r).map(|row| row[c].clone()).unwrap_or_default();
            if want != got {
                mismatches.push((r, c, want, got));
            }
        }
    }
    Some(FixtureComparison {
        n,
        cells: 3 * expected.len(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_table_loads() {
        for n in TABLE_ORDERS {
            let rows = fixture_rows(n).unwrap();
            assert_eq!(rows.len(), n);
            assert_eq!(rows[n - 1][2], "0");
        }
        assert!(fixture_rows(15).is_none());
    }

    #[test]
    fn seven_has_the_known_row() {
        let rows = fixture_rows(7).unwrap();
        assert_eq!(rows[2], ["-25.39666812", "-25.130063150178", "1.060901e-02"]);
    }
}
