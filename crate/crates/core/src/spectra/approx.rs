use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::magic_gen::{magic_sum, Parity};

/// One approximate eigenvalue, tagged with its signed mode index `±j`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ApproxEntry {
    pub j: i64,
    pub value: f64,
}

/// Closed-form spectral data for `magic(n)`.
///
/// * odd `n = 2m + 1`: `entries = ±n^2 / (2 sin(j pi / n))`, `j = 1..m`, bound `1/n`;
/// * singly even `n = 2m = 4k + 2`: `entries = ±n^2 / (4 sin(j pi / m))`, `j = 1..k`,
///   bound `2/n`, exact `±3m^2` and `2k - 1` zeros;
/// * doubly even: no approximated entries, exact `±(n/2) sqrt((n^3 - n)/3)` and `n - 3` zeros.
///
/// `special` always starts with the magic sum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproxSpectrum {
    pub n: usize,
    pub parity: Parity,
    /// Sorted ascending by value.
    pub entries: Vec<ApproxEntry>,
    pub bound: f64,
    pub special: Vec<f64>,
    pub zero_count: usize,
}

impl ApproxSpectrum {
    pub fn trivial(&self) -> f64 {
        self.special[0]
    }

    /// Every value of the closed-form spectrum, zeros included, ascending.
    pub fn all_values(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self.special.clone();
        all.extend(self.entries.iter().map(|e| e.value));
        all.extend(std::iter::repeat(0.0).take(self.zero_count));
        all.sort_by(f64::total_cmp);
        all
    }
}

/// `±scale / sin(j pi / period)` for `j = 1..=count`, ascending.
fn paired_entries(count: usize, scale: f64, period: f64) -> Vec<ApproxEntry> {
    let mut entries: Vec<ApproxEntry> = (1..=count)
        .flat_map(|j| {
            let v = scale / (j as f64 * PI / period).sin();
            let j = j as i64;
            [ApproxEntry { j, value: v }, ApproxEntry { j: -j, value: -v }]
        })
        .collect();
    entries.sort_by(|a, b| a.value.total_cmp(&b.value));
    entries
}

pub fn approx_spectrum(n: usize) -> Result<ApproxSpectrum> {
    if n < 3 {
        return Err(Error::UnsupportedOrder(n));
    }
    let nf = n as f64;
    let mu0 = magic_sum(n) as f64;
    let parity = Parity::of(n);
    let spectrum = match parity {
        Parity::Odd => {
            let m = (n - 1) / 2;
            ApproxSpectrum {
                n,
                parity,
                entries: paired_entries(m, nf * nf / 2.0, nf),
                bound: 1.0 / nf,
                special: vec![mu0],
                zero_count: 0,
            }
        }
        Parity::SinglyEven => {
            let m = n / 2;
            let k = (m - 1) / 2;
            let exact = 3.0 * (m * m) as f64;
            ApproxSpectrum {
                n,
                parity,
                entries: paired_entries(k, nf * nf / 4.0, m as f64),
                bound: 2.0 / nf,
                special: vec![mu0, exact, -exact],
                zero_count: 2 * k - 1,
            }
        }
        Parity::DoublyEven => {
            let exact = nf / 2.0 * ((nf * nf * nf - nf) / 3.0).sqrt();
            ApproxSpectrum {
                n,
                parity,
                entries: Vec::new(),
                bound: 0.0,
                special: vec![mu0, exact, -exact],
                zero_count: n - 3,
            }
        }
    };
    Ok(spectrum)
}
