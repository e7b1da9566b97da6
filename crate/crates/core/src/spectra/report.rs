use num_complex::Complex64;
use serde::Serialize;

use super::approx::ApproxSpectrum;
use super::matching::min_cost_assignment;
use crate::error::{Error, Result};
use crate::numerics::{Spectrum, ToleranceConfig};

/// `|imag| <= IMAG_DUST * |value|` is treated as rounding noise and dropped.
const IMAG_DUST: f64 = 1e-8;
/// Relative distance within which a computed value is identified with an exactly known one.
const SPECIAL_MATCH: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    /// Matched against the approximate set; contributes to `e_n`.
    Approximated,
    /// Matched against an exactly known eigenvalue other than the magic sum.
    Exact,
    /// The magic sum.
    Trivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EigenErrorRow {
    pub kind: RowKind,
    /// Computed eigenvalue, with its imaginary part zeroed if it was dust.
    #[serde(serialize_with = "serialize_complex")]
    pub mu: Complex64,
    pub lambda: f64,
    /// `|mu - lambda| / |lambda|`.
    pub rel_err: f64,
    /// Set when the imaginary part was too large to project away.
    pub complex_flag: bool,
}

fn serialize_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    pub n: usize,
    /// Approximated and exact rows ascending by `mu`, then the trivial row.
    pub rows: Vec<EigenErrorRow>,
    /// Largest nearest-match relative error over the approximated rows.
    pub e_n: f64,
    pub bound: f64,
    pub pass: bool,
    /// Largest matched cost of a minimum-cost bijection onto the approximate set.
    pub bijective_max: f64,
    pub bijective_pass: bool,
    pub zeros_observed: usize,
    pub zeros_expected: usize,
}

impl ErrorReport {
    pub fn approximated(&self) -> impl Iterator<Item = &EigenErrorRow> {
        self.rows.iter().filter(|r| r.kind == RowKind::Approximated)
    }

    pub fn exact(&self) -> impl Iterator<Item = &EigenErrorRow> {
        self.rows.iter().filter(|r| r.kind != RowKind::Approximated)
    }

    pub fn complex_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.complex_flag).count()
    }
}

fn rel(mu: Complex64, lambda: f64) -> f64 {
    (mu - lambda).norm() / lambda.abs()
}

/// Removes and returns the value nearest `target`, provided it lies within
/// `SPECIAL_MATCH` relative distance.
fn take_nearest(pool: &mut Vec<(Complex64, bool)>, target: f64) -> Option<(Complex64, bool)> {
    let (idx, dist) = pool
        .iter()
        .enumerate()
        .map(|(i, (z, _))| (i, rel(*z, target)))
        .min_by(|a, b| a.1.total_cmp(&b.1))?;
    (dist <= SPECIAL_MATCH).then(|| pool.swap_remove(idx))
}

/// Pairs computed eigenvalues with the closed-form spectrum.
///
/// In order: imaginary dust is projected away, the magic sum and the other
/// exactly known eigenvalues are set aside, zeros are classified with
/// `cfg.zero_threshold` against the spectrum's scale, and every remaining
/// value is matched to its nearest approximation. The leftovers must be
/// exactly as many as the approximations, otherwise the zero classification
/// is reported as inconsistent.
pub fn match_and_report(mu: &Spectrum, approx: &ApproxSpectrum, cfg: &ToleranceConfig) -> Result<ErrorReport> {
    let mut pool: Vec<(Complex64, bool)> = mu
        .values
        .iter()
        .map(|&z| {
            if z.im.abs() <= IMAG_DUST * z.norm() {
                (Complex64::new(z.re, 0.0), false)
            } else {
                (z, true)
            }
        })
        .collect();

    let mut rows = Vec::with_capacity(mu.order());
    let mut specials = approx.special.iter().enumerate();
    let mut trivial_row = None;
    for (i, &target) in &mut specials {
        let (z, flag) = take_nearest(&mut pool, target).ok_or_else(|| {
            Error::Consistency(format!("n = {}: no computed eigenvalue near the exact value {target}", approx.n))
        })?;
        let row = EigenErrorRow {
            kind: if i == 0 { RowKind::Trivial } else { RowKind::Exact },
            mu: z,
            lambda: target,
            rel_err: if i == 0 { 0.0 } else { rel(z, target) },
            complex_flag: flag,
        };
        if i == 0 {
            trivial_row = Some(row);
        } else {
            rows.push(row);
        }
    }

    let cutoff = mu.zero_cutoff(cfg);
    let before = pool.len();
    pool.retain(|(z, _)| z.norm() > cutoff);
    let zeros_observed = before - pool.len();

    if pool.len() != approx.entries.len() {
        return Err(Error::Classification {
            observed: pool.len(),
            expected: approx.entries.len(),
            zeros: zeros_observed,
        });
    }

    let lambdas: Vec<f64> = approx.entries.iter().map(|e| e.value).collect();
    let mut e_n: f64 = 0.0;
    for &(z, flag) in &pool {
        let (lambda, err) = lambdas
            .iter()
            .map(|&l| (l, rel(z, l)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty approximate set");
        e_n = e_n.max(err);
        rows.push(EigenErrorRow {
            kind: RowKind::Approximated,
            mu: z,
            lambda,
            rel_err: err,
            complex_flag: flag,
        });
    }

    let cost: Vec<Vec<f64>> = pool
        .iter()
        .map(|(z, _)| lambdas.iter().map(|&l| rel(*z, l)).collect())
        .collect();
    let assignment = min_cost_assignment(&cost);
    let bijective_max = assignment
        .iter()
        .enumerate()
        .map(|(r, &c)| cost[r][c])
        .fold(0.0, f64::max);

    rows.sort_by(|a, b| a.mu.re.total_cmp(&b.mu.re).then(a.mu.im.total_cmp(&b.mu.im)));
    rows.extend(trivial_row);

    Ok(ErrorReport {
        n: approx.n,
        rows,
        e_n,
        bound: approx.bound,
        pass: e_n <= approx.bound,
        bijective_max,
        bijective_pass: bijective_max <= approx.bound,
        zeros_observed,
        zeros_expected: approx.zero_count,
    })
}
