//! Printed-precision formatting for spectra tables: computed eigenvalues with
//! 8 decimals, approximations with 12, relative errors in `%.6e` style with a
//! signed, at least two-digit exponent.

use super::report::{EigenErrorRow, RowKind};

pub const MU_DECIMALS: usize = 8;
pub const LAMBDA_DECIMALS: usize = 12;

/// `x` with 6 significand decimals and a C-style exponent, e.g. `5.719096e-02`.
pub fn sci6(x: f64) -> String {
    let raw = format!("{x:.6e}");
    let Some((mantissa, exp)) = raw.split_once('e') else {
        return raw; // inf / NaN
    };
    let (sign, digits) = match exp.strip_prefix('-') {
        Some(d) => ('-', d),
        None => ('+', exp),
    };
    format!("{mantissa}e{sign}{digits:0>2}")
}

pub fn fixed(x: f64, decimals: usize) -> String {
    format!("{x:.decimals$}")
}

pub fn format_mu(row: &EigenErrorRow) -> String {
    if row.kind == RowKind::Trivial {
        return format!("{:.0}", row.mu.re);
    }
    if row.complex_flag {
        return format!("{:.prec$}{:+.prec$}i", row.mu.re, row.mu.im, prec = MU_DECIMALS);
    }
    fixed(row.mu.re, MU_DECIMALS)
}

pub fn format_lambda(row: &EigenErrorRow) -> String {
    if row.kind == RowKind::Trivial {
        return format!("{:.0}", row.lambda);
    }
    fixed(row.lambda, LAMBDA_DECIMALS)
}

pub fn format_rel_err(row: &EigenErrorRow) -> String {
    if row.kind == RowKind::Trivial {
        return "0".to_string();
    }
    sci6(row.rel_err)
}

/// The three printed cells `(mu, lambda, rel_err)` of a table row.
pub fn row_cells(row: &EigenErrorRow) -> [String; 3] {
    [format_mu(row), format_lambda(row), format_rel_err(row)]
}
