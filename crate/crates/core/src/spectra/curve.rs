use rayon::prelude::*;
use serde::Serialize;

use super::report_for;
use crate::error::{Error, Result};
use crate::numerics::ToleranceConfig;

/// Prime orders are observed to have `e_n` near machine precision; this is the
/// threshold used to record that observation.
const PRIME_NEAR_EPS: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorCurvePoint {
    pub n: usize,
    pub e_n: f64,
    pub bound: f64,
    pub is_prime: bool,
    pub n_mod_6: usize,
    pub below_bound: bool,
    /// For `n ≡ 3 (mod 6)` with both odd neighbours in range: whether `e_n` is
    /// at least the median (mean) of the neighbours' values.
    pub mod6_elevated: Option<bool>,
    /// For prime `n`: whether `e_n <= 1e-9`.
    pub prime_near_eps: Option<bool>,
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `e_n` for every odd `n` in `[n_min, n_max]`, ascending. Orders are
/// evaluated in parallel; nothing is shared between them.
pub fn error_curve(n_min: usize, n_max: usize, cfg: &ToleranceConfig) -> Result<Vec<ErrorCurvePoint>> {
    if n_min < 3 || n_min % 2 == 0 || n_max % 2 == 0 || n_min > n_max {
        return Err(Error::InvalidDimension(format!(
            "error curve needs odd 3 <= n_min <= n_max, got [{n_min}, {n_max}]"
        )));
    }
    let orders: Vec<usize> = (n_min..=n_max).step_by(2).collect();
    let errors = orders
        .par_iter()
        .map(|&n| report_for(n, cfg).map(|r| r.e_n))
        .collect::<Result<Vec<f64>>>()?;

    let points = orders
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let e_n = errors[i];
            let bound = 1.0 / n as f64;
            let prime = is_prime(n);
            let mod6_elevated = (n % 6 == 3 && i > 0 && i + 1 < orders.len())
                .then(|| e_n >= (errors[i - 1] + errors[i + 1]) / 2.0);
            ErrorCurvePoint {
                n,
                e_n,
                bound,
                is_prime: prime,
                n_mod_6: n % 6,
                below_bound: e_n <= bound,
                mod6_elevated,
                prime_near_eps: prime.then_some(e_n <= PRIME_NEAR_EPS),
            }
        })
        .collect();
    Ok(points)
}
