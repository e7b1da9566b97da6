use std::time::Instant;

use num_complex::Complex64;
use serde_json::json;

use super::render::Output;
use super::verify::{verify_order, Check, Status};
use super::{CliError, ParityFilter, SpectrumMode};
use crate::magic_gen::{magic, Parity};
use crate::numerics::ToleranceConfig;
use crate::spectra::format::{fixed, row_cells, sci6, LAMBDA_DECIMALS, MU_DECIMALS};
use crate::spectra::{approx_spectrum, error_curve as curve, match_and_report, numeric_spectrum};

fn strings(cells: &[&str]) -> Vec<String> {
    cells.iter().map(|s| s.to_string()).collect()
}

pub fn generate(n: usize) -> Result<Output, CliError> {
    let square = magic(n)?;
    let rows: Vec<Vec<String>> = square.rows().map(|r| r.iter().map(i64::to_string).collect()).collect();
    let plain = rows.iter().map(|r| r.join(" ") + "\n").collect();
    let grid: Vec<&[i64]> = square.rows().collect();
    Ok(Output {
        headers: None,
        rows,
        plain: Some(plain),
        data: json!({ "n": n, "parity": square.parity(), "magic_sum": square.magic_sum(), "rows": grid }),
    })
}

fn format_complex(z: Complex64) -> String {
    if z.im.abs() <= 1e-8 * z.norm() {
        fixed(z.re, MU_DECIMALS)
    } else {
        format!("{:.prec$}{:+.prec$}i", z.re, z.im, prec = MU_DECIMALS)
    }
}

pub fn spectrum(n: usize, mode: SpectrumMode, cfg: &ToleranceConfig) -> Result<Output, CliError> {
    let approx = approx_spectrum(n)?;
    let output = match mode {
        SpectrumMode::Numeric => {
            let s = numeric_spectrum(n, cfg, true)?;
            let values: Vec<_> = s.values.iter().map(|z| json!({ "re": z.re, "im": z.im })).collect();
            Output {
                headers: Some(strings(&["mu"])),
                rows: s.values.iter().map(|&z| vec![format_complex(z)]).collect(),
                plain: None,
                data: json!({ "n": n, "values": values }),
            }
        }
        SpectrumMode::Approx => {
            let mut labelled: Vec<(f64, &str)> = Vec::new();
            labelled.push((approx.trivial(), "trivial"));
            labelled.extend(approx.special[1..].iter().map(|&v| (v, "exact")));
            labelled.extend(approx.entries.iter().map(|e| (e.value, "approximated")));
            labelled.extend(std::iter::repeat((0.0, "zero")).take(approx.zero_count));
            labelled.sort_by(|a, b| a.0.total_cmp(&b.0));
            Output {
                headers: Some(strings(&["lambda", "kind"])),
                rows: labelled
                    .iter()
                    .map(|(v, kind)| vec![fixed(*v, LAMBDA_DECIMALS), kind.to_string()])
                    .collect(),
                plain: None,
                data: serde_json::to_value(&approx).expect("approx spectrum serializes"),
            }
        }
        SpectrumMode::Both => {
            let report = match_and_report(&numeric_spectrum(n, cfg, true)?, &approx, cfg)?;
            Output {
                headers: Some(strings(&["mu", "lambda", "rel_err"])),
                rows: report.rows.iter().map(|r| row_cells(r).to_vec()).collect(),
                plain: None,
                data: serde_json::to_value(&report).expect("report serializes"),
            }
        }
    };
    Ok(output)
}

fn wanted(n: usize, filter: Option<ParityFilter>) -> bool {
    match filter {
        None => true,
        Some(ParityFilter::Odd) => Parity::of(n) == Parity::Odd,
        Some(ParityFilter::SinglyEven) => Parity::of(n) == Parity::SinglyEven,
        Some(ParityFilter::DoublyEven) => Parity::of(n) == Parity::DoublyEven,
    }
}

/// Runs the checks and returns the output plus whether every
/// bound check passed.
pub fn verify(
    from: usize,
    to: usize,
    filter: Option<ParityFilter>,
    max_seconds: f64,
    cfg: &ToleranceConfig,
) -> Result<(Output, bool), CliError> {
    let start = Instant::now();
    let mut checks: Vec<Check> = Vec::new();
    let mut skipped: Vec<usize> = Vec::new();
    let mut plain = String::new();
    for n in (from..=to).filter(|&n| wanted(n, filter)) {
        if start.elapsed().as_secs_f64() > max_seconds {
            skipped.push(n);
            continue;
        }
        let found = verify_order(n, cfg)?;
        plain.push_str(&format!("n = {n} ({})\n", Parity::of(n)));
        for c in &found {
            plain.push_str(&format!("  {} {}: {}\n", c.status.label(), c.name, c.detail));
        }
        checks.extend(found);
    }
    let failures = checks.iter().filter(|c| c.status == Status::Fail).count();
    let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
    if let (Some(first), Some(last)) = (skipped.first(), skipped.last()) {
        plain.push_str(&format!(
            "time budget of {max_seconds} s reached; skipped {} orders ({first}..{last})\n",
            skipped.len()
        ));
    }
    plain.push_str(&format!("{passed} passed, {failures} failed\n"));

    let rows = checks
        .iter()
        .map(|c| vec![c.n.to_string(), c.name.to_string(), c.status.label().to_string(), c.detail.replace(',', ";")])
        .collect();
    let ok = failures == 0;
    Ok((
        Output {
            headers: Some(strings(&["n", "check", "status", "detail"])),
            rows,
            plain: Some(plain),
            data: json!({ "checks": checks, "skipped": skipped, "pass": ok }),
        },
        ok,
    ))
}

pub fn error_curve(from: usize, to: usize, cfg: &ToleranceConfig) -> Result<Output, CliError> {
    let points = curve(from, to, cfg)?;
    let flag = |b: Option<bool>| b.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
    let rows = points
        .iter()
        .map(|p| {
            vec![
                p.n.to_string(),
                sci6(p.e_n),
                sci6(p.bound),
                p.is_prime.to_string(),
                p.n_mod_6.to_string(),
                p.below_bound.to_string(),
                flag(p.mod6_elevated),
                flag(p.prime_near_eps),
            ]
        })
        .collect();
    Ok(Output {
        headers: Some(strings(&[
            "n",
            "e_n",
            "inv_n",
            "is_prime",
            "n_mod_6",
            "below_bound",
            "mod6_elevated",
            "prime_near_eps",
        ])),
        rows,
        plain: None,
        data: serde_json::to_value(&points).expect("curve serializes"),
    })
}
