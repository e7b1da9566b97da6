//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so every line is printed; the process fails if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use magic_spectra::circulant::{
    reverse_circulant_spectrum, xn_closed_form_eigenvalues, xn_first_row, CirculantMatrix,
};
use magic_spectra::cli::fixtures::{fixture_rows, TABLE_ORDERS};
use magic_spectra::decompose::{
    doubly_even_factorize, odd_decompose, singly_even_block_form, verify_perturbation_identity,
};
use magic_spectra::magic_gen::{magic, magic_sum};
use magic_spectra::numerics::{
    eigen_decompose, leading_singular_values, multiset_rel_distance, numerical_rank, DenseMatrix,
};
use magic_spectra::spectra::{
    doubly_even_exact_pairs, error_curve, report_for, singly_even_exact_pairs, RowKind,
};
use magic_spectra::ToleranceConfig;
use num_complex::Complex64;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn failure(detail: impl Into<String>) -> Outcome {
    outcome(false, detail)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

/// `spectrum --n N --mode both --format csv` against the published table, cell by cell.
fn table_reproduction(n: usize) -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_magic-spectra"))
        .args(["spectrum", "--n", &n.to_string(), "--mode", "both", "--format", "csv"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed().as_secs_f64();
    if !out.status.success() {
        return failure(format!("exit status {:?}", out.status.code()));
    }
    let text = String::from_utf8_lossy(&out.stdout);
    let printed: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    let expected = fixture_rows(n).expect("fixture exists");
    let mut diffs = Vec::new();
    for (r, want) in expected.iter().enumerate() {
        for c in 0..3 {
            let got = printed.get(r).and_then(|row| row.get(c)).copied().unwrap_or("");
            if got != want[c] {
                diffs.push(format!("row {r} col {c}: want {} got {got}", want[c]));
            }
        }
    }
    if printed.len() != expected.len() {
        diffs.push(format!("{} rows printed, {} expected", printed.len(), expected.len()));
    }
    let cells = 3 * expected.len();
    let mut detail = format!("{}/{cells} cells match in {elapsed:.3} s", cells - diffs.len().min(cells));
    if let Some(first) = diffs.first() {
        detail.push_str(&format!("; first difference {first}"));
    }
    outcome(diffs.is_empty() && elapsed < 1.0, detail)
}

fn odd_bound() -> Outcome {
    let start = Instant::now();
    let mut worst = (0, 0.0);
    for n in (3..=101).step_by(2) {
        let report = match report_for(n, &cfg()) {
            Ok(r) => r,
            Err(e) => return failure(format!("n = {n}: {e}")),
        };
        if !report.pass {
            return failure(format!("n = {n}: e_n = {:e} > 1/n", report.e_n));
        }
        let ratio = report.e_n * n as f64;
        if ratio > worst.1 {
            worst = (n, ratio);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    outcome(
        elapsed < 30.0,
        format!("e_n <= 1/n for odd 3..101; largest n*e_n = {:.4} at n = {} ({elapsed:.2} s)", worst.1, worst.0),
    )
}

fn perturbation_norm() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in (3..=51).step_by(2) {
        let norm = match odd_decompose(n).and_then(|d| verify_perturbation_identity(&d, &cfg())) {
            Ok(v) => v,
            Err(e) => return failure(format!("n = {n}: {e}")),
        };
        worst = worst.max(rel(norm, 1.0 / n as f64));
    }
    outcome(
        worst <= 1e-9,
        format!("entrywise identity holds; max |n ||S^-1 T||_2 - 1| = {worst:e} over odd 3..51"),
    )
}

fn closed_form_oracle() -> Outcome {
    let mut worst_x: f64 = 0.0;
    let mut worst_js: f64 = 0.0;
    for n in (3..=25).step_by(2) {
        let run = || -> magic_spectra::Result<(f64, f64)> {
            let x = CirculantMatrix::new(xn_first_row(n)?)?;
            let numeric_x = eigen_decompose(&x.realize(), &cfg(), false)?;
            let dx = multiset_rel_distance(&xn_closed_form_eigenvalues(n)?, &numeric_x.values, 1e-300)
                .expect("equal sizes");

            let s = odd_decompose(n)?.s;
            let js = DenseMatrix::reversal(n).matmul(&s.realize())?;
            let numeric_js = eigen_decompose(&js, &cfg(), false)?;
            let nf = n as f64;
            let mut closed: Vec<Complex64> = vec![Complex64::new(magic_sum(n) as f64, 0.0)];
            for j in 1..=(n - 1) / 2 {
                let l = nf * nf / (2.0 * (j as f64 * std::f64::consts::PI / nf).sin());
                closed.push(Complex64::new(l, 0.0));
                closed.push(Complex64::new(-l, 0.0));
            }
            let djs = multiset_rel_distance(&closed, &numeric_js.values, 1e-300).expect("equal sizes");
            // the eigenpair construction agrees with the same closed form
            let built = reverse_circulant_spectrum(&s)?;
            let dbuilt = multiset_rel_distance(&closed, &built.values, 1e-300).expect("equal sizes");
            Ok((dx, djs.max(dbuilt)))
        };
        match run() {
            Ok((dx, djs)) => {
                worst_x = worst_x.max(dx);
                worst_js = worst_js.max(djs);
            }
            Err(e) => return failure(format!("n = {n}: {e}")),
        }
    }
    outcome(
        worst_x <= 1e-9 && worst_js <= 1e-9,
        format!("max relative deviation X_n {worst_x:e}, J S {worst_js:e} over odd n <= 25"),
    )
}

fn singly_even() -> Outcome {
    for n in (6..=50).step_by(4) {
        let m = n / 2;
        let k = (m - 1) / 2;
        let exact = 3.0 * (m * m) as f64;
        let pairs = match singly_even_exact_pairs(n) {
            Ok(p) => p,
            Err(e) => return failure(format!("n = {n}: {e}")),
        };
        if pairs.iter().any(|p| p.residual > 1e-9 * exact) {
            return failure(format!("n = {n}: exact pair residual too large"));
        }
        let report = match report_for(n, &cfg()) {
            Ok(r) => r,
            Err(e) => return failure(format!("n = {n}: {e}")),
        };
        let trivial = report.rows.iter().filter(|r| r.kind == RowKind::Trivial).count();
        let exact_ok = report.exact().all(|r| rel(r.mu.re, r.lambda) <= 1e-8);
        if trivial != 1 || !exact_ok {
            return failure(format!("n = {n}: mu0 / ±3m^2 not found exactly once"));
        }
        if report.zeros_observed != 2 * k - 1 {
            return failure(format!("n = {n}: {} zeros, expected {}", report.zeros_observed, 2 * k - 1));
        }
        if report.approximated().count() != 2 * k || !report.pass {
            return failure(format!("n = {n}: e_n = {:e} vs 2/n", report.e_n));
        }
    }
    let six = report_for(6, &cfg()).expect("n = 6 report");
    let r = six.approximated().next().expect("approximated row");
    let concrete = (r.mu.re.abs() - 96f64.sqrt()).abs() < 1e-10 && (r.rel_err - 0.0572).abs() < 1e-4;
    outcome(
        concrete,
        format!(
            "n = 6..50: mu0 once, ±3m^2 exact, 2k-1 zeros, 2k values within 2/n; n = 6 remaining ±{:.5}, rel err {:.4}",
            r.mu.re.abs(),
            r.rel_err
        ),
    )
}

fn doubly_even() -> Outcome {
    for n in (4..=48).step_by(4) {
        let nf = n as f64;
        let square = magic(n).expect("square").to_matrix();
        match numerical_rank(&square, &cfg()) {
            Ok(3) => {}
            Ok(r) => return failure(format!("n = {n}: rank {r}")),
            Err(e) => return failure(format!("n = {n}: {e}")),
        }
        let report = match report_for(n, &cfg()) {
            Ok(r) => r,
            Err(e) => return failure(format!("n = {n}: {e}")),
        };
        if report.exact().any(|r| rel(r.mu.re, r.lambda) > 1e-9) || report.zeros_observed != n - 3 {
            return failure(format!("n = {n}: nonzero spectrum or zero count off"));
        }
        // residuals are checked inside against 1e-10 |lambda| ||x||
        if let Err(e) = doubly_even_exact_pairs(n) {
            return failure(format!("n = {n}: {e}"));
        }
        let root = ((nf * nf - 1.0) / 3.0).sqrt();
        let want = [magic_sum(n) as f64, nf * nf / 2.0 * root, nf / 2.0 * root];
        let sv = leading_singular_values(&square, 3, &cfg()).expect("singular values");
        if sv.iter().zip(&want).any(|(s, w)| rel(*s, *w) > 1e-9) {
            return failure(format!("n = {n}: singular values {sv:?} vs {want:?}"));
        }
    }
    outcome(
        true,
        "n = 4..48: rank 3, nonzero spectrum exact to 1e-9, eigenpair residuals <= 1e-10 |lambda|, singular values match",
    )
}

fn structural() -> Outcome {
    for n in (3..=41).step_by(2) {
        if let Err(e) = odd_decompose(n) {
            return failure(format!("odd n = {n}: {e}"));
        }
    }
    for n in (4..=48).step_by(4) {
        match doubly_even_factorize(n).and_then(|f| f.reconstruct()) {
            Ok(rec) if rec == magic(n).expect("square").to_matrix() => {}
            Ok(_) => return failure(format!("doubly even n = {n}: U S3 U^T differs")),
            Err(e) => return failure(format!("doubly even n = {n}: {e}")),
        }
    }
    let mut worst: f64 = 0.0;
    for n in (6..=38).step_by(4) {
        match singly_even_block_form(n) {
            Ok(f) => worst = worst.max(f.lower_left_max() / magic_sum(n) as f64),
            Err(e) => return failure(format!("singly even n = {n}: {e}")),
        }
    }
    outcome(
        worst <= 1e-9,
        format!("odd n <= 41 and doubly even n <= 48 exact; singly even lower-left / mu0 <= {worst:e}"),
    )
}

fn figure_curve() -> Outcome {
    let points = match error_curve(3, 101, &cfg()) {
        Ok(p) => p,
        Err(e) => return failure(e.to_string()),
    };
    let primes_off: Vec<usize> = points
        .iter()
        .filter(|p| p.prime_near_eps == Some(false))
        .map(|p| p.n)
        .collect();
    let mod6_off: Vec<usize> = points
        .iter()
        .filter(|p| p.mod6_elevated == Some(false))
        .map(|p| p.n)
        .collect();
    println!("    observed: prime n with e_n > 1e-9: {primes_off:?}");
    println!("    observed: n = 3 mod 6 below neighbour median: {mod6_off:?}");
    outcome(points.iter().all(|p| p.below_bound), format!("{} orders, e_n <= 1/n everywhere", points.len()))
}

fn generator_fidelity() -> Outcome {
    let raw = include_str!("../fixtures/printed_squares.txt");
    let mut checked = Vec::new();
    for block in raw.split("\n\n").filter(|b| !b.trim().is_empty()) {
        let mut lines = block.lines();
        let n: usize = lines
            .next()
            .and_then(|h| h.strip_prefix("n = "))
            .and_then(|v| v.trim().parse().ok())
            .expect("block header");
        let printed: Vec<i64> = lines.flat_map(|l| l.split_whitespace().map(|v| v.parse::<i64>().unwrap())).collect();
        let generated = magic(n).expect("square");
        if generated.entries() != printed.as_slice() {
            return failure(format!("n = {n} differs from the printed matrix"));
        }
        checked.push(n);
    }
    outcome(checked == [3, 4, 5, 6, 8, 10], format!("orders {checked:?} match entry for entry"))
}

fn main() -> ExitCode {
    let mut criteria: Vec<(String, Box<dyn Fn() -> Outcome>)> = TABLE_ORDERS
        .iter()
        .map(|&n| {
            let f: Box<dyn Fn() -> Outcome> = Box::new(move || table_reproduction(n));
            (format!("1 table reproduction n={n:02}"), f)
        })
        .collect();
    criteria.push(("2 odd bound e_n <= 1/n".into(), Box::new(odd_bound)));
    criteria.push(("3 perturbation norm ||S^-1 T|| = 1/n".into(), Box::new(perturbation_norm)));
    criteria.push(("4 closed-form vs numeric spectra".into(), Box::new(closed_form_oracle)));
    criteria.push(("5 singly even spectrum".into(), Box::new(singly_even)));
    criteria.push(("6 doubly even spectrum".into(), Box::new(doubly_even)));
    criteria.push(("7 structural identities".into(), Box::new(structural)));
    criteria.push(("8 error curve".into(), Box::new(figure_curve)));
    criteria.push(("9 generator fidelity".into(), Box::new(generator_fidelity)));

    let mut failed = 0;
    for (name, run) in &criteria {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
