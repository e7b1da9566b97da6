use magic_spectra::circulant::{reverse_circulant_eigenpairs, CirculantMatrix, GRowCirculant};
use magic_spectra::magic_gen::{magic, magic_sum};
use magic_spectra::numerics::{
    cdot, cnorm, determinant, dft_matrix, eigen_decompose, solve_linear, spectral_norm, DenseMatrix, ToleranceConfig,
};
use magic_spectra::spectra::format::sci6;
use magic_spectra::spectra::min_cost_assignment;
use num_complex::Complex64;
use proptest::prelude::*;

fn matrix(n: usize) -> impl Strategy<Value = DenseMatrix> {
    prop::collection::vec(-10.0f64..10.0, n * n).prop_map(move |v| DenseMatrix::from_vec(n, n, v).unwrap())
}

fn sized_matrix(max: usize) -> impl Strategy<Value = DenseMatrix> {
    (1..=max).prop_flat_map(matrix)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dft_is_unitary_up_to_n(n in 1usize..40) {
        let f = dft_matrix(n).unwrap();
        let g = f.conj_transpose().matmul(&f).unwrap();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { n as f64 } else { 0.0 };
                prop_assert!((g[(i, j)] - want).norm() < 1e-9 * n as f64);
            }
        }
    }

    #[test]
    fn lu_solve_residual(a in sized_matrix(9), seed in 0u64..1000) {
        let n = a.rows();
        let b = DenseMatrix::from_fn(n, 2, |i, j| ((i * 7 + j * 3) as u64 + seed) as f64 % 5.0 - 2.0);
        if let Ok(x) = solve_linear(&a, &b) {
            let r = a.matmul(&x).unwrap().sub(&b).unwrap();
            let scale = a.max_abs() * x.max_abs() * n as f64 + b.max_abs();
            prop_assert!(r.max_abs() <= 1e-9 * scale.max(1.0));
        }
    }

    #[test]
    fn eigenvalues_sum_to_trace_and_multiply_to_determinant(a in sized_matrix(8)) {
        let s = eigen_decompose(&a, &ToleranceConfig::default(), false).unwrap();
        let sum: Complex64 = s.values.iter().sum();
        let prod: Complex64 = s.values.iter().product();
        let scale = a.frobenius_norm().max(1.0);
        prop_assert!((sum - a.trace()).norm() <= 1e-9 * scale * a.rows() as f64);
        let det = determinant(&a).unwrap();
        prop_assert!((prod - det).norm() <= 1e-7 * scale.powi(a.rows() as i32));
        // complex eigenvalues of real matrices come in conjugate pairs
        let imag: f64 = s.values.iter().map(|z| z.im).sum();
        prop_assert!(imag.abs() <= 1e-8 * scale);
    }

    #[test]
    fn eigenpairs_meet_residual_threshold(a in sized_matrix(8)) {
        let cfg = ToleranceConfig::default();
        let s = eigen_decompose(&a, &cfg, true);
        // repeated or ill-conditioned eigenvalues may legitimately fail to
        // produce vectors; when they are produced they must be accurate
        if let Ok(s) = s {
            let worst = s.max_residual(&a).unwrap();
            prop_assert!(worst <= cfg.eig_tol * a.frobenius_norm().max(f64::MIN_POSITIVE));
        }
    }

    #[test]
    fn spectral_norm_bounds(a in sized_matrix(8)) {
        let cfg = ToleranceConfig::default();
        let s = spectral_norm(&a, &cfg).unwrap();
        prop_assert!(s <= a.frobenius_norm() * (1.0 + 1e-12));
        prop_assert!(s * (1.0 + 1e-9) >= a.frobenius_norm() / (a.rows() as f64).sqrt());
        prop_assert!(s * (1.0 + 1e-9) >= a.max_abs());
    }

    #[test]
    fn circulant_modes_are_eigenvectors(row in prop::collection::vec(-5.0f64..5.0, 1..24)) {
        let c = CirculantMatrix::new(row).unwrap();
        let n = c.order();
        let dense = c.realize();
        for (j, lambda) in c.eigenvalues().into_iter().enumerate() {
            let v = magic_spectra::numerics::fourier_mode(n, j);
            let cv = dense.mul_complex_vec(&v);
            let r: Vec<Complex64> = cv.iter().zip(&v).map(|(a, b)| a - lambda * b).collect();
            prop_assert!(cnorm(&r) <= 1e-10 * (1.0 + dense.frobenius_norm()) * (n as f64).sqrt());
        }
    }

    #[test]
    fn g_row_circulant_shift_relation(row in prop::collection::vec(-5.0f64..5.0, 2..20), g in 1usize..40) {
        let n = row.len();
        prop_assume!(gcd(g % n, n) == 1);
        let r = GRowCirculant::new(g, row).unwrap().realize();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(r[(i, j)], r[((i + 1) % n, (j + g) % n)]);
            }
        }
    }

    #[test]
    fn reverse_circulant_pairs(row in prop::collection::vec(1.0f64..5.0, 1..16)) {
        let c = CirculantMatrix::new(row).unwrap();
        let n = c.order();
        if let Ok(pairs) = reverse_circulant_eigenpairs(&c) {
            prop_assert_eq!(pairs.len(), n);
            let jc = DenseMatrix::reversal(n).matmul(&c.realize()).unwrap();
            for p in &pairs {
                let r: Vec<Complex64> =
                    jc.mul_complex_vec(&p.vector).iter().zip(&p.vector).map(|(a, b)| a - b * p.value).collect();
                prop_assert!(cnorm(&r) <= 1e-10 * jc.frobenius_norm());
            }
            for a in 0..n {
                for b in 0..n {
                    let want = if a == b { 1.0 } else { 0.0 };
                    prop_assert!((cdot(&pairs[a].vector, &pairs[b].vector) - want).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn hungarian_is_a_permutation_no_worse_than_identity(
        cost in (1usize..8).prop_flat_map(|k| prop::collection::vec(prop::collection::vec(0.0f64..1.0, k), k))
    ) {
        let a = min_cost_assignment(&cost);
        let mut seen = a.clone();
        seen.sort();
        prop_assert_eq!(seen, (0..cost.len()).collect::<Vec<_>>());
        let total: f64 = a.iter().enumerate().map(|(r, &c)| cost[r][c]).sum();
        let identity: f64 = (0..cost.len()).map(|i| cost[i][i]).sum();
        prop_assert!(total <= identity + 1e-12);
    }

    #[test]
    fn magic_invariants(n in 3usize..70) {
        let sq = magic(n).unwrap();
        sq.check().unwrap();
        let mut entries = sq.entries().to_vec();
        entries.sort();
        prop_assert_eq!(entries, (1..=(n * n) as i64).collect::<Vec<_>>());
        prop_assert_eq!(sq.rows().next().unwrap().iter().sum::<i64>(), magic_sum(n));
    }

    #[test]
    fn sci6_round_trips_to_six_digits(x in 1e-300f64..1e300) {
        let s = sci6(x);
        let back: f64 = s.parse().unwrap();
        prop_assert!((back - x).abs() <= 5.000001e-7 * x);
        let exp = s.split_once('e').unwrap().1;
        prop_assert!(exp.len() >= 3 && (exp.starts_with('+') || exp.starts_with('-')));
    }
}
