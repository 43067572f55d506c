mod common;

use common::*;
use liprime::analysis::*;
use liprime::prime_zeta::*;
use liprime::primes::*;
use liprime::special_fn::*;
use liprime::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// ---- special functions ----

#[test]
fn li_matches_simpson() {
    let cfg = QuadratureConfig::default();
    for &x in &[2.5, 3.0, 10.0, 100.0, 1e3, 1e5, 1e8] {
        let got = li(x, &cfg).unwrap();
        assert!(rel(got, li_oracle(x)) < 1e-11, "li({x}) = {got}, oracle {}", li_oracle(x));
    }
}

#[test]
fn li_inverse_matches_bisection() {
    for &y in &[1.0, 25.0, 100.0, 1e4] {
        let got = li_inverse(y, li_inverse_tol(y)).unwrap();
        assert!(rel(got, li_inverse_oracle(y)) < 1e-11, "y = {y}");
    }
}

#[test]
fn li_inverse_round_trip_to_1e8() {
    let cfg = QuadratureConfig::default();
    for i in 0..=40 {
        let y = 10f64.powf(8.0 * i as f64 / 40.0);
        let x = li_inverse(y, li_inverse_tol(y)).unwrap();
        let back = li(x, &cfg).unwrap();
        assert!((back - y).abs() <= 2.0 * li_inverse_tol(y) * back.ln().max(1.0), "y = {y}: li(li⁻¹(y)) = {back}");
    }
}

#[test]
fn e1_matches_quadrature() {
    for &x in &[0.05, 0.3, std::f64::consts::LN_2, 1.0, 2.5, 10.0] {
        let got = exp_integral_e1(x).unwrap();
        assert!(rel(got, e1_oracle(x)) < 1e-10, "E1({x}) = {got}, oracle {}", e1_oracle(x));
    }
}

#[test]
fn zeta_matches_euler_maclaurin() {
    let pts = [c(2.0, 0.0), c(3.0, 0.0), c(0.5, 14.0), c(0.75, 0.0), c(1.2, 10.0), c(2.0, 5.0), c(0.6, -7.0), c(5.0, 1.0)];
    for &s in &pts {
        let got = zeta(s, DEFAULT_ZETA_TERMS).unwrap();
        let want = zeta_em(s);
        assert!((got - want).norm() < 1e-12 * want.norm().max(1.0), "zeta({s}) = {got}, oracle {want}");
    }
}

#[test]
fn zeta_log_deriv_matches_difference_quotient() {
    for &s in &[c(2.0, 0.0), c(4.0, 0.0), c(1.2, 3.0), c(0.75, 0.0), c(3.0, -10.0), c(0.6, 5.0)] {
        let got = zeta_log_deriv(s, DEFAULT_ZETA_TERMS).unwrap();
        let want = zeta_log_deriv_oracle(s);
        assert!((got - want).norm() < 1e-9 * want.norm().max(1.0), "ζ'/ζ({s}) = {got}, oracle {want}");
    }
}

// ---- primes ----

#[test]
fn sieve_matches_trial_division() {
    let t = sieve(100_000).unwrap();
    for n in 0..=100_000 {
        assert_eq!(t.is_prime(n), is_prime_trial(n), "n = {n}");
    }
}

#[test]
fn prime_counts() {
    let t = table_1e7();
    assert_eq!(pi(1e6, t).unwrap(), 78_498);
    assert_eq!(pi(1e7, t).unwrap(), 664_579);
    assert_eq!(nth_prime(25, t).unwrap(), 97);
    assert_eq!(nth_prime(100, t).unwrap(), 541);
    for n in 1..=10_000 {
        assert_eq!(t.pi_int(t.nth_prime(n).unwrap()).unwrap(), n);
    }
}

#[test]
fn mobius_matches_factorisation() {
    let m = mobius_table(10_000).unwrap();
    for n in 1..=10_000 {
        assert_eq!(m.mu(n), mobius_trial(n), "n = {n}");
    }
    assert_eq!(m.mertens(1000), 2);
    assert_eq!(m.mertens(10_000), -23);
}

// ---- prime zeta ----

fn brute_prime_zeta(s: f64, limit: u64) -> f64 {
    (2..=limit).filter(|&n| is_prime_trial(n)).map(|p| (p as f64).powf(-s)).sum()
}

#[test]
fn direct_prime_zeta_against_trial_division_sum() {
    let t = table_1e7();
    let pol = TruncationPolicy::default().with_prime_limit(20_000).with_tail_correction(false);
    for &s in &[1.5, 2.0, 3.0] {
        let got = prime_zeta_direct(c(s, 0.0), &pol, t).unwrap();
        assert!(rel(got.value.re, brute_prime_zeta(s, 20_000)) < 1e-13);
    }
}

#[test]
fn direct_prime_zeta_values() {
    let t = table_1e7();
    let pol = TruncationPolicy::default();
    let two = prime_zeta_direct(c(2.0, 0.0), &pol, t).unwrap();
    assert!((two.value.re - 0.452_247_420_0).abs() < 1e-8);
    let three = prime_zeta_direct(c(3.0, 0.0), &pol, t).unwrap();
    assert!((three.value.re - 0.174_762_639_2).abs() < 1e-10);
    let z2 = zeta(c(2.0, 0.0), 64).unwrap().re;
    let s = prime_zeta_direct(c(2.0, 7.0), &pol.with_tail_correction(false), t).unwrap();
    assert!(s.value.re <= z2 - 1.0);
}

#[test]
fn mobius_prime_zeta_matches_direct() {
    let t = table_1e7();
    let pol = TruncationPolicy::default();
    let mob = mobius_table(64).unwrap();
    for (s, tol) in [(2.0, 1e-9), (3.0, 1e-10)] {
        let d = prime_zeta_direct(c(s, 0.0), &pol, t).unwrap().value;
        let m = prime_zeta_mobius(c(s, 0.0), &pol, &mob).unwrap().value;
        assert!((d - m).norm() < tol, "s = {s}: {d} vs {m}");
    }
}

#[test]
fn mobius_prime_zeta_continuation_fixture() {
    let mob = mobius_table(64).unwrap();
    let s = c(0.75, 0.0);
    let a = prime_zeta_mobius(s, &TruncationPolicy::default().with_k_max(32), &mob).unwrap();
    let b = prime_zeta_mobius(s, &TruncationPolicy::default().with_k_max(64), &mob).unwrap();
    assert!((a.value - b.value).norm() <= a.tail_estimate);
    assert!(b.converged);
    assert!((b.value.re - 0.614_970_529_250_015_7).abs() < 1e-11);
    assert!((b.value.im - std::f64::consts::PI).abs() < 1e-15);
}

#[test]
fn derivative_direct() {
    let t = table_1e7();
    let pol = TruncationPolicy::default();
    let d = prime_zeta_deriv_direct(c(2.0, 0.0), &pol, t).unwrap().value;
    assert!((d.re - (-0.493_091_109_3)).abs() < 1e-6);
    let h = 1e-4;
    let fp = prime_zeta_direct(c(2.0 + h, 0.0), &pol, t).unwrap().value;
    let fm = prime_zeta_direct(c(2.0 - h, 0.0), &pol, t).unwrap().value;
    assert!(((fp - fm) / (2.0 * h) - d).norm() < 1e-6);
    let d4 = prime_zeta_deriv_direct(c(4.0, 0.0), &pol, t).unwrap().value;
    assert!(d4.re < 0.0 && d4.im == 0.0);
}

#[test]
fn derivative_mobius_matches_direct() {
    let t = table_1e7();
    let pol = TruncationPolicy::default();
    for (s, tol) in [(2.0, 1e-6), (3.0, 1e-8)] {
        let r = mobius_deriv_identity(c(s, 0.0), &pol, t).unwrap();
        assert!(r.residual < tol, "s = {s}: {}", r.residual);
    }
}

#[test]
fn log_deriv_sum_identity() {
    let t = table_1e7();
    let pol = TruncationPolicy::default();
    for s in [c(2.0, 0.0), c(3.0, 1.0)] {
        let r = euler_log_deriv_sum(s, &pol, t).unwrap();
        assert!(r.residual < 1e-6, "s = {s}: {}", r.residual);
        assert!((r.lhs - zeta_log_deriv_oracle(s)).norm() < 1e-9);
    }
}

#[test]
fn log_deriv_sum_trend_near_one() {
    // Plain truncation: every omitted term is positive, so the residual
    // shrinks as the cut-offs grow.
    let t = table_1e7();
    let s = c(1.05, 0.0);
    let mut last = f64::INFINITY;
    for (p, k) in [(100_000, 8), (1_000_000, 16), (10_000_000, 64)] {
        let pol = TruncationPolicy::default().with_prime_limit(p).with_k_max(k).with_tail_correction(false);
        let r = euler_log_deriv_sum(s, &pol, t).unwrap();
        assert!(r.residual < last, "P = {p}: {} after {last}", r.residual);
        last = r.residual;
    }
}

#[test]
fn half_plane_difference_checks() {
    let t = table_1e7();
    let pol = TruncationPolicy::default();
    let s = c(2.0, 0.0);
    let h = half_plane_difference(s, &pol, t).unwrap().value;
    let want = zeta_log_deriv(s, 64).unwrap() - prime_zeta_deriv_direct(s, &pol, t).unwrap().value;
    assert!((h - want).norm() < 1e-6);

    let r = half_plane_difference(c(0.75, 0.0), &pol, t).unwrap();
    assert!(r.value.re.is_finite() && r.value.re < 0.0);
    let p = 9_999_991f64;
    let expected_tail = p.powf(-0.5) * (2.0 * p.ln() + 4.0) / (1.0 - p.powf(-0.75));
    assert!(rel(r.tail_estimate, expected_tail) < 1e-12);
    assert!((r.tail_estimate - 1.1459e-2).abs() < 1e-5);
}

#[test]
fn continuation_reconstructs_log_deriv() {
    let t = table_1e7();
    let pol = TruncationPolicy::default();
    for s in [c(0.75, 0.0), c(0.8, 3.0), c(0.9, 0.0), c(0.6, 5.0)] {
        let m = prime_zeta_deriv_mobius(s, &pol).unwrap();
        let h = half_plane_difference(s, &pol, t).unwrap();
        let z = zeta_log_deriv(s, 64).unwrap();
        assert!((m.value + h.value - z).norm() <= m.tail_estimate + h.tail_estimate, "s = {s}");
    }
}

#[test]
fn tilde_zeta_methods() {
    let t = table_1e7();
    let pol = TruncationPolicy::default();
    let pi2 = std::f64::consts::PI.powi(2);
    let ratio = tilde_zeta(c(2.0, 0.0), TildeMethod::Ratio, &pol, t).unwrap();
    assert!((ratio.re - pi2 / 15.0).abs() < 1e-12);
    assert!((ratio - zeta_em(c(4.0, 0.0)) / zeta_em(c(2.0, 0.0))).norm() < 1e-12);
    let euler = tilde_zeta(c(2.0, 0.0), TildeMethod::EulerProduct, &pol, t).unwrap();
    assert!((euler - ratio).norm() < 1e-8);
    for &sigma in &[1.5, 2.0, 3.0] {
        for &tt in &[0.0, 4.0, 10.0] {
            let r = tilde_product_identity(c(sigma, tt), TildeMethod::EulerProduct, &pol, t).unwrap();
            assert!(r.residual < 1e-7, "s = {sigma}+{tt}i: {}", r.residual);
        }
    }
    for i in 0..=12 {
        for &tt in &[0.0, 2.0, 6.0, 10.0] {
            let s = c(0.6 + 0.2 * i as f64, tt);
            if (s - 1.0).norm() < 1e-9 {
                continue;
            }
            let r = tilde_product_identity(s, TildeMethod::Ratio, &pol, t).unwrap();
            assert!(r.residual < 1e-10, "s = {s}");
        }
    }
}

#[test]
fn tilde_log_deriv_identity() {
    let t = table_1e7();
    let pol = TruncationPolicy::default();
    assert!(tilde_log_deriv_series(c(2.0, 0.0), &pol, t).unwrap().residual < 1e-6);
    assert!(tilde_log_deriv_series(c(3.0, 0.0), &pol, t).unwrap().residual < 1e-8);
}

#[test]
fn odd_k_identity_and_triangle() {
    let t = table_1e7();
    let pol = TruncationPolicy::default();
    for s in [c(2.0, 0.0), c(2.0, 2.0), c(1.5, 5.0)] {
        let odd = odd_k_identity(s, &pol, t).unwrap();
        assert!(odd.residual < 1e-6, "s = {s}");
        let e12 = euler_log_deriv_sum(s, &pol, t).unwrap();
        let e26 = tilde_log_deriv_series(s, &pol, t).unwrap();
        assert!(odd.residual <= e12.residual + e26.residual + 1e-15, "s = {s}");
    }
}

// ---- analysis ----

#[test]
fn error_table_rows() {
    let t = table_1e7();
    let rows = approx_error_table(10_000, t).unwrap();
    let r25 = rows[24];
    assert_eq!((r25.n, r25.p_n), (25, 97));
    assert!(rel(r25.li_inv, li_inverse_oracle(25.0)) < 1e-11);
    assert!((r25.abs_err - 15.389_857_738_759_6).abs() < 1e-9);
    assert!(rows[0].p_n == 2 && rows[0].li_inv > 2.0 && rows[0].abs_err > 0.0);
    let cfg = QuadratureConfig::default();
    for r in rows.iter().step_by(97) {
        assert_eq!(t.pi_int(r.p_n).unwrap(), r.n);
        let y = r.n as f64;
        assert!((li(r.li_inv, &cfg).unwrap() - y).abs() <= 2.0 * li_inverse_tol(y) * r.li_inv.ln());
    }
    let worst = rows.iter().max_by(|a, b| a.scaled_err.total_cmp(&b.scaled_err)).unwrap();
    assert_eq!(worst.n, 2192);
    assert!((worst.scaled_err - 5.808_400_563_243_903).abs() < 1e-9);
}

#[test]
fn exponent_fit_fixture() {
    let alpha = exponent_fit(100, 10_000, table_1e7()).unwrap();
    assert!(alpha > 0.3 && alpha < 0.7);
    assert!((alpha - 0.517_680_674_053_058_7).abs() < 1e-9);
}

#[test]
fn comparison_majorant_and_trend() {
    let t = table_1e7();
    let s = c(2.0, 0.0);
    let mut last = f64::INFINITY;
    for n in [100, 1000, 10_000] {
        let r = comparison_series(s, n, t).unwrap();
        assert!(r.report.residual <= r.majorant);
        assert!(r.report.residual < last);
        last = r.report.residual;
    }
    // Majorant growth at s = 1.2 against C Σ n^{-(σ + 1/2 - 0.1)}, C fitted
    // from the table as max |L_n - p_n| / n^{0.6}.
    let rows = approx_error_table(10_000, t).unwrap();
    let cfit = rows.iter().map(|r| r.abs_err / (r.n as f64).powf(0.6)).fold(0.0, f64::max);
    let s = c(1.2, 0.0);
    let mut prev = 0.0;
    for n in [1000, 3000, 10_000] {
        let r = comparison_series(s, n, t).unwrap();
        let envelope: f64 = (1..=n).map(|k| (k as f64).powf(-(1.2 + 0.5 - 0.1))).sum::<f64>() * 2.0 * s.norm() * cfit;
        assert!(r.majorant > prev && r.majorant <= envelope, "n = {n}: {} vs {envelope}", r.majorant);
        prev = r.majorant;
    }
}

#[test]
fn error_series_flags() {
    let t = table_1e7();
    let (a, b) = error_series_partial(1.0, 0.05, 10_000, t).unwrap();
    assert!(a.converged && b.converged);
    let (a, b) = error_series_partial(0.6, 0.05, 10_000, t).unwrap();
    assert!(a.converged && b.converged);
    let (a, b) = error_series_partial(0.4, 0.05, 10_000, t).unwrap();
    assert!(!a.converged && !b.converged);
}

#[test]
fn sum_against_integral() {
    let cfg = QuadratureConfig::default();
    let two = integral_vs_sum(c(2.0, 0.0), 10_000, &cfg).unwrap();
    assert!(two.report.residual <= two.bound);
    let three = integral_vs_sum(c(3.0, 0.0), 10_000, &cfg).unwrap();
    assert!(three.report.residual <= three.bound);
    assert!(three.report.residual < two.report.residual);
    // The integral side against Simpson on ∫ u^{-2}/ln u du.
    let la = li_inverse(1.0, li_inverse_tol(1.0)).unwrap();
    let lb = li_inverse(10_001.0, li_inverse_tol(10_001.0)).unwrap();
    let oracle = simpson(|v: f64| (-v).exp() / v, la.ln(), lb.ln(), 200_000);
    assert!(rel(two.report.rhs.re, oracle) < 1e-10);
    for n in [1, 2, 10, 500] {
        for s in [c(2.0, 0.0), c(1.5, 4.0)] {
            let (diff, bound) = interval_difference(s, n, &cfg).unwrap();
            assert!(diff <= bound, "n = {n}, s = {s}");
        }
    }
}

#[test]
fn integral_identity() {
    let cfg = QuadratureConfig::default();
    for s in [1.5, 2.0, 3.0] {
        let r = integral_identity_check(s, &cfg).unwrap();
        assert!(r.value_residual < 1e-8 && r.derivative_residual < 1e-6, "{r:?}");
        assert!(rel(r.value, e1_oracle((s - 1.0) * std::f64::consts::LN_2)) < 1e-9);
    }
    let r2 = integral_identity_check(2.0, &cfg).unwrap();
    assert!((r2.value - 0.378_671_0).abs() < 1e-7);
    let vals: Vec<f64> = [5.0, 10.0, 20.0].iter().map(|&s| log_power_integral(s, &cfg).unwrap()).collect();
    assert!(vals[0] > vals[1] && vals[1] > vals[2] && vals[2] > 0.0);
}
