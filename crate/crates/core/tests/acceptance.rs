//! Acceptance suite. Every test prints one `criterion N ... PASS|FAIL` line
//! and then asserts the same outcome. Run with `--nocapture` to see the lines.

use std::sync::OnceLock;

use rug::{Float, Integer, Rational};
use takeuchi_core::ansatz::{
    h_partial_sums, h_series_family, lambda_table, takeuchi_ansatz, DEFAULT_SURPLUS,
};
use takeuchi_core::asymptotics::{
    bell_log_asymptotic, conjecture1_log_T, figure2_ratio, growth_gap_exact, knuth_bounds_check,
    WValue,
};
use takeuchi_core::extrapolation::{
    estimate_ct_from_tables, estimate_d_lambda_from_logs, family_log_ratios, family_residual,
    ExtrapolationResult, REFERENCE_C_T,
};
use takeuchi_core::numerics::{agreeing_digits, ln_integer, GaussianRational, LambdaPoly};
use takeuchi_core::sequences::{bell_numbers, takeuchi_numbers};
use takeuchi_core::series::{
    verify_bell_egf, verify_family_functional_equation, verify_identity,
    verify_special_case_identity, verify_takeuchi_functional_equation, VerificationReport,
};
use takeuchi_core::tak_oracle::{oracle_table, DEFAULT_BUDGET};
use takeuchi_core::Polynomial;

const P: u32 = 3072;

fn report(n: u32, what: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {n:>2} [{what}]: {verdict}  {detail}");
}

/// `T_0..T_1001` and `B_0..B_1001`, shared across criteria.
fn tables() -> &'static (Vec<Integer>, Vec<Integer>) {
    static T: OnceLock<(Vec<Integer>, Vec<Integer>)> = OnceLock::new();
    T.get_or_init(|| (takeuchi_numbers(1001).values, bell_numbers(1001).values))
}

fn c_t() -> &'static ExtrapolationResult {
    static C: OnceLock<ExtrapolationResult> = OnceLock::new();
    C.get_or_init(|| {
        let (t, b) = tables();
        estimate_ct_from_tables(t, b, 1000, P).expect("C_T extrapolation")
    })
}

fn reference_c_t() -> Float {
    Float::with_val(P, Float::parse(REFERENCE_C_T).unwrap())
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

/// `scale * (c_0 v^m + ... + c_m)` from coefficients listed highest degree first.
fn poly(scale: Rational, desc: &[i64]) -> Polynomial<Rational> {
    Polynomial::new(desc.iter().rev().map(|&c| Rational::from(c) * &scale).collect())
}

#[test]
fn criterion_01_sequence_ground_truth() {
    let expected: Vec<Integer> = [0, 1, 4, 14, 53, 223, 1034, 5221, 28437, 165859]
        .iter()
        .map(|&v| Integer::from(v))
        .collect();
    let t = takeuchi_numbers(9).values;
    let oracle = oracle_table(8, DEFAULT_BUDGET);
    let pass = t == expected && oracle.cutoff.is_none() && oracle.table.values == expected[..9];
    report(1, "sequence ground truth", pass, &format!("T_0..T_9 = {t:?}; oracle agrees for n <= 8"));
    assert!(pass);
}

#[test]
fn criterion_02_formal_verification() {
    const K: usize = 30;
    let mut reports: Vec<VerificationReport> = vec![
        verify_takeuchi_functional_equation(K).unwrap(),
        verify_bell_egf(K).unwrap(),
    ];
    for lam in 0..=3i64 {
        reports.push(verify_family_functional_equation(&Rational::from(lam), K).unwrap());
        for n in [0i64, 1, 2, 5] {
            reports.push(verify_identity(&Rational::from(lam), &Rational::from(n), K).unwrap());
        }
    }
    for n in [0u32, 1, 2, 5] {
        reports.push(verify_special_case_identity(n, K).unwrap());
    }
    let clauses: usize = reports.iter().map(|r| r.clauses.len()).sum();
    let failing: Vec<String> = reports
        .iter()
        .flat_map(|r| r.clauses.iter().filter(|c| !c.pass).map(move |c| format!("{}/{}", r.what, c.name)))
        .collect();
    let pass = failing.is_empty() && reports.iter().all(|r| r.order == K);
    report(2, "formal verification", pass, &format!("{clauses} clauses through order {K}; failing: {failing:?}"));
    assert!(pass);
}

#[test]
fn criterion_03_knuth_bounds() {
    let (t, _) = tables();
    let bad: Vec<usize> = (50..=500)
        .filter(|&n| {
            let c = knuth_bounds_check(&t[n], n, 256).unwrap();
            !(c.lower_ok && c.upper_ok)
        })
        .collect();
    let pass = bad.is_empty();
    report(3, "bounds", pass, &format!("strict for 50 <= n <= 500; violations at {bad:?}"));
    assert!(pass);
}

#[test]
fn criterion_04_growth_gap() {
    let (t, b) = tables();
    let mut below_one = Vec::new();
    let mut above_band = Vec::new();
    let mut worst = 0.0f64;
    for n in 100..=1000 {
        let gap = growth_gap_exact(t, b, n).unwrap();
        if gap < 1 {
            below_one.push(n);
        }
        let wv = WValue::new(n, 256).unwrap();
        let excess = Float::with_val(256, &(gap - Rational::from(1)));
        let ratio = (excess / wv.exp_neg(1)).to_f64();
        worst = worst.max(ratio);
        if ratio > 10.0 {
            above_band.push(n);
        }
    }
    let pass = below_one.is_empty() && above_band.is_empty();
    report(
        4,
        "growth gap",
        pass,
        &format!(
            "gap >= 1 exactly for 100..=1000 (violations {below_one:?}); max (gap-1)e^w = {worst:.4} <= 10 (violations {above_band:?})"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_05_constant_c_t() {
    let r = c_t();
    let matching = agreeing_digits(&r.estimate, &reference_c_t(), 25);
    let (t, b) = tables();
    let wv = WValue::new(1000u32, P).unwrap();
    let raw = figure2_ratio(t, b, &wv).unwrap();
    let raw_gap = Float::with_val(P, &raw - &reference_c_t()).abs() / wv.exp_neg(2);
    let pass = matching >= 12 && r.stable_digits >= 12 && raw_gap < 10;
    report(
        5,
        "C_T",
        pass,
        &format!(
            "estimate {} agrees with reference to {matching} digits; stable_digits = {}; |u_1000 - C_T| e^(2w) = {:.3}",
            r.estimate.to_string_radix(10, Some(20)),
            r.stable_digits,
            raw_gap.to_f64()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_06_conjecture_residual() {
    let (t, _) = tables();
    let ct = &c_t().estimate;
    let mut scaled = Vec::new();
    for n in [200usize, 500, 1000] {
        let wv = WValue::new(n, P).unwrap();
        let v = conjecture1_log_T(&wv, ct).unwrap();
        let res = Float::with_val(P, ln_integer(P, &t[n]) - v).abs();
        scaled.push((n, (res / wv.exp_neg(2)).to_f64()));
    }
    let pass = scaled.iter().all(|&(_, s)| s <= 20.0);
    report(6, "log T_n residual", pass, &format!("|residual| e^(2w) at n = {scaled:?}, bound 20"));
    assert!(pass);
}

#[test]
fn criterion_07_bell_asymptotics() {
    let (_, b) = tables();
    let mut errs = Vec::new();
    for n in [100usize, 300, 1000] {
        let wv = WValue::new(n, 256).unwrap();
        let e = Float::with_val(256, ln_integer(256, &b[n]) - bell_log_asymptotic(&wv, 2).unwrap()).abs();
        errs.push((n, e.to_f64(), (wv.exp_neg(3) * 100u32).to_f64()));
    }
    let decreasing = errs.windows(2).all(|w| w[1].1 < w[0].1);
    let small = errs[2].1 < errs[2].2;
    let pass = decreasing && small;
    let shown: Vec<String> = errs.iter().map(|(n, e, _)| format!("n={n}: {e:.3e}")).collect();
    report(
        7,
        "Bell asymptotics",
        pass,
        &format!("errors {shown:?}; decreasing = {decreasing}; at 1000 below 100 e^(-3w) = {:.3e}: {small}", errs[2].2),
    );
    assert!(pass);
}

#[test]
fn criterion_08_ansatz_closed_forms() {
    let run = takeuchi_ansatz(8, DEFAULT_SURPLUS).unwrap();
    let expected: Vec<Vec<(i64, Polynomial<Rational>)>> = vec![
        vec![(1, poly(q(1, 1), &[1]))],
        vec![(2, poly(q(2, 1), &[1])), (1, poly(q(-1, 2), &[1, 1, 4, 2]))],
        vec![
            (3, poly(q(-1, 8), &[1])),
            (2, poly(q(-1, 1), &[1, 3, 7, 6])),
            (1, poly(q(1, 24), &[3, 6, 47, 52, 144, 74, 51])),
        ],
        vec![
            (4, poly(q(-347, 108), &[1])),
            (3, poly(q(1, 16), &[1, 5, 12, 12])),
            (2, poly(q(1, 12), &[3, 18, 89, 226, 411, 406, 195])),
            (1, poly(q(-1, 432), &[9, 27, 315, 603, 3024, 3384, 8757, 4707, 5484, 772])),
        ],
    ];
    let mut form_mismatch = Vec::new();
    for (i, terms) in expected.iter().enumerate() {
        let l = i + 1;
        let fit = &run.fits[l];
        let ok_gauss = fit.gamma == 1 && fit.beta == 0;
        let ok_terms = fit.terms.iter().all(|t| {
            let want = terms.iter().find(|(j, _)| *j == t.j).map(|(_, p)| p.clone());
            want.unwrap_or_else(|| Polynomial::new(vec![])) == t.poly
        }) && terms.iter().all(|(j, _)| fit.poly(*j).is_some());
        if !(ok_gauss && ok_terms) {
            form_mismatch.push(l);
        }
    }
    let lt = lambda_table(&run);
    let reference = [
        q(0, 1),
        q(1, 1),
        q(2, 1),
        q(-1, 8),
        q(-347, 108),
        q(28201, 3456),
        q(-3172987, 216000),
        q(822813607, 93312000),
        Rational::from((Integer::from(2183235065857i64), Integer::from(16003008000i64))),
    ];
    let lambdas_ok = lt.lambdas == reference;
    let pass = form_mismatch.is_empty() && lambdas_ok && lt.mu_integral();
    report(
        8,
        "ansatz closed forms",
        pass,
        &format!(
            "r_1..r_4 mismatches at l = {form_mismatch:?}; λ_0..λ_8 match = {lambdas_ok}; μ_1..μ_8 integral = {} (μ = {:?})",
            lt.mu_integral(),
            lt.mu.iter().map(|m| m.to_string()).collect::<Vec<_>>()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_09_family_h_series() {
    let h = h_series_family(7, DEFAULT_SURPLUS).unwrap();
    let reference: Vec<LambdaPoly> = vec![
        poly(q(1, 2), &[1, -1]),
        poly(q(-1, 24), &[2, 18, -5]),
        poly(q(-1, 216), &[33, 90, -329, 54]),
        poly(q(-1, 960), &[52, -520, 0, 4240, -502]),
    ];
    let mut clauses = Vec::new();
    for (i, want) in reference.iter().enumerate() {
        let k = i + 1;
        let got = &h.coeffs[k];
        clauses.push((k, got == want, got.to_string_in("λ"), want.to_string_in("λ")));
    }
    let bounded = h.degrees_bounded();
    let degrees: Vec<Option<usize>> = h.coeffs.iter().map(|p| p.degree()).collect();
    let pass = bounded && clauses.iter().all(|c| c.1);
    let mut detail = format!("deg_λ [x^k] <= k through k = 7: {bounded} (degrees {degrees:?})");
    for (k, ok, got, want) in &clauses {
        if *ok {
            detail.push_str(&format!("; x^{k} matches"));
        } else {
            detail.push_str(&format!("; x^{k} MISMATCH computed {got} vs reference {want}"));
        }
    }
    report(9, "family h-series", pass, &detail);
    assert!(pass);
}

#[test]
fn criterion_10_family_asymptotics() {
    const N_MAX: usize = 800;
    const PREC: u32 = 1024;
    let mut all = true;
    let mut detail = Vec::new();
    for lam in ["1", "2", "1/2"] {
        let g: GaussianRational = lam.parse().unwrap();
        let logs = family_log_ratios(&g, N_MAX, PREC).unwrap();
        let d = estimate_d_lambda_from_logs(&logs, N_MAX, PREC).unwrap();
        let mut abs = Vec::new();
        let mut scaled = Vec::new();
        for n in [200usize, 400, 800] {
            let wv = WValue::new(n, PREC).unwrap();
            let r = family_residual(&logs, n, &d.estimate, PREC).unwrap().abs();
            scaled.push((Float::with_val(PREC, &r / wv.exp_neg(2))).to_f64());
            abs.push(r.to_f64());
        }
        let shrinking = abs.windows(2).all(|w| w[1] < w[0]);
        let spread = scaled.iter().cloned().fold(f64::MIN, f64::max) / scaled.iter().cloned().fold(f64::MAX, f64::min);
        let ok = shrinking && spread <= 2.0;
        all &= ok;
        detail.push(format!(
            "λ={lam}: d = {} ({} digits), |res| e^(2w) = {:?}, spread {spread:.3}",
            d.estimate.to_string_radix(10, Some(14)),
            d.stable_digits,
            scaled.iter().map(|s| format!("{s:.4}")).collect::<Vec<_>>()
        ));
    }
    report(10, "family asymptotics", all, &detail.join("; "));
    assert!(all);
}

#[test]
fn criterion_11_partial_sums_report() {
    let run = takeuchi_ansatz(8, DEFAULT_SURPLUS).unwrap();
    let lambdas = lambda_table(&run).lambdas;
    let sums = h_partial_sums(&lambdas);
    let want5 = q(0, 1) + q(1, 1) + q(2, 1) - q(1, 8) - q(347, 108) + q(28201, 3456);
    let ct = c_t();
    let pass = sums.len() == 9 && sums[5] == want5;
    let listed: Vec<String> = sums
        .iter()
        .enumerate()
        .map(|(l, s)| format!("l<={l}: {s} ≈ {}", Float::with_val(64, s).to_string_radix(10, Some(8))))
        .collect();
    report(
        11,
        "partial sums report",
        pass,
        &format!(
            "C_T ≈ {} next to Σλ_l: {}; no convergence asserted",
            ct.estimate.to_string_radix(10, Some(16)),
            listed.join(", ")
        ),
    );
    assert!(pass);
}
