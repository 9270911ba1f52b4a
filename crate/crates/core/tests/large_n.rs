//! Checks that need the exact tables up to n = 1001.

use std::sync::OnceLock;

use rug::{Float, Integer};
use takeuchi_core::asymptotics::{figure2_ratio, fit_hat_t, growth_gap, WValue};
use takeuchi_core::extrapolation::{estimate_ct_from_tables, estimate_d_lambda, REFERENCE_C_T};
use takeuchi_core::numerics::{agreeing_digits, GaussianRational};
use takeuchi_core::sequences::{bell_numbers, takeuchi_numbers};

const P: u32 = 512;

fn tables() -> &'static (Vec<Integer>, Vec<Integer>) {
    static T: OnceLock<(Vec<Integer>, Vec<Integer>)> = OnceLock::new();
    T.get_or_init(|| (takeuchi_numbers(1001).values, bell_numbers(1001).values))
}

fn u(n: usize) -> Float {
    let (t, b) = tables();
    figure2_ratio(t, b, &WValue::new(n, P).unwrap()).unwrap()
}

#[test]
fn ratio_settles_near_the_limit() {
    let ct = Float::with_val(P, Float::parse(REFERENCE_C_T).unwrap());
    let wv = WValue::new(1000, P).unwrap();
    let raw = Float::with_val(P, u(1000) - &ct).abs();
    assert!(raw < wv.exp_neg(2) * 10u32);

    let last = u(1000);
    let bound = WValue::new(800, P).unwrap().exp_neg(2) * 10u32;
    for n in 800..=1000 {
        assert!(Float::with_val(P, u(n) - &last).abs() <= bound, "n = {n}");
    }
}

#[test]
fn ratio_steps_shrink() {
    let us: Vec<Float> = (500..=1000).map(u).collect();
    let steps: Vec<Float> = us.windows(2).map(|w| Float::with_val(P, &w[1] - &w[0]).abs()).collect();
    assert!(steps.windows(2).all(|s| s[1] < s[0]));
}

#[test]
fn gap_excess_decreases() {
    let (t, b) = tables();
    let g: Vec<f64> = [100, 300, 1000]
        .iter()
        .map(|&n| growth_gap(t, b, n, P).unwrap().to_f64() - 1.0)
        .collect();
    assert!(g[0] > g[1] && g[1] > g[2] && g[2] > 0.0);
    let w = WValue::new(1000, P).unwrap();
    assert!(g[2] <= 10.0 * w.exp_neg(1).to_f64());
}

#[test]
fn dominated_sum_cannot_match_next_order() {
    let (t, _) = tables();
    let ct = Float::with_val(P, Float::parse(REFERENCE_C_T).unwrap());
    let ns: Vec<usize> = (300..=1000).step_by(50).collect();
    let fit = fit_hat_t(t, &ns, &ct, P).unwrap();
    // the best (h1, h2) still leaves an O(1) residual after scaling by e^w
    let spread = fit.scaled_residuals.iter().map(|r| r.1.abs()).fold(0.0, f64::max);
    assert!(fit.rms > 1e-3, "rms {}", fit.rms);
    assert!(spread > 1e-3);
}

#[test]
fn c_t_digits_grow_with_depth() {
    let (t, b) = tables();
    let ct = Float::with_val(1024, Float::parse(REFERENCE_C_T).unwrap());
    let digits: Vec<u32> = [250, 300, 400]
        .iter()
        .map(|&n| {
            let r = estimate_ct_from_tables(t, b, n, 1024).unwrap();
            let d = agreeing_digits(&r.estimate, &ct, 25);
            assert!(r.stable_digits <= d + 1, "n_max {n}: claimed {} vs {d}", r.stable_digits);
            d
        })
        .collect();
    assert!(digits.windows(2).all(|w| w[1] >= w[0]), "{digits:?}");
    assert!(digits[0] >= 8);
}

#[test]
fn c_t_stable_under_more_precision() {
    let (t, b) = tables();
    let a = estimate_ct_from_tables(t, b, 400, 1024).unwrap();
    let c = estimate_ct_from_tables(t, b, 400, 1536).unwrap();
    assert!(agreeing_digits(&a.estimate, &c.estimate, 100) >= a.stable_digits);
    // starved precision is reported, not papered over
    assert!(estimate_ct_from_tables(t, b, 400, 64).is_err());
}

#[test]
fn d_one_is_finite_and_stable() {
    let r = estimate_d_lambda(&GaussianRational::from(1i64), 600, 1024).unwrap();
    assert!(r.estimate.is_finite());
    assert!(r.stable_digits >= 10);
    assert!(r.estimate_im.is_none());
}

#[test]
fn complex_parameter_tracks_branch() {
    let lam: GaussianRational = "1+1/2*i".parse().unwrap();
    let r = estimate_d_lambda(&lam, 300, 768).unwrap();
    assert!(r.estimate_im.as_ref().is_some_and(|v| v.is_finite()));
    assert!(r.stable_digits >= 4);
}
