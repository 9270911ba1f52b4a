use proptest::prelude::*;
use rug::Float;
use takeuchi_core::extrapolation::{accelerate, collocate, Basis, Method};
use takeuchi_core::numerics::agreeing_digits;

const P: u32 = 256;

fn f(v: f64) -> Float {
    Float::with_val(P, v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // a + c r^n is summed exactly by one Aitken step and by ε_2.
    #[test]
    fn geometric_sequences_are_exact(a in -5.0f64..5.0, c in 0.1f64..3.0, r in 0.1f64..0.9) {
        let seq: Vec<Float> = (0..8).map(|n| f(a) + f(c) * Float::with_val(P, rug::ops::Pow::pow(&f(r), n as u32))).collect();
        let target = f(a);
        let ait = accelerate(&seq, Method::Aitken, None).unwrap();
        let wyn = accelerate(&seq, Method::Wynn, None).unwrap();
        for v in ait[1].iter().chain(wyn[1].iter()) {
            prop_assert!(agreeing_digits(v, &target, 40) >= 35 || Float::with_val(P, v - &target).abs() < 1e-60);
        }
    }

    // A polynomial in x of degree d is extrapolated exactly by column d.
    #[test]
    fn richardson_is_exact_on_polynomials(coeffs in proptest::collection::vec(-3.0f64..3.0, 1..5)) {
        let x: Vec<Float> = (1..=8).map(|k| f(1.0 / k as f64)).collect();
        let seq: Vec<Float> = x.iter().map(|xi| {
            coeffs.iter().rev().fold(f(0.0), |acc, c| acc * xi + c)
        }).collect();
        let cols = accelerate(&seq, Method::RichardsonInX, Some(&x)).unwrap();
        let d = coeffs.len() - 1;
        for v in &cols[d] {
            prop_assert!(Float::with_val(P, v - coeffs[0]).abs() < 1e-60);
        }
    }

    // Tableaux never contain NaN or infinities.
    #[test]
    fn tableaux_are_finite(vals in proptest::collection::vec(-10.0f64..10.0, 3..12)) {
        let seq: Vec<Float> = vals.iter().map(|&v| f(v)).collect();
        for m in [Method::Wynn, Method::Aitken] {
            let cols = accelerate(&seq, m, None).unwrap();
            prop_assert!(cols.iter().flatten().all(|v| v.is_finite()));
            prop_assert_eq!(&cols[0], &seq);
        }
    }

    // Collocation recovers the constant of any member of its own model.
    #[test]
    fn collocation_reproduces_model(c0 in -3.0f64..3.0, c1 in -3.0f64..3.0, c2 in -3.0f64..3.0) {
        let basis = Basis { k_max: 3, a: 1, b: 0 };
        let pts: Vec<(Float, Float)> = [3.0, 3.4, 3.9, 4.5, 5.2].iter().map(|&w| {
            let w = f(w);
            let e2 = Float::with_val(P, (-(w.clone() * 2u32)).exp_ref());
            let e3 = Float::with_val(P, (-(w.clone() * 3u32)).exp_ref());
            let s = f(c0) + e2 * c1 / Float::with_val(P, &w + 1u32) + e3 * c2;
            (w, s)
        }).collect();
        let c = collocate(&pts, basis).unwrap();
        prop_assert!(Float::with_val(P, c - c0).abs() < 1e-50);
    }
}
