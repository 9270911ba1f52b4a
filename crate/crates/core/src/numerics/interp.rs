use std::collections::HashSet;

use rug::{Integer, Rational};

use super::poly::Polynomial;
use super::ring::{QAlgebra, Ring};
use crate::error::{Error, Result};

/// Unique polynomial of degree below `points.len()` through all points,
/// by Newton divided differences.
pub fn lagrange_interpolate<R: QAlgebra>(points: &[(i64, R)]) -> Result<Polynomial<R>> {
    let mut seen = HashSet::new();
    for (x, _) in points {
        if !seen.insert(*x) {
            return Err(Error::DuplicateNode(*x));
        }
    }
    let n = points.len();
    let xs: Vec<i64> = points.iter().map(|p| p.0).collect();
    let mut dd: Vec<R> = points.iter().map(|p| p.1.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = dd[i].minus(&dd[i - 1]);
            let den = Integer::from(xs[i] - xs[i - j]);
            dd[i] = num.div_integer(&den);
        }
    }
    // Horner in Newton form
    let mut acc = Polynomial::<R>::zero();
    for i in (0..n).rev() {
        let shifted = acc.mul_var_pow(1).minus(&acc.scale_by(&R::from_i64(xs[i])));
        acc = shifted.plus(&Polynomial::constant(dd[i].clone()));
    }
    Ok(acc)
}

/// Forward-difference table of `values`: entry `i` is `Δ^i values[0]`.
pub fn forward_differences<R: Ring>(values: &[R]) -> Vec<R> {
    let mut row = values.to_vec();
    let mut out = Vec::with_capacity(values.len());
    while !row.is_empty() {
        out.push(row[0].clone());
        row = row.windows(2).map(|w| w[1].minus(&w[0])).collect();
    }
    out
}

/// Interpolant of degree at most `degree` through `(start + i, values[i])`,
/// using only ring operations: returns `(P, degree!)` with the interpolant
/// equal to `P / degree!`. Every sample beyond the first `degree + 1` must
/// lie on the interpolant; otherwise the index of the first offending sample
/// is returned as the error.
pub fn interpolate_consecutive<R: Ring>(
    start: i64,
    values: &[R],
    degree: usize,
) -> std::result::Result<(Polynomial<R>, Integer), usize> {
    assert!(values.len() > degree, "need at least degree + 1 samples");
    let diffs = forward_differences(values);
    // surplus samples lie on the interpolant iff all higher differences vanish
    if let Some(i) = (degree + 1..diffs.len()).find(|&i| !diffs[i].is_zero()) {
        return Err(i);
    }
    let mut fact = vec![Integer::from(1)];
    for i in 1..=degree {
        let next = Integer::from(&fact[i - 1] * i);
        fact.push(next);
    }
    let kfact = fact[degree].clone();
    // degree! * p(n) = sum_i Δ^i (degree!/i!) prod_{j<i} (n - start - j), in Horner form
    let mut acc = Polynomial::<R>::zero();
    for i in (0..=degree).rev() {
        let c = Integer::from(&kfact / &fact[i]);
        let node = R::from_i64(start + i as i64);
        let term = diffs[i].times_integer(&c);
        acc = acc
            .mul_var_pow(1)
            .minus(&acc.scale_by(&node))
            .plus(&Polynomial::constant(term));
    }
    Ok((acc, kfact))
}

/// Convenience wrapper returning rational coefficients.
pub fn interpolate_consecutive_rational(
    start: i64,
    values: &[Integer],
    degree: usize,
) -> std::result::Result<Polynomial<Rational>, usize> {
    let (p, den) = interpolate_consecutive(start, values, degree)?;
    Ok(p.map(|c| Rational::from((c.clone(), den.clone()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn pts(v: &[(i64, i64)]) -> Vec<(i64, Rational)> {
        v.iter().map(|&(x, y)| (x, Rational::from(y))).collect()
    }

    #[test]
    fn examples() {
        let p = lagrange_interpolate(&pts(&[(0, 1), (1, 1)])).unwrap();
        assert_eq!(p, Polynomial::constant(Rational::from(1)));
        let p = lagrange_interpolate(&pts(&[(0, 0), (1, 1), (2, 4)])).unwrap();
        assert_eq!(p, Polynomial::monomial(Rational::from(1), 2));
        // triangular numbers n(n+1)/2 = n/2 + n^2/2
        let p = lagrange_interpolate(&pts(&[(1, 1), (2, 3), (3, 6)])).unwrap();
        assert_eq!(p, Polynomial::new(vec![q(0, 1), q(1, 2), q(1, 2)]));
        for n in 1..20i64 {
            assert_eq!(p.eval(&Rational::from(n)), Rational::from(n * (n + 1) / 2));
        }
    }

    #[test]
    fn duplicate_nodes_rejected() {
        let e = lagrange_interpolate(&pts(&[(1, 1), (1, 2)])).unwrap_err();
        assert_eq!(e, Error::DuplicateNode(1));
    }

    #[test]
    fn consecutive_detects_degree_violation() {
        let cubes: Vec<Integer> = (3..10).map(|n: i64| Integer::from(n * n * n)).collect();
        assert!(interpolate_consecutive_rational(3, &cubes, 3).is_ok());
        assert_eq!(interpolate_consecutive_rational(3, &cubes, 2).unwrap_err(), 3);
    }

    proptest! {
        #[test]
        fn interpolant_hits_every_node(
            ys in prop::collection::vec(-10_000i64..10_000, 1..14),
            offset in -30i64..30,
            stride in 1i64..4,
        ) {
            let points: Vec<(i64, Rational)> = ys.iter().enumerate()
                .map(|(i, &y)| (offset + stride * i as i64, Rational::from(y))).collect();
            let p = lagrange_interpolate(&points).unwrap();
            prop_assert!(p.degree().map_or(true, |d| d < points.len()));
            for (x, y) in &points {
                prop_assert_eq!(&p.eval(&Rational::from(*x)), y);
            }
        }

        #[test]
        fn consecutive_agrees_with_newton(ys in prop::collection::vec(-10_000i64..10_000, 1..12), start in -10i64..10) {
            let ints: Vec<Integer> = ys.iter().map(|&y| Integer::from(y)).collect();
            let deg = ys.len() - 1;
            let a = interpolate_consecutive_rational(start, &ints, deg).unwrap();
            let points: Vec<(i64, Rational)> = ys.iter().enumerate()
                .map(|(i, &y)| (start + i as i64, Rational::from(y))).collect();
            prop_assert_eq!(a, lagrange_interpolate(&points).unwrap());
        }
    }
}
