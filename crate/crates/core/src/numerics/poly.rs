//! Dense univariate polynomials over an exact coefficient ring.

use std::fmt;

use rug::{Integer, Rational};

use super::ring::{Field, QAlgebra, Ring};

/// Coefficients lowest degree first; trailing zeros are always trimmed, so
/// the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<R> {
    coeffs: Vec<R>,
}

/// ℚ[λ]: polynomials in the formal family parameter.
pub type LambdaPoly = Polynomial<Rational>;

impl<R: Ring> Polynomial<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn var() -> Self {
        Self::new(vec![R::zero(), R::one()])
    }

    pub fn monomial(c: R, degree: usize) -> Self {
        let mut v = vec![R::zero(); degree + 1];
        v[degree] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Polynomial<S> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale_by(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// `q(x) = p(x + c)` by repeated synthetic division (Taylor shift).
    pub fn shift_argument(&self, c: &R) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = a[j + 1].times(c);
                a[j].add_assign_ref(&t);
            }
        }
        Self::new(a)
    }

    /// `q(m) = p(m - 1)`; uses subtraction only.
    pub fn shift_down_one(&self) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = a[j + 1].clone();
                a[j].sub_assign_ref(&t);
            }
        }
        Self::new(a)
    }

    /// Multiplication by `x^k`.
    pub fn mul_var_pow(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times_integer(&Integer::from(i)))
                .collect(),
        )
    }

    /// Human-readable rendering with the given variable name.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*{var}"),
                _ => format!("({c})*{var}^{i}"),
            })
            .collect();
        terms.join(" + ")
    }
}

impl<R: QAlgebra> Polynomial<R> {
    /// Exact division by `x - r` when `r` is a root; returns the quotient and remainder.
    pub fn div_linear(&self, r: &R) -> (Self, R) {
        let n = self.coeffs.len();
        if n == 0 {
            return (self.clone(), R::zero());
        }
        let mut q = vec![R::zero(); n - 1];
        let mut acc = R::zero();
        for i in (0..n).rev() {
            acc = acc.times(r).plus(&self.coeffs[i]);
            if i > 0 {
                q[i - 1] = acc.clone();
            }
        }
        (Self::new(q), acc)
    }
}

impl<R: Field> Polynomial<R> {
    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }
}

impl<R: Ring> Ring for Polynomial<R> {
    fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_integer(n: &Integer) -> Self {
        Self::constant(R::from_integer(n))
    }
    fn plus(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a.plus(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => R::zero(),
                })
                .collect(),
        )
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j].add_mul_assign(a, b);
            }
        }
        Self::new(out)
    }
    fn negated(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(Ring::negated).collect(),
        }
    }
    fn times_integer(&self, k: &Integer) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.times_integer(k)).collect())
    }
}

impl<R: QAlgebra> QAlgebra for Polynomial<R> {
    fn scale(&self, q: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(q)).collect())
    }
}

impl<R: Ring> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zp(v: &[i64]) -> Polynomial<Integer> {
        Polynomial::new(v.iter().map(|&x| Integer::from(x)).collect())
    }

    #[test]
    fn shift_examples() {
        assert_eq!(zp(&[0, 0, 1]).shift_down_one(), zp(&[1, -2, 1]));
        assert_eq!(zp(&[1]).shift_down_one(), zp(&[1]));
        assert_eq!(zp(&[0, 0, 0, 1]).shift_down_one(), zp(&[-1, 3, -3, 1]));
        assert_eq!(Polynomial::<Integer>::zero().shift_down_one(), Polynomial::zero());
    }

    #[test]
    fn normalization_trims() {
        let p = zp(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(zp(&[0, 0]).degree(), None);
    }

    #[test]
    fn div_linear_root() {
        // (x-2)(x+3) = x^2 + x - 6
        let p: Polynomial<Rational> = zp(&[-6, 1, 1]).map(|c| Rational::from(c));
        let (q, r) = p.div_linear(&Rational::from(2));
        assert!(r.cmp0().is_eq());
        assert_eq!(q, zp(&[3, 1]).map(|c| Rational::from(c)));
    }

    proptest! {
        #[test]
        fn shift_down_then_up_is_identity(coeffs in prop::collection::vec(-1000i64..1000, 0..=51)) {
            let p = zp(&coeffs);
            let back = p.shift_down_one().shift_argument(&Integer::from(1));
            prop_assert_eq!(back, p.clone());
            let q = p.shift_down_one();
            prop_assert_eq!(q.degree(), p.degree());
        }

        #[test]
        fn shift_matches_evaluation(coeffs in prop::collection::vec(-50i64..50, 0..12), x in -20i64..20) {
            let p = zp(&coeffs);
            let q = p.shift_down_one();
            prop_assert_eq!(q.eval(&Integer::from(x)), p.eval(&Integer::from(x - 1)));
        }
    }
}
