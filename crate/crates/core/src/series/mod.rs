//! Truncated power series with exact coefficients.

mod verify;

pub use verify::{
    verify_bell_egf, verify_family_functional_equation, verify_identity,
    verify_special_case_identity, verify_takeuchi_functional_equation, Clause,
    VerificationReport,
};

use std::fmt;

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::{binomial_general, Field, QAlgebra, Ring};

/// `c_0 + c_1 z + ... + c_K z^K  (mod z^{K+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedPowerSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedPowerSeries<R> {
    /// Pads with zeros or truncates so that exactly `order + 1` coefficients remain.
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        TruncatedPowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series `z`.
    pub fn var(order: usize) -> Self {
        Self::new(vec![R::zero(), R::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let k = self.order().min(rhs.order());
        Self::new((0..=k).map(|i| self.coeffs[i].plus(&rhs.coeffs[i])).collect(), k)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let k = self.order().min(rhs.order());
        Self::new((0..=k).map(|i| self.coeffs[i].minus(&rhs.coeffs[i])).collect(), k)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(Ring::negated).collect(), self.order())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.times(c)).collect(), self.order())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let k = self.order().min(rhs.order());
        let mut out = vec![R::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(k + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(k + 1 - i) {
                out[i + j].add_mul_assign(a, b);
            }
        }
        Self::new(out, k)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by `z^s`, keeping the order.
    pub fn shift_up(&self, s: usize) -> Self {
        let mut c = vec![R::zero(); s];
        c.extend_from_slice(&self.coeffs);
        Self::new(c, self.order())
    }

    /// Divides by `z`; the constant term must vanish. The order drops by one.
    pub fn shift_down(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm("division by z needs a zero constant term"));
        }
        let k = self.order().saturating_sub(1);
        Ok(Self::new(self.coeffs[1..].to_vec(), k))
    }

    /// `f(g(z))`; `g` must have zero constant term.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm("inner series of a composition must vanish at 0"));
        }
        let k = self.order().min(g.order());
        let g = g.truncate(k);
        let mut acc = Self::constant(self.coeffs[k].clone(), k);
        for i in (0..k).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0].add_assign_ref(&self.coeffs[i]);
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let k = self.order();
        let c = (1..=k)
            .map(|i| self.coeffs[i].times_integer(&Integer::from(i)))
            .collect();
        Self::new(c, k.saturating_sub(1))
    }
}

impl<R: QAlgebra> TruncatedPowerSeries<R> {
    /// `exp(g)` for `g` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm("exp needs a zero constant term"));
        }
        let k = self.order();
        let mut e = vec![R::one()];
        for n in 1..=k {
            let mut s = R::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() {
                    s.add_mul_assign(&self.coeffs[j].times_integer(&Integer::from(j)), &e[n - j]);
                }
            }
            e.push(s.div_integer(&Integer::from(n)));
        }
        Ok(Self::new(e, k))
    }

    /// `log(f)` for `f` with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm("log needs constant term 1"));
        }
        let k = self.order();
        let mut l = vec![R::zero()];
        for n in 1..=k {
            let mut s = self.coeffs[n].times_integer(&Integer::from(n));
            for j in 1..n {
                if !l[j].is_zero() {
                    s.sub_assign_ref(&l[j].times_integer(&Integer::from(j)).times(&self.coeffs[n - j]));
                }
            }
            l.push(s.div_integer(&Integer::from(n)));
        }
        Ok(Self::new(l, k))
    }

    /// `f^alpha = exp(alpha log f)` for `f` with constant term 1.
    pub fn pow_scalar(&self, alpha: &R) -> Result<Self> {
        self.log()?.scale(alpha).exp()
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.scale(q)).collect(), self.order())
    }
}

impl<R: Field> TruncatedPowerSeries<R> {
    /// `1/f`; the constant term must be invertible.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .inv()
            .ok_or(Error::ConstantTerm("reciprocal needs a unit constant term"))?;
        let k = self.order();
        let mut out = vec![inv0.clone()];
        for n in 1..=k {
            let mut s = R::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() {
                    s.add_mul_assign(&self.coeffs[j], &out[n - j]);
                }
            }
            out.push(s.times(&inv0).negated());
        }
        Ok(Self::new(out, k))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inverse()?))
    }
}

impl<R: Ring> fmt::Display for TruncatedPowerSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

/// `sqrt(1 - 4z)` through order `order`, from the binomial series.
pub fn series_sqrt_one_minus_4z<R: QAlgebra>(order: usize) -> TruncatedPowerSeries<R> {
    let half = Rational::from((1, 2));
    let mut pow = Integer::from(1);
    let mut c = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let b = binomial_general(&half, n) * Rational::from(&pow);
        c.push(R::from_rational(&b));
        pow *= -4;
    }
    TruncatedPowerSeries::new(c, order)
}

/// `C(z) = (1 - sqrt(1-4z)) / (2z)`.
pub fn series_catalan<R: QAlgebra>(order: usize) -> TruncatedPowerSeries<R> {
    let s = series_sqrt_one_minus_4z::<R>(order + 1);
    let num = TruncatedPowerSeries::one(order + 1).sub(&s);
    num.shift_down()
        .expect("1 - sqrt(1-4z) vanishes at 0")
        .scale_rational(&Rational::from((1, 2)))
}

/// The series `y(z)` with `y(0) = 0` and `y = z (1+y)^{λ+1}`, by fixed-point iteration.
pub fn solve_y<R: QAlgebra>(lambda: &R, order: usize) -> TruncatedPowerSeries<R> {
    let exponent = lambda.plus(&R::one());
    let z = TruncatedPowerSeries::<R>::var(order);
    let one = TruncatedPowerSeries::<R>::one(order);
    let mut y = TruncatedPowerSeries::zero(order);
    // each pass fixes one more coefficient
    for _ in 0..order {
        let p = one.add(&y).pow_scalar(&exponent).expect("1+y has constant term 1");
        y = z.mul(&p);
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::GaussianRational;
    use crate::sequences::catalan_numbers;
    use proptest::prelude::*;

    type S = TruncatedPowerSeries<Rational>;

    fn s(v: &[i64], k: usize) -> S {
        S::new(v.iter().map(|&x| Rational::from(x)).collect(), k)
    }

    #[test]
    fn compose_examples() {
        let geo = s(&[1; 9], 8);
        let z2 = s(&[0, 0, 1], 8);
        assert_eq!(geo.compose(&z2).unwrap(), s(&[1, 0, 1, 0, 1, 0, 1, 0, 1], 8));

        let t = s(&[0, 1, 4, 14, 53], 4);
        let g = s(&[0, 1, -1], 4);
        assert_eq!(t.compose(&g).unwrap(), s(&[0, 1, 3, 6, 15], 4));

        assert_eq!(t.compose(&S::var(4)).unwrap(), t);
        assert!(t.compose(&s(&[1, 1], 4)).is_err());
    }

    #[test]
    fn sqrt_and_catalan() {
        assert_eq!(series_sqrt_one_minus_4z::<Rational>(4), s(&[1, -2, -2, -4, -10], 4));
        let c = series_catalan::<Rational>(20);
        assert_eq!(&c.coeffs()[..4], &s(&[1, 1, 2, 5], 3).coeffs()[..]);
        let cat = catalan_numbers(20);
        for (a, b) in c.coeffs().iter().zip(&cat.values) {
            assert_eq!(a, &Rational::from(b));
        }
        // z C^2 = C - 1
        let lhs = c.mul(&c).shift_up(1);
        assert_eq!(lhs, c.sub(&S::one(20)));
    }

    #[test]
    fn solve_y_examples() {
        assert_eq!(solve_y(&Rational::from(0), 6), s(&[0, 1, 1, 1, 1, 1, 1], 6));
        assert_eq!(solve_y(&Rational::from(1), 4), s(&[0, 1, 2, 5, 14], 4));
        let c = series_catalan::<Rational>(10);
        assert_eq!(solve_y(&Rational::from(1), 10), c.sub(&S::one(10)));
        let g = solve_y(&"1/3+2*i".parse::<GaussianRational>().unwrap(), 5);
        assert!(g.coeff(1).is_one());
    }

    #[test]
    fn reciprocal_requires_unit() {
        assert!(s(&[0, 1], 3).inverse().is_err());
        let geo = s(&[1, -1], 5).inverse().unwrap();
        assert_eq!(geo, s(&[1; 6], 5));
        assert!(s(&[2, 1], 3).log().is_err());
        assert!(s(&[1, 1], 3).exp().is_err());
    }

    #[test]
    fn exp_log_round_trip() {
        let f = s(&[1, 3, -2, 7, 1, 0, 5], 6);
        assert_eq!(f.log().unwrap().exp().unwrap(), f);
    }

    #[test]
    fn order_is_minimum_of_operands() {
        let a = s(&[1, 2, 3], 5);
        let b = s(&[1, 1], 3);
        assert_eq!(a.add(&b).order(), 3);
        assert_eq!(a.mul(&b).order(), 3);
    }

    fn arb_series(k: usize) -> impl Strategy<Value = S> {
        proptest::collection::vec((-20i64..20, 1i64..6), k + 1).prop_map(move |v| {
            S::new(v.into_iter().map(|(p, q)| Rational::from((p, q))).collect(), k)
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_series(8), b in arb_series(8), c in arb_series(8)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn solve_y_round_trip(p in -12i64..12, q in 1i64..7) {
            let lam = Rational::from((p, q));
            let k = 10;
            let y = solve_y(&lam, k);
            let rhs = S::one(k)
                .add(&y)
                .pow_scalar(&(lam + Rational::from(1)))
                .unwrap()
                .shift_up(1);
            prop_assert_eq!(rhs.sub(&y), S::zero(k));
        }
    }
}
