//! Coefficient-domain traits.
//!
//! Method names avoid `add`/`mul` so they never collide with the `std::ops`
//! impls that `rug` types already carry.

use std::fmt;

use rug::{Integer, Rational};

/// Commutative ring with exact arithmetic.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_integer(n: &Integer) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_integer(&Integer::from(n))
    }

    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.plus(rhs);
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self = self.minus(rhs);
    }

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.plus(&a.times(b));
    }

    fn times_integer(&self, k: &Integer) -> Self {
        self.times(&Self::from_integer(k))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

/// Ring containing the rationals: supports exact scaling by any rational.
pub trait QAlgebra: Ring {
    fn scale(&self, q: &Rational) -> Self;

    fn from_rational(q: &Rational) -> Self {
        Self::one().scale(q)
    }

    fn div_integer(&self, k: &Integer) -> Self {
        self.scale(&Rational::from((Integer::from(1), k.clone())))
    }
}

/// Field: nonzero elements are invertible.
pub trait Field: QAlgebra {
    fn inv(&self) -> Option<Self>;

    fn divide(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.times(&r))
    }
}

impl Ring for Integer {
    fn zero() -> Self {
        Integer::new()
    }
    fn one() -> Self {
        Integer::from(1)
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn from_integer(n: &Integer) -> Self {
        n.clone()
    }
    fn plus(&self, rhs: &Self) -> Self {
        Integer::from(self + rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        Integer::from(self - rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        Integer::from(self * rhs)
    }
    fn negated(&self) -> Self {
        Integer::from(-self)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn times_integer(&self, k: &Integer) -> Self {
        Integer::from(self * k)
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::new()
    }
    fn one() -> Self {
        Rational::from(1)
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn from_integer(n: &Integer) -> Self {
        Rational::from(n)
    }
    fn plus(&self, rhs: &Self) -> Self {
        Rational::from(self + rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        Rational::from(self - rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        Rational::from(self * rhs)
    }
    fn negated(&self) -> Self {
        Rational::from(-self)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += Rational::from(a * b);
    }
    fn times_integer(&self, k: &Integer) -> Self {
        Rational::from(self * k)
    }
}

impl QAlgebra for Rational {
    fn scale(&self, q: &Rational) -> Self {
        Rational::from(self * q)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn div_integer(&self, k: &Integer) -> Self {
        Rational::from(self / k)
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(self.clone().recip())
        }
    }
}
