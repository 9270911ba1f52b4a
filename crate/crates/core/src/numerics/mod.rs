//! Exact and high-precision arithmetic shared by every other module.

pub mod binomial;
pub mod float;
pub mod gaussian;
pub mod interp;
pub mod linsolve;
pub mod poly;
pub mod ring;

pub use binomial::{binomial, binomial_general, BinomialTable};
pub use float::{
    agreeing_digits, check_precision, format_bigfloat, ln_integer, ln_rational, parse_bigfloat,
    significant_digits, BigFloat, DEFAULT_PRECISION, EXTRAPOLATION_PRECISION, MIN_PRECISION,
};
pub use gaussian::{parse_rational, GaussianRational};
pub use interp::{interpolate_consecutive, lagrange_interpolate};
pub use poly::{LambdaPoly, Polynomial};
pub use ring::{Field, QAlgebra, Ring};

/// Arbitrary-precision integer.
pub type BigInt = rug::Integer;
/// Normalized arbitrary-precision rational.
pub type BigRational = rug::Rational;

/// Reduce a ring element to the field of fractions used for interpolation and fitting.
pub trait Fractions: Ring {
    type Frac: QAlgebra;
    fn to_frac(&self) -> Self::Frac;
}

impl Fractions for BigInt {
    type Frac = BigRational;
    fn to_frac(&self) -> BigRational {
        BigRational::from(self)
    }
}

impl Fractions for BigRational {
    type Frac = BigRational;
    fn to_frac(&self) -> BigRational {
        self.clone()
    }
}

impl Fractions for GaussianRational {
    type Frac = GaussianRational;
    fn to_frac(&self) -> GaussianRational {
        self.clone()
    }
}

impl Fractions for LambdaPoly {
    type Frac = LambdaPoly;
    fn to_frac(&self) -> LambdaPoly {
        self.clone()
    }
}
