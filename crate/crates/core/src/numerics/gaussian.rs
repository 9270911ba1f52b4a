use std::fmt;
use std::str::FromStr;

use rug::{Integer, Rational};

use super::ring::{Field, QAlgebra, Ring};
use crate::error::Error;

/// Exact complex number `re + im*i` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::new(), Rational::from(1))
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), Rational::from(-&self.im))
    }

    /// `|z|^2`
    pub fn norm(&self) -> Rational {
        Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im)
    }

    pub fn is_real(&self) -> bool {
        self.im.cmp0() == std::cmp::Ordering::Equal
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        GaussianRational::new(re, Rational::new())
    }
}

impl From<i64> for GaussianRational {
    fn from(re: i64) -> Self {
        GaussianRational::new(Rational::from(re), Rational::new())
    }
}

impl Ring for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        GaussianRational::from(1)
    }
    fn is_zero(&self) -> bool {
        self.re.cmp0().is_eq() && self.im.cmp0().is_eq()
    }
    fn from_integer(n: &Integer) -> Self {
        GaussianRational::from(Rational::from(n))
    }
    fn plus(&self, rhs: &Self) -> Self {
        GaussianRational::new(
            Rational::from(&self.re + &rhs.re),
            Rational::from(&self.im + &rhs.im),
        )
    }
    fn minus(&self, rhs: &Self) -> Self {
        GaussianRational::new(
            Rational::from(&self.re - &rhs.re),
            Rational::from(&self.im - &rhs.im),
        )
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.is_real() && rhs.is_real() {
            return GaussianRational::from(Rational::from(&self.re * &rhs.re));
        }
        let re = Rational::from(&self.re * &rhs.re) - Rational::from(&self.im * &rhs.im);
        let im = Rational::from(&self.re * &rhs.im) + Rational::from(&self.im * &rhs.re);
        GaussianRational::new(re, im)
    }
    fn negated(&self) -> Self {
        GaussianRational::new(Rational::from(-&self.re), Rational::from(-&self.im))
    }
    fn times_integer(&self, k: &Integer) -> Self {
        GaussianRational::new(Rational::from(&self.re * k), Rational::from(&self.im * k))
    }
}

impl QAlgebra for GaussianRational {
    fn scale(&self, q: &Rational) -> Self {
        GaussianRational::new(Rational::from(&self.re * q), Rational::from(&self.im * q))
    }
}

impl Field for GaussianRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussianRational::new(
            Rational::from(&self.re / &n),
            -Rational::from(&self.im / &n),
        ))
    }
}

/// Renders `a/b+c/d*i`; purely real values render as a plain rational.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            return write!(f, "{}", self.re);
        }
        if self.re.cmp0().is_eq() {
            return write!(f, "{}*i", self.im);
        }
        if self.im.cmp0().is_lt() {
            write!(f, "{}-{}*i", self.re, Rational::from(-&self.im))
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `a`, `a/b`, `c/d*i`, `i`, `-i`, `a/b+c/d*i`, `a/b-c/d*i`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty complex literal".into()));
        }
        if !s.ends_with('i') {
            return parse_rational(&s).map(GaussianRational::from);
        }
        let body = &s[..s.len() - 1];
        let body = body.strip_suffix('*').unwrap_or(body);
        // split at the last sign that is not in leading position
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (re_str, im_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let re = if re_str.is_empty() {
            Rational::new()
        } else {
            parse_rational(re_str)?
        };
        let im = match im_str {
            "" | "+" => Rational::from(1),
            "-" => Rational::from(-1),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        Ok(GaussianRational::new(re, im))
    }
}

/// Parses `p/q` or `p` into a normalized rational.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    if let Some((p, q)) = t.split_once('/') {
        let p: Integer = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let q: Integer = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if q.cmp0().is_eq() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rational::from((p, q)))
    } else {
        let p: Integer = t
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        Ok(Rational::from(p))
    }
}
