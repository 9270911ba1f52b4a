//! High-precision floating point helpers on top of MPFR.

use rug::float::Round;
use rug::ops::CompleteRound;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

pub type BigFloat = Float;

pub const MIN_PRECISION: u32 = 64;
pub const DEFAULT_PRECISION: u32 = 256;
pub const EXTRAPOLATION_PRECISION: u32 = 3072;

pub fn check_precision(bits: u32) -> Result<u32> {
    if bits < MIN_PRECISION {
        Err(Error::Domain(format!(
            "precision {bits} bits is below the minimum of {MIN_PRECISION}"
        )))
    } else {
        Ok(bits)
    }
}

pub fn float(prec: u32, v: f64) -> Float {
    Float::with_val(prec, v)
}

pub fn from_integer(prec: u32, n: &Integer) -> Float {
    Float::with_val(prec, n)
}

pub fn from_rational(prec: u32, q: &Rational) -> Float {
    Float::with_val(prec, q)
}

/// Natural log of a positive integer, correctly rounded after conversion.
pub fn ln_integer(prec: u32, n: &Integer) -> Float {
    // extra guard bits so that the conversion rounding is invisible after ln
    let guard = prec + 64;
    let x = Float::with_val(guard, n);
    Float::with_val(prec, x.ln_ref())
}

pub fn ln_rational(prec: u32, q: &Rational) -> Float {
    let guard = prec + 64;
    let x = Float::with_val(guard, q);
    Float::with_val(prec, x.ln_ref())
}

pub fn e_const(prec: u32) -> Float {
    Float::with_val(prec, 1).exp()
}

/// Round-trip-safe rendering `<decimal>@<precision bits>`.
pub fn format_bigfloat(x: &Float) -> String {
    format!("{}@{}", x.to_string_radix(10, None), x.prec())
}

/// Inverse of [`format_bigfloat`]; a bare decimal is read at the default precision.
pub fn parse_bigfloat(s: &str) -> Result<Float> {
    let (digits, prec) = match s.rsplit_once('@') {
        Some((d, p)) => (
            d,
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad precision in {s:?}")))?,
        ),
        None => (s, DEFAULT_PRECISION),
    };
    let prec = check_precision(prec)?;
    let parsed = Float::parse(digits.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
    Ok(parsed.complete_round(prec, Round::Nearest).0)
}

/// Decimal digits to which `a` and `b` agree relative to `|a|`, capped at `cap`.
pub fn agreeing_digits(a: &Float, b: &Float, cap: u32) -> u32 {
    let diff = Float::with_val(a.prec().max(b.prec()), a - b).abs();
    if diff.is_zero() {
        return cap;
    }
    let scale = Float::with_val(a.prec(), a.abs_ref());
    if scale.is_zero() {
        return 0;
    }
    let rel = Float::with_val(64, &diff / &scale);
    let d = -rel.log10().to_f64();
    if d <= 0.0 {
        0
    } else {
        (d.floor() as u32).min(cap)
    }
}

/// Leading decimal digits of `x` (mantissa digits only, sign dropped).
pub fn significant_digits(x: &Float, n: usize) -> String {
    let s = x.to_string_radix(10, Some(n + 2));
    let mant = s.split(['e', '@']).next().unwrap_or("");
    mant.chars().filter(|c| c.is_ascii_digit()).take(n).collect()
}
