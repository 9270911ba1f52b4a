//! Fixed workloads shared by the benchmarks, sized to run in milliseconds.

use takeuchi_core::extrapolation::{accelerate, Method};
use takeuchi_core::numerics::BigFloat;
use takeuchi_core::sequences::{bell_numbers, takeuchi_numbers};

pub const TABLE_N: usize = 300;
pub const ORACLE_N: usize = 9;
pub const SERIES_ORDER: usize = 30;
pub const ANSATZ_L: usize = 4;

/// `u_n`-like toy input: partial sums of `1/k²`, with scale `1/k`.
pub fn basel(terms: u32, prec: u32) -> (Vec<BigFloat>, Vec<BigFloat>) {
    let mut s = BigFloat::new(prec);
    let mut seq = Vec::new();
    let mut x = Vec::new();
    for k in 1..=terms {
        s += BigFloat::with_val(prec, k * k).recip();
        seq.push(s.clone());
        x.push(BigFloat::with_val(prec, k).recip());
    }
    (seq, x)
}

/// Last entry of the deepest Richardson column.
pub fn richardson_limit(seq: &[BigFloat], x: &[BigFloat]) -> BigFloat {
    let cols = accelerate(seq, Method::RichardsonInX, Some(x)).expect("valid input");
    cols.last().and_then(|c| c.last()).cloned().expect("non-empty tableau")
}

/// Both exact tables used by the growth-gap and `C_T` computations.
pub fn tables(n: usize) -> (usize, usize) {
    let t = takeuchi_numbers(n);
    let b = bell_numbers(n);
    (t.values[n].significant_bits() as usize, b.values[n].significant_bits() as usize)
}
