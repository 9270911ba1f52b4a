use rug::Integer;

use super::ring::QAlgebra;

/// `binom(alpha, k) = prod_{j<k} (alpha - j) / k!` for any coefficient domain
/// containing the rationals (rational, Gaussian or formal `alpha`).
pub fn binomial_general<R: QAlgebra>(alpha: &R, k: usize) -> R {
    let mut num = R::one();
    let mut fact = Integer::from(1);
    for j in 0..k {
        num = num.times(&alpha.minus(&R::from_i64(j as i64)));
        fact *= j as u64 + 1;
    }
    num.div_integer(&fact)
}

/// Integer binomial coefficient with `binom(n, k) = 0` for `k > n` or `k < 0`.
pub fn binomial(n: i64, k: i64) -> Integer {
    if n < 0 || k < 0 || k > n {
        return Integer::new();
    }
    Integer::from(Integer::binomial_u(n as u32, k as u32))
}

/// Pascal triangle cached row by row.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<Integer>>,
}

impl BinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<Integer>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![Integer::from(1)]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(Integer::from(1));
            for k in 1..n {
                row.push(Integer::from(&prev[k - 1] + &prev[k]));
            }
            row.push(Integer::from(1));
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `binom(n, k)`, zero outside `0 <= k <= n`; panics if `n` exceeds the table.
    pub fn get(&self, n: i64, k: i64) -> &Integer {
        static ZERO: Integer = Integer::ZERO;
        if n < 0 || k < 0 || k > n {
            return &ZERO;
        }
        &self.rows[n as usize][k as usize]
    }
}
