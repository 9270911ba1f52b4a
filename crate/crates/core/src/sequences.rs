//! Exact integer sequences: Takeuchi, Bell, Catalan, partial Catalan sums
//! and the one-parameter family `A_n(λ)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::{binomial_general, BinomialTable, Field, GaussianRational, QAlgebra, Ring};

/// Values that can be stored in a sequence file.
pub trait SeqValue: Clone + fmt::Display + FromStr {
    const DOMAIN: &'static str;
}

impl SeqValue for Integer {
    const DOMAIN: &'static str = "integer";
}

impl SeqValue for Rational {
    const DOMAIN: &'static str = "rational";
}

impl SeqValue for GaussianRational {
    const DOMAIN: &'static str = "gaussian";
}

/// Exact values `a_0..a_N` of a named sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceTable<T> {
    pub name: String,
    pub values: Vec<T>,
}

impl<T: SeqValue> SequenceTable<T> {
    pub fn new(name: impl Into<String>, values: Vec<T>) -> Self {
        SequenceTable {
            name: name.into(),
            values,
        }
    }

    /// Largest index `N` held, or `None` for an empty table.
    pub fn n_max(&self) -> Option<usize> {
        self.values.len().checked_sub(1)
    }

    pub fn get(&self, n: usize) -> Option<&T> {
        self.values.get(n)
    }

    pub fn domain(&self) -> &'static str {
        T::DOMAIN
    }

    /// `# <name> <N> <domain>` followed by one value per line.
    pub fn to_file_string(&self) -> String {
        let mut s = format!(
            "# {} {} {}\n",
            self.name,
            self.n_max().map_or(-1, |n| n as i64),
            T::DOMAIN
        );
        for v in &self.values {
            s.push_str(&v.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty sequence file".into()))?;
        let fields: Vec<&str> = header
            .strip_prefix('#')
            .ok_or_else(|| Error::Parse("missing '#' header".into()))?
            .split_whitespace()
            .collect();
        let [name, n, domain] = fields[..] else {
            return Err(Error::Parse(format!("malformed header {header:?}")));
        };
        if domain != T::DOMAIN {
            return Err(Error::Parse(format!(
                "domain {domain} does not match expected {}",
                T::DOMAIN
            )));
        }
        let n: i64 = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad N in header {header:?}")))?;
        let values = lines
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.trim()
                    .parse::<T>()
                    .map_err(|_| Error::Parse(format!("bad value {l:?}")))
            })
            .collect::<Result<Vec<T>>>()?;
        if values.len() as i64 != n + 1 {
            return Err(Error::Parse(format!(
                "header promises {} values, found {}",
                n + 1,
                values.len()
            )));
        }
        Ok(SequenceTable::new(name, values))
    }
}

type CoeffFn<R> = Arc<dyn Fn(usize, usize) -> R + Send + Sync>;
type TermFn<R> = Arc<dyn Fn(usize) -> R + Send + Sync>;

/// `a_n = sum_{k=1}^n c(n,k) a_{n-k} + b(n)` with a given `a_0`.
#[derive(Clone)]
pub struct RecurrenceSpec<R> {
    pub name: String,
    coeff: CoeffFn<R>,
    inhomogeneous: TermFn<R>,
    pub initial: R,
}

impl<R: Ring> fmt::Debug for RecurrenceSpec<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RecurrenceSpec")
            .field("name", &self.name)
            .field("initial", &self.initial)
            .finish()
    }
}

impl<R: Ring + 'static> RecurrenceSpec<R> {
    pub fn new(
        name: impl Into<String>,
        coeff: impl Fn(usize, usize) -> R + Send + Sync + 'static,
        inhomogeneous: impl Fn(usize) -> R + Send + Sync + 'static,
        initial: R,
    ) -> Self {
        RecurrenceSpec {
            name: name.into(),
            coeff: Arc::new(coeff),
            inhomogeneous: Arc::new(inhomogeneous),
            initial,
        }
    }

    /// `c_{n,k}`, defined for `1 <= k <= n`.
    pub fn coeff(&self, n: usize, k: usize) -> R {
        (self.coeff)(n, k)
    }

    /// `b_n`, defined for `n >= 1`.
    pub fn inhomogeneous(&self, n: usize) -> R {
        (self.inhomogeneous)(n)
    }

    /// All zero: `c = 0`, `b = 0`, `a_0 = 0`.
    pub fn zero() -> Self {
        Self::new("zero", |_, _| R::zero(), |_| R::zero(), R::zero())
    }
}

impl RecurrenceSpec<Integer> {
    /// Shifted Takeuchi coefficients `c_{n,k} = binom(n+k-2, n-1) - binom(n+k-2, n)`
    /// with `b_n` the partial Catalan sums and `a_0 = T_0 = 0`. Valid for
    /// `n <= max_n`.
    pub fn takeuchi(max_n: usize) -> Self {
        let table = Arc::new(BinomialTable::new(2 * max_n.max(1)));
        let partial = Arc::new(catalan_partial_sums(max_n).values);
        let t = table.clone();
        Self::new(
            "takeuchi",
            move |n, k| {
                let (n, k) = (n as i64, k as i64);
                Integer::from(t.get(n + k - 2, n - 1) - t.get(n + k - 2, n))
            },
            move |n| partial[n].clone(),
            Integer::new(),
        )
    }

    /// Bell numbers: `c_{n,k} = binom(n-1, k-1)`, `b = 0`, `a_0 = 1`.
    pub fn bell(max_n: usize) -> Self {
        let table = Arc::new(BinomialTable::new(max_n.max(1)));
        Self::new(
            "bell",
            move |n, k| table.get(n as i64 - 1, k as i64 - 1).clone(),
            |_| Integer::new(),
            Integer::from(1),
        )
    }

    /// Family at an integer parameter: `c_{n,k} = binom(n-1+λ(k-1), k-1)`.
    pub fn family_integer(lambda: i64) -> Self {
        Self::new(
            format!("family({lambda})"),
            move |n, k| {
                let top = Integer::from(n as i64 - 1 + lambda * (k as i64 - 1));
                top.binomial((k - 1) as u32)
            },
            |_| Integer::new(),
            Integer::from(1),
        )
    }
}

impl<F: QAlgebra + 'static> RecurrenceSpec<F> {
    /// Family with `c_{n,k} = binom(n-1+λ(k-1), k-1)`, `b = 0`, `a_0 = 1`, over
    /// any coefficient domain holding `λ`.
    pub fn family(lambda: F) -> Self {
        let name = format!("family({lambda})");
        Self::new(
            name,
            move |n, k| {
                let alpha = F::from_i64(n as i64 - 1).plus(&lambda.times(&F::from_i64(k as i64 - 1)));
                binomial_general(&alpha, k - 1)
            },
            |_| F::zero(),
            F::one(),
        )
    }
}

/// Generic runner for the general recurrence.
pub fn run_general_recurrence<R: Ring + 'static>(spec: &RecurrenceSpec<R>, n_max: usize) -> Vec<R> {
    let mut a = Vec::with_capacity(n_max + 1);
    a.push(spec.initial.clone());
    for n in 1..=n_max {
        let mut acc = spec.inhomogeneous(n);
        for k in 1..=n {
            let c = spec.coeff(n, k);
            if !c.is_zero() {
                acc.add_mul_assign(&c, &a[n - k]);
            }
        }
        a.push(acc);
    }
    a
}

/// `C_0..C_N` with `C_n = binom(2n, n)/(n+1)`.
pub fn catalan_numbers(n_max: usize) -> SequenceTable<Integer> {
    let mut v = Vec::with_capacity(n_max + 1);
    let mut c = Integer::from(1);
    for n in 0..=n_max {
        v.push(c.clone());
        // C_{n+1} = C_n * 2(2n+1)/(n+2)
        c *= 2 * (2 * n as u64 + 1);
        c.div_exact_u_mut(n as u32 + 2);
    }
    SequenceTable::new("catalan", v)
}

/// `b_0..b_N` with `b_n = sum_{k=1}^n C_k`.
pub fn catalan_partial_sums(n_max: usize) -> SequenceTable<Integer> {
    let cat = catalan_numbers(n_max);
    let mut acc = Integer::new();
    let mut v = Vec::with_capacity(n_max + 1);
    v.push(Integer::new());
    for c in cat.values.iter().skip(1) {
        acc += c;
        v.push(acc.clone());
    }
    SequenceTable::new("catalan-partial", v)
}

/// `T_0..T_N` by Knuth's recurrence
/// `T_{n+1} = sum_{k=0}^n [binom(n+k, n) - binom(n+k, n+1)] T_{n-k} + sum_{k=1}^{n+1} C_k`.
pub fn takeuchi_numbers(n_max: usize) -> SequenceTable<Integer> {
    let partial = catalan_partial_sums(n_max.max(1)).values;
    let mut t: Vec<Integer> = Vec::with_capacity(n_max + 1);
    t.push(Integer::new());
    for n in 0..n_max {
        let mut acc = partial[n + 1].clone();
        // binom(n+k, k) walked along k; the ballot difference is
        // binom(n+k, k) - binom(n+k, k-1) = binom(n+k, k) (n+1-k)/(n+1)
        let mut bin = Integer::from(1);
        for k in 0..=n {
            if k > 0 {
                bin *= (n + k) as u64;
                bin.div_exact_u_mut(k as u32);
            }
            let coeff = Integer::from(&bin * (n + 1 - k) as u64).div_exact_u((n + 1) as u32);
            if coeff.cmp0().is_ne() {
                acc += coeff * &t[n - k];
            }
        }
        t.push(acc);
    }
    SequenceTable::new("takeuchi", t)
}

/// `B_0..B_N` by `B_{n+1} = sum_{k=0}^n binom(n, k) B_{n-k}`.
pub fn bell_numbers(n_max: usize) -> SequenceTable<Integer> {
    let mut b: Vec<Integer> = Vec::with_capacity(n_max + 1);
    b.push(Integer::from(1));
    for n in 0..n_max {
        let mut acc = Integer::new();
        let mut bin = Integer::from(1);
        for k in 0..=n {
            if k > 0 {
                bin *= (n + 1 - k) as u64;
                bin.div_exact_u_mut(k as u32);
            }
            acc += Integer::from(&bin * &b[n - k]);
        }
        b.push(acc);
    }
    SequenceTable::new("bell", b)
}

/// `A_0..A_N` of `A_{n+1} = sum_{k=0}^n binom(n+λk, k) A_{n-k}`, `A_0 = 1`,
/// over the field holding `λ`.
pub fn family_numbers<F: Field + SeqValue>(n_max: usize, lambda: &F) -> SequenceTable<F> {
    let mut a: Vec<F> = Vec::with_capacity(n_max + 1);
    a.push(F::one());
    // column[k] holds binom(n + λk, k) for the current n
    let mut column: Vec<F> = Vec::with_capacity(n_max + 1);
    for n in 0..n_max {
        for k in 0..column.len() {
            // binom(α+1, k) = binom(α, k) (α+1)/(α+1-k), α = n-1+λk
            let alpha1 = F::from_i64(n as i64).plus(&lambda.times(&F::from_i64(k as i64)));
            let den = alpha1.minus(&F::from_i64(k as i64));
            column[k] = match den.inv() {
                Some(inv) => column[k].times(&alpha1).times(&inv),
                None => binomial_general(&alpha1, k),
            };
        }
        let alpha = F::from_i64(n as i64).plus(&lambda.times(&F::from_i64(n as i64)));
        column.push(binomial_general(&alpha, n));
        let mut acc = F::zero();
        for k in 0..=n {
            acc.add_mul_assign(&column[k], &a[n - k]);
        }
        a.push(acc);
    }
    SequenceTable::new(format!("family({lambda})"), a)
}

/// Integer-valued family for integer `λ`.
pub fn family_numbers_integer(n_max: usize, lambda: i64) -> SequenceTable<Integer> {
    let spec = RecurrenceSpec::family_integer(lambda);
    SequenceTable::new(spec.name.clone(), run_general_recurrence(&spec, n_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    const TAK: [i64; 10] = [0, 1, 4, 14, 53, 223, 1034, 5221, 28437, 165859];

    #[test]
    fn takeuchi_examples() {
        assert_eq!(takeuchi_numbers(9).values, ints(&TAK));
        assert_eq!(takeuchi_numbers(0).values, ints(&[0]));
        assert_eq!(takeuchi_numbers(1).values, ints(&[0, 1]));
    }

    #[test]
    fn bell_examples() {
        assert_eq!(bell_numbers(5).values, ints(&[1, 1, 2, 5, 15, 52]));
        assert_eq!(bell_numbers(0).values, ints(&[1]));
        let t = takeuchi_numbers(200).values;
        let b = bell_numbers(200).values;
        for n in 1..=200 {
            assert!(b[n] <= t[n], "B_{n} > T_{n}");
        }
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan_numbers(5).values, ints(&[1, 1, 2, 5, 14, 42]));
        let b = catalan_partial_sums(3).values;
        assert_eq!(b[1], 1);
        assert_eq!(b[3], 8);
        for (n, c) in catalan_numbers(40).values.iter().enumerate() {
            let direct = Integer::from(Integer::binomial_u(2 * n as u32, n as u32)) / (n as u32 + 1);
            assert_eq!(c, &direct);
        }
    }

    #[test]
    fn family_examples() {
        let bell = bell_numbers(5).values;
        let a0 = family_numbers(5, &Rational::new());
        assert_eq!(a0.values, bell.iter().map(Rational::from).collect::<Vec<_>>());
        let a1 = family_numbers(3, &Rational::from(1));
        assert_eq!(a1.values, ints(&[1, 1, 3, 12]).iter().map(Rational::from).collect::<Vec<_>>());
        let i = GaussianRational::i();
        let ai = family_numbers(2, &i);
        assert_eq!(ai.values[2], "2+i".parse::<GaussianRational>().unwrap());
    }

    #[test]
    fn family_paths_agree() {
        for lambda in [-2i64, -1, 0, 1, 2, 3] {
            let direct = family_numbers(25, &Rational::from(lambda));
            let integer = family_numbers_integer(25, lambda);
            let generic = run_general_recurrence(&RecurrenceSpec::family(Rational::from(lambda)), 25);
            for n in 0..=25 {
                assert_eq!(direct.values[n], Rational::from(&integer.values[n]), "λ={lambda} n={n}");
                assert_eq!(direct.values[n], generic[n]);
            }
        }
    }

    #[test]
    fn general_recurrence_examples() {
        let tak = run_general_recurrence(&RecurrenceSpec::takeuchi(9), 9);
        assert_eq!(tak, ints(&TAK));
        let bell = run_general_recurrence(&RecurrenceSpec::bell(5), 5);
        assert_eq!(bell, ints(&[1, 1, 2, 5, 15, 52]));
        let zero = run_general_recurrence(&RecurrenceSpec::<Integer>::zero(), 7);
        assert!(zero.iter().all(|z| z.cmp0().is_eq()));
    }

    #[test]
    fn file_round_trip() {
        let t = takeuchi_numbers(12);
        let s = t.to_file_string();
        assert!(s.starts_with("# takeuchi 12 integer\n"));
        assert_eq!(SequenceTable::<Integer>::parse_file(&s).unwrap(), t);
        let truncated: String = s.lines().take(5).map(|l| format!("{l}\n")).collect();
        assert!(SequenceTable::<Integer>::parse_file(&truncated).is_err());
        assert!(SequenceTable::<Rational>::parse_file(&s).is_err());
        let g = family_numbers(4, &"1/2+i".parse::<GaussianRational>().unwrap());
        assert_eq!(SequenceTable::parse_file(&g.to_file_string()).unwrap(), g);
    }
}
