//! Coefficientwise checks of generating-function identities.

use rug::{Integer, Rational};
use serde::Serialize;

use super::{series_catalan, series_sqrt_one_minus_4z, solve_y, TruncatedPowerSeries};
use crate::error::{Error, Result};
use crate::numerics::{binomial_general, Field, Ring};
use crate::sequences::{bell_numbers, family_numbers, takeuchi_numbers, SeqValue};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub pass: bool,
    /// Lowest power of `z` whose coefficients differ.
    pub first_failing_order: Option<usize>,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub what: String,
    pub order: usize,
    pub clauses: Vec<Clause>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }
}

fn compare<R: Ring>(
    name: &str,
    lhs: &TruncatedPowerSeries<R>,
    rhs: &TruncatedPowerSeries<R>,
) -> Clause {
    let k = lhs.order().min(rhs.order());
    let first = (0..=k).find(|&i| lhs.coeff(i) != rhs.coeff(i));
    Clause {
        name: name.to_string(),
        pass: first.is_none(),
        first_failing_order: first,
        order: k,
    }
}

type Ser<F> = TruncatedPowerSeries<F>;

fn check_order(order: usize, min: usize) -> Result<()> {
    if order < min {
        Err(Error::Domain(format!("order {order} is below the minimum {min}")))
    } else {
        Ok(())
    }
}

/// Checks, through `z^order`,
/// (a) `Σ binom((λ+1)k,k) z^k/(1+λk) = 1+y`,
/// (b) `Σ binom(n+(λ+1)k,k) z^k = (1+y)^{n+1}/(1-λy)`,
/// (c) `Σ binom(n+(λ+1)k,k) z^k = (Σ binom((λ+1)k,k) z^k)(Σ binom((λ+1)k,k) z^k/(1+λk))^n`,
/// where `y = z(1+y)^{λ+1}`.
pub fn verify_identity<F: Field>(lambda: &F, n: &F, order: usize) -> Result<VerificationReport> {
    check_order(order, 5)?;
    let lp1 = lambda.plus(&F::one());
    let mut plain = Vec::with_capacity(order + 1);
    let mut damped = Vec::with_capacity(order + 1);
    let mut shifted = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let kk = F::from_i64(k as i64);
        let alpha = lp1.times(&kk);
        let b = binomial_general(&alpha, k);
        let denom = F::one().plus(&lambda.times(&kk));
        let inv = denom
            .inv()
            .ok_or_else(|| Error::Domain(format!("1 + λk vanishes at k = {k}")))?;
        damped.push(b.times(&inv));
        plain.push(b);
        shifted.push(binomial_general(&n.plus(&alpha), k));
    }
    let plain = Ser::new(plain, order);
    let damped = Ser::new(damped, order);
    let shifted = Ser::new(shifted, order);

    let y = solve_y(lambda, order);
    let one = Ser::one(order);
    let one_plus_y = one.add(&y);
    let rhs_b = one_plus_y
        .pow_scalar(&n.plus(&F::one()))?
        .div(&one.sub(&y.scale(lambda)))?;
    let rhs_c = plain.mul(&damped.pow_scalar(n)?);

    Ok(VerificationReport {
        what: "ident".into(),
        order,
        clauses: vec![
            compare("a: damped sum = 1+y", &damped, &one_plus_y),
            compare("b: shifted sum = (1+y)^(n+1)/(1-λy)", &shifted, &rhs_b),
            compare("c: shifted sum = plain sum * damped sum^n", &shifted, &rhs_c),
        ],
    })
}

fn takeuchi_series(order: usize) -> Ser<Rational> {
    let t = takeuchi_numbers(order);
    Ser::new(t.values.iter().map(|v| Rational::from(v)).collect(), order)
}

/// Checks `T(z) = (C-1)/(1-z) + z(2-C)/sqrt(1-4z) T(zC)` and
/// `T(z) = T(z-z^2)/z - 1/((1-z)(1-z+z^2))` through `z^order`.
pub fn verify_takeuchi_functional_equation(order: usize) -> Result<VerificationReport> {
    let k = order;
    let t = takeuchi_series(k);
    let one = Ser::<Rational>::one(k);
    let z = Ser::<Rational>::var(k);
    let c = series_catalan::<Rational>(k);
    let sq = series_sqrt_one_minus_4z::<Rational>(k);

    let first = c.sub(&one).div(&one.sub(&z))?;
    let two = Ser::constant(Rational::from(2), k);
    let zc = z.mul(&c);
    let second = z.mul(&two.sub(&c)).div(&sq)?.mul(&t.compose(&zc)?);
    let rhs1 = first.add(&second);

    let t_hi = takeuchi_series(k + 1);
    let g = Ser::new(vec![Rational::new(), Rational::from(1), Rational::from(-1)], k + 1);
    let outer = t_hi.compose(&g)?.shift_down()?;
    let one_minus_z = one.sub(&z);
    let quad = Ser::new(
        vec![Rational::from(1), Rational::from(-1), Rational::from(1)],
        k,
    );
    let rhs2 = outer.sub(&one_minus_z.mul(&quad).inverse()?);

    Ok(VerificationReport {
        what: "takfunc".into(),
        order,
        clauses: vec![
            compare("catalan form", &t, &rhs1),
            compare("z - z^2 form", &t, &rhs2),
        ],
    })
}

/// Checks `A(z) = 1 + z(1+y)/(1-λy) A(z(1+y))` with `A_n` from the family recurrence.
pub fn verify_family_functional_equation<F: Field + SeqValue>(
    lambda: &F,
    order: usize,
) -> Result<VerificationReport> {
    let k = order;
    let a = Ser::new(family_numbers(k, lambda).values, k);
    let y = solve_y(lambda, k);
    let one = Ser::one(k);
    let z = Ser::var(k);
    let one_plus_y = one.add(&y);
    let inner = z.mul(&one_plus_y);
    let rhs = one.add(
        &z.mul(&one_plus_y)
            .div(&one.sub(&y.scale(lambda)))?
            .mul(&a.compose(&inner)?),
    );
    Ok(VerificationReport {
        what: "family".into(),
        order,
        clauses: vec![compare("A(z) = 1 + z(1+y)/(1-λy) A(z(1+y))", &a, &rhs)],
    })
}

/// Checks `Σ B_n z^n/n! = exp(e^z - 1)`.
pub fn verify_bell_egf(order: usize) -> Result<VerificationReport> {
    let k = order;
    let b = bell_numbers(k);
    let mut fact = Integer::from(1);
    let mut lhs = Vec::with_capacity(k + 1);
    for (n, v) in b.values.iter().enumerate() {
        if n > 0 {
            fact *= n as u64;
        }
        lhs.push(Rational::from((v.clone(), fact.clone())));
    }
    let lhs = Ser::new(lhs, k);
    let ez_minus_1 = Ser::<Rational>::var(k).exp()?.sub(&Ser::one(k));
    let rhs = ez_minus_1.exp()?;
    Ok(VerificationReport {
        what: "bell-egf".into(),
        order,
        clauses: vec![compare("egf = exp(e^z - 1)", &lhs, &rhs)],
    })
}

/// Checks `Σ binom(n+2k,k) z^k = C(z)^n / sqrt(1-4z)`.
pub fn verify_special_case_identity(n: u32, order: usize) -> Result<VerificationReport> {
    let k = order;
    let lhs = Ser::new(
        (0..=k)
            .map(|j| Rational::from(Integer::from(Integer::binomial_u(n + 2 * j as u32, j as u32))))
            .collect(),
        k,
    );
    let c = series_catalan::<Rational>(k);
    let rhs = c.pow(n).div(&series_sqrt_one_minus_4z(k))?;
    Ok(VerificationReport {
        what: "special".into(),
        order,
        clauses: vec![compare("sum binom(n+2k,k) z^k = C^n/sqrt(1-4z)", &lhs, &rhs)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::GaussianRational;

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    #[test]
    fn identity_examples() {
        assert!(verify_identity(&q(0), &q(3), 20).unwrap().pass());
        assert!(verify_identity(&q(1), &q(0), 20).unwrap().pass());
        assert!(verify_identity(&q(2), &q(2), 30).unwrap().pass());
        assert!(verify_identity(&q(2), &q(2), 4).is_err());
    }

    #[test]
    fn identity_for_rational_and_complex_lambda() {
        let lam = Rational::from((3, 7));
        assert!(verify_identity(&lam, &Rational::from((-1, 2)), 12).unwrap().pass());
        let g: GaussianRational = "1/2+i".parse().unwrap();
        assert!(verify_identity(&g, &GaussianRational::from(2), 10).unwrap().pass());
    }

    #[test]
    fn identity_failure_is_located() {
        // a wrong λ on one side shows up as the first failing order
        let lhs = Ser::new(vec![q(1), q(2), q(3)], 2);
        let rhs = Ser::new(vec![q(1), q(2), q(4)], 2);
        let c = compare("x", &lhs, &rhs);
        assert!(!c.pass);
        assert_eq!(c.first_failing_order, Some(2));
    }

    #[test]
    fn takeuchi_equation() {
        let r = verify_takeuchi_functional_equation(3).unwrap();
        assert!(r.pass());
        assert!(verify_takeuchi_functional_equation(0).unwrap().pass());
        assert!(verify_takeuchi_functional_equation(30).unwrap().pass());
    }

    #[test]
    fn transformed_equation_by_hand() {
        let t = Ser::new(vec![q(0), q(1), q(4), q(14), q(53)], 4);
        let g = Ser::new(vec![q(0), q(1), q(-1)], 4);
        let outer = t.compose(&g).unwrap().shift_down().unwrap();
        assert_eq!(outer, Ser::new(vec![q(1), q(3), q(6), q(15)], 3));
    }

    #[test]
    fn other_equations() {
        assert!(verify_bell_egf(10).unwrap().pass());
        assert!(verify_family_functional_equation(&q(0), 15).unwrap().pass());
        assert!(verify_special_case_identity(0, 10).unwrap().pass());
        for n in [1, 2, 5] {
            assert!(verify_special_case_identity(n, 20).unwrap().pass());
        }
    }

    #[test]
    fn family_equation_complex() {
        let g: GaussianRational = "i".parse().unwrap();
        assert!(verify_family_functional_equation(&g, 10).unwrap().pass());
    }
}
