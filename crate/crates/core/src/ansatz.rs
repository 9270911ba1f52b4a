//! The polynomial ansatz `a_n = (1/e) Σ_m f_{m,n}/m!` for recurrences
//! `a_n = Σ_{k=1}^n c_{n,k} a_{n-k} + b_n`.
//!
//! `f_{m,n} = m Σ_k c_{n,k} f_{m-1,n-k} + b_n` is a polynomial in `m`. Writing
//! `f_n = m^n Σ_k d_{n,k} m^{-k}` and `d_{n,k} = n^k Σ_l r_{k,l} n^{-l}`, the
//! generating functions `r_l(v) = Σ_k r_{l+k,l} v^k` are fitted to
//! exponential-polynomial combinations `e^{γv²/2+βv} Σ_j p_j(v) e^{jv}`.

use rayon::prelude::*;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::linsolve::{solve_overdetermined, SolveError};
use crate::numerics::{
    interpolate_consecutive, lagrange_interpolate, Field, Fractions, LambdaPoly, Polynomial,
    QAlgebra, Ring,
};
use crate::sequences::RecurrenceSpec;
use crate::series::TruncatedPowerSeries;

/// Surplus series coefficients that every fit must reproduce exactly.
pub const DEFAULT_SURPLUS: usize = 10;
/// Surplus samples per `d_{·,k}` interpolation.
pub const INTERP_SURPLUS: usize = 2;

/// Shape of the exponential-polynomial form of `r_l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    /// `e^{v²/2} Σ_{k=0}^{l-1} p_{l,k}(v) e^{(l-k)v}` with `deg p_{l,k} = 3k`.
    Takeuchi,
    /// `e^{λ(v²/2+v)} Σ_{k=0}^{l} p_{l,k}(v) e^{(l-k)v}` with `deg p_{l,k} = 3k`.
    Family,
}

impl Structure {
    /// `(j, degree)` of every term at index `l`.
    pub fn terms(self, l: usize) -> Vec<(i64, usize)> {
        let count = match self {
            Structure::Takeuchi => l,
            Structure::Family => l + 1,
        };
        (0..count).map(|k| ((l - k) as i64, 3 * k)).collect()
    }

    pub fn unknowns(self, l: usize) -> usize {
        self.terms(l).iter().map(|&(_, d)| d + 1).sum()
    }
}

/// Table sizes needed to fit `r_0..r_{l_max}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Depths {
    pub l_max: usize,
    pub surplus: usize,
    /// Unknowns of the largest fit.
    pub unknowns: usize,
    /// Series length of the largest fit.
    pub kv: usize,
    /// Largest `k` in the `r_{k,l}` table.
    pub k_max: usize,
    /// Largest `n` in the `f_n` table.
    pub n_max: usize,
}

pub fn required_depths(structure: Structure, l_max: usize, surplus: usize) -> Depths {
    let (unknowns, kv, k_max) = (0..=l_max)
        .map(|l| {
            let u = structure.unknowns(l);
            let kv = u + surplus;
            (u, kv, l + kv - 1)
        })
        .fold((0, 0, 0), |a, b| (a.0.max(b.0), a.1.max(b.1), a.2.max(b.2)));
    Depths {
        l_max,
        surplus,
        unknowns,
        kv,
        k_max,
        n_max: 2 * k_max + INTERP_SURPLUS,
    }
}

/// `f_0..f_{n_max}` as polynomials in `m`.
pub fn build_f<R: Ring + 'static>(spec: &RecurrenceSpec<R>, n_max: usize) -> Vec<Polynomial<R>> {
    let mut f = Vec::with_capacity(n_max + 1);
    let mut g: Vec<Polynomial<R>> = Vec::with_capacity(n_max + 1);
    f.push(Polynomial::constant(spec.initial.clone()));
    g.push(f[0].shift_down_one());
    for n in 1..=n_max {
        let c: Vec<R> = (1..=n).map(|k| spec.coeff(n, k)).collect();
        let coeff_i = |i: usize| {
            let mut acc = R::zero();
            for k in 1..=n - i {
                if let Some(x) = g[n - k].coeffs().get(i) {
                    if !c[k - 1].is_zero() && !x.is_zero() {
                        acc.add_mul_assign(&c[k - 1], x);
                    }
                }
            }
            acc
        };
        let acc: Vec<R> = if n >= 24 {
            (0..n).into_par_iter().map(coeff_i).collect()
        } else {
            (0..n).map(coeff_i).collect()
        };
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(spec.inhomogeneous(n));
        coeffs.extend(acc);
        let fn_ = Polynomial::new(coeffs);
        g.push(fn_.shift_down_one());
        f.push(fn_);
    }
    f
}

/// `Σ_i [m^i] f_n · B_i`, which equals `(1/e) Σ_m f_n(m)/m!` exactly.
pub fn bell_transform<R: Ring>(f_n: &Polynomial<R>, bell: &[Integer]) -> R {
    let mut acc = R::zero();
    for (c, b) in f_n.coeffs().iter().zip(bell) {
        acc.add_assign_ref(&c.times_integer(b));
    }
    acc
}

/// `(1/e) Σ_{m=0}^{M} f_n(m)/m!` in floating point.
pub fn resum_numeric(f_n: &Polynomial<Integer>, m_max: u64, prec: u32) -> Float {
    let mut sum = Float::with_val(prec, 0);
    let mut fact = Integer::from(1);
    for m in 0..=m_max {
        if m > 0 {
            fact *= m;
        }
        let v = f_n.eval(&Integer::from(m));
        sum += Float::with_val(prec, &Rational::from((v, fact.clone())));
    }
    sum * Float::with_val(prec, -1).exp()
}

/// `d_{n,k}`: coefficient of `m^{n-k}` in `f_n`.
pub fn extract_d<R: Ring>(f: &[Polynomial<R>], n: usize, k: usize) -> R {
    if k > n {
        R::zero()
    } else {
        f[n].coeff(n - k)
    }
}

/// `r_{k,l}` for `0 <= l <= k <= k_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct RTable<Q> {
    rows: Vec<Vec<Q>>,
}

impl<Q: Ring> RTable<Q> {
    pub fn k_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, k: usize, l: usize) -> &Q {
        &self.rows[k][l]
    }
}

/// Interpolates each `d_{·,k}` from `n = k..=2k+2` as a polynomial of degree `k`
/// in `n`, requiring the two surplus samples to lie on it exactly.
pub fn interpolate_r<R: Fractions + 'static>(
    f: &[Polynomial<R>],
    k_max: usize,
) -> Result<RTable<R::Frac>> {
    let need = 2 * k_max + INTERP_SURPLUS;
    if f.len() <= need {
        return Err(Error::InsufficientDepth {
            required: need,
            available: f.len().saturating_sub(1),
        });
    }
    let rows: Result<Vec<Vec<R::Frac>>> = (0..=k_max)
        .into_par_iter()
        .map(|k| {
            let values: Vec<R> = (k..=2 * k + INTERP_SURPLUS).map(|n| extract_d(f, n, k)).collect();
            let (p, den) = interpolate_consecutive(k as i64, &values, k)
                .map_err(|i| Error::Overdetermined { k, n: k + i })?;
            Ok((0..=k)
                .map(|l| p.coeff(k - l).to_frac().div_integer(&den))
                .collect())
        })
        .collect();
    Ok(RTable { rows: rows? })
}

/// `r_l(v)` through `v^{kv-1}`.
pub fn rl_series<Q: Ring>(table: &RTable<Q>, l: usize, kv: usize) -> Result<TruncatedPowerSeries<Q>> {
    if kv == 0 {
        return Err(Error::Domain("series length must be positive".into()));
    }
    let top = l + kv - 1;
    if top > table.k_max() {
        return Err(Error::InsufficientDepth {
            required: top,
            available: table.k_max(),
        });
    }
    let c = (0..kv).map(|k| table.get(l + k, l).clone()).collect();
    Ok(TruncatedPowerSeries::new(c, kv - 1))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpPolyTerm<Q> {
    pub j: i64,
    pub poly: Polynomial<Q>,
}

/// `e^{γv²/2 + βv} Σ_j p_j(v) e^{jv}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpPolyCombination<Q> {
    pub gamma: Q,
    pub beta: Q,
    pub terms: Vec<ExpPolyTerm<Q>>,
}

impl<Q: QAlgebra> ExpPolyCombination<Q> {
    pub fn poly(&self, j: i64) -> Option<&Polynomial<Q>> {
        self.terms.iter().find(|t| t.j == j).map(|t| &t.poly)
    }

    /// Taylor expansion in `v` through `v^order`.
    pub fn series(&self, order: usize) -> TruncatedPowerSeries<Q> {
        let half = Rational::from((1, 2));
        let gauss = TruncatedPowerSeries::new(
            vec![Q::zero(), self.beta.clone(), self.gamma.scale(&half)],
            order,
        )
        .exp()
        .expect("zero constant term");
        let mut sum = TruncatedPowerSeries::zero(order);
        for t in &self.terms {
            let e = TruncatedPowerSeries::new(vec![Q::zero(), Q::from_i64(t.j)], order)
                .exp()
                .expect("zero constant term");
            let p = TruncatedPowerSeries::new(t.poly.coeffs().to_vec(), order);
            sum = sum.add(&p.mul(&e));
        }
        gauss.mul(&sum)
    }
}

/// Solves for the polynomial coefficients of an exponential-polynomial form.
/// `terms` lists `(j, deg p_j)`; the series must have at least `surplus`
/// coefficients beyond the unknown count, and all of them must be matched.
pub fn fit_exp_poly<Q: QAlgebra>(
    series: &TruncatedPowerSeries<Q>,
    l: usize,
    terms: &[(i64, usize)],
    gamma: &Q,
    beta: &Q,
    surplus: usize,
) -> Result<ExpPolyCombination<Q>> {
    let len = series.order() + 1;
    let unknowns: usize = terms.iter().map(|&(_, d)| d + 1).sum();
    if len < unknowns + surplus {
        return Err(Error::InsufficientDepth {
            required: unknowns + surplus,
            available: len,
        });
    }
    let half = Rational::from((1, 2));
    let strip = TruncatedPowerSeries::new(
        vec![Q::zero(), beta.negated(), gamma.scale(&half).negated()],
        series.order(),
    )
    .exp()?;
    let s = series.mul(&strip);

    // row t scaled by t!, so entries j^{t-a} t!/(t-a)! are integers
    let mut matrix = Vec::with_capacity(len);
    let mut rhs = Vec::with_capacity(len);
    let mut fact = Integer::from(1);
    for t in 0..len {
        if t > 0 {
            fact *= t;
        }
        let mut row = Vec::with_capacity(unknowns);
        for &(j, deg) in terms {
            for a in 0..=deg {
                if t < a {
                    row.push(Rational::new());
                } else {
                    let falling = Integer::from(Integer::factorial((t) as u32))
                        / Integer::from(Integer::factorial((t - a) as u32));
                    let jp = Integer::from(j).pow((t - a) as u32);
                    row.push(Rational::from(jp * falling));
                }
            }
        }
        matrix.push(row);
        rhs.push(s.coeff(t).times_integer(&fact));
    }
    let sol = solve_overdetermined(&matrix, &rhs).map_err(|e| match e {
        SolveError::Inconsistent { row } => Error::StructureFalsified {
            l,
            detail: format!("coefficient of v^{row} is not matched by the fitted form"),
        },
        SolveError::Singular { column } => Error::StructureFalsified {
            l,
            detail: format!("basis column {column} is degenerate"),
        },
    })?;
    let mut it = sol.into_iter();
    let terms = terms
        .iter()
        .map(|&(j, deg)| ExpPolyTerm {
            j,
            poly: Polynomial::new(it.by_ref().take(deg + 1).collect()),
        })
        .collect();
    Ok(ExpPolyCombination {
        gamma: gamma.clone(),
        beta: beta.clone(),
        terms,
    })
}

/// Everything produced by one run of the pipeline.
#[derive(Clone, Debug)]
pub struct AnsatzRun<Q> {
    pub depths: Depths,
    pub structure: Structure,
    pub r: RTable<Q>,
    /// `fits[l]` is the fitted form of `r_l`.
    pub fits: Vec<ExpPolyCombination<Q>>,
}

impl<Q: QAlgebra> AnsatzRun<Q> {
    /// Constant term of the polynomial attached to `e^{lv}`, for each `l`.
    pub fn leading_constants(&self) -> Vec<Q> {
        self.fits
            .iter()
            .enumerate()
            .map(|(l, fit)| fit.poly(l as i64).map_or_else(Q::zero, |p| p.coeff(0)))
            .collect()
    }
}

pub fn run_ansatz<R: Fractions + 'static>(
    spec: &RecurrenceSpec<R>,
    structure: Structure,
    l_max: usize,
    gamma: &R::Frac,
    beta: &R::Frac,
    surplus: usize,
) -> Result<AnsatzRun<R::Frac>> {
    let depths = required_depths(structure, l_max, surplus);
    let f = build_f(spec, depths.n_max);
    let r = interpolate_r(&f, depths.k_max)?;
    drop(f);
    let fits: Result<Vec<_>> = (0..=l_max)
        .into_par_iter()
        .map(|l| {
            let terms = structure.terms(l);
            let kv = structure.unknowns(l) + surplus;
            let ser = rl_series(&r, l, kv)?;
            fit_exp_poly(&ser, l, &terms, gamma, beta, surplus)
        })
        .collect();
    Ok(AnsatzRun {
        depths,
        structure,
        r,
        fits: fits?,
    })
}

/// The pipeline for the Takeuchi recurrence, with `γ = 1` and `β = 0`.
pub fn takeuchi_ansatz(l_max: usize, surplus: usize) -> Result<AnsatzRun<Rational>> {
    let depths = required_depths(Structure::Takeuchi, l_max, surplus);
    let spec = RecurrenceSpec::takeuchi(depths.n_max);
    run_ansatz(&spec, Structure::Takeuchi, l_max, &Rational::from(1), &Rational::new(), surplus)
}

/// The pipeline for the family at a rational parameter, with `γ = β = λ`.
pub fn family_ansatz(lambda: &Rational, l_max: usize, surplus: usize) -> Result<AnsatzRun<Rational>> {
    if lambda.denom() == &1 {
        if let Some(s) = lambda.numer().to_i64() {
            let spec = RecurrenceSpec::family_integer(s);
            return run_ansatz(&spec, Structure::Family, l_max, lambda, lambda, surplus);
        }
    }
    let spec = RecurrenceSpec::family(lambda.clone());
    run_ansatz(&spec, Structure::Family, l_max, lambda, lambda, surplus)
}

/// The family pipeline over ℚ[λ] with a formal parameter. Cost grows quickly
/// with `l_max`; intended for small cross-checks.
pub fn family_ansatz_formal(l_max: usize, surplus: usize) -> Result<AnsatzRun<LambdaPoly>> {
    let lam = LambdaPoly::var();
    let spec = RecurrenceSpec::family(lam.clone());
    run_ansatz(&spec, Structure::Family, l_max, &lam, &lam, surplus)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaTable {
    pub lambdas: Vec<Rational>,
    /// `μ_l = λ_l ((l-1)!)^3` for `l >= 1`.
    pub mu: Vec<Rational>,
}

impl LambdaTable {
    pub fn mu_integral(&self) -> bool {
        self.mu.iter().all(|m| m.denom() == &1)
    }
}

pub fn lambda_table(run: &AnsatzRun<Rational>) -> LambdaTable {
    let lambdas = run.leading_constants();
    let mut mu = Vec::new();
    let mut fact = Integer::from(1);
    for (l, lam) in lambdas.iter().enumerate().skip(1) {
        if l > 1 {
            fact *= l - 1;
        }
        let cube = Integer::from(fact.clone().pow(3));
        mu.push(Rational::from(lam * &cube));
    }
    LambdaTable { lambdas, mu }
}

/// `Σ_{l<=L} λ_l` for every `L`.
pub fn h_partial_sums(lambdas: &[Rational]) -> Vec<Rational> {
    let mut acc = Rational::new();
    lambdas
        .iter()
        .map(|l| {
            acc += l;
            acc.clone()
        })
        .collect()
}

/// Coefficients of `h_λ(x) = λ^{-1} log(Σ_l Λ_l x^l)` at a fixed nonzero `λ`,
/// where `Λ_l` are the leading constants of the family fits (`Λ_0 = 1`).
pub fn family_h_coefficients<F: Field>(leading: &[F], lambda: &F) -> Result<Vec<F>> {
    let inv = lambda
        .inv()
        .ok_or_else(|| Error::Domain("λ = 0 has no h-series normalisation".into()))?;
    let order = leading.len() - 1;
    let log = TruncatedPowerSeries::new(leading.to_vec(), order).log()?;
    Ok(log.coeffs().iter().map(|c| c.times(&inv)).collect())
}

/// The same with formal `λ`; the logarithm's coefficients must be divisible by `λ`.
pub fn family_h_coefficients_formal(leading: &[LambdaPoly]) -> Result<Vec<LambdaPoly>> {
    let order = leading.len() - 1;
    let log = TruncatedPowerSeries::new(leading.to_vec(), order).log()?;
    log.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let (q, rem) = c.div_linear(&Rational::new());
            if rem.cmp0().is_ne() {
                Err(Error::StructureFalsified {
                    l: k,
                    detail: "log coefficient not divisible by λ".into(),
                })
            } else {
                Ok(q)
            }
        })
        .collect()
}

/// `h_λ(x)` coefficients as polynomials in `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyHSeries {
    /// `coeffs[k]` is the coefficient of `x^k`, `k = 0..=l_max`.
    pub coeffs: Vec<LambdaPoly>,
    /// The integer parameters sampled, with the rational coefficients found at each.
    pub samples: Vec<(i64, Vec<Rational>)>,
    pub depths: Depths,
}

impl FamilyHSeries {
    /// `deg_λ [x^k] <= k` for every `k`.
    pub fn degrees_bounded(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, p)| p.degree().is_none_or(|d| d <= k))
    }
}

/// Number of parameter samples used by [`h_series_family`].
pub fn family_samples(l_max: usize) -> usize {
    l_max + 1 + INTERP_SURPLUS
}

/// Runs the family pipeline at `λ = 1..=l_max+3` and interpolates each
/// `h_λ` coefficient over `λ`. With `l_max + 3` samples a coefficient of
/// degree up to `l_max + 2` is recovered exactly, so the degree bound is a
/// checked property rather than an assumption.
pub fn h_series_family(l_max: usize, surplus: usize) -> Result<FamilyHSeries> {
    let count = family_samples(l_max) as i64;
    let samples: Result<Vec<(i64, Vec<Rational>)>> = (1..=count)
        .into_par_iter()
        .map(|s| {
            let lam = Rational::from(s);
            let run = family_ansatz(&lam, l_max, surplus)?;
            let h = family_h_coefficients(&run.leading_constants(), &lam)?;
            Ok((s, h))
        })
        .collect();
    let samples = samples?;
    let coeffs: Result<Vec<LambdaPoly>> = (0..=l_max)
        .map(|k| {
            let pts: Vec<(i64, Rational)> = samples.iter().map(|(s, h)| (*s, h[k].clone())).collect();
            lagrange_interpolate(&pts)
        })
        .collect();
    Ok(FamilyHSeries {
        coeffs: coeffs?,
        samples,
        depths: required_depths(Structure::Family, l_max, surplus),
    })
}
