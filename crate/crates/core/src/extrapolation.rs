//! Sequence acceleration and the limits `C_T` and `d(λ)`.
//!
//! The corrections to both limits are expansions in `e^{-kw}`, `k >= 2`, with
//! coefficients that vary slowly with `w = W(n)`. The primary estimator
//! therefore solves a collocation system in the basis
//! `e^{-kw} (1+w)^j`, `2 <= k <= K`, `-a <= j <= b`, at geometrically spaced
//! `n`. Two shapes are compared to obtain the trusted digits; Aitken, Wynn
//! and Richardson tableaux are kept in the trace for comparison.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::asymptotics::WValue;
use crate::error::{Error, Result};
use crate::numerics::{agreeing_digits, check_precision, ln_integer, GaussianRational, Ring};
use crate::sequences::{bell_numbers, family_numbers, family_numbers_integer, takeuchi_numbers};

/// Published 25-digit value of `C_T`, used as a default and a comparison target.
pub const REFERENCE_C_T: &str = "2.2394331040052607317547850";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Wynn,
    Aitken,
    RichardsonInX,
}

/// Acceleration tableau; `columns[0]` is the input.
pub fn accelerate(seq: &[Float], method: Method, x: Option<&[Float]>) -> Result<Vec<Vec<Float>>> {
    if seq.len() < 3 {
        return Err(Error::TooShort {
            required: 3,
            got: seq.len(),
        });
    }
    match method {
        Method::Aitken => Ok(aitken_tableau(seq)),
        Method::Wynn => Ok(wynn_tableau(seq)),
        Method::RichardsonInX => {
            let x = x.ok_or_else(|| Error::Domain("Richardson needs a scale sequence".into()))?;
            if x.len() != seq.len() {
                return Err(Error::Domain("scale and sequence lengths differ".into()));
            }
            if x.iter().any(|v| *v <= 0) || x.windows(2).any(|p| p[1] >= p[0]) {
                return Err(Error::Domain(
                    "scale must be positive and strictly decreasing".into(),
                ));
            }
            Ok(richardson_tableau(seq, x))
        }
    }
}

fn aitken_tableau(seq: &[Float]) -> Vec<Vec<Float>> {
    let mut cols = vec![seq.to_vec()];
    while cols.last().unwrap().len() >= 3 {
        let s = cols.last().unwrap();
        let p = s[0].prec();
        let next: Vec<Float> = s
            .windows(3)
            .map(|w| {
                let d1 = Float::with_val(p, &w[2] - &w[1]);
                let d0 = Float::with_val(p, &w[1] - &w[0]);
                let den = Float::with_val(p, &d1 - &d0);
                if den.is_zero() {
                    w[2].clone()
                } else {
                    Float::with_val(p, &w[2] - Float::with_val(p, d1.square_ref()) / den)
                }
            })
            .collect();
        if next.iter().any(|v| !v.is_finite()) {
            break;
        }
        cols.push(next);
    }
    cols
}

/// Even columns `ε_0, ε_2, ...` of the ε-algorithm. The table stops at the
/// first vanishing difference, where the sequence has already converged.
fn wynn_tableau(seq: &[Float]) -> Vec<Vec<Float>> {
    let p = seq[0].prec();
    let mut prev: Vec<Float> = vec![Float::with_val(p, 0); seq.len() + 1];
    let mut cur: Vec<Float> = seq.to_vec();
    let mut out = vec![seq.to_vec()];
    let mut k = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = Float::with_val(p, &cur[i + 1] - &cur[i]);
            if d.is_zero() {
                return out;
            }
            next.push(Float::with_val(p, &prev[i + 1] + d.recip()));
        }
        if next.iter().any(|v| !v.is_finite()) {
            return out;
        }
        prev = cur;
        cur = next;
        k += 1;
        if k % 2 == 0 {
            out.push(cur.clone());
        }
    }
    out
}

/// Neville extrapolation to `x = 0` of the interpolating polynomial in `x`.
fn richardson_tableau(seq: &[Float], x: &[Float]) -> Vec<Vec<Float>> {
    let p = seq[0].prec();
    let mut cols = vec![seq.to_vec()];
    for k in 1..seq.len() {
        let prev = cols.last().unwrap();
        let next: Vec<Float> = (k..seq.len())
            .map(|i| {
                let a = &prev[i - k];
                let b = &prev[i - k + 1];
                let num = Float::with_val(p, &x[i - k] * b) - Float::with_val(p, &x[i] * a);
                num / Float::with_val(p, &x[i - k] - &x[i])
            })
            .collect();
        cols.push(next);
    }
    cols
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceEntry {
    pub method: String,
    pub depth: usize,
    #[serde(serialize_with = "ser_float")]
    pub value: Float,
}

fn ser_float<S: serde::Serializer>(x: &Float, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::numerics::format_bigfloat(x))
}

fn ser_opt_float<S: serde::Serializer>(
    x: &Option<Float>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_float(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtrapolationResult {
    #[serde(serialize_with = "ser_float")]
    pub estimate: Float,
    /// Imaginary part, for complex `λ`.
    #[serde(serialize_with = "ser_opt_float")]
    pub estimate_im: Option<Float>,
    pub stable_digits: u32,
    pub trace: Vec<TraceEntry>,
    pub n_range: (usize, usize),
    pub precision_bits: u32,
}

/// Collocation basis `e^{-kw}(1+w)^j`, `2 <= k <= k_max`, `-a <= j <= b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Basis {
    pub k_max: u32,
    pub a: i32,
    pub b: i32,
}

impl Basis {
    pub const PRIMARY: Basis = Basis { k_max: 6, a: 3, b: 1 };
    pub const SECONDARY: Basis = Basis { k_max: 6, a: 1, b: 2 };

    pub fn len(&self) -> usize {
        (self.k_max as usize - 1) * (self.a + self.b + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn row(&self, w: &Float) -> Vec<Float> {
        let p = w.prec();
        let ew = Float::with_val(p, (-w.clone()).exp_ref());
        let w1 = Float::with_val(p, w + 1u32);
        let mut row = vec![Float::with_val(p, 1)];
        for k in 2..=self.k_max {
            let ek = Float::with_val(p, Pow::pow(&ew, k));
            for j in -self.a..=self.b {
                let wj = Float::with_val(p, Pow::pow(&w1, j));
                row.push(Float::with_val(p, &ek * wj));
            }
        }
        row
    }

    fn label(&self) -> String {
        format!("collocation(K={},a={},b={})", self.k_max, self.a, self.b)
    }
}

/// `count` distinct integers spread geometrically over `[lo, hi]`.
pub fn geometric_nodes(lo: usize, hi: usize, count: usize) -> Result<Vec<usize>> {
    if count < 2 || lo == 0 || hi <= lo {
        return Err(Error::Domain(format!("bad node range [{lo}, {hi}] x {count}")));
    }
    let ratio = hi as f64 / lo as f64;
    let mut ns: Vec<usize> = (0..count)
        .map(|i| (lo as f64 * ratio.powf(i as f64 / (count - 1) as f64)).round() as usize)
        .collect();
    ns.dedup();
    if ns.len() < count {
        return Err(Error::TooShort {
            required: count,
            got: ns.len(),
        });
    }
    Ok(ns)
}

fn solve_dense(mut a: Vec<Vec<Float>>, mut b: Vec<Float>) -> Result<Vec<Float>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].clone().abs().total_cmp(&a[j][col].clone().abs()))
            .unwrap();
        if a[piv][col].is_zero() {
            return Err(Error::Singular);
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = Float::with_val(a[r][col].prec(), &a[r][col] / &a[col][col]);
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let t = Float::with_val(f.prec(), &f * &a[col][c]);
                a[r][c] -= t;
            }
            let t = Float::with_val(f.prec(), &f * &b[col]);
            b[r] -= t;
        }
    }
    let mut x = vec![Float::with_val(b[0].prec(), 0); n];
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..n {
            acc -= Float::with_val(acc.prec(), &a[i][j] * &x[j]);
        }
        x[i] = acc / &a[i][i];
    }
    Ok(x)
}

/// Constant term of the collocation fit through `(w_i, s_i)`.
pub fn collocate(points: &[(Float, Float)], basis: Basis) -> Result<Float> {
    let m = basis.len() + 1;
    if points.len() != m {
        return Err(Error::TooShort {
            required: m,
            got: points.len(),
        });
    }
    let a = points.iter().map(|(w, _)| basis.row(w)).collect();
    let b = points.iter().map(|(_, s)| s.clone()).collect();
    Ok(solve_dense(a, b)?.swap_remove(0))
}

/// A sampled sequence `s_n` with its `w = W(n)`.
trait Sampler {
    fn sample(&self, n: usize, prec: u32) -> Result<(Float, Float)>;
}

struct Estimates {
    primary: Float,
    secondary: Float,
}

fn collocation_pair(
    sampler: &dyn Sampler,
    lo: usize,
    hi: usize,
    prec: u32,
) -> Result<Estimates> {
    let run = |basis: Basis| -> Result<Float> {
        let ns = geometric_nodes(lo, hi, basis.len() + 1)?;
        let pts = ns
            .iter()
            .map(|&n| sampler.sample(n, prec).map(|(s, w)| (w, s)))
            .collect::<Result<Vec<_>>>()?;
        collocate(&pts, basis)
    };
    Ok(Estimates {
        primary: run(Basis::PRIMARY)?,
        secondary: run(Basis::SECONDARY)?,
    })
}

/// Aitken, Wynn and Richardson values on a geometric subsequence, for the trace.
fn classical_trace(sampler: &dyn Sampler, lo: usize, hi: usize, prec: u32) -> Result<Vec<TraceEntry>> {
    let ns = geometric_nodes(lo, hi, 12.min(hi - lo + 1))?;
    let mut seq = Vec::new();
    let mut x = Vec::new();
    for &n in &ns {
        let (s, w) = sampler.sample(n, prec)?;
        x.push(Float::with_val(prec, (-(w * 2u32)).exp_ref()));
        seq.push(s);
    }
    let mut out = Vec::new();
    let mut push = |name: &str, cols: Vec<Vec<Float>>| {
        for (d, c) in cols.into_iter().enumerate().skip(1) {
            if let Some(v) = c.last() {
                out.push(TraceEntry {
                    method: name.into(),
                    depth: d,
                    value: v.clone(),
                });
            }
        }
    };
    push("aitken", accelerate(&seq, Method::Aitken, None)?);
    push("wynn", accelerate(&seq, Method::Wynn, None)?);
    let rich = accelerate(&seq, Method::RichardsonInX, Some(&x))?;
    push("richardson-e^{-2w}", rich.into_iter().take(8).collect());
    Ok(out)
}

fn extrapolate(sampler: &dyn Sampler, n_max: usize, prec: u32) -> Result<ExtrapolationResult> {
    check_precision(prec)?;
    let lo = n_max / 2;
    let est = collocation_pair(sampler, lo, n_max, prec)?;
    let method_digits = agreeing_digits(&est.primary, &est.secondary, prec / 4);

    let hi_prec = prec + prec / 2;
    let again = collocation_pair(sampler, lo, n_max, hi_prec)?;
    let precision_digits = agreeing_digits(&est.primary, &again.primary, prec / 4);
    // The methods agree further once rounding noise is reduced: the working
    // precision, not the data, is then what limits the result.
    let attainable = method_digits.max(agreeing_digits(&again.primary, &again.secondary, prec / 4));
    if precision_digits < attainable {
        return Err(Error::PrecisionStarvation(format!(
            "{prec} bits reproduce only {precision_digits} digits at {hi_prec} bits, \
             below the {attainable} digits the methods can resolve"
        )));
    }

    let (raw, _) = sampler.sample(n_max, prec)?;
    let mut trace = vec![
        TraceEntry {
            method: "raw".into(),
            depth: 0,
            value: raw,
        },
        TraceEntry {
            method: Basis::PRIMARY.label(),
            depth: Basis::PRIMARY.len(),
            value: est.primary.clone(),
        },
        TraceEntry {
            method: Basis::SECONDARY.label(),
            depth: Basis::SECONDARY.len(),
            value: est.secondary.clone(),
        },
        TraceEntry {
            method: format!("{} at {hi_prec} bits", Basis::PRIMARY.label()),
            depth: Basis::PRIMARY.len(),
            value: again.primary.clone(),
        },
    ];
    trace.extend(classical_trace(sampler, lo, n_max, prec)?);
    Ok(ExtrapolationResult {
        estimate: est.primary,
        estimate_im: None,
        stable_digits: method_digits,
        trace,
        n_range: (lo, n_max),
        precision_bits: prec,
    })
}

struct CtSampler<'a> {
    t: &'a [Integer],
    b: &'a [Integer],
}

impl Sampler for CtSampler<'_> {
    fn sample(&self, n: usize, prec: u32) -> Result<(Float, Float)> {
        let wv = WValue::new(n, prec)?;
        let u = crate::asymptotics::figure2_ratio(self.t, self.b, &wv)?;
        Ok((u, wv.w))
    }
}

/// Limit of `u_n = T_{n+1}/(B_n e^{w²/2+w})` from tables holding `T_0..T_{n_max+1}`.
pub fn estimate_ct_from_tables(
    t: &[Integer],
    b: &[Integer],
    n_max: usize,
    prec: u32,
) -> Result<ExtrapolationResult> {
    if n_max < 200 {
        return Err(Error::Domain("n_max must be at least 200".into()));
    }
    extrapolate(&CtSampler { t, b }, n_max, prec)
}

#[allow(non_snake_case)]
pub fn estimate_CT(n_max: usize, prec: u32) -> Result<ExtrapolationResult> {
    let t = takeuchi_numbers(n_max + 1).values;
    let b = bell_numbers(n_max + 1).values;
    estimate_ct_from_tables(&t, &b, n_max, prec)
}

/// `log A_n - log B_n` for the family, with a continuously tracked argument.
pub struct FamilyLogs {
    pub lambda: GaussianRational,
    /// `(Re, Im)` of `log A_n - log B_n`, indexed by `n`.
    pub diff: Vec<(Float, Float)>,
}

fn rational_float(q: &Rational, prec: u32) -> Float {
    Float::with_val(prec, q)
}

/// Computes `log A_n - log B_n` for `n <= n_max`. The imaginary part of
/// `log A_n` is accumulated from principal arguments of `A_n/A_{n-1}`; a
/// step of more than `π/2` is treated as a branch-tracking failure.
pub fn family_log_ratios(lambda: &GaussianRational, n_max: usize, prec: u32) -> Result<FamilyLogs> {
    let wp = prec + 64;
    let bell = bell_numbers(n_max).values;
    let values: Vec<GaussianRational> = if lambda.is_real() && lambda.re.denom() == &1 {
        let s = lambda
            .re
            .numer()
            .to_i64()
            .ok_or_else(|| Error::Domain("λ too large".into()))?;
        family_numbers_integer(n_max, s)
            .values
            .into_iter()
            .map(|v| GaussianRational::from(Rational::from(v)))
            .collect()
    } else if lambda.is_real() {
        family_numbers(n_max, &lambda.re)
            .values
            .into_iter()
            .map(GaussianRational::from)
            .collect()
    } else {
        family_numbers(n_max, lambda).values
    };
    let half_pi = Float::with_val(wp, rug::float::Constant::Pi) / 2u32;
    let mut arg = Float::with_val(wp, 0);
    let mut prev: Option<(Float, Float)> = None;
    let mut diff = Vec::with_capacity(n_max + 1);
    for (n, a) in values.iter().enumerate() {
        if a.is_zero() {
            return Err(Error::BranchTracking(n));
        }
        let re = rational_float(&a.re, wp);
        let im = rational_float(&a.im, wp);
        let modulus2 = Float::with_val(wp, re.square_ref()) + Float::with_val(wp, im.square_ref());
        let log_mod = Float::with_val(wp, modulus2.ln_ref()) / 2u32;
        let here = Float::with_val(wp, im.atan2_ref(&re));
        match &prev {
            None => arg = here.clone(),
            Some((pre, pim)) => {
                // arg(A_n / A_{n-1}) = arg(A_n * conj(A_{n-1}))
                let x = Float::with_val(wp, &re * pre) + Float::with_val(wp, &im * pim);
                let y = Float::with_val(wp, &im * pre) - Float::with_val(wp, &re * pim);
                let step = Float::with_val(wp, y.atan2_ref(&x));
                if Float::with_val(wp, step.abs_ref()) > half_pi {
                    return Err(Error::BranchTracking(n));
                }
                arg += step;
            }
        }
        prev = Some((re, im));
        let log_b = ln_integer(wp, &bell[n]);
        diff.push((
            Float::with_val(prec, log_mod - log_b),
            Float::with_val(prec, &arg),
        ));
    }
    Ok(FamilyLogs {
        lambda: lambda.clone(),
        diff,
    })
}

struct DSampler<'a> {
    logs: &'a FamilyLogs,
    imaginary: bool,
}

impl DSampler<'_> {
    /// `v_n = (log A_n - log B_n)/λ - w²/2 - w + (λ+1)/2 e^{-w}` as `(Re, Im, w)`.
    fn complex_sample(logs: &FamilyLogs, n: usize, prec: u32) -> Result<(Float, Float, Float)> {
        let (dr, di) = logs
            .diff
            .get(n)
            .ok_or_else(|| Error::Domain(format!("family table stops before n = {n}")))?;
        let wv = WValue::new(n, prec)?;
        let lr = rational_float(&logs.lambda.re, prec);
        let li = rational_float(&logs.lambda.im, prec);
        let norm = Float::with_val(prec, lr.square_ref()) + Float::with_val(prec, li.square_ref());
        // (dr + i di) / (lr + i li)
        let qr = (Float::with_val(prec, dr * &lr) + Float::with_val(prec, di * &li)) / &norm;
        let qi = (Float::with_val(prec, di * &lr) - Float::with_val(prec, dr * &li)) / &norm;
        let w = wv.w.clone();
        let ew = wv.exp_neg(1);
        let lead = Float::with_val(prec, w.square_ref()) / 2u32 + &w;
        let cr = Float::with_val(prec, &lr + 1u32) / 2u32 * &ew;
        let ci = Float::with_val(prec, &li / 2u32) * &ew;
        Ok((qr - lead + cr, qi + ci, w))
    }
}

impl Sampler for DSampler<'_> {
    fn sample(&self, n: usize, prec: u32) -> Result<(Float, Float)> {
        let (r, i, w) = Self::complex_sample(self.logs, n, prec)?;
        Ok((if self.imaginary { i } else { r }, w))
    }
}

/// Limit `d(λ)` from precomputed log ratios.
pub fn estimate_d_lambda_from_logs(
    logs: &FamilyLogs,
    n_max: usize,
    prec: u32,
) -> Result<ExtrapolationResult> {
    if logs.lambda.is_zero() {
        return Err(Error::Domain("λ = 0 reduces to the Bell numbers; d(λ) is undefined".into()));
    }
    let mut re = extrapolate(&DSampler { logs, imaginary: false }, n_max, prec)?;
    if !logs.lambda.is_real() {
        let im = extrapolate(&DSampler { logs, imaginary: true }, n_max, prec)?;
        re.stable_digits = re.stable_digits.min(im.stable_digits);
        re.trace.extend(im.trace.into_iter().map(|mut e| {
            e.method = format!("im/{}", e.method);
            e
        }));
        re.estimate_im = Some(im.estimate);
    }
    Ok(re)
}

pub fn estimate_d_lambda(
    lambda: &GaussianRational,
    n_max: usize,
    prec: u32,
) -> Result<ExtrapolationResult> {
    if lambda.is_zero() {
        return Err(Error::Domain("λ = 0 reduces to the Bell numbers; d(λ) is undefined".into()));
    }
    let logs = family_log_ratios(lambda, n_max, prec)?;
    estimate_d_lambda_from_logs(&logs, n_max, prec)
}

/// `log A_n - log B_n - λ(w²/2 + w + d - (λ+1)/2 e^{-w})` for real `λ`.
pub fn family_residual(logs: &FamilyLogs, n: usize, d: &Float, prec: u32) -> Result<Float> {
    let (v, _, _) = DSampler::complex_sample(logs, n, prec)?;
    let lam = rational_float(&logs.lambda.re, prec);
    Ok((v - d) * lam)
}
