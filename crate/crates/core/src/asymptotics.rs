//! Lambert W and the asymptotic formulas for Bell and Takeuchi numbers,
//! all written in terms of `w = W(n)` and `e^w = n/w`.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::{check_precision, ln_integer};

const GUARD: u32 = 32;

/// `W(n)` together with `n` and `e^w`.
#[derive(Clone, Debug, PartialEq)]
pub struct WValue {
    pub n: Integer,
    pub w: Float,
    pub exp_w: Float,
    pub precision_bits: u32,
}

impl WValue {
    pub fn new(n: impl Into<Integer>, prec: u32) -> Result<Self> {
        let n: Integer = n.into();
        let x = Float::with_val(prec, &n);
        let w = lambert_w(&x, prec)?;
        let exp_w = if w.is_zero() {
            Float::with_val(prec, 1)
        } else {
            Float::with_val(prec, &x / &w)
        };
        Ok(WValue {
            n,
            w,
            exp_w,
            precision_bits: prec,
        })
    }

    pub fn prec(&self) -> u32 {
        self.precision_bits
    }

    /// `e^{-k w}`.
    pub fn exp_neg(&self, k: u32) -> Float {
        let inv = Float::with_val(self.prec(), self.exp_w.recip_ref());
        inv.pow(k)
    }

    pub fn f(&self, v: f64) -> Float {
        Float::with_val(self.prec(), v)
    }
}

/// Principal branch of `W(x)` for `x >= 0`, by Halley iteration.
pub fn lambert_w(x: &Float, prec: u32) -> Result<Float> {
    check_precision(prec)?;
    if x.is_nan() || *x < 0 {
        return Err(Error::Domain("Lambert W needs x >= 0".into()));
    }
    if x.is_zero() {
        return Ok(Float::with_val(prec, 0));
    }
    let wp = prec + GUARD;
    let x = Float::with_val(wp, x);
    let e = Float::with_val(wp, 1).exp();
    let mut w = if x >= e {
        let l1 = Float::with_val(wp, x.ln_ref());
        let l2 = Float::with_val(wp, l1.ln_ref());
        l1 - l2
    } else {
        // ln(1+x) is a good starting point on [0, e]
        Float::with_val(wp, x.ln_1p_ref())
    };
    let tol = Float::with_val(wp, Float::i_exp(1, -((prec + 16) as i32)));
    for _ in 0..200 {
        let ew = Float::with_val(wp, w.exp_ref());
        let f = Float::with_val(wp, &w * &ew) - &x;
        let wp1 = Float::with_val(wp, &w + 1u32);
        let wp2 = Float::with_val(wp, &w + 2u32);
        let denom = Float::with_val(wp, &ew * &wp1) - Float::with_val(wp, &wp2 * &f) / (wp1 * 2u32);
        let step = f / denom;
        w -= &step;
        let scale = if w.is_zero() { Float::with_val(wp, 1) } else { Float::with_val(wp, w.abs_ref()) };
        if Float::with_val(wp, step.abs_ref()) <= Float::with_val(wp, &tol * &scale) {
            return Ok(Float::with_val(prec, &w));
        }
    }
    Err(Error::Domain("Lambert W iteration did not converge".into()))
}

fn poly(w: &Float, coeffs: &[i64]) -> Float {
    // coefficients highest degree first
    let mut acc = Float::with_val(w.prec(), 0);
    for &c in coeffs {
        acc *= w;
        acc += c;
    }
    acc
}

/// `e^w(w^2-w+1) - log(1+w)/2 - 1`, common to the Bell and Takeuchi formulas.
fn bell_leading(wv: &WValue) -> Float {
    let p = wv.prec();
    let w = &wv.w;
    let lead = Float::with_val(p, &wv.exp_w * poly(w, &[1, -1, 1]));
    let log1w = Float::with_val(p, w.ln_1p_ref());
    lead - log1w / 2u32 - 1u32
}

fn one_plus_w_pow(wv: &WValue, k: i32) -> Float {
    Float::with_val(wv.prec(), &wv.w + 1u32).pow(k)
}

/// The `e^{-w}` coefficient in the Bell expansion.
pub fn bell_term1(wv: &WValue) -> Float {
    let w = &wv.w;
    let num = Float::with_val(wv.prec(), w * poly(w, &[2, 7, 10]));
    -(num / (one_plus_w_pow(wv, 3) * 24u32))
}

/// The `e^{-2w}` coefficient in the Bell expansion.
pub fn bell_term2(wv: &WValue) -> Float {
    let w = &wv.w;
    let num = Float::with_val(wv.prec(), w * poly(w, &[2, 12, 29, 40, 36]));
    -(num / (one_plus_w_pow(wv, 6) * 48u32))
}

/// Partial sum of the Bell expansion through the `e^{-order·w}` term.
pub fn bell_log_asymptotic(wv: &WValue, order: u32) -> Result<Float> {
    if wv.n < 1 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if order > 2 {
        return Err(Error::Domain(format!("order {order} not available (0, 1 or 2)")));
    }
    let mut v = bell_leading(wv);
    if order >= 1 {
        v += bell_term1(wv) * wv.exp_neg(1);
    }
    if order >= 2 {
        v += bell_term2(wv) * wv.exp_neg(2);
    }
    Ok(v)
}

/// Conjectured `log T_n` with constant `c_t`.
#[allow(non_snake_case)]
pub fn conjecture1_log_T(wv: &WValue, c_t: &Float) -> Result<Float> {
    Ok(conjecture1_without_correction(wv, c_t)? + conjecture1_correction(wv))
}

/// The conjectured formula with the `e^{-w}` term dropped, i.e. `log(C_T B_n e^{w^2/2})`
/// with the Bell numbers at leading order.
pub fn conjecture1_without_correction(wv: &WValue, c_t: &Float) -> Result<Float> {
    if wv.n < 1 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if *c_t <= 0 {
        return Err(Error::Domain("C_T must be positive".into()));
    }
    let p = wv.prec();
    let half_w2 = Float::with_val(p, wv.w.square_ref()) / 2u32;
    let log_ct = Float::with_val(p, c_t.ln_ref());
    Ok(bell_leading(wv) + half_w2 + log_ct)
}

pub fn conjecture1_correction(wv: &WValue) -> Float {
    let w = &wv.w;
    let num = Float::with_val(wv.prec(), w * poly(w, &[26, 67, 46]));
    -(num / (one_plus_w_pow(wv, 3) * 24u32)) * wv.exp_neg(1)
}

fn check_table(len: usize, need: usize, what: &str) -> Result<()> {
    if need >= len {
        Err(Error::Domain(format!(
            "{what} table needs index {need}, has {}",
            len.saturating_sub(1)
        )))
    } else {
        Ok(())
    }
}

/// `T_{n+1}/T_n - B_n/B_{n-1}` exactly.
pub fn growth_gap_exact(t: &[Integer], b: &[Integer], n: usize) -> Result<Rational> {
    if n < 1 {
        return Err(Error::Domain("growth gap needs n >= 1".into()));
    }
    check_table(t.len(), n + 1, "T")?;
    check_table(b.len(), n, "B")?;
    let rt = Rational::from((t[n + 1].clone(), t[n].clone()));
    let rb = Rational::from((b[n].clone(), b[n - 1].clone()));
    Ok(rt - rb)
}

pub fn growth_gap(t: &[Integer], b: &[Integer], n: usize, prec: u32) -> Result<Float> {
    Ok(Float::with_val(prec, &growth_gap_exact(t, b, n)?))
}

/// `u_n = T_{n+1} / (B_n e^{w^2/2 + w})`.
pub fn figure2_ratio(t: &[Integer], b: &[Integer], wv: &WValue) -> Result<Float> {
    let n = wv.n.to_usize().ok_or_else(|| Error::Domain("n too large".into()))?;
    if n < 1 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    check_table(t.len(), n + 1, "T")?;
    check_table(b.len(), n, "B")?;
    let p = wv.prec();
    let ratio = Float::with_val(p + GUARD, &Rational::from((t[n + 1].clone(), b[n].clone())));
    let w = &wv.w;
    let expo = Float::with_val(p + GUARD, w.square_ref()) / 2u32 + w;
    Ok(Float::with_val(p, ratio / expo.exp()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundsCheck {
    pub n: usize,
    pub lower_ok: bool,
    pub upper_ok: bool,
    /// `log T_n - lower exponent`
    pub lower_margin: Float,
    /// `upper exponent - log T_n`
    pub upper_margin: Float,
}

/// `e^{n log n - n log log n - n} < T_n < e^{n log n - n + log n}`.
pub fn knuth_bounds_check(t_n: &Integer, n: usize, prec: u32) -> Result<BoundsCheck> {
    if n < 2 {
        return Err(Error::Domain("bounds need n >= 2".into()));
    }
    if *t_n <= 0 {
        return Err(Error::Domain("T_n must be positive".into()));
    }
    let nf = Float::with_val(prec, n);
    let ln_n = Float::with_val(prec, nf.ln_ref());
    let lnln = Float::with_val(prec, ln_n.ln_ref());
    let n_ln_n = Float::with_val(prec, &nf * &ln_n);
    let lower = Float::with_val(prec, &n_ln_n - Float::with_val(prec, &nf * &lnln)) - &nf;
    let upper = Float::with_val(prec, &n_ln_n - &nf) + &ln_n;
    let log_t = ln_integer(prec, t_n);
    let lower_margin = Float::with_val(prec, &log_t - &lower);
    let upper_margin = Float::with_val(prec, &upper - &log_t);
    Ok(BoundsCheck {
        n,
        lower_ok: lower_margin > 0,
        upper_ok: upper_margin > 0,
        lower_margin,
        upper_margin,
    })
}

/// `argmax_m m^n/m!`.
pub fn bell_sum_peak(n: u32) -> u64 {
    // successive ratio (1+1/m)^n/(m+1) decreases in m; stop when it drops below 1
    let mut m: u64 = 1;
    loop {
        let up = Integer::from(m + 1).pow(n);
        let down = Integer::from(m).pow(n) * (m + 1);
        if up < down {
            return m;
        }
        m += 1;
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BellSum {
    pub value: Float,
    /// Rigorous bound on the neglected tail `(1/e) Σ_{m>M} m^n/m!`.
    pub tail_bound: Float,
    pub peak: u64,
}

/// `(1/e) Σ_{m=0}^{M} m^n/m!` with a geometric tail bound.
pub fn bell_sum_approx(n: u32, m_max: u64, prec: u32) -> Result<BellSum> {
    check_precision(prec)?;
    let wp = prec + GUARD;
    let wv = WValue::new(n, 64)?;
    let e = Float::with_val(64, 1).exp();
    let threshold = Float::with_val(64, &wv.exp_w * &e);
    if Float::with_val(64, m_max) < threshold {
        return Err(Error::TailBound(format!(
            "M = {m_max} is below e·e^W(n) = {}",
            threshold.to_f64()
        )));
    }
    let mut sum = Float::with_val(wp, 0);
    let mut fact = Integer::from(1);
    for m in 0..=m_max {
        if m > 0 {
            fact *= m;
        }
        let term = Rational::from((Integer::from(m).pow(n), fact.clone()));
        sum += Float::with_val(wp, &term);
    }
    // tail: t_{M+1} / (1 - q) with q = (1 + 1/(M+1))^n / (M+2) bounding all later ratios
    let m1 = m_max + 1;
    let q = Rational::from((Integer::from(m1 + 1).pow(n), Integer::from(m1).pow(n) * (m1 + 1)));
    if q >= 1 {
        return Err(Error::TailBound(format!("tail ratio at M = {m_max} is not below 1")));
    }
    let t_next = Rational::from((Integer::from(m1).pow(n), fact * m1));
    let tail = Float::with_val(wp, &t_next) / Float::with_val(wp, &(Rational::from(1) - q));
    let inv_e = Float::with_val(wp, -1).exp();
    let value = Float::with_val(prec, &sum * &inv_e);
    let tail_bound = Float::with_val(prec, &tail * &inv_e);
    let rel = Float::with_val(64, &tail_bound / &value);
    if rel > Float::with_val(64, Float::i_exp(1, -(prec as i32))) {
        return Err(Error::TailBound(format!(
            "tail bound {} exceeds the target precision",
            tail_bound.to_f64()
        )));
    }
    Ok(BellSum {
        value,
        tail_bound,
        peak: bell_sum_peak(n),
    })
}

/// `log h(x) = h0 + h1 (x-1) + h2 (x-1)^2/2 + ...`
#[derive(Clone, Debug, PartialEq)]
pub struct HExpansion {
    pub h0: Float,
    pub h1: Float,
    pub h2: Float,
}

/// The `e^{-w}` coefficient of the dominated-sum expansion that does not depend on `h`.
pub fn hat_t_fixed_term(wv: &WValue) -> Float {
    let w = &wv.w;
    let num = Float::with_val(wv.prec(), w * poly(w, &[12, 24, 36, 58, 29, -10]));
    num / (one_plus_w_pow(wv, 3) * 24u32)
}

/// `((w+1)(h1^2+h2) + (2w^2+w+2) h1) / 2`.
pub fn hat_t_h_term(wv: &WValue, h: &HExpansion) -> Float {
    let p = wv.prec();
    let w = &wv.w;
    let a = Float::with_val(p, h.h1.square_ref()) + &h.h2;
    let w1 = Float::with_val(p, w + 1u32);
    let q = poly(w, &[2, 1, 2]);
    (w1 * a + q * &h.h1) / 2u32
}

#[allow(non_snake_case)]
pub fn hatT_log(wv: &WValue, h: &HExpansion) -> Result<Float> {
    if wv.n < 1 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let p = wv.prec();
    let half_w2 = Float::with_val(p, wv.w.square_ref()) / 2u32;
    let corr = (hat_t_fixed_term(wv) + hat_t_h_term(wv, h)) * wv.exp_neg(1);
    Ok(bell_leading(wv) + half_w2 + &h.h0 + corr)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HatTFit {
    /// Best `h1^2 + h2`.
    pub a: f64,
    pub h1: f64,
    /// `(log T_n - log hatT_n) e^{w}` at the optimum, one per input `n`.
    pub scaled_residuals: Vec<(usize, f64)>,
    pub rms: f64,
}

/// Least-squares choice of `(h1, h2)` against exact `log T_n`, with `h0 = log C_T`.
/// The residual is linear in `(h1^2 + h2, h1)`, so the fit is a 2x2 normal system.
pub fn fit_hat_t(t: &[Integer], ns: &[usize], c_t: &Float, prec: u32) -> Result<HatTFit> {
    if ns.len() < 3 {
        return Err(Error::TooShort {
            required: 3,
            got: ns.len(),
        });
    }
    let zero = Float::with_val(prec, 0);
    let h = HExpansion {
        h0: Float::with_val(prec, c_t.ln_ref()),
        h1: zero.clone(),
        h2: zero,
    };
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        check_table(t.len(), n, "T")?;
        let wv = WValue::new(n, prec)?;
        let base = hatT_log(&wv, &h)?;
        let target = (ln_integer(prec, &t[n]) - base) * &wv.exp_w;
        let w = wv.w.to_f64();
        // target = ((w+1) A + (2w^2+w+2) h1)/2 + residual
        rows.push((n, (w + 1.0) / 2.0, (2.0 * w * w + w + 2.0) / 2.0, target.to_f64()));
    }
    let (mut s11, mut s12, mut s22, mut r1, mut r2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(_, x1, x2, y) in &rows {
        s11 += x1 * x1;
        s12 += x1 * x2;
        s22 += x2 * x2;
        r1 += x1 * y;
        r2 += x2 * y;
    }
    let det: f64 = s11 * s22 - s12 * s12;
    if det.abs() < 1e-300 {
        return Err(Error::Singular);
    }
    let a = (r1 * s22 - r2 * s12) / det;
    let h1 = (s11 * r2 - s12 * r1) / det;
    let scaled_residuals: Vec<(usize, f64)> = rows
        .iter()
        .map(|&(n, x1, x2, y)| (n, y - a * x1 - h1 * x2))
        .collect();
    let rms = (scaled_residuals.iter().map(|r| r.1 * r.1).sum::<f64>() / rows.len() as f64).sqrt();
    Ok(HatTFit {
        a,
        h1,
        scaled_residuals,
        rms,
    })
}
