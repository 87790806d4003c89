//! Density series for one- and two-sided tempered stable laws.
//!
//! Both series are evaluated in double-double arithmetic: the partial terms
//! alternate in sign and can exceed the density by fifteen orders of
//! magnitude before the factorials take over.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{OneSidedParams, TsParams};
use crate::specfun::dd::{self, Dd};
use crate::specfun::POLE_GUARD;

/// Per-index truncation orders of a series plus an absolute early-exit threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct Truncation {
    orders: Vec<usize>,
    tail_tol: f64,
}

impl Truncation {
    pub fn new(orders: Vec<usize>, tail_tol: f64) -> Result<Self> {
        if orders.is_empty() || orders.iter().any(|&n| n < 1) {
            return Err(Error::domain("truncation orders must all be at least 1"));
        }
        if !(tail_tol > 0.0) {
            return Err(Error::domain("tail_tol must be positive"));
        }
        Ok(Truncation { orders, tail_tol })
    }

    pub fn single(n: usize) -> Self {
        Truncation::new(vec![n], 1e-16).expect("valid single order")
    }

    pub fn cube(n: usize) -> Self {
        Truncation::new(vec![n, n, n], 1e-16).expect("valid cube order")
    }

    /// Two-sided density default.
    pub fn density_default() -> Self {
        Truncation::cube(60)
    }

    /// Two-sided pricing default.
    pub fn pricing_default() -> Self {
        Truncation::cube(50)
    }

    /// One-sided density default.
    pub fn one_sided_density_default() -> Self {
        Truncation::single(400)
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn tail_tol(&self) -> f64 {
        self.tail_tol
    }

    pub(crate) fn triple(&self) -> Result<(usize, usize, usize)> {
        match self.orders[..] {
            [a, b, c] => Ok((a, b, c)),
            [n] => Ok((n, n, n)),
            _ => Err(Error::domain("expected one or three truncation orders")),
        }
    }

    pub(crate) fn first(&self) -> usize {
        self.orders[0]
    }
}

/// Density of the one-sided law at `x > 0`.
pub fn ts_plus_density(x: f64, params: &OneSidedParams, trunc: &Truncation) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("one-sided density needs x > 0, got {x}")));
    }
    let a = Dd::from(params.a());
    let beta = params.beta();
    let lambda = Dd::from(params.lambda());
    let ln_x = Dd::from(x).ln();
    // term k = (-1)^{k+1} sin(πkβ)/π · exp(L_k + ln Γ(1+kβ)), where L_k
    // collects the prefactor and (a^k x^{-kβ-1} / k!) in logarithms
    let mut lk = a * lambda.powf(Dd::from(beta)) - lambda * x - ln_x;
    let step = a.ln() - ln_x * beta;
    let mut sum = Dd::ZERO;
    for k in 1..=trunc.first() {
        lk += step - Dd::from(k as f64).ln();
        let kb = Dd::mul_f64_exact(beta, k as f64);
        let mag = (lk + dd::ln_gamma_pos(Dd::ONE + kb)).exp();
        let s = kb.sin_pi() * Dd::FRAC_1_PI;
        let term = if k % 2 == 1 { s * mag } else { -(s * mag) };
        sum += term;
        // the sine factor can vanish on isolated terms, so stop on the envelope
        if mag.hi < trunc.tail_tol() && k > 1 {
            break;
        }
    }
    Ok(sum.to_f64())
}

/// Shared constants of the two-sided expansions in double-double form.
pub(crate) struct SeriesConsts {
    pub a_plus: Dd,
    pub a_minus: Dd,
    pub beta_plus: f64,
    pub beta_minus: f64,
    pub lambda_plus: Dd,
    pub lambda_bar: Dd,
    pub gamma: Dd,
}

impl SeriesConsts {
    /// Constants of the law at time `t`.
    pub fn new(p: &TsParams, t: f64) -> Self {
        let a_plus = Dd::from(p.a_plus()) * t;
        let a_minus = Dd::from(p.a_minus()) * t;
        let lp = Dd::from(p.lambda_plus());
        let lm = Dd::from(p.lambda_minus());
        let gamma = a_plus * lp.powf(Dd::from(p.beta_plus())) + a_minus * lm.powf(Dd::from(p.beta_minus()));
        SeriesConsts {
            a_plus,
            a_minus,
            beta_plus: p.beta_plus(),
            beta_minus: p.beta_minus(),
            lambda_plus: lp,
            lambda_bar: lp + lm,
            gamma,
        }
    }

    /// `(-1)^n c^n / n!` for n = 0..=len.
    pub fn signed_powers(c: Dd, len: usize) -> Vec<Dd> {
        let mut v = Vec::with_capacity(len + 1);
        let mut w = Dd::ONE;
        v.push(w);
        for n in 1..=len {
            w = -(w * c) / n as f64;
            v.push(w);
        }
        v
    }
}

/// Sum a cube of terms shell by shell (shell `m` holds the indices whose
/// largest component is `m`), stopping after the first non-empty shell whose
/// largest scaled term falls below `tail_tol`.
///
/// `columns[n2 * (n3max + 1) + n3][n1]` holds the term at `(n1, n2, n3)`.
/// Returns the sum, the number of terms summed and the last shell maximum.
pub(crate) fn shell_sum(
    columns: &[Vec<Dd>],
    dims: (usize, usize, usize),
    scale: f64,
    tail_tol: f64,
) -> (Dd, usize, f64) {
    let (n1max, n2max, n3max) = dims;
    let top = n1max.max(n2max).max(n3max);
    let mut total = Dd::ZERO;
    let mut count = 0usize;
    let mut last_max = 0.0f64;
    for m in 0..=top {
        let mut shell_max = 0.0f64;
        for n2 in 0..=n2max.min(m) {
            for n3 in 0..=n3max.min(m) {
                let col = &columns[n2 * (n3max + 1) + n3];
                for n1 in 0..=n1max.min(m) {
                    if n1.max(n2).max(n3) != m {
                        continue;
                    }
                    let t = col[n1];
                    total += t;
                    count += 1;
                    shell_max = shell_max.max(t.hi.abs() * scale);
                }
            }
        }
        last_max = shell_max;
        if m > 0 && shell_max > 0.0 && shell_max < tail_tol {
            break;
        }
    }
    (total, count.max(1), last_max)
}

/// Density of the two-sided law at `x != 0` (time one; use
/// [`TsParams::at_time`] for other horizons).
pub fn ts_density(x: f64, params: &TsParams, trunc: &Truncation) -> Result<f64> {
    if x == 0.0 || !x.is_finite() {
        return Err(Error::domain(format!("two-sided density needs finite x != 0, got {x}")));
    }
    if x < 0.0 {
        return ts_density(-x, &params.flip(), trunc);
    }
    let dims = trunc.triple()?;
    let c = SeriesConsts::new(params, 1.0);
    let xd = Dd::from(x);
    let ln_x = xd.ln();
    let prefactor = (c.gamma - c.lambda_plus * xd).exp();
    let columns = density_columns(&c, ln_x, xd, dims)?;
    let (sum, _, _) = shell_sum(&columns, dims, prefactor.hi.abs(), trunc.tail_tol());
    let v = (prefactor * sum).to_f64();
    if !v.is_finite() {
        return Err(Error::ConvergenceFailure(format!("density series overflowed at x = {x}")));
    }
    Ok(v)
}

fn density_columns(c: &SeriesConsts, ln_x: Dd, x: Dd, dims: (usize, usize, usize)) -> Result<Vec<Vec<Dd>>> {
    let (n1max, n2max, n3max) = dims;
    let wa = SeriesConsts::signed_powers(c.a_plus, n2max);
    let wb = SeriesConsts::signed_powers(c.a_minus, n3max);
    let pairs: Vec<(usize, usize)> =
        (0..=n2max).flat_map(|n2| (0..=n3max).map(move |n3| (n2, n3))).collect();
    pairs
        .par_iter()
        .map(|&(n2, n3)| density_column(c, ln_x, x, n1max, n2, n3, wa[n2] * wb[n3]))
        .collect()
}

/// Terms `(n1, n2, n3)` for n1 = 0..=n1max at fixed `(n2, n3)`, including the
/// weight `(-1)^{n1+n2+n3} a₊^{n2} a₋^{n3} / (n1! n2! n3!)`.
fn density_column(
    c: &SeriesConsts,
    ln_x: Dd,
    x: Dd,
    n1max: usize,
    n2: usize,
    n3: usize,
    weight: Dd,
) -> Result<Vec<Dd>> {
    let mut out = vec![Dd::ZERO; n1max + 1];
    if n2 == 0 {
        // 1/Γ(-β₊ n2) vanishes
        return Ok(out);
    }
    let p = Dd::mul_f64_exact(c.beta_plus, n2 as f64);
    let m = Dd::mul_f64_exact(c.beta_minus, n3 as f64);
    let b = p + m;
    // 1/(Γ(1+p) Γ(-p)) = -sin(πp)/π
    let r1 = -(p.sin_pi() * Dd::FRAC_1_PI);
    let r2 = dd::recip_gamma(-p) * dd::recip_gamma(-m);

    // first family: (-m)_{n1} Γ(1-n1+b) λ̄^{n1} x^{n1-1-b}
    let mut poch_m = Dd::ONE;
    let mut gam = dd::gamma(Dd::ONE + b, POLE_GUARD)?;
    let mut pow1 = ((-(Dd::ONE + b)) * ln_x).exp();
    let lbx = c.lambda_bar * x;

    // second family: (1+p)_{n1} Γ(-1-n1-b) λ̄^{1+n1+b} x^{n1}
    let second = n3 > 0;
    let mut poch_p = Dd::ONE;
    let mut gam2 = Dd::ZERO;
    let mut pow2 = Dd::ZERO;
    if second {
        gam2 = dd::gamma(-(Dd::ONE + b), POLE_GUARD)?;
        pow2 = ((Dd::ONE + b) * c.lambda_bar.ln()).exp();
    }

    let mut w = weight;
    for (n1, slot) in out.iter_mut().enumerate() {
        if n1 > 0 {
            let k = n1 as f64 - 1.0;
            w = -w / n1 as f64;
            poch_m *= -m + k;
            let denom = b - k;
            if poch_m.is_zero() {
                gam = Dd::ZERO;
            } else {
                if denom.abs().hi < POLE_GUARD {
                    return Err(Error::PoleProximity((Dd::ONE - (Dd::from(n1 as f64) - b)).to_f64()));
                }
                gam /= denom;
            }
            pow1 *= lbx;
            if second {
                poch_p *= Dd::ONE + p + k;
                gam2 /= -(Dd::ONE + b) - (k + 1.0);
                pow2 *= lbx;
            }
        }
        let mut d = if poch_m.is_zero() { Dd::ZERO } else { poch_m * gam * r1 * pow1 };
        if second {
            d += poch_p * gam2 * r2 * pow2;
        }
        *slot = w * d;
    }
    Ok(out)
}
