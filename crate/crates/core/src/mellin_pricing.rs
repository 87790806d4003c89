//! Residue-series prices of cash-or-nothing, asset-or-nothing and European
//! calls under the two-sided tempered stable law.
//!
//! Every price reduces to the triple sum
//! `Σ (-1)^{n2+n3} (a₊T)^{n2} (a₋T)^{n3} / (n2! n3!) · c_n(x1, x2)`
//! with `x1 = k` (or `-k` under flipped parameters) and `x2` one of
//! `λ₊`, `λ₊ - 1` (`λ₋`, `λ₋ + 1` when flipped).

use rayon::prelude::*;
use serde::Serialize;

use crate::density::{shell_sum, SeriesConsts, Truncation};
use crate::error::{Error, Result};
use crate::model::{log_forward_moneyness, MarketSpec, TsParams};
use crate::specfun::dd::{self, Dd};
use crate::specfun::POLE_GUARD;

/// Below this `|k|` the general pricer refuses to evaluate.
pub const K_MIN: f64 = 1e-10;

/// Exponent beyond which the series is replaced by its limit.
pub const TAIL_EXPONENT: f64 = 700.0;

/// Which representation produced a price.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    NegativeK,
    PositiveK,
    /// A closed form: ATM formulas, one-sided `k >= 0`, and deep-tail limits.
    AtmClosedForm,
}

impl Branch {
    pub fn tag(&self) -> &'static str {
        match self {
            Branch::NegativeK => "negative_k",
            Branch::PositiveK => "positive_k",
            Branch::AtmClosedForm => "atm_closed_form",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PriceQuote {
    pub value: f64,
    pub terms_summed: usize,
    /// Largest scaled term magnitude on the last shell summed.
    pub last_shell_max: f64,
    pub branch: Branch,
}

impl PriceQuote {
    pub(crate) fn closed_form(value: f64) -> Self {
        PriceQuote { value, terms_summed: 1, last_shell_max: 0.0, branch: Branch::AtmClosedForm }
    }
}

/// Payoff kind of a single evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Payoff {
    CashOrNothing,
    AssetOrNothing,
    European,
}

/// Quantities shared by every column at one `x2`.
struct Leg {
    x2: Dd,
    y: Dd,
    ln_mx1: Dd,
    /// `x2^{-1-n1} γ(1+n1, y)`.
    upper: Vec<Dd>,
}

impl Leg {
    fn new(x1: f64, x2: f64, n1max: usize) -> Result<Self> {
        let x1d = Dd::from(x1);
        let x2d = Dd::from(x2);
        let y = -(x1d * x2d);
        let ln_y = y.ln();
        let ln_x2 = x2d.ln();
        let mut upper = Vec::with_capacity(n1max + 1);
        for n1 in 0..=n1max {
            let s = Dd::from(n1 as f64 + 1.0);
            let sum = dd::kummer_lower_sum(s, y)?;
            // y^s e^{-y} x2^{-s}
            upper.push(sum * (s * (ln_y - ln_x2) - y).exp());
        }
        Ok(Leg { x2: x2d, y, ln_mx1: (-x1d).ln(), upper })
    }
}

/// The coefficients `c_n` for n1 = 0..=n1max at fixed `(n2, n3)`.
fn coeff_column(c: &SeriesConsts, leg: &Leg, n1max: usize, n2: usize, n3: usize) -> Result<Vec<Dd>> {
    let mut out = vec![Dd::ZERO; n1max + 1];
    if n2 == 0 && n3 == 0 {
        out[0] = Dd::ONE;
        return Ok(out);
    }
    let p = Dd::mul_f64_exact(c.beta_plus, n2 as f64);
    let m = Dd::mul_f64_exact(c.beta_minus, n3 as f64);
    let b = p + m;
    if (b - b.round()).abs().hi < POLE_GUARD {
        return Err(Error::PoleProximity(b.to_f64()));
    }
    let lb = c.lambda_bar;
    let ln_lb = lb.ln();

    let first = n2 > 0;
    let second = n2 > 0 && n3 > 0;
    let third = n3 > 0;

    // (-m)_{n1} Γ(1-n1+b) R1 λ̄^{n1} (-x1)^{n1-b} e^{-y} K(n1-b, y)
    let r1 = -(p.sin_pi() * Dd::FRAC_1_PI);
    let mut poch_m = Dd::ONE;
    let mut gam1 = if first { dd::gamma(Dd::ONE + b, POLE_GUARD)? } else { Dd::ZERO };
    let mut lb_pow = Dd::ONE;
    let mut pw1 = (-(b * leg.ln_mx1) - leg.y).exp();
    let mx1 = (leg.ln_mx1).exp();

    // (1+p)_{n1} Γ(-1-n1-b) R2 λ̄^{1+n1+b} x2^{-1-n1} γ(1+n1, y)
    let r2 = if second { dd::recip_gamma(-p) * dd::recip_gamma(-m) } else { Dd::ZERO };
    let mut poch_p = Dd::ONE;
    let mut gam2 = if second { dd::gamma(-(Dd::ONE + b), POLE_GUARD)? } else { Dd::ZERO };
    let mut lb2 = if second { ((Dd::ONE + b) * ln_lb).exp() } else { Dd::ZERO };

    // Γ(n1-b) / (Γ(1+n1-p) Γ(-m)) λ̄^{b} (x2/λ̄)^{n1}
    let mut gs = if third { dd::gamma(-b, POLE_GUARD)? } else { Dd::ZERO };
    let mut rg3 = dd::recip_gamma(Dd::ONE - p);
    let rm = dd::recip_gamma(-m);
    let mut pw3 = if third { (b * ln_lb).exp() } else { Dd::ZERO };
    let ratio = leg.x2 / lb;

    // K(n1 - b, y) by backward recurrence K(s) = (1 + y K(s+1)) / s
    let kummer = if !first {
        Vec::new()
    } else {
        let top = if third { n1max } else { 0 };
        let mut v = vec![Dd::ZERO; top + 1];
        v[top] = dd::kummer_lower_sum(Dd::from(top as f64) - b, leg.y)?;
        for n1 in (0..top).rev() {
            v[n1] = (Dd::ONE + leg.y * v[n1 + 1]) / (Dd::from(n1 as f64) - b);
        }
        v
    };

    let mut inv_fact = Dd::ONE;
    for (n1, slot) in out.iter_mut().enumerate() {
        if n1 > 0 {
            let k = n1 as f64 - 1.0;
            inv_fact = -inv_fact / n1 as f64;
            if first {
                poch_m *= -m + k;
                if !poch_m.is_zero() {
                    let denom = b - k;
                    if denom.abs().hi < POLE_GUARD {
                        return Err(Error::PoleProximity((b - k).to_f64()));
                    }
                    gam1 /= denom;
                }
                lb_pow *= lb;
                pw1 *= mx1;
            }
            if second {
                poch_p *= Dd::ONE + p + k;
                gam2 /= -(Dd::ONE + b) - n1 as f64;
                lb2 *= lb;
            }
            if third {
                gs *= Dd::from(k) - b;
                rg3 /= Dd::from(n1 as f64) - p;
                pw3 *= ratio;
            }
        }
        let mut inner = Dd::ZERO;
        if first && !poch_m.is_zero() {
            inner += poch_m * gam1 * r1 * lb_pow * pw1 * kummer[n1];
        }
        if second {
            inner += poch_p * gam2 * r2 * lb2 * leg.upper[n1];
        }
        let mut v = inv_fact * inner;
        if third {
            v += gs * rg3 * rm * pw3;
        }
        *slot = v;
    }
    Ok(out)
}

/// Weighted terms `w_{n2,n3} c_n` for every column.
fn weighted_columns(c: &SeriesConsts, leg: &Leg, dims: (usize, usize, usize)) -> Result<Vec<Vec<Dd>>> {
    let (n1max, n2max, n3max) = dims;
    let wa = SeriesConsts::signed_powers(c.a_plus, n2max);
    let wb = SeriesConsts::signed_powers(c.a_minus, n3max);
    let pairs: Vec<(usize, usize)> =
        (0..=n2max).flat_map(|n2| (0..=n3max).map(move |n3| (n2, n3))).collect();
    pairs
        .par_iter()
        .map(|&(n2, n3)| {
            let w = wa[n2] * wb[n3];
            let mut col = coeff_column(c, leg, n1max, n2, n3)?;
            for v in col.iter_mut() {
                *v *= w;
            }
            Ok(col)
        })
        .collect()
}

/// `exp(γT - a₊T x2^{β₊} - a₋T (λ̄ - x2)^{β₋})`.
fn moment_factor(c: &SeriesConsts, x2: Dd) -> Dd {
    (c.gamma
        - c.a_plus * x2.powf(Dd::from(c.beta_plus))
        - c.a_minus * (c.lambda_bar - x2).powf(Dd::from(c.beta_minus)))
    .exp()
}

/// Single coefficient `c_n(x1, x2)` evaluated directly from its closed form,
/// without the recursions used by the pricers.
pub fn coeff_c(n: (usize, usize, usize), x1: f64, x2: f64, params: &TsParams) -> Result<f64> {
    if !(x1 < 0.0 && x2 > 0.0) {
        return Err(Error::domain(format!("coefficient needs x1 < 0 < x2, got ({x1}, {x2})")));
    }
    let (n1, n2, n3) = n;
    if n2 == 0 && n3 == 0 {
        return Ok(if n1 == 0 { 1.0 } else { 0.0 });
    }
    let p = Dd::mul_f64_exact(params.beta_plus(), n2 as f64);
    let m = Dd::mul_f64_exact(params.beta_minus(), n3 as f64);
    let b = p + m;
    let lb = Dd::from(params.lambda_bar());
    let x2d = Dd::from(x2);
    let y = -(Dd::from(x1) * x2d);
    let n1d = Dd::from(n1 as f64);
    let s = n1d - b;
    let poch = |z: Dd| (0..n1).fold(Dd::ONE, |acc, i| acc * (z + i as f64));
    let lower = |s: Dd| -> Result<Dd> { Ok(dd::kummer_lower_sum(s, y)? * (s * y.ln() - y).exp()) };

    let c1 = if n2 > 0 {
        poch(-m)
            * dd::gamma(Dd::ONE - s, POLE_GUARD)?
            * dd::recip_gamma(Dd::ONE + p)
            * dd::recip_gamma(-p)
            * lb.powi(n1 as i64)
            * (-(s * x2d.ln())).exp()
            * lower(s)?
    } else {
        Dd::ZERO
    };
    let c2 = if n2 > 0 && n3 > 0 {
        poch(Dd::ONE + p)
            * dd::gamma(-(Dd::ONE + n1d + b), POLE_GUARD)?
            * dd::recip_gamma(-p)
            * dd::recip_gamma(-m)
            * ((Dd::ONE + n1d + b) * lb.ln()).exp()
            * x2d.powi(-(n1 as i64) - 1)
            * lower(Dd::ONE + n1d)?
    } else {
        Dd::ZERO
    };
    let c3 = if n3 > 0 {
        dd::gamma(s, POLE_GUARD)?
            * dd::recip_gamma(Dd::ONE + n1d - p)
            * dd::recip_gamma(-m)
            * (-(s * lb.ln())).exp()
            * x2d.powi(n1 as i64)
    } else {
        Dd::ZERO
    };
    let sign = if n1 % 2 == 0 { 1.0 } else { -1.0 };
    let fact = (1..=n1).fold(Dd::ONE, |acc, i| acc * i as f64);
    Ok(((c1 + c2) * sign / fact + c3).to_f64())
}

pub fn price_cn(market: &MarketSpec, params: &TsParams, trunc: &Truncation) -> Result<PriceQuote> {
    price(Payoff::CashOrNothing, market, params, trunc)
}

pub fn price_an(market: &MarketSpec, params: &TsParams, trunc: &Truncation) -> Result<PriceQuote> {
    price(Payoff::AssetOrNothing, market, params, trunc)
}

/// European call, summed through the merged coefficient
/// `e^k c_n(k, λ₊ - 1) - c_n(k, λ₊)` in a single pass.
pub fn price_eur(market: &MarketSpec, params: &TsParams, trunc: &Truncation) -> Result<PriceQuote> {
    price(Payoff::European, market, params, trunc)
}

/// European calls over a strike grid, evaluated concurrently, in input order.
pub fn price_eur_strikes(
    market: &MarketSpec,
    params: &TsParams,
    strikes: &[f64],
    trunc: &Truncation,
) -> Vec<Result<PriceQuote>> {
    strikes
        .par_iter()
        .map(|&k| price_eur(&market.with_strike(k)?, params, trunc))
        .collect()
}

fn deep_tail(payoff: Payoff, market: &MarketSpec, in_the_money: bool) -> PriceQuote {
    let v = if !in_the_money {
        0.0
    } else {
        match payoff {
            Payoff::CashOrNothing => market.discount(),
            Payoff::AssetOrNothing => market.discounted_spot(),
            Payoff::European => market.discounted_spot() - market.strike * market.discount(),
        }
    };
    PriceQuote::closed_form(v)
}

pub(crate) fn price(payoff: Payoff, market: &MarketSpec, params: &TsParams, trunc: &Truncation) -> Result<PriceQuote> {
    let zeta = params.compensator()?;
    let k = log_forward_moneyness(market, zeta);
    if !k.is_finite() {
        return Err(Error::domain(format!("log-forward moneyness is not finite: {k}")));
    }
    if k.abs() < K_MIN {
        return Err(Error::AtmUnsupported(k));
    }
    if k < 0.0 && k * params.lambda_plus() < -TAIL_EXPONENT {
        return Ok(deep_tail(payoff, market, false));
    }
    if k > 0.0 && k * params.lambda_minus() > TAIL_EXPONENT {
        return Ok(deep_tail(payoff, market, true));
    }
    let dims = trunc.triple()?;
    let t = market.maturity;
    let negative = k < 0.0;
    let (q, x1, x_an, x_cn) = if negative {
        (*params, k, params.lambda_plus() - 1.0, params.lambda_plus())
    } else {
        (params.flip(), -k, params.lambda_minus() + 1.0, params.lambda_minus())
    };
    let c = SeriesConsts::new(&q, t);
    let eg = c.gamma.exp();
    let ek = Dd::from(k).exp();
    let df = Dd::from(-market.rate * t).exp();
    let strike = Dd::from(market.strike);

    let legs: Vec<f64> = match payoff {
        Payoff::CashOrNothing => vec![x_cn],
        Payoff::AssetOrNothing => vec![x_an],
        Payoff::European => vec![x_an, x_cn],
    };
    let mut cols = Vec::with_capacity(legs.len());
    for &x2 in &legs {
        let leg = Leg::new(x1, x2, dims.0)?;
        cols.push((weighted_columns(&c, &leg, dims)?, leg.x2));
    }

    // price = outer * (head - eg * S)  (k < 0)  or  outer * eg * S  (k > 0)
    let (terms, outer, head) = match payoff {
        Payoff::CashOrNothing => {
            let (col, x2) = cols.pop().expect("one leg");
            (col, df, moment_factor(&c, x2))
        }
        Payoff::AssetOrNothing => {
            let (col, x2) = cols.pop().expect("one leg");
            (col, strike * df * ek, moment_factor(&c, x2))
        }
        Payoff::European => {
            let (cn, x_cn) = cols.pop().expect("two legs");
            let (an, x_an) = cols.pop().expect("two legs");
            let merged: Vec<Vec<Dd>> = an
                .into_iter()
                .zip(cn)
                .map(|(a, b)| a.into_iter().zip(b).map(|(u, v)| ek * u - v).collect())
                .collect();
            let head = ek * moment_factor(&c, x_an) - moment_factor(&c, x_cn);
            (merged, strike * df, head)
        }
    };
    let scale = (outer * eg).abs().hi;
    let (sum, count, last) = shell_sum(&terms, dims, scale, trunc.tail_tol());
    let value = if negative { outer * (head - eg * sum) } else { outer * eg * sum };
    let value = value.to_f64();
    if !value.is_finite() {
        return Err(Error::ConvergenceFailure(format!("price series overflowed at k = {k}")));
    }
    Ok(PriceQuote {
        value,
        terms_summed: count,
        last_shell_max: last,
        branch: if negative { Branch::NegativeK } else { Branch::PositiveK },
    })
}
