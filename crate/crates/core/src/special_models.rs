//! Pricers for the subfamilies of the tempered stable law.
//!
//! KoBoL and CGMY reuse the general triple series. Bilateral Gamma (and so
//! Variance Gamma) and the one-sided law have single-index series, and both
//! admit closed forms at the money.

use crate::density::Truncation;
use crate::error::{Error, Result};
use crate::mellin_pricing::{self, Branch, Payoff, PriceQuote, K_MIN, TAIL_EXPONENT};
use crate::model::{log_forward_moneyness, vg_from_common, BgParams, MarketSpec, OneSidedParams, TsParams};
use crate::specfun::dd::{self, Dd};
use crate::specfun::{self, gauss_2f1, log_gamma_signed, SignedLog};

/// KoBoL call: the general series with a shared stability index.
pub fn price_eur_kobol(market: &MarketSpec, params: &TsParams, trunc: &Truncation) -> Result<PriceQuote> {
    if !params.is_kobol() {
        return Err(Error::domain(format!(
            "KoBoL needs equal stability indices, got {} and {}",
            params.beta_plus(),
            params.beta_minus()
        )));
    }
    mellin_pricing::price_eur(market, params, trunc)
}

/// CGMY call with `λ₊ = M`, `λ₋ = G`, `α± = C`, `β± = Y`.
pub fn price_eur_cgmy(market: &MarketSpec, c: f64, g: f64, m: f64, y: f64, trunc: &Truncation) -> Result<PriceQuote> {
    price_eur_kobol(market, &TsParams::cgmy(c, g, m, y)?, trunc)
}

/// Default truncation of the single-index series.
pub fn bg_default_truncation() -> Truncation {
    Truncation::single(200)
}

pub fn one_sided_default_truncation() -> Truncation {
    Truncation::single(60)
}

/// `ln x` as a signed logarithm factor.
fn sl(log_abs: f64) -> SignedLog {
    SignedLog { log_abs, sign: 1 }
}

fn m_t_signed(params: &BgParams, t: f64) -> Result<SignedLog> {
    let (ap, am) = (params.alpha_plus() * t, params.alpha_minus() * t);
    let (lp, lm) = (params.lambda_plus(), params.lambda_minus());
    let half = params.alpha_under() * t;
    let num = sl(ap * lp.ln() + am * lm.ln() - half * params.lambda_bar().ln());
    Ok(num / (log_gamma_signed(ap)? * log_gamma_signed(am)? * log_gamma_signed(1.0 - ap)?))
}

/// The constant `m_T` in front of the bilateral Gamma series.
pub fn bg_m_t(params: &BgParams, t: f64) -> Result<f64> {
    Ok(m_t_signed(params, t)?.to_f64())
}

/// `h(x)` for `|x| < λ̄`.
pub fn bg_h(x: f64, params: &BgParams, t: f64) -> Result<f64> {
    let lb = params.lambda_bar();
    if !(x.abs() < lb) {
        return Err(Error::domain(format!("h needs |x| < {lb}, got {x}")));
    }
    let (ap, am) = (params.alpha_plus() * t, params.alpha_minus() * t);
    let a2 = ap + am;
    let pre = sl(ap * params.lambda_plus().ln() + am * params.lambda_minus().ln() - a2 * lb.ln())
        * log_gamma_signed(a2)?
        / (log_gamma_signed(1.0 + ap)? * log_gamma_signed(am)?);
    Ok(pre.to_f64() * gauss_2f1(a2, 1.0, 1.0 + ap, x / lb)?)
}

/// `(-1)^n / n! · c_n(x1; x2)` in signed-log form.
fn bg_term(n: usize, x1: f64, x2: f64, params: &BgParams, t: f64) -> Result<f64> {
    let nf = n as f64;
    let am = params.alpha_minus() * t;
    let ap = params.alpha_plus() * t;
    let half = params.alpha_under() * t;
    let a2 = 2.0 * half;
    let ln_lb = params.lambda_bar().ln();
    let y = -x1 * x2;
    let ln_mx1 = (-x1).ln();
    let ln_fact = libm::lgamma(nf + 1.0);

    // x2^{-s} γ(s, y) = (-x1)^s e^{-y} K(s, y)
    let s1 = nf + a2;
    let c1 = log_gamma_signed(1.0 - a2 - nf)?
        * log_gamma_signed(am + nf)?
        * sl((nf + half) * ln_lb + s1 * ln_mx1 - y - ln_fact)
        * SignedLog::from_f64(specfun::kummer_sum(s1, y)?);
    let s2 = nf + 1.0;
    let c2 = log_gamma_signed(1.0 - ap + nf)?
        * log_gamma_signed(a2 - 1.0 - nf)?
        * sl((1.0 + nf - half) * ln_lb + s2 * ln_mx1 - y - ln_fact)
        * SignedLog::from_f64(specfun::kummer_sum(s2, y)?);
    let v = c1.to_f64() + c2.to_f64();
    Ok(if n % 2 == 0 { v } else { -v })
}

/// Coefficient `c_n(x1; x2)` of the bilateral Gamma series.
pub fn bg_coeff(n: usize, x1: f64, x2: f64, params: &BgParams, t: f64) -> Result<f64> {
    if !(x1 < 0.0 && x2 > 0.0) {
        return Err(Error::domain(format!("coefficient needs x1 < 0 < x2, got ({x1}, {x2})")));
    }
    let v = bg_term(n, x1, x2, params, t)?;
    let fact = libm::lgamma(n as f64 + 1.0).exp();
    Ok(if n % 2 == 0 { v * fact } else { -v * fact })
}

/// `m_T Σ (-1)^n/n! c_n(x1; x2)` with the number of terms and the last term size.
fn bg_series(x1: f64, x2: f64, params: &BgParams, t: f64, trunc: &Truncation) -> Result<(f64, usize, f64)> {
    let m = m_t_signed(params, t)?.to_f64();
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut last = 0.0;
    let mut count = 0;
    for n in 0..=trunc.first() {
        let term = bg_term(n, x1, x2, params, t)?;
        // Neumaier summation
        let s = sum + term;
        comp += if sum.abs() >= term.abs() { (sum - s) + term } else { (term - s) + sum };
        sum = s;
        count = n + 1;
        last = (term * m).abs();
        if n > 0 && last < trunc.tail_tol() {
            break;
        }
    }
    Ok((m * (sum + comp), count, last))
}

pub fn price_cn_bg(market: &MarketSpec, params: &BgParams, trunc: &Truncation) -> Result<PriceQuote> {
    price_bg(Payoff::CashOrNothing, market, params, trunc)
}

pub fn price_an_bg(market: &MarketSpec, params: &BgParams, trunc: &Truncation) -> Result<PriceQuote> {
    price_bg(Payoff::AssetOrNothing, market, params, trunc)
}

/// Bilateral Gamma call, `AN - K CN`; at the money the closed form.
pub fn price_eur_bg(market: &MarketSpec, params: &BgParams, trunc: &Truncation) -> Result<PriceQuote> {
    price_bg(Payoff::European, market, params, trunc)
}

/// Variance Gamma call in the `(σ, θ, ν)` parametrization.
pub fn price_eur_vg(market: &MarketSpec, sigma: f64, theta: f64, nu: f64, trunc: &Truncation) -> Result<PriceQuote> {
    price_eur_bg(market, &vg_from_common(sigma, theta, nu)?, trunc)
}

fn price_bg(payoff: Payoff, market: &MarketSpec, params: &BgParams, trunc: &Truncation) -> Result<PriceQuote> {
    let zeta = params.compensator()?;
    let t = market.maturity;
    let k = log_forward_moneyness(market, zeta);
    if !k.is_finite() {
        return Err(Error::domain(format!("log-forward moneyness is not finite: {k}")));
    }
    let (lp, lm) = (params.lambda_plus(), params.lambda_minus());
    if k < 0.0 && k * lp < -TAIL_EXPONENT {
        return Ok(PriceQuote::closed_form(0.0));
    }
    if k > 0.0 && k * lm > TAIL_EXPONENT {
        return Ok(PriceQuote::closed_form(match payoff {
            Payoff::CashOrNothing => market.discount(),
            Payoff::AssetOrNothing => market.discounted_spot(),
            Payoff::European => market.discounted_spot() - market.strike * market.discount(),
        }));
    }
    let df = market.discount();
    let kdf = market.strike * df * k.exp();
    let e_zeta = (-zeta * t).exp();

    if k.abs() < K_MIN {
        let cn = df * (1.0 - bg_h(lp, params, t)?);
        let an = kdf * (e_zeta - bg_h(lp - 1.0, params, t)?);
        let v = match payoff {
            Payoff::CashOrNothing => cn,
            Payoff::AssetOrNothing => an,
            Payoff::European => {
                market.strike * df * (e_zeta + bg_h(lp, params, t)? - bg_h(lp - 1.0, params, t)? - 1.0)
            }
        };
        return Ok(PriceQuote::closed_form(v));
    }

    let negative = k < 0.0;
    let flipped = params.flip();
    let cn = |trunc: &Truncation| -> Result<(f64, usize, f64)> {
        if negative {
            let (s, n, l) = bg_series(k, lp, params, t, trunc)?;
            Ok((df * (1.0 - bg_h(lp, params, t)? - s), n, l * df))
        } else {
            let (s, n, l) = bg_series(-k, lm, &flipped, t, trunc)?;
            Ok((df * (bg_h(lm, &flipped, t)? + s), n, l * df))
        }
    };
    let an = |trunc: &Truncation| -> Result<(f64, usize, f64)> {
        if negative {
            let (s, n, l) = bg_series(k, lp - 1.0, params, t, trunc)?;
            Ok((kdf * (e_zeta - bg_h(lp - 1.0, params, t)? - s), n, l * kdf))
        } else {
            let (s, n, l) = bg_series(-k, lm + 1.0, &flipped, t, trunc)?;
            Ok((kdf * (bg_h(lm + 1.0, &flipped, t)? + s), n, l * kdf))
        }
    };
    let (value, count, last) = match payoff {
        Payoff::CashOrNothing => cn(trunc)?,
        Payoff::AssetOrNothing => an(trunc)?,
        Payoff::European => {
            let (c, n1, l1) = cn(trunc)?;
            let (a, n2, l2) = an(trunc)?;
            (a - market.strike * c, n1 + n2, l2.max(market.strike * l1))
        }
    };
    if !value.is_finite() {
        return Err(Error::ConvergenceFailure(format!("bilateral Gamma series overflowed at k = {k}")));
    }
    Ok(PriceQuote {
        value,
        terms_summed: count,
        last_shell_max: last,
        branch: if negative { Branch::NegativeK } else { Branch::PositiveK },
    })
}

/// `P(X_T > 0)` for a bilateral Gamma law, in the Küchler–Tappe form.
pub fn bg_atm_kt_reference(params: &BgParams, t: f64) -> Result<f64> {
    let (ap, am) = (params.alpha_plus() * t, params.alpha_minus() * t);
    let (lp, lm) = (params.lambda_plus(), params.lambda_minus());
    let (a, b, c) = (ap + am, am, 1.0 + am);
    let z = -lm / lp;
    let f = if z <= -0.5 {
        // Pfaff: ₂F₁(a, b; c; z) = (1-z)^{-b} ₂F₁(c-a, b; c; z/(z-1))
        (1.0 - z).powf(-b) * gauss_2f1(c - a, b, c, z / (z - 1.0))?
    } else {
        gauss_2f1(a, b, c, z)?
    };
    let pre = sl(ap * lp.ln() + am * lm.ln() - a * lp.ln()) * log_gamma_signed(a)?
        / (log_gamma_signed(ap)? * log_gamma_signed(1.0 + am)?);
    Ok(pre.to_f64() * f)
}

/// At-the-money call from two Küchler–Tappe digitals, the asset digital
/// taken under the share measure (tempering rates `λ₊ - 1`, `λ₋ + 1`).
pub fn bg_eur_atm_kt_reference(market: &MarketSpec, params: &BgParams) -> Result<f64> {
    let zeta = params.compensator()?;
    let t = market.maturity;
    let tilted = BgParams::new(
        params.alpha_plus(),
        params.lambda_plus() - 1.0,
        params.alpha_minus(),
        params.lambda_minus() + 1.0,
    )?;
    let cn = bg_atm_kt_reference(params, t)?;
    let an = bg_atm_kt_reference(&tilted, t)?;
    Ok(market.strike * market.discount() * ((-zeta * t).exp() * an - cn))
}

/// At-the-money call under the symmetric Variance Gamma law.
pub fn price_eur_symvg_atm(market: &MarketSpec, sigma: f64, nu: f64) -> Result<f64> {
    if !(sigma > 0.0 && nu > 0.0 && sigma * sigma * nu < 2.0) {
        return Err(Error::domain(format!("symmetric VG needs σ, ν > 0 and σ²ν < 2, got σ = {sigma}, ν = {nu}")));
    }
    let params = vg_from_common(sigma, 0.0, nu)?;
    let k = log_forward_moneyness(market, params.compensator()?);
    if k.abs() > K_MIN {
        return Err(Error::domain(format!("symmetric VG closed form is at the money only, k = {k}")));
    }
    let t = market.maturity;
    let r = t / nu;
    let pre = (libm::lgamma(0.5 + r) - libm::lgamma(1.0 + r)).exp() / (2.0 * std::f64::consts::PI.sqrt());
    let f_half = gauss_2f1(2.0 * r, 1.0, 1.0 + r, 0.5)?;
    let f_low = gauss_2f1(2.0 * r, 1.0, 1.0 + r, 0.5 - sigma * nu.sqrt() / 2f64.powf(1.5))?;
    let e_zeta = (1.0 - 0.5 * sigma * sigma * nu).powf(-r);
    Ok(market.strike * market.discount() * (e_zeta - 1.0 + pre * (f_half - f_low)))
}

/// `c_n⁺(x1; x2) = x2^{βn} Γ(-nβ, -x1 x2)`.
pub fn coeff_one_sided(n: usize, x1: f64, x2: f64, beta: f64) -> Result<f64> {
    if !(x1 < 0.0 && x2 > 0.0) {
        return Err(Error::domain(format!("coefficient needs x1 < 0 < x2, got ({x1}, {x2})")));
    }
    let s = n as f64 * beta;
    Ok(x2.powf(s) * specfun::upper_inc_gamma(-s, -x1 * x2)?)
}

/// `Σ_{n≥1} (-1)^n (aT)^n / (n! Γ(-nβ)) c_n⁺(x1; x2)` in double-double.
///
/// Each term is written as `w_n Q_n` with `w_n = (aT x2^β)^n / n!` and
/// `Q_n = Γ(-nβ, y) / Γ(-nβ)`, `y = -x1 x2`, from the continued fraction when
/// `y >= 1` and as `1 - γ(-nβ, y) / Γ(-nβ)` otherwise. Terms can exceed the sum by
/// many orders of magnitude, and `scale` is the factor the caller applies
/// afterwards, so the early exit compares the scaled envelope to `tail_tol`.
fn one_sided_series(x1: f64, x2: f64, a_t: f64, beta: f64, scale: f64, trunc: &Truncation) -> Result<(Dd, usize, f64)> {
    let y = Dd::mul_f64_exact(-x1, x2);
    let ln_y = y.ln();
    let ln_x2 = Dd::from(x2).ln();
    let ln_at = Dd::from(a_t).ln();
    let ln_pi = Dd::PI.ln();
    let mut sum = Dd::ZERO;
    let mut last = 0.0;
    let mut count = 0;
    let mut prev = f64::INFINITY;
    for n in 1..=trunc.first() {
        count = n;
        let s = Dd::mul_f64_exact(beta, n as f64);
        if s.is_nonpositive_integer() || (-s).is_nonpositive_integer() {
            last = 0.0;
            continue;
        }
        let w = (ln_at * n as f64 + s * ln_x2 - dd::ln_gamma_pos(Dd::from(n + 1))).exp();
        let lg = dd::ln_gamma_pos(Dd::ONE + s) - ln_pi - s * ln_y - y;
        // q = Γ(-s, y) / Γ(-s) and a bound on |q| with |sin(πs)| replaced by 1
        let (q, bound) = if y.hi >= 1.0 {
            let h = dd::upper_gamma_cf(-s, y)?;
            let bound = (lg + h.abs().ln()).exp();
            (-(s.sin_pi() * bound * h.signum()), bound)
        } else {
            let kummer = dd::kummer_lower_sum(-s, y)?;
            let bound = (lg + kummer.abs().ln()).exp();
            (Dd::ONE + s.sin_pi() * bound * kummer.signum(), bound + 1.0)
        };
        let term = w * q;
        sum += if n % 2 == 1 { -term } else { term };
        last = (term.hi * scale).abs();
        let envelope = (w * bound).hi * scale.abs();
        if envelope < trunc.tail_tol() && envelope < prev {
            break;
        }
        prev = envelope;
    }
    Ok((sum, count, last))
}

/// Chernoff bound on `P(X_T <= y)` for `y > 0`.
fn lower_tail_bound(params: &OneSidedParams, t: f64, y: f64) -> f64 {
    let (a, beta, lambda) = (params.a(), params.beta(), params.lambda());
    let shifted = (t * a * beta / y).powf(1.0 / (1.0 - beta));
    let theta = shifted - lambda;
    if theta <= 0.0 {
        return 1.0;
    }
    (theta * y - t * a * (shifted.powf(beta) - lambda.powf(beta))).exp().min(1.0)
}

pub fn price_cn_plus(market: &MarketSpec, params: &OneSidedParams, trunc: &Truncation) -> Result<PriceQuote> {
    price_plus(Payoff::CashOrNothing, market, params, trunc)
}

pub fn price_an_plus(market: &MarketSpec, params: &OneSidedParams, trunc: &Truncation) -> Result<PriceQuote> {
    price_plus(Payoff::AssetOrNothing, market, params, trunc)
}

/// One-sided call through `c_EUR,n⁺ = e^k c_n⁺(k; λ-1) - c_n⁺(k; λ)`.
pub fn price_eur_plus(market: &MarketSpec, params: &OneSidedParams, trunc: &Truncation) -> Result<PriceQuote> {
    price_plus(Payoff::European, market, params, trunc)
}

/// Below this bound on the mass under `-k` the `k >= 0` closed form is returned.
const NEGLIGIBLE_MASS: f64 = 1e-17;

fn price_plus(payoff: Payoff, market: &MarketSpec, params: &OneSidedParams, trunc: &Truncation) -> Result<PriceQuote> {
    let zeta = params.compensator()?;
    let t = market.maturity;
    let k = log_forward_moneyness(market, zeta);
    if !k.is_finite() {
        return Err(Error::domain(format!("log-forward moneyness is not finite: {k}")));
    }
    let df = market.discount();
    let closed = match payoff {
        Payoff::CashOrNothing => df,
        Payoff::AssetOrNothing => market.discounted_spot(),
        Payoff::European => market.discounted_spot() - market.strike * df,
    };
    if k >= 0.0 || lower_tail_bound(params, t, -k) * market.strike.max(1.0) < NEGLIGIBLE_MASS {
        return Ok(PriceQuote::closed_form(closed));
    }
    if k * params.lambda() < -TAIL_EXPONENT {
        return Ok(PriceQuote::closed_form(0.0));
    }
    let a_t = params.a() * t;
    let beta = params.beta();
    let lambda = params.lambda();
    let growth = ((params.gamma_const() - market.rate) * t).exp();
    let ek = k.exp();
    let (value, count, last) = match payoff {
        Payoff::CashOrNothing => {
            let (s, n, l) = one_sided_series(k, lambda, a_t, beta, growth, trunc)?;
            ((s * growth).to_f64(), n, l)
        }
        Payoff::AssetOrNothing => {
            let pre = market.strike * ek * growth;
            let (s, n, l) = one_sided_series(k, lambda - 1.0, a_t, beta, pre, trunc)?;
            ((s * pre).to_f64(), n, l)
        }
        Payoff::European => {
            let pre = market.strike * growth;
            let (sa, na, la) = one_sided_series(k, lambda - 1.0, a_t, beta, pre * ek, trunc)?;
            let (sc, nc, lc) = one_sided_series(k, lambda, a_t, beta, pre, trunc)?;
            (((sa * ek - sc) * pre).to_f64(), na.max(nc), la.max(lc))
        }
    };
    if !value.is_finite() {
        return Err(Error::ConvergenceFailure(format!("one-sided series overflowed at k = {k}")));
    }
    Ok(PriceQuote { value, terms_summed: count, last_shell_max: last, branch: Branch::NegativeK })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_at_zero_is_prefactor() {
        let p = BgParams::new(1.4, 3.5, 0.4, 2.0).unwrap();
        let t = 1.2;
        let (ap, am) = (1.4 * t, 0.4 * t);
        let want = 3.5f64.powf(ap) * 2.0f64.powf(am) * libm::tgamma(ap + am)
            / (5.5f64.powf(ap + am) * libm::tgamma(1.0 + ap) * libm::tgamma(am));
        assert!((bg_h(0.0, &p, t).unwrap() - want).abs() < 1e-14 * want);
    }

    #[test]
    fn h_domain() {
        let p = BgParams::new(1.4, 3.5, 0.4, 2.0).unwrap();
        assert!(bg_h(5.5, &p, 1.0).is_err());
    }

    #[test]
    fn m_t_pole() {
        let p = BgParams::new(1.0, 3.5, 0.4, 2.0).unwrap();
        assert!(matches!(bg_m_t(&p, 1.0), Err(Error::PoleProximity(_))));
    }

    #[test]
    fn one_sided_coefficient_at_zero_is_exponential_integral() {
        let v = coeff_one_sided(0, -0.5, 2.0, 0.6).unwrap();
        // E₁(1)
        assert!((v - 0.21938393439552027).abs() < 1e-14);
    }

    #[test]
    fn one_sided_closed_form_for_nonnegative_k() {
        let p = OneSidedParams::new(1.4, 0.6, 3.0).unwrap();
        let z = p.compensator().unwrap();
        let m = MarketSpec::new(1.0, 1.0, 1.0, 0.02, 0.01).unwrap();
        for k in [0.0, 0.1, 2.0] {
            let mk = m.with_strike(m.strike_for_moneyness(k, z)).unwrap();
            let q = price_eur_plus(&mk, &p, &one_sided_default_truncation()).unwrap();
            assert_eq!(q.branch, Branch::AtmClosedForm);
            assert!((q.value - (mk.discounted_spot() - mk.strike * mk.discount())).abs() <= 1e-15);
        }
    }

    #[test]
    fn kobol_rejects_unequal_indices() {
        let p = TsParams::new(1.0, 0.3, 3.0, 1.0, 0.4, 2.0).unwrap();
        let m = MarketSpec::new(1.0, 1.1, 1.0, 0.0, 0.0).unwrap();
        assert!(matches!(price_eur_kobol(&m, &p, &Truncation::cube(5)), Err(Error::DomainError(_))));
    }
}
