//! Parameter records, characteristic functions and compensators.
//!
//! Records validate at construction and are immutable afterwards. The
//! martingale requirement `λ₊ > 1` is not a construction invariant: densities
//! are defined without it, so it is checked where a compensator is needed.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{self, POLE_GUARD};

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive and finite, got {v}")))
    }
}

fn stability(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > POLE_GUARD && v < 1.0 - POLE_GUARD {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must lie in (0, 1), got {v}")))
    }
}

fn martingale(lambda_plus: f64) -> Result<()> {
    if lambda_plus > 1.0 {
        Ok(())
    } else {
        Err(Error::MartingaleViolation(format!(
            "positive tempering rate {lambda_plus} must exceed 1 for a finite exponential moment"
        )))
    }
}

/// `-α Γ(-β)`, positive for β in (0, 1).
fn scale_from_intensity(alpha: f64, beta: f64) -> f64 {
    -alpha * specfun::gamma(-beta).expect("beta validated away from 0")
}

/// Two-sided tempered stable law: Lévy density
/// `α₊ e^{-λ₊x} x^{-1-β₊}` on x > 0 and `α₋ e^{-λ₋|x|} |x|^{-1-β₋}` on x < 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTs")]
pub struct TsParams {
    alpha_plus: f64,
    beta_plus: f64,
    lambda_plus: f64,
    alpha_minus: f64,
    beta_minus: f64,
    lambda_minus: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTs {
    alpha_plus: f64,
    beta_plus: f64,
    lambda_plus: f64,
    alpha_minus: f64,
    beta_minus: f64,
    lambda_minus: f64,
}

impl TryFrom<RawTs> for TsParams {
    type Error = Error;
    fn try_from(r: RawTs) -> Result<Self> {
        TsParams::new(r.alpha_plus, r.beta_plus, r.lambda_plus, r.alpha_minus, r.beta_minus, r.lambda_minus)
    }
}

impl TsParams {
    pub fn new(
        alpha_plus: f64,
        beta_plus: f64,
        lambda_plus: f64,
        alpha_minus: f64,
        beta_minus: f64,
        lambda_minus: f64,
    ) -> Result<Self> {
        positive("alpha_plus", alpha_plus)?;
        positive("alpha_minus", alpha_minus)?;
        positive("lambda_plus", lambda_plus)?;
        positive("lambda_minus", lambda_minus)?;
        stability("beta_plus", beta_plus)?;
        stability("beta_minus", beta_minus)?;
        Ok(TsParams { alpha_plus, beta_plus, lambda_plus, alpha_minus, beta_minus, lambda_minus })
    }

    /// KoBoL: both tails share the stability index `beta`.
    pub fn kobol(alpha_plus: f64, lambda_plus: f64, alpha_minus: f64, lambda_minus: f64, beta: f64) -> Result<Self> {
        TsParams::new(alpha_plus, beta, lambda_plus, alpha_minus, beta, lambda_minus)
    }

    /// CGMY in its traditional notation: C scales both tails, G and M are the
    /// negative and positive tempering rates, Y the shared stability index.
    pub fn cgmy(c: f64, g: f64, m: f64, y: f64) -> Result<Self> {
        TsParams::new(c, y, m, c, y, g)
    }

    pub fn alpha_plus(&self) -> f64 {
        self.alpha_plus
    }
    pub fn beta_plus(&self) -> f64 {
        self.beta_plus
    }
    pub fn lambda_plus(&self) -> f64 {
        self.lambda_plus
    }
    pub fn alpha_minus(&self) -> f64 {
        self.alpha_minus
    }
    pub fn beta_minus(&self) -> f64 {
        self.beta_minus
    }
    pub fn lambda_minus(&self) -> f64 {
        self.lambda_minus
    }

    pub fn a_plus(&self) -> f64 {
        scale_from_intensity(self.alpha_plus, self.beta_plus)
    }

    pub fn a_minus(&self) -> f64 {
        scale_from_intensity(self.alpha_minus, self.beta_minus)
    }

    pub fn lambda_bar(&self) -> f64 {
        self.lambda_plus + self.lambda_minus
    }

    pub fn gamma_const(&self) -> f64 {
        self.a_plus() * self.lambda_plus.powf(self.beta_plus)
            + self.a_minus() * self.lambda_minus.powf(self.beta_minus)
    }

    /// Exchange the positive and negative tails (law of `-X`).
    pub fn flip(&self) -> Self {
        TsParams {
            alpha_plus: self.alpha_minus,
            beta_plus: self.beta_minus,
            lambda_plus: self.lambda_minus,
            alpha_minus: self.alpha_plus,
            beta_minus: self.beta_plus,
            lambda_minus: self.lambda_plus,
        }
    }

    /// Law at time `t`: both intensities multiplied by `t`.
    pub fn at_time(&self, t: f64) -> Result<Self> {
        positive("t", t)?;
        Ok(TsParams { alpha_plus: self.alpha_plus * t, alpha_minus: self.alpha_minus * t, ..*self })
    }

    pub fn is_kobol(&self) -> bool {
        self.beta_plus == self.beta_minus
    }

    /// `ζ = -ln φ(-i, 1)`.
    pub fn compensator(&self) -> Result<f64> {
        martingale(self.lambda_plus)?;
        let (lp, lm) = (self.lambda_plus, self.lambda_minus);
        Ok(self.a_plus() * ((lp - 1.0).powf(self.beta_plus) - lp.powf(self.beta_plus))
            + self.a_minus() * ((lm + 1.0).powf(self.beta_minus) - lm.powf(self.beta_minus)))
    }

    pub fn char_fn(&self) -> CharFn {
        CharFn::Ts(*self)
    }
}

pub fn flip_params(p: &TsParams) -> TsParams {
    p.flip()
}

/// One-sided tempered stable law with Lévy density `α e^{-λx} x^{-1-β}` on x > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawOneSided")]
pub struct OneSidedParams {
    alpha: f64,
    beta: f64,
    lambda: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOneSided {
    alpha: f64,
    beta: f64,
    lambda: f64,
}

impl TryFrom<RawOneSided> for OneSidedParams {
    type Error = Error;
    fn try_from(r: RawOneSided) -> Result<Self> {
        OneSidedParams::new(r.alpha, r.beta, r.lambda)
    }
}

impl OneSidedParams {
    pub fn new(alpha: f64, beta: f64, lambda: f64) -> Result<Self> {
        positive("alpha", alpha)?;
        positive("lambda", lambda)?;
        stability("beta", beta)?;
        Ok(OneSidedParams { alpha, beta, lambda })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn a(&self) -> f64 {
        scale_from_intensity(self.alpha, self.beta)
    }

    pub fn gamma_const(&self) -> f64 {
        self.a() * self.lambda.powf(self.beta)
    }

    pub fn at_time(&self, t: f64) -> Result<Self> {
        positive("t", t)?;
        Ok(OneSidedParams { alpha: self.alpha * t, ..*self })
    }

    pub fn compensator(&self) -> Result<f64> {
        martingale(self.lambda)?;
        Ok(self.a() * ((self.lambda - 1.0).powf(self.beta) - self.lambda.powf(self.beta)))
    }

    pub fn char_fn(&self) -> CharFn {
        CharFn::TsPlus(*self)
    }
}

/// Bilateral Gamma law: difference of two independent Gamma variables with
/// shapes α± and rates λ±.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBg")]
pub struct BgParams {
    alpha_plus: f64,
    lambda_plus: f64,
    alpha_minus: f64,
    lambda_minus: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBg {
    alpha_plus: f64,
    lambda_plus: f64,
    alpha_minus: f64,
    lambda_minus: f64,
}

impl TryFrom<RawBg> for BgParams {
    type Error = Error;
    fn try_from(r: RawBg) -> Result<Self> {
        BgParams::new(r.alpha_plus, r.lambda_plus, r.alpha_minus, r.lambda_minus)
    }
}

impl BgParams {
    pub fn new(alpha_plus: f64, lambda_plus: f64, alpha_minus: f64, lambda_minus: f64) -> Result<Self> {
        positive("alpha_plus", alpha_plus)?;
        positive("alpha_minus", alpha_minus)?;
        positive("lambda_plus", lambda_plus)?;
        positive("lambda_minus", lambda_minus)?;
        Ok(BgParams { alpha_plus, lambda_plus, alpha_minus, lambda_minus })
    }

    pub fn alpha_plus(&self) -> f64 {
        self.alpha_plus
    }
    pub fn lambda_plus(&self) -> f64 {
        self.lambda_plus
    }
    pub fn alpha_minus(&self) -> f64 {
        self.alpha_minus
    }
    pub fn lambda_minus(&self) -> f64 {
        self.lambda_minus
    }

    pub fn lambda_bar(&self) -> f64 {
        self.lambda_plus + self.lambda_minus
    }

    pub fn lambda_over(&self) -> f64 {
        (self.lambda_plus - self.lambda_minus) / 2.0
    }

    /// Half-sum of the shapes.
    pub fn alpha_under(&self) -> f64 {
        (self.alpha_plus + self.alpha_minus) / 2.0
    }

    pub fn alpha_over(&self) -> f64 {
        (self.alpha_plus - self.alpha_minus) / 2.0
    }

    pub fn flip(&self) -> Self {
        BgParams {
            alpha_plus: self.alpha_minus,
            lambda_plus: self.lambda_minus,
            alpha_minus: self.alpha_plus,
            lambda_minus: self.lambda_plus,
        }
    }

    pub fn compensator(&self) -> Result<f64> {
        martingale(self.lambda_plus)?;
        let (lp, lm) = (self.lambda_plus, self.lambda_minus);
        Ok(-self.alpha_plus * (lp / (lp - 1.0)).ln() - self.alpha_minus * (lm / (lm + 1.0)).ln())
    }

    /// Traditional (σ, θ, ν) coordinates; only meaningful when α₊ = α₋.
    pub fn to_vg(&self) -> Result<(f64, f64, f64)> {
        if self.alpha_plus != self.alpha_minus {
            return Err(Error::domain("Variance Gamma coordinates need equal shapes"));
        }
        let a = self.alpha_plus;
        let sigma = (2.0 * a / (self.lambda_plus * self.lambda_minus)).sqrt();
        let theta = a / self.lambda_plus - a / self.lambda_minus;
        Ok((sigma, theta, 1.0 / a))
    }

    pub fn char_fn(&self) -> CharFn {
        CharFn::Bg(*self)
    }
}

/// Variance Gamma from (σ, θ, ν): equal shapes 1/ν and rates solving
/// σ² = 2α/(λ₊λ₋), θ = α/λ₊ - α/λ₋.
pub fn vg_from_common(sigma: f64, theta: f64, nu: f64) -> Result<BgParams> {
    positive("sigma", sigma)?;
    positive("nu", nu)?;
    if !theta.is_finite() {
        return Err(Error::domain(format!("theta must be finite, got {theta}")));
    }
    let alpha = 1.0 / nu;
    // 1/λ± are the roots of x² ∓ (θ/α) x - σ²/(2α) = 0
    let half = theta / (2.0 * alpha);
    let disc = (half * half + sigma * sigma / (2.0 * alpha)).sqrt();
    let inv_plus = half + disc;
    let inv_minus = disc - half;
    if !(inv_plus > 0.0 && inv_minus > 0.0) {
        return Err(Error::domain("implied Variance Gamma rates are not positive"));
    }
    BgParams::new(alpha, 1.0 / inv_plus, alpha, 1.0 / inv_minus)
}

/// Contract and market data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMarket")]
pub struct MarketSpec {
    #[serde(rename = "s0")]
    pub spot: f64,
    #[serde(rename = "k")]
    pub strike: f64,
    #[serde(rename = "t")]
    pub maturity: f64,
    #[serde(rename = "r")]
    pub rate: f64,
    #[serde(rename = "q")]
    pub dividend: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMarket {
    s0: f64,
    k: f64,
    t: f64,
    r: f64,
    q: f64,
}

impl TryFrom<RawMarket> for MarketSpec {
    type Error = Error;
    fn try_from(m: RawMarket) -> Result<Self> {
        MarketSpec::new(m.s0, m.k, m.t, m.r, m.q)
    }
}

impl MarketSpec {
    pub fn new(spot: f64, strike: f64, maturity: f64, rate: f64, dividend: f64) -> Result<Self> {
        positive("s0", spot)?;
        positive("k", strike)?;
        positive("t", maturity)?;
        if !(rate.is_finite() && dividend.is_finite()) {
            return Err(Error::domain("rates must be finite"));
        }
        Ok(MarketSpec { spot, strike, maturity, rate, dividend })
    }

    pub fn with_strike(&self, strike: f64) -> Result<Self> {
        MarketSpec::new(self.spot, strike, self.maturity, self.rate, self.dividend)
    }

    pub fn with_maturity(&self, maturity: f64) -> Result<Self> {
        MarketSpec::new(self.spot, self.strike, maturity, self.rate, self.dividend)
    }

    /// Strike whose log-forward moneyness is `k` under compensator `zeta`.
    pub fn strike_for_moneyness(&self, k: f64, zeta: f64) -> f64 {
        self.spot * ((self.rate - self.dividend + zeta) * self.maturity - k).exp()
    }

    pub fn discount(&self) -> f64 {
        (-self.rate * self.maturity).exp()
    }

    /// `S0 e^{-qT}`.
    pub fn discounted_spot(&self) -> f64 {
        self.spot * (-self.dividend * self.maturity).exp()
    }

    /// `max(0, S0 e^{-qT} - K e^{-rT})`.
    pub fn intrinsic(&self) -> f64 {
        (self.discounted_spot() - self.strike * self.discount()).max(0.0)
    }
}

/// `k = ln(S0/K) + (r - q + ζ) T`.
pub fn log_forward_moneyness(market: &MarketSpec, zeta: f64) -> f64 {
    (market.spot / market.strike).ln() + (market.rate - market.dividend + zeta) * market.maturity
}

/// A characteristic function `φ(u, t) = exp(t ψ(u))` of a Lévy process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CharFn {
    Ts(TsParams),
    TsPlus(OneSidedParams),
    Bg(BgParams),
    /// Centered Brownian motion with volatility `sigma`, for quadrature self-tests.
    Gaussian { sigma: f64 },
}

impl CharFn {
    pub fn tag(&self) -> &'static str {
        match self {
            CharFn::Ts(_) => "ts",
            CharFn::TsPlus(_) => "ts_plus",
            CharFn::Bg(_) => "bg",
            CharFn::Gaussian { .. } => "gaussian",
        }
    }

    /// Open interval of `Im(u)` on which `φ` is analytic.
    pub fn strip(&self) -> (f64, f64) {
        match self {
            CharFn::Ts(p) => (-p.lambda_plus, p.lambda_minus),
            CharFn::Bg(p) => (-p.lambda_plus, p.lambda_minus),
            CharFn::TsPlus(p) => (-p.lambda, f64::INFINITY),
            CharFn::Gaussian { .. } => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Lévy exponent `ψ(u) = ln φ(u, 1)`.
    pub fn exponent(&self, u: Complex64) -> Result<Complex64> {
        let (lo, hi) = self.strip();
        if !(u.im > lo && u.im < hi) {
            return Err(Error::domain(format!(
                "characteristic function evaluated at Im(u) = {} outside ({lo}, {hi})",
                u.im
            )));
        }
        let i = Complex64::i();
        Ok(match self {
            CharFn::Ts(p) => {
                let plus = (p.lambda_plus - i * u).powf(p.beta_plus) - p.lambda_plus.powf(p.beta_plus);
                let minus = (p.lambda_minus + i * u).powf(p.beta_minus) - p.lambda_minus.powf(p.beta_minus);
                -p.a_plus() * plus - p.a_minus() * minus
            }
            CharFn::TsPlus(p) => -p.a() * ((p.lambda - i * u).powf(p.beta) - p.lambda.powf(p.beta)),
            CharFn::Bg(p) => {
                let plus = (p.lambda_plus / (p.lambda_plus - i * u)).ln();
                let minus = (p.lambda_minus / (p.lambda_minus + i * u)).ln();
                p.alpha_plus * plus + p.alpha_minus * minus
            }
            CharFn::Gaussian { sigma } => -0.5 * sigma * sigma * u * u,
        })
    }

    pub fn eval(&self, u: Complex64, t: f64) -> Result<Complex64> {
        Ok((t * self.exponent(u)?).exp())
    }

    /// `-ψ(-i)`, the drift correction making `e^{X_t + ζ t}` a martingale.
    pub fn compensator(&self) -> Result<f64> {
        match self {
            CharFn::Ts(p) => p.compensator(),
            CharFn::TsPlus(p) => p.compensator(),
            CharFn::Bg(p) => p.compensator(),
            CharFn::Gaussian { sigma } => Ok(-0.5 * sigma * sigma),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    fn printed_params() -> TsParams {
        TsParams::new(1.4, 0.1 + E / 10.0, 0.44, 0.4, 0.5 - PI / 100.0, 0.35).unwrap()
    }

    #[test]
    fn derived_constants_positive() {
        let p = printed_params();
        assert!(p.a_plus() > 0.0 && p.a_minus() > 0.0);
        assert!((p.lambda_bar() - 0.79).abs() < 1e-15);
    }

    #[test]
    fn construction_rejects_bad_fields() {
        assert!(TsParams::new(-1.0, 0.5, 2.0, 1.0, 0.5, 1.0).is_err());
        assert!(TsParams::new(1.0, 1.0, 2.0, 1.0, 0.5, 1.0).is_err());
        assert!(TsParams::new(1.0, 0.0, 2.0, 1.0, 0.5, 1.0).is_err());
        assert!(OneSidedParams::new(1.0, 0.5, 0.0).is_err());
        assert!(MarketSpec::new(1.0, -1.0, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn compensator_constructed_cancellation() {
        // a± = 1 with β = 1/2 means α = -1/Γ(-1/2) = 1/(2√π)
        let alpha = 1.0 / (2.0 * PI.sqrt());
        let p = TsParams::new(alpha, 0.5, 2.0, alpha, 0.5, 1.0).unwrap();
        assert!((p.a_plus() - 1.0).abs() < 1e-14);
        assert!(p.compensator().unwrap().abs() < 1e-14);
    }

    #[test]
    fn compensator_requires_martingale_condition() {
        assert!(matches!(printed_params().compensator(), Err(Error::MartingaleViolation(_))));
        let bg = BgParams::new(1.4, 0.44, 0.4, 0.35).unwrap();
        assert!(matches!(bg.compensator(), Err(Error::MartingaleViolation(_))));
    }

    #[test]
    fn compensator_matches_char_fn_at_minus_i() {
        let ts = TsParams::new(1.4, 0.1 + E / 10.0, 3.5, 0.4, 0.5 - PI / 100.0, 2.0).unwrap();
        let one = OneSidedParams::new(1.4, 0.6, 3.0).unwrap();
        let bg = BgParams::new(1.4, 3.5, 0.4, 2.0).unwrap();
        for cf in [ts.char_fn(), one.char_fn(), bg.char_fn(), CharFn::Gaussian { sigma: 0.3 }] {
            let zeta = cf.compensator().unwrap();
            let phi = cf.eval(Complex64::new(0.0, -1.0), 1.0).unwrap();
            assert!(((-zeta).exp() - phi.re).abs() < 1e-14 * phi.re, "{}: {} vs {}", cf.tag(), (-zeta).exp(), phi.re);
            assert!(phi.im.abs() < 1e-14);
        }
    }

    #[test]
    fn flip_is_field_exchange() {
        let f = printed_params().flip();
        assert_eq!(f.alpha_plus(), 0.4);
        assert_eq!(f.beta_plus(), 0.5 - PI / 100.0);
        assert_eq!(f.lambda_plus(), 0.35);
        assert_eq!(f.flip(), printed_params());
        let sym = TsParams::new(1.0, 0.4, 2.0, 1.0, 0.4, 2.0).unwrap();
        assert_eq!(sym.flip(), sym);
    }

    #[test]
    fn moneyness_examples() {
        let m = MarketSpec::new(1.0, 1.0, 2.0, 0.03, 0.03).unwrap();
        assert_eq!(log_forward_moneyness(&m, 0.0), 0.0);
        let m = MarketSpec::new(1.0, 1.5, 1.2, 0.02, 0.05).unwrap();
        let zeta = -0.25;
        let k = log_forward_moneyness(&m, zeta);
        assert!((k - ((1.0f64 / 1.5).ln() + (-0.03 + zeta) * 1.2)).abs() < 1e-15);
        let atm = m.with_strike(m.strike_for_moneyness(0.0, zeta)).unwrap();
        assert!(log_forward_moneyness(&atm, zeta).abs() < 1e-15);
    }

    #[test]
    fn vg_symmetric_and_round_trip() {
        let bg = vg_from_common(0.2, 0.0, 0.5).unwrap();
        let want = (2.0f64 * 2.0).sqrt() / 0.2;
        assert!((bg.lambda_plus() - want).abs() < 1e-12);
        assert_eq!(bg.lambda_plus(), bg.lambda_minus());

        let orig = BgParams::new(1.7, 3.2, 1.7, 2.1).unwrap();
        let (s, th, nu) = orig.to_vg().unwrap();
        let back = vg_from_common(s, th, nu).unwrap();
        assert!((back.lambda_plus() - 3.2).abs() < 1e-14 * 3.2);
        assert!((back.lambda_minus() - 2.1).abs() < 1e-14 * 2.1);
        assert!((back.alpha_plus() - 1.7).abs() < 1e-14);
    }

    #[test]
    fn vg_defining_equations() {
        let (sigma, theta, nu) = (0.2, -0.1, 0.5);
        let bg = vg_from_common(sigma, theta, nu).unwrap();
        let a = 1.0 / nu;
        let (lp, lm) = (bg.lambda_plus(), bg.lambda_minus());
        assert!((sigma * sigma - 2.0 * a / (lp * lm)).abs() < 1e-12);
        assert!((theta - (a / lp - a / lm)).abs() < 1e-12);
    }

    #[test]
    fn strip_is_enforced() {
        let cf = TsParams::new(1.0, 0.5, 2.0, 1.0, 0.5, 1.0).unwrap().char_fn();
        assert!(cf.eval(Complex64::new(0.0, -2.5), 1.0).is_err());
        assert!(cf.eval(Complex64::new(0.0, 1.5), 1.0).is_err());
        let plus = OneSidedParams::new(1.0, 0.5, 2.0).unwrap().char_fn();
        assert!(plus.eval(Complex64::new(0.0, 10.0), 1.0).is_ok());
        assert!(plus.eval(Complex64::new(0.0, -2.0), 1.0).is_err());
    }

    #[test]
    fn json_schema_field_names() {
        let p: TsParams = serde_json::from_str(
            r#"{"alpha_plus":1.4,"beta_plus":0.5,"lambda_plus":3.5,"alpha_minus":0.4,"beta_minus":0.3,"lambda_minus":2.0}"#,
        )
        .unwrap();
        assert_eq!(p.lambda_minus(), 2.0);
        let m: MarketSpec = serde_json::from_str(r#"{"s0":1,"k":1.5,"t":1.2,"r":0.02,"q":0.05}"#).unwrap();
        assert_eq!(m.strike, 1.5);
        assert!(serde_json::from_str::<MarketSpec>(r#"{"s0":1,"k":-1,"t":1,"r":0,"q":0}"#).is_err());
    }
}
