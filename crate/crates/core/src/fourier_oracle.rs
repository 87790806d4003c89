//! Fourier reference pricers: Gil-Pelaez digitals, the Lewis and Carr-Madan
//! call formulas, and density inversion.
//!
//! All integrals run over `[0, ∞)` as a sequence of panels of geometrically
//! growing width, each integrated by adaptive Gauss-Kronrod (10/21). The
//! axis is cut at the first panel on which every sampled integrand value is
//! below `decay_threshold`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{log_forward_moneyness, CharFn, MarketSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Largest `u` the integration may reach before reporting slow decay.
    pub max_truncation: f64,
    /// Carr-Madan damping exponent.
    pub damping: f64,
    pub decay_threshold: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { abs_tol: 1e-14, rel_tol: 1e-13, max_truncation: 1e5, damping: 1.5, decay_threshold: 1e-16 }
    }
}

impl QuadConfig {
    /// Settings for density inversion (wider cutoff).
    pub fn density() -> Self {
        QuadConfig { max_truncation: 1e6, ..QuadConfig::default() }
    }

    pub fn with_max_truncation(self, max_truncation: f64) -> Self {
        QuadConfig { max_truncation, ..self }
    }

    pub fn with_decay_threshold(self, decay_threshold: f64) -> Self {
        QuadConfig { decay_threshold, ..self }
    }

    pub fn with_damping(self, damping: f64) -> Self {
        QuadConfig { damping, ..self }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.abs_tol > 0.0
            && self.rel_tol > 0.0
            && self.damping > 0.0
            && self.decay_threshold > 0.0
            && self.max_truncation > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("invalid quadrature configuration {self:?}")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DigitalKind {
    CashOrNothing,
    AssetOrNothing,
}

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208037785505,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

struct Rule {
    value: f64,
    error: f64,
    max_abs: f64,
}

fn gk21<F: FnMut(f64) -> Result<f64>>(f: &mut F, a: f64, b: f64) -> Result<Rule> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut max_abs = fc.abs();
    for j in 0..10 {
        let dx = h * XGK[j];
        let f1 = f(c - dx)?;
        let f2 = f(c + dx)?;
        kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
        max_abs = max_abs.max(f1.abs()).max(f2.abs());
    }
    Ok(Rule { value: kronrod * h, error: ((kronrod - gauss) * h).abs(), max_abs })
}

const MAX_INTERVALS: usize = 50_000;

/// Adaptive integral over `[a, b]`; returns the value and the largest sampled |f|.
pub fn integrate<F: FnMut(f64) -> Result<f64>>(f: &mut F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<(f64, f64)> {
    let whole = gk21(f, a, b)?;
    let mut max_abs = whole.max_abs;
    let mut accepted = 0.0;
    let mut stack = vec![(a, b, whole)];
    let mut intervals = 1usize;
    let span = b - a;
    while let Some((lo, hi, r)) = stack.pop() {
        let share = (hi - lo) / span;
        if r.error <= (abs_tol * share).max(rel_tol * r.value.abs()) || hi - lo < 1e-12 * span {
            accepted += r.value;
            continue;
        }
        intervals += 1;
        if intervals > MAX_INTERVALS {
            return Err(Error::ConvergenceFailure(format!("quadrature on [{a}, {b}] exceeded {MAX_INTERVALS} intervals")));
        }
        let mid = 0.5 * (lo + hi);
        let left = gk21(f, lo, mid)?;
        let right = gk21(f, mid, hi)?;
        max_abs = max_abs.max(left.max_abs).max(right.max_abs);
        stack.push((lo, mid, left));
        stack.push((mid, hi, right));
    }
    Ok((accepted, max_abs))
}

/// `∫₀^∞ f(u) du` for an integrand that decays along the real axis.
pub fn integrate_half_line<F: FnMut(f64) -> Result<f64>>(mut f: F, cfg: &QuadConfig) -> Result<f64> {
    cfg.validate()?;
    let mut total = 0.0;
    let mut lo = 0.0;
    let mut width = 1.0;
    loop {
        let hi = lo + width;
        let (v, max_abs) = integrate(&mut f, lo, hi, cfg.abs_tol, cfg.rel_tol)?;
        total += v;
        if max_abs < cfg.decay_threshold {
            return Ok(total);
        }
        if hi >= cfg.max_truncation {
            return Err(Error::SlowDecay(hi));
        }
        lo = hi;
        width = (width * 1.25).min(cfg.max_truncation - lo).max(1e-3);
    }
}

fn phi(cf: &CharFn, u: Complex64, t: f64) -> Result<Complex64> {
    cf.eval(u, t)
}

/// `P(X_T > -k)` by Gil-Pelaez inversion of `u ↦ φ(u + shift, T) / φ(shift, T)`.
fn exceedance(cf: &CharFn, k: f64, t: f64, shift: Complex64, cfg: &QuadConfig) -> Result<f64> {
    let norm = phi(cf, shift, t)?;
    let integral = integrate_half_line(
        |u| {
            let v = phi(cf, Complex64::new(u, 0.0) + shift, t)? / norm;
            Ok((Complex64::new(0.0, u * k).exp() * v).im / u)
        },
        cfg,
    )?;
    Ok(0.5 + integral / std::f64::consts::PI)
}

pub fn price_digital_gil_pelaez(cf: &CharFn, market: &MarketSpec, kind: DigitalKind, cfg: &QuadConfig) -> Result<f64> {
    let zeta = cf.compensator()?;
    let k = log_forward_moneyness(market, zeta);
    let t = market.maturity;
    match kind {
        DigitalKind::CashOrNothing => Ok(market.discount() * exceedance(cf, k, t, Complex64::new(0.0, 0.0), cfg)?),
        DigitalKind::AssetOrNothing => {
            Ok(market.discounted_spot() * exceedance(cf, k, t, Complex64::new(0.0, -1.0), cfg)?)
        }
    }
}

/// European call as `AN - K CN`, both by Gil-Pelaez.
pub fn price_eur_gil_pelaez(cf: &CharFn, market: &MarketSpec, cfg: &QuadConfig) -> Result<f64> {
    let an = price_digital_gil_pelaez(cf, market, DigitalKind::AssetOrNothing, cfg)?;
    let cn = price_digital_gil_pelaez(cf, market, DigitalKind::CashOrNothing, cfg)?;
    Ok(an - market.strike * cn)
}

pub fn price_eur_lewis(cf: &CharFn, market: &MarketSpec, cfg: &QuadConfig) -> Result<f64> {
    let zeta = cf.compensator()?;
    let t = market.maturity;
    let kappa = (market.spot / market.strike).ln() + (market.rate - market.dividend) * t;
    let half = Complex64::new(0.0, -0.5);
    let integral = integrate_half_line(
        |u| {
            let v = Complex64::new(u, 0.0) + half;
            // characteristic function of X_T + ζT
            let p = phi(cf, v, t)? * (Complex64::i() * v * zeta * t).exp();
            Ok((Complex64::new(0.0, u * kappa).exp() * p).re / (u * u + 0.25))
        },
        cfg,
    )?;
    let scale = (market.spot * market.strike).sqrt() * (-(market.rate + market.dividend) * t / 2.0).exp();
    Ok(market.discounted_spot() - scale * integral / std::f64::consts::PI)
}

pub fn price_eur_carr_madan(cf: &CharFn, market: &MarketSpec, cfg: &QuadConfig) -> Result<f64> {
    let alpha = cfg.damping;
    let (lo, _) = cf.strip();
    if -(alpha + 1.0) <= lo {
        return Err(Error::MomentViolation(format!(
            "damping {alpha} needs E[S^{}] finite but the strip ends at Im(u) = {lo}",
            alpha + 1.0
        )));
    }
    let zeta = cf.compensator()?;
    let t = market.maturity;
    let drift = market.spot.ln() + (market.rate - market.dividend + zeta) * t;
    let k_cm = market.strike.ln();
    let df = market.discount();
    let integral = integrate_half_line(
        |u| {
            let v = Complex64::new(u, -(alpha + 1.0));
            let p = phi(cf, v, t)? * (Complex64::i() * v * drift).exp();
            let denom = Complex64::new(alpha * alpha + alpha - u * u, u * (2.0 * alpha + 1.0));
            let psi = df * p / denom;
            Ok((Complex64::new(0.0, -u * k_cm).exp() * psi).re)
        },
        cfg,
    )?;
    Ok((-alpha * k_cm).exp() * integral / std::f64::consts::PI)
}

/// Density of `X_t` at `x` by inversion, `(1/π) ∫₀^∞ Re[e^{-iux} φ(u, t)] du`.
pub fn density_fourier_oracle(x: f64, cf: &CharFn, t: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(t > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("density inversion needs t > 0 and finite x, got t = {t}, x = {x}")));
    }
    let integral = integrate_half_line(
        |u| Ok((Complex64::new(0.0, -u * x).exp() * phi(cf, Complex64::new(u, 0.0), t)?).re),
        cfg,
    )?;
    Ok(integral / std::f64::consts::PI)
}
