//! Special functions on the real line.
//!
//! | Function | Description |
//! |----------|-------------|
//! | [`log_gamma_signed`] | ln\|Γ(x)\| with the sign of Γ(x) |
//! | [`recip_gamma`] | 1/Γ(x), entire |
//! | [`lower_inc_gamma`] | γ(s, x), including negative non-integer `s` |
//! | [`upper_inc_gamma`] | Γ(s, x) for any real `s` and `x > 0` |
//! | [`pochhammer`] | rising factorial (z)ₙ |
//! | [`gauss_2f1`] | Gauss hypergeometric ₂F₁(a, b; c; z) |
//!
//! The [`dd`] submodule carries the same family in double-double precision
//! for the multi-index series.

pub mod dd;

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Distance below which a gamma argument counts as sitting on a pole.
pub const POLE_GUARD: f64 = 1e-8;

const TGAMMA_MAX: f64 = 171.0;

/// A real number stored as `sign * exp(log_abs)`.
///
/// Products and quotients of gamma values are formed here and exponentiated
/// once, so intermediate factors never overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub log_abs: f64,
    /// One of -1, 0, +1. Zero means the value is exactly zero.
    pub sign: i8,
}

impl SignedLog {
    pub const ZERO: SignedLog = SignedLog { log_abs: f64::NEG_INFINITY, sign: 0 };
    pub const ONE: SignedLog = SignedLog { log_abs: 0.0, sign: 1 };

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            SignedLog::ZERO
        } else {
            SignedLog { log_abs: x.abs().ln(), sign: if x > 0.0 { 1 } else { -1 } }
        }
    }

    /// `base^e` for `base > 0`.
    pub fn pow(base: f64, e: f64) -> Self {
        SignedLog { log_abs: e * base.ln(), sign: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => s as f64 * self.log_abs.exp(),
        }
    }

    pub fn recip(self) -> Self {
        SignedLog { log_abs: -self.log_abs, sign: self.sign }
    }
}

impl std::ops::Mul for SignedLog {
    type Output = SignedLog;
    fn mul(self, o: SignedLog) -> SignedLog {
        if self.sign == 0 || o.sign == 0 {
            return SignedLog::ZERO;
        }
        SignedLog { log_abs: self.log_abs + o.log_abs, sign: self.sign * o.sign }
    }
}

impl std::ops::Div for SignedLog {
    type Output = SignedLog;
    fn div(self, o: SignedLog) -> SignedLog {
        self * o.recip()
    }
}

impl std::ops::Neg for SignedLog {
    type Output = SignedLog;
    fn neg(self) -> SignedLog {
        SignedLog { log_abs: self.log_abs, sign: -self.sign }
    }
}

/// Distance from `x` to the nearest non-positive integer (infinite for `x > 0.5`).
pub fn pole_distance(x: f64) -> f64 {
    if x > 0.5 {
        f64::INFINITY
    } else {
        (x - x.round()).abs()
    }
}

fn check_pole(x: f64) -> Result<()> {
    if pole_distance(x) < POLE_GUARD {
        Err(Error::PoleProximity(x))
    } else {
        Ok(())
    }
}

/// `sin(πx)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    if r == 0.0 {
        return 0.0;
    }
    let v = (PI * r).sin();
    if libm::fmod(n.abs(), 2.0) == 1.0 {
        -v
    } else {
        v
    }
}

/// ln|Γ(x)| together with the sign of Γ(x).
pub fn log_gamma_signed(x: f64) -> Result<SignedLog> {
    if !x.is_finite() {
        return Err(Error::domain(format!("log_gamma_signed: non-finite argument {x}")));
    }
    check_pole(x)?;
    let (lg, sign) = libm::lgamma_r(x);
    Ok(SignedLog { log_abs: lg, sign: if sign < 0 { -1 } else { 1 } })
}

/// Γ(x) as a plain double.
pub fn gamma(x: f64) -> Result<f64> {
    check_pole(x)?;
    if x > 0.0 && x < TGAMMA_MAX {
        Ok(libm::tgamma(x))
    } else {
        Ok(log_gamma_signed(x)?.to_f64())
    }
}

/// 1/Γ(x). Exactly zero at the non-positive integers.
pub fn recip_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        return 0.0;
    }
    if x >= 0.5 {
        if x < TGAMMA_MAX {
            1.0 / libm::tgamma(x)
        } else {
            (-libm::lgamma_r(x).0).exp()
        }
    } else {
        // 1/Γ(x) = sin(πx) Γ(1-x) / π
        let y = 1.0 - x;
        let g = if y < TGAMMA_MAX { libm::tgamma(y) } else { libm::lgamma_r(y).0.exp() };
        sin_pi(x) * g / PI
    }
}

/// Lower incomplete gamma γ(s, x) = ∫₀ˣ t^{s-1} e^{-t} dt, continued to
/// negative non-integer `s`.
///
/// Evaluated by the power series `x^s e^{-x} Σ x^n / (s)_{n+1}`, which has no
/// cancellation for `s > -1`.
pub fn lower_inc_gamma(s: f64, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::domain(format!("lower_inc_gamma: x = {x} < 0")));
    }
    check_pole(s)?;
    if x == 0.0 {
        return if s > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::domain(format!("lower_inc_gamma: diverges at x = 0 for s = {s}")))
        };
    }
    let sum = kummer_sum(s, x)?;
    Ok(sum * (s * x.ln() - x).exp())
}

/// `Σ x^n / (s)_{n+1}`, so that `γ(s, x) = x^s e^{-x}` times the result.
pub(crate) fn kummer_sum(s: f64, x: f64) -> Result<f64> {
    let mut term = 1.0 / s;
    let mut sum = term;
    let mut n = 1usize;
    loop {
        term *= x / (s + n as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && (n as f64) > x - s {
            return Ok(sum);
        }
        n += 1;
        if n > 100_000 {
            return Err(Error::ConvergenceFailure(format!(
                "lower_inc_gamma series at s = {s}, x = {x}"
            )));
        }
    }
}

/// Upper incomplete gamma Γ(s, x) = ∫ₓ^∞ t^{s-1} e^{-t} dt for `x > 0`.
///
/// Uses the Legendre continued fraction for `x > s + 2` and near the gamma
/// poles, and `Γ(s) - γ(s, x)` elsewhere.
pub fn upper_inc_gamma(s: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("upper_inc_gamma: x = {x} <= 0")));
    }
    if !s.is_finite() {
        return Err(Error::domain(format!("upper_inc_gamma: s = {s}")));
    }
    if x > s + 2.0 || pole_distance(s) < 1e-3 {
        legendre_cf(s, x)
    } else {
        Ok(gamma(s)? - lower_inc_gamma(s, x)?)
    }
}

// modified Lentz
fn legendre_cf(s: f64, x: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - s;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..2_000_000 {
        let an = -(i as f64) * (i as f64 - s);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            return Ok(h * (s * x.ln() - x).exp());
        }
    }
    Err(Error::ConvergenceFailure(format!("upper_inc_gamma continued fraction at s = {s}, x = {x}")))
}

/// Rising factorial (z)ₙ = z (z+1) ⋯ (z+n-1), with (z)₀ = 1.
pub fn pochhammer(z: f64, n: u32) -> f64 {
    let mut p = 1.0;
    for i in 0..n {
        p *= z + i as f64;
    }
    p
}

const HYP_MAX_TERMS: usize = 10_000;

/// Gauss hypergeometric function ₂F₁(a, b; c; z) for |z| < 1.
///
/// Direct summation on [-0.5, 0.9]; below -0.5 the Pfaff transform
/// z → z/(z-1) maps into (1/3, 1/2); above 0.9 the 1-z connection formula is
/// used unless c-a-b is within 0.05 of an integer.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    check_pole(c)?;
    if !(z.abs() < 1.0) {
        return Err(Error::domain(format!("gauss_2f1: |z| = {} >= 1", z.abs())));
    }
    if a == 0.0 || b == 0.0 || z == 0.0 {
        return Ok(1.0);
    }
    if z < -0.5 {
        let w = z / (z - 1.0);
        return Ok((1.0 - z).powf(-a) * hyp_series(a, c - b, c, w)?);
    }
    let d = c - a - b;
    if z > 0.9 && (d - d.round()).abs() > 0.05 {
        return hyp_connection(a, b, c, z);
    }
    hyp_series(a, b, c, z)
}

fn hyp_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small = 0;
    for n in 0..HYP_MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if term.abs() < 1e-16 * sum.abs() {
            small += 1;
            if small >= 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::ConvergenceFailure(format!("gauss_2f1({a}, {b}; {c}; {z}) series")))
}

fn gamma_ratio(num: &[f64], den: &[f64]) -> Result<f64> {
    let mut acc = SignedLog::ONE;
    for &x in den {
        let r = recip_gamma(x);
        if r == 0.0 {
            return Ok(0.0);
        }
        acc = acc * SignedLog::from_f64(r);
    }
    for &x in num {
        acc = acc * log_gamma_signed(x)?;
    }
    Ok(acc.to_f64())
}

fn hyp_connection(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let w = 1.0 - z;
    let d = c - a - b;
    let t1 = gamma_ratio(&[c, d], &[c - a, c - b])?;
    let t2 = gamma_ratio(&[c, -d], &[a, b])?;
    let mut v = 0.0;
    if t1 != 0.0 {
        v += t1 * hyp_series(a, b, 1.0 - d, w)?;
    }
    if t2 != 0.0 {
        v += t2 * w.powf(d) * hyp_series(c - a, c - b, d + 1.0, w)?;
    }
    Ok(v)
}
