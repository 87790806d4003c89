//! Shared fixtures and parameter sets.
//!
//! Reference values were computed offline with mpmath at 40 digits by
//! quadrature of the defining integrals or direct series summation,
//! independently of this crate's code paths.
#![allow(dead_code)]

use std::f64::consts::{E, PI};

use tsp::{BgParams, MarketSpec, OneSidedParams, TsParams};

pub const LOG_GAMMA_M05: f64 = 1.2655121234846454; // 1.265512123484645396488946
pub const RGAMMA_M13: f64 = 0.30044944170796073; // 0.3004494417079607395491588
pub const LOWER_M07_15: f64 = -4.33369980702551; // -4.333699807025509677665315
pub const E1_AT_1: f64 = 0.21938393439552029; // 0.2193839343955202736771638
pub const UPPER_M04_08: f64 = 0.2808539020777551; // 0.2808539020777551461511697
pub const HYP2F1_24_1_22_055: f64 = 2.4180799790925467; // 2.418079979092546877905341
pub const PHI_TS_RE: f64 = 0.08724665322599853; // 0.08724665322599853549302869
pub const PHI_TS_IM: f64 = 0.24596535641848533; // 0.2459653564184853258896197
pub const PHI_BG_RE: f64 = 0.041392719064495154; // 0.04139271906449515034921159
pub const PHI_BG_IM: f64 = 0.14855603238087062; // 0.148556032380870610207192
pub const PHI_PLUS_RE: f64 = -0.4662183145966402; // -0.4662183145966402124936925
pub const PHI_PLUS_IM: f64 = -0.4079496221376493; // -0.407949622137649282067271
pub const ZETA_PLUS: f64 = -2.160678415349345; // -2.160678415349345015956896
pub const VG_LAMBDA_PLUS: f64 = 12.807764064044152; // 12.80776406404415137455352
pub const VG_LAMBDA_MINUS: f64 = 7.807764064044151; // 7.807764064044151374553525
pub const COEFF_PLUS_3: f64 = 0.6030752563514837; // 0.60307525635148369122613
pub const BG_M_T: f64 = -0.028576480821730924; // -0.02857648082173092476672638
pub const BG_H_LAMBDA_PLUS: f64 = 0.1830728052605606; // 0.1830728052605606016779223
pub const BG_COEFF_0: f64 = -0.823101627344601; // -0.8231016273446010310726782

pub fn beta_plus() -> f64 {
    0.1 + E / 10.0
}

pub fn beta_minus() -> f64 {
    0.5 - PI / 100.0
}

/// The two-sided parameters as printed: λ₊ = 0.44 < 1, valid as a law only.
pub fn printed() -> TsParams {
    TsParams::new(1.4, beta_plus(), 0.44, 0.4, beta_minus(), 0.35).unwrap()
}

/// Printed parameters with λ₊ = 3.5, λ₋ = 2.0.
pub fn validated() -> TsParams {
    TsParams::new(1.4, beta_plus(), 3.5, 0.4, beta_minus(), 2.0).unwrap()
}

pub fn one_sided() -> OneSidedParams {
    OneSidedParams::new(1.4, beta_plus(), 3.5).unwrap()
}

pub fn bg() -> BgParams {
    BgParams::new(1.4, 3.5, 0.4, 2.0).unwrap()
}

/// S0 = 1, K = 1.5, T = 1.2, r = 0.02, q = 0.05.
pub fn table4_market() -> MarketSpec {
    MarketSpec::new(1.0, 1.5, 1.2, 0.02, 0.05).unwrap()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// One named check: (name, passed, detail).
pub type Check = (String, bool, String);

fn check(name: &str, err: f64, tol: f64) -> Check {
    (name.to_string(), err <= tol, format!("err {err:.2e} (tol {tol:.0e})"))
}

/// Every listed special-function identity and fixture, as named checks.
pub fn specfun_checks() -> Vec<Check> {
    use tsp::specfun::*;
    let mut out = Vec::new();

    let g = log_gamma_signed(1.0).unwrap();
    out.push(check("log_gamma(1) = (0, +)", g.log_abs.abs() + (g.sign - 1).abs() as f64, 0.0));
    let g = log_gamma_signed(0.5).unwrap();
    out.push(check("log_gamma(1/2) = ln sqrt(pi)", (g.log_abs - 0.5 * PI.ln()).abs(), 1e-15));
    let g = log_gamma_signed(-0.5).unwrap();
    out.push(check("log_gamma(-1/2) fixture", (g.log_abs - LOG_GAMMA_M05).abs() + (g.sign + 1).abs() as f64, 1e-14));
    out.push(check("recip_gamma(-1.3) fixture", rel_err(recip_gamma(-1.3), RGAMMA_M13), 1e-14));
    out.push(check("lower_inc_gamma(-0.7, 1.5) fixture", rel_err(lower_inc_gamma(-0.7, 1.5).unwrap(), LOWER_M07_15), 1e-13));
    out.push(check("upper_inc_gamma(0, 1) = E1(1)", rel_err(upper_inc_gamma(0.0, 1.0).unwrap(), E1_AT_1), 1e-14));
    out.push(check("upper_inc_gamma(-0.4, 0.8) fixture", rel_err(upper_inc_gamma(-0.4, 0.8).unwrap(), UPPER_M04_08), 1e-13));
    out.push(check("pochhammer(-0.3, 3) = -0.357", (pochhammer(-0.3, 3) + 0.357).abs(), 1e-15));
    out.push(check(
        "gauss_2f1(2.4, 1, 2.2, 0.55) fixture",
        rel_err(gauss_2f1(2.4, 1.0, 2.2, 0.55).unwrap(), HYP2F1_24_1_22_055),
        1e-13,
    ));

    let mut worst: f64 = 0.0;
    for s in [0.3, 1.7, 4.2, 9.9] {
        for x in [0.1, 1.0, 5.0, 20.0] {
            let g = gamma(s).unwrap();
            let e = (lower_inc_gamma(s, x).unwrap() + upper_inc_gamma(s, x).unwrap() - g).abs() / g;
            worst = worst.max(e);
        }
    }
    out.push(check("lower + upper = gamma", worst, 1e-12));

    let mut worst: f64 = 0.0;
    for s in [-0.7, -0.2, 0.4, 2.1] {
        for x in [0.5, 2.0, 8.0] {
            let lhs = lower_inc_gamma(s + 1.0, x).unwrap();
            let rhs = s * lower_inc_gamma(s, x).unwrap() - x.powf(s) * (-x).exp();
            worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
        }
    }
    out.push(check("lower_inc_gamma recurrence", worst, 1e-10));

    let mut worst: f64 = 0.0;
    let mut fact = 1.0;
    for n in 1..=12u32 {
        if n > 1 {
            fact *= (n - 1) as f64;
        }
        worst = worst.max((recip_gamma(n as f64) * fact - 1.0).abs());
    }
    out.push(check("recip_gamma(n) (n-1)! = 1", worst, 4.0 * f64::EPSILON));
    let zeros = (0..=10).all(|m| recip_gamma(-(m as f64)) == 0.0);
    out.push(("recip_gamma(-m) = 0 exactly".into(), zeros, format!("{zeros}")));

    let mut exact = true;
    for z in [-2.5, -0.3, 0.7, 3.25] {
        for n in 0..15u32 {
            exact &= pochhammer(z, n + 1) == pochhammer(z, n) * (z + n as f64);
        }
    }
    out.push(("pochhammer step exact".into(), exact, format!("{exact}")));

    // fixed 20-point pseudo-random grid with |z| <= 0.6
    let mut state: u64 = 0x2545_f491_4f6c_dd1d;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let a = -2.0 + 5.0 * next();
        let b = -2.0 + 5.0 * next();
        let c = 0.3 + 4.0 * next();
        let z = -0.6 + 1.2 * next();
        let lhs = gauss_2f1(a, b, c, z).unwrap();
        let rhs = (1.0 - z).powf(c - a - b) * gauss_2f1(c - a, c - b, c, z).unwrap();
        worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1e-300));
    }
    out.push(check("gauss_2f1 Euler identity", worst, 1e-10));
    out
}
