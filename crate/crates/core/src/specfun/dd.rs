//! Double-double arithmetic.
//!
//! A [`Dd`] is the unevaluated sum `hi + lo` of two `f64` values with
//! `|lo| <= ulp(hi) / 2`, carrying roughly 32 significant decimal digits.
//! The two-sided series alternate in sign with partial terms many orders of
//! magnitude above the final value, so they are assembled in this type.
//!
//! Elementary functions (`exp`, `ln`, `powf`, `sin_pi`) and the gamma
//! family are accurate to a few units in the last place of the low word
//! over the argument ranges the series use.

use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd { hi: std::f64::consts::PI, lo: 1.2246467991473532e-16 };
    pub const LN2: Dd = Dd { hi: std::f64::consts::LN_2, lo: 2.3190468138462996e-17 };
    pub const FRAC_1_PI: Dd = Dd { hi: std::f64::consts::FRAC_1_PI, lo: -1.9678676675182486e-17 };
    const HALF_LN_2PI: Dd = Dd { hi: 0.9189385332046728, lo: -3.8782941580672414e-17 };

    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    #[inline]
    fn renorm(s: f64, e: f64) -> Self {
        if !s.is_finite() {
            return Dd { hi: s, lo: 0.0 };
        }
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    /// Exact product of two doubles.
    #[inline]
    pub fn mul_f64_exact(a: f64, b: f64) -> Self {
        let (p, e) = two_prod(a, b);
        Dd { hi: p, lo: e }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn signum(self) -> f64 {
        if self.hi > 0.0 {
            1.0
        } else if self.hi < 0.0 {
            -1.0
        } else {
            0.0
        }
    }

    /// Nearest integer (ties away from zero), as a double-double.
    pub fn round(self) -> Self {
        let hi = self.hi.round();
        if hi == self.hi {
            let lo = self.lo.round();
            Dd::renorm(hi, lo)
        } else if (hi - self.hi).abs() == 0.5 && self.lo != 0.0 {
            // exact half in the high word: the low word decides
            let hi = if (self.lo > 0.0) == (self.hi > 0.0) { hi } else { hi - self.hi.signum() };
            Dd { hi, lo: 0.0 }
        } else {
            Dd { hi, lo: 0.0 }
        }
    }

    #[inline]
    pub fn mul_pow2(self, k: i32) -> Self {
        Dd { hi: libm::scalbn(self.hi, k), lo: libm::scalbn(self.lo, k) }
    }

    pub fn recip(self) -> Self {
        Dd::ONE / self
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn powi(self, n: i64) -> Self {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = self;
        let mut m = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while m > 0 {
            if m & 1 == 1 {
                acc *= base;
            }
            m >>= 1;
            if m > 0 {
                base = base.sqr();
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.79 {
            return Dd { hi: f64::INFINITY, lo: 0.0 };
        }
        if self.hi < -745.2 {
            return Dd::ZERO;
        }
        if self.hi == 0.0 {
            return Dd::ONE;
        }
        let k = (self.hi / Dd::LN2.hi).round();
        let r = (self - Dd::LN2 * k).mul_pow2(-10);
        // expm1 on |r| < 3.4e-4
        let mut s = r;
        let mut term = r;
        for i in 2..=14 {
            term = term * r / i as f64;
            s += term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            s = s * (s + 2.0);
        }
        (s + 1.0).mul_pow2(k as i32)
    }

    /// Natural logarithm; NaN for non-positive input.
    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return Dd { hi: f64::NAN, lo: 0.0 };
        }
        if self.hi == 1.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        let y = Dd::from(self.hi.ln());
        y + self * (-y).exp() - 1.0
    }

    /// `self^e` for positive `self`.
    pub fn powf(self, e: Dd) -> Self {
        if e.is_zero() {
            return Dd::ONE;
        }
        (e * self.ln()).exp()
    }

    /// `sin(pi * self)`, exact zero at integers.
    pub fn sin_pi(self) -> Self {
        let n = self.round();
        let r = self - n;
        if r.is_zero() {
            return Dd::ZERO;
        }
        let odd = libm::fmod(n.hi.abs(), 2.0) == 1.0;
        let a = r.abs();
        let v = if a.hi <= 0.25 {
            sin_taylor(Dd::PI * a)
        } else {
            cos_taylor(Dd::PI * (Dd::from(0.5) - a))
        };
        let v = if r.hi < 0.0 { -v } else { v };
        if odd {
            -v
        } else {
            v
        }
    }

    /// Distance to the nearest non-positive integer, or infinity when `self > 0.5`.
    pub fn pole_distance(self) -> f64 {
        if self.hi > 0.5 {
            return f64::INFINITY;
        }
        (self - self.round()).abs().to_f64()
    }

    pub fn is_nonpositive_integer(self) -> bool {
        self.hi <= 0.0 && self.round() == self
    }
}

fn sin_taylor(t: Dd) -> Dd {
    let t2 = t.sqr();
    let mut term = t;
    let mut s = t;
    let mut i = 1.0;
    loop {
        term = -(term * t2) / ((i + 1.0) * (i + 2.0));
        s += term;
        i += 2.0;
        if term.hi.abs() < 1e-35 * s.hi.abs() || i > 60.0 {
            return s;
        }
    }
}

fn cos_taylor(t: Dd) -> Dd {
    let t2 = t.sqr();
    let mut term = Dd::ONE;
    let mut s = Dd::ONE;
    let mut i = 0.0;
    loop {
        term = -(term * t2) / ((i + 1.0) * (i + 2.0));
        s += term;
        i += 2.0;
        if term.hi.abs() < 1e-35 || i > 60.0 {
            return s;
        }
    }
}

impl From<f64> for Dd {
    #[inline]
    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }
}

impl From<i64> for Dd {
    fn from(n: i64) -> Self {
        let hi = n as f64;
        let lo = (n - hi as i64) as f64;
        Dd::renorm(hi, lo)
    }
}

impl From<usize> for Dd {
    fn from(n: usize) -> Self {
        Dd::from(n as i64)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        if !s1.is_finite() {
            return Dd::from(s1);
        }
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        Dd::renorm(s1, s2 + t2)
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, b);
        if !s1.is_finite() {
            return Dd::from(s1);
        }
        Dd::renorm(s1, s2 + self.lo)
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: f64) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        if !p.is_finite() {
            return Dd::from(p);
        }
        Dd::renorm(p, e + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        if !p.is_finite() {
            return Dd::from(p);
        }
        Dd::renorm(p, e + self.lo * b)
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() || q1 == 0.0 {
            return Dd::from(q1);
        }
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (h, l) = quick_two_sum(q1, q2);
        Dd { hi: h, lo: l } + q3
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: f64) -> Dd {
        self / Dd::from(b)
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for Dd {
            #[inline]
            fn $m(&mut self, b: Dd) { *self = *self $op b; }
        }
        impl $tr<f64> for Dd {
            #[inline]
            fn $m(&mut self, b: f64) { *self = *self $op b; }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /);

// B_{2k} / (2k (2k - 1)) as exact numerator/denominator pairs.
const STIRLING: [(f64, f64); 15] = [
    (1.0, 12.0),
    (-1.0, 360.0),
    (1.0, 1260.0),
    (-1.0, 1680.0),
    (1.0, 1188.0),
    (-691.0, 360360.0),
    (1.0, 156.0),
    (-3617.0, 122400.0),
    (43867.0, 244188.0),
    (-174611.0, 125400.0),
    (854513.0, 63756.0),
    (-236364091.0, 1506960.0),
    (8553103.0, 3900.0),
    (-23749461029.0, 657720.0),
    (8615841276005.0, 12460140.0),
];

const STIRLING_SHIFT: f64 = 30.0;

/// `ln Γ(z)` for `z >= 30` by the Stirling series.
fn stirling(z: Dd) -> Dd {
    let mut s = (z - 0.5) * z.ln() - z + Dd::HALF_LN_2PI;
    let zr = z.recip();
    let zr2 = zr.sqr();
    let mut p = zr;
    for &(num, den) in STIRLING.iter() {
        s += Dd::from(num) / den * p;
        p *= zr2;
    }
    s
}

/// Shift `x` up past the Stirling threshold, returning `(z, x (x+1) ... (z-1))`.
fn shift_up(x: Dd) -> (Dd, Dd) {
    let mut z = x;
    let mut prod = Dd::ONE;
    while z.hi < STIRLING_SHIFT {
        prod *= z;
        z += 1.0;
    }
    (z, prod)
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma_pos(x: Dd) -> Dd {
    debug_assert!(x.hi > 0.0);
    let (z, prod) = shift_up(x);
    if prod == Dd::ONE {
        stirling(z)
    } else {
        stirling(z) - prod.ln()
    }
}

fn gamma_pos(x: Dd) -> Dd {
    let (z, prod) = shift_up(x);
    stirling(z).exp() / prod
}

fn recip_gamma_pos(x: Dd) -> Dd {
    let (z, prod) = shift_up(x);
    (-stirling(z)).exp() * prod
}

/// Γ(x). Errors within `pole_guard` of a non-positive integer.
pub fn gamma(x: Dd, pole_guard: f64) -> Result<Dd> {
    if x.pole_distance() < pole_guard {
        return Err(Error::PoleProximity(x.to_f64()));
    }
    if x.hi >= 0.5 {
        Ok(gamma_pos(x))
    } else {
        // reflection: Γ(x) Γ(1-x) = π / sin(πx)
        let one_minus = Dd::ONE - x;
        Ok(Dd::PI * recip_gamma_pos(one_minus) / x.sin_pi())
    }
}

/// 1/Γ(x), entire; exact zero at non-positive integers.
pub fn recip_gamma(x: Dd) -> Dd {
    if x.is_nonpositive_integer() {
        return Dd::ZERO;
    }
    if x.hi >= 0.5 {
        recip_gamma_pos(x)
    } else {
        x.sin_pi() * gamma_pos(Dd::ONE - x) * Dd::FRAC_1_PI
    }
}

/// `Σ_{j≥0} y^j / (s)_{j+1}`, so that `γ(s, y) = y^s e^{-y}` times the result.
///
/// Valid for every `s` away from the non-positive integers and `y >= 0`.
pub fn kummer_lower_sum(s: Dd, y: Dd) -> Result<Dd> {
    let mut term = s.recip();
    let mut sum = term;
    let mut j = 1usize;
    loop {
        term = term * y / (s + j as f64);
        sum += term;
        if term.hi.abs() <= 1e-34 * sum.hi.abs() && (j as f64) > y.hi - s.hi {
            return Ok(sum);
        }
        j += 1;
        if j > 20_000 {
            return Err(Error::ConvergenceFailure(format!(
                "lower incomplete gamma series at s = {}, y = {}",
                s.to_f64(),
                y.to_f64()
            )));
        }
    }
}

/// `e^y y^{-a} Γ(a, y)` by the Legendre continued fraction (modified Lentz).
///
/// Converges for every `a` and `y > 0`, quickly once `y` exceeds about 1.
pub fn upper_gamma_cf(a: Dd, y: Dd) -> Result<Dd> {
    let tiny = Dd::from(1e-300);
    let mut b = y + 1.0 - a;
    let mut c = tiny.recip();
    let mut d = b.recip();
    let mut h = d;
    for i in 1..20_000usize {
        let fi = i as f64;
        let an = -(Dd::from(fi) * (Dd::from(fi) - a));
        b += 2.0;
        d = an * d + b;
        if d.hi.abs() < tiny.hi {
            d = tiny;
        }
        c = b + an / c;
        if c.hi.abs() < tiny.hi {
            c = tiny;
        }
        d = d.recip();
        let del = d * c;
        h *= del;
        if (del - 1.0).abs().hi < 1e-32 {
            return Ok(h);
        }
    }
    Err(Error::ConvergenceFailure(format!(
        "upper incomplete gamma continued fraction at a = {}, y = {}",
        a.to_f64(),
        y.to_f64()
    )))
}
