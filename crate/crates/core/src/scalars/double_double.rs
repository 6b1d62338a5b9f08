//! Double-double real arithmetic.
//!
//! A value is the unevaluated sum `hi + lo` of two native floats with
//! `|lo| <= ulp(hi) / 2`, giving roughly 32 significant decimal digits. The
//! kernels are the classic error-free transformations (`two_sum`,
//! `two_prod` via fused multiply-add) followed by renormalization.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use super::Real;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
pub fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

const PI: DoubleDouble = DoubleDouble::new(std::f64::consts::PI, 1.2246467991473532e-16);
const HALF_PI: DoubleDouble = DoubleDouble::new(std::f64::consts::FRAC_PI_2, 6.123233995736766e-17);
const LN2: DoubleDouble = DoubleDouble::new(std::f64::consts::LN_2, 2.3190468138462996e-17);

// Terms below this are invisible at double-double precision.
const SERIES_CUTOFF: f64 = 1e-34;

impl DoubleDouble {
    pub const fn new(hi: f64, lo: f64) -> Self {
        DoubleDouble { hi, lo }
    }

    pub const fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    /// Normalizing constructor for an arbitrary pair.
    pub fn from_pair(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        DoubleDouble { hi, lo }
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn sqr(self) -> Self {
        let (p1, mut p2) = two_prod(self.hi, self.hi);
        p2 += 2.0 * self.hi * self.lo;
        p2 += self.lo * self.lo;
        let (hi, lo) = quick_two_sum(p1, p2);
        DoubleDouble { hi, lo }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p1, mut p2) = two_prod(self.hi, b);
        p2 += self.lo * b;
        let (hi, lo) = quick_two_sum(p1, p2);
        DoubleDouble { hi, lo }
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                DoubleDouble::default()
            } else {
                DoubleDouble::from_f64(f64::NAN)
            };
        }
        let y = DoubleDouble::from_f64(self.hi.sqrt());
        y + (self - y.sqr()) / y.mul_f64(2.0)
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.7 {
            return DoubleDouble::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return DoubleDouble::default();
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return DoubleDouble::from_f64(1.0);
        }
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2.mul_f64(k)).mul_f64(1.0 / 512.0);
        // exp(r) - 1 by Taylor; |r| < 7e-4
        let mut term = r;
        let mut sum = r;
        let mut i = 2.0;
        while term.hi.abs() > SERIES_CUTOFF {
            term = term * r / DoubleDouble::from_f64(i);
            sum += term;
            i += 1.0;
        }
        // (1 + s)^2 - 1 = 2s + s^2, nine times undoes the 1/512 scaling
        for _ in 0..9 {
            sum = sum.mul_f64(2.0) + sum.sqr();
        }
        let e = sum + DoubleDouble::from_f64(1.0);
        let scale = 2f64.powi(k as i32);
        DoubleDouble { hi: e.hi * scale, lo: e.lo * scale }
    }

    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return DoubleDouble::from_f64(if self.hi == 0.0 { f64::NEG_INFINITY } else { f64::NAN });
        }
        let one = DoubleDouble::from_f64(1.0);
        let mut x = DoubleDouble::from_f64(self.hi.ln());
        for _ in 0..2 {
            x = x + self * (-x).exp() - one;
        }
        x
    }

    fn sin_cos_reduced(r: Self) -> (Self, Self) {
        let r2 = r.sqr();
        let mut term = r;
        let mut sin = r;
        let mut i = 2.0;
        while term.hi.abs() > SERIES_CUTOFF {
            term = -(term * r2) / DoubleDouble::from_f64(i * (i + 1.0));
            sin += term;
            i += 2.0;
        }
        let mut term = DoubleDouble::from_f64(1.0);
        let mut cos = term;
        let mut i = 1.0;
        while term.hi.abs() > SERIES_CUTOFF {
            term = -(term * r2) / DoubleDouble::from_f64(i * (i + 1.0));
            cos += term;
            i += 2.0;
        }
        (sin, cos)
    }

    pub fn sin_cos(self) -> (Self, Self) {
        if self.hi == 0.0 {
            return (DoubleDouble::default(), DoubleDouble::from_f64(1.0));
        }
        let k = (self.hi / HALF_PI.hi).round();
        let r = self - HALF_PI.mul_f64(k);
        let (s, c) = Self::sin_cos_reduced(r);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn atan2(y: Self, x: Self) -> Self {
        if x.hi == 0.0 && y.hi == 0.0 {
            return DoubleDouble::default();
        }
        let mut z = DoubleDouble::from_f64(y.hi.atan2(x.hi));
        let r = (x.sqr() + y.sqr()).sqrt();
        let xx = x / r;
        let yy = y / r;
        for _ in 0..2 {
            let (s, c) = z.sin_cos();
            if xx.hi.abs() > yy.hi.abs() {
                z += (yy - s) / c;
            } else {
                z -= (xx - c) / s;
            }
        }
        z
    }

    /// Scientific-notation rendering with `digits` significant digits.
    pub fn to_sci_string(self, digits: usize) -> String {
        if self.hi == 0.0 {
            return "0".to_string();
        }
        if !self.hi.is_finite() {
            return format!("{}", self.hi);
        }
        let neg = self.hi < 0.0;
        let a = self.abs();
        let mut e = a.hi.log10().floor() as i32;
        let ten = DoubleDouble::from_f64(10.0);
        let mut x = a / ten.powi(e);
        if x.hi >= 10.0 {
            x /= ten;
            e += 1;
        } else if x.hi < 1.0 {
            x *= ten;
            e -= 1;
        }
        let mut out = String::with_capacity(digits + 8);
        if neg {
            out.push('-');
        }
        for i in 0..digits {
            let mut d = x.hi.floor();
            x -= DoubleDouble::from_f64(d);
            if x.hi < 0.0 {
                d -= 1.0;
                x += DoubleDouble::from_f64(1.0);
            }
            let d = d.clamp(0.0, 9.0) as u8;
            out.push((b'0' + d) as char);
            if i == 0 {
                out.push('.');
            }
            x *= ten;
        }
        out.push_str(&format!("e{e}"));
        out
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        DoubleDouble::from_f64(x)
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        DoubleDouble { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let (p1, mut p2) = two_prod(self.hi, b.hi);
        p2 += self.hi * b.lo + self.lo * b.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    #[inline]
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return DoubleDouble::from_f64(q1);
        }
        let mut r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        r -= b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        DoubleDouble { hi: q1, lo: q2 } + DoubleDouble::from_f64(q3)
    }
}

macro_rules! assign_op {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for DoubleDouble {
            #[inline]
            fn $m(&mut self, rhs: Self) {
                *self = *self $op rhs;
            }
        }
    };
}
assign_op!(AddAssign, add_assign, +);
assign_op!(SubAssign, sub_assign, -);
assign_op!(MulAssign, mul_assign, *);
assign_op!(DivAssign, div_assign, /);

impl Sum for DoubleDouble {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(DoubleDouble::default(), |a, b| a + b)
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci_string(32))
    }
}

impl Real for DoubleDouble {
    const EPSILON: f64 = 4.93038065763132e-32; // 2^-104
    const NEWTON_TOL: f64 = 1e-26;
    const NAME: &'static str = "extended";

    fn zero() -> Self {
        DoubleDouble::default()
    }
    fn one() -> Self {
        DoubleDouble::from_f64(1.0)
    }
    fn from_f64(x: f64) -> Self {
        DoubleDouble::from_f64(x)
    }
    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
    fn pi() -> Self {
        PI
    }
    fn abs(self) -> Self {
        DoubleDouble::abs(self)
    }
    fn sqrt(self) -> Self {
        DoubleDouble::sqrt(self)
    }
    fn exp(self) -> Self {
        DoubleDouble::exp(self)
    }
    fn ln(self) -> Self {
        DoubleDouble::ln(self)
    }
    fn sin_cos(self) -> (Self, Self) {
        DoubleDouble::sin_cos(self)
    }
    fn atan2(self, x: Self) -> Self {
        DoubleDouble::atan2(self, x)
    }
    fn ldexp(self, k: i32) -> Self {
        let s = 2f64.powi(k);
        DoubleDouble { hi: self.hi * s, lo: self.lo * s }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(x: f64) -> DoubleDouble {
        DoubleDouble::from_f64(x)
    }

    #[test]
    fn integer_add() {
        assert_eq!(dd(1.0) + dd(1.0), dd(2.0));
    }

    #[test]
    fn tiny_addend_is_kept_exactly() {
        let eps = 2f64.powi(-53);
        let r = (dd(1.0) + dd(eps)) - dd(1.0);
        assert_eq!(r.to_f64(), eps);
    }

    #[test]
    fn third_times_three() {
        let r = dd(1.0) / dd(3.0) * dd(3.0);
        assert!((r - dd(1.0)).abs().hi < 1e-30);
    }

    #[test]
    fn native_pairs_agree_with_f64() {
        let xs = [0.1, -3.75, 1e-300, 7.0e12, 0.3333, -2.5e-8];
        for &a in &xs {
            for &b in &xs {
                assert_eq!((dd(a) + dd(b)).hi, a + b);
                assert_eq!((dd(a) - dd(b)).hi, a - b);
                assert_eq!((dd(a) * dd(b)).hi, a * b);
            }
        }
    }

    #[test]
    fn transcendental_identities() {
        let x = DoubleDouble::new(0.7, 1.3e-17);
        let (s, c) = x.sin_cos();
        assert!((s.sqr() + c.sqr() - dd(1.0)).abs().hi < 1e-31);
        assert!((x.exp().ln() - x).abs().hi < 1e-31);
        assert!((DoubleDouble::atan2(s, c) - x).abs().hi < 1e-31);
        let two = dd(2.0);
        assert!((two.sqrt().sqr() - two).abs().hi < 1e-31);
        let (s, c) = (PI.mul_f64(0.5)).sin_cos();
        assert!((s - dd(1.0)).abs().hi < 1e-31 && c.abs().hi < 1e-31);
    }

    #[test]
    fn decimal_rendering() {
        let third = dd(1.0) / dd(3.0);
        assert!(third.to_sci_string(30).starts_with("3.33333333333333333333333333333"));
        assert_eq!(dd(-125.0).to_sci_string(4), "-1.250e2");
    }
}
