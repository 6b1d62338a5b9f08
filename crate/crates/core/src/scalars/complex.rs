use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use super::Real;
use crate::error::{Error, Result};

/// Complex number over a [`Real`] component type.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Complex<R> {
    pub re: R,
    pub im: R,
}

pub type C64 = Complex<f64>;

impl<R: Real> Complex<R> {
    pub fn new(re: R, im: R) -> Self {
        Complex { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Complex { re: R::from_f64(re), im: R::from_f64(im) }
    }

    pub fn from_real(re: R) -> Self {
        Complex { re, im: R::zero() }
    }

    pub fn zero() -> Self {
        Complex { re: R::zero(), im: R::zero() }
    }

    pub fn one() -> Self {
        Complex { re: R::one(), im: R::zero() }
    }

    pub fn i() -> Self {
        Complex { re: R::zero(), im: R::one() }
    }

    pub fn from_polar(r: R, theta: R) -> Self {
        let (s, c) = theta.sin_cos();
        Complex { re: r * c, im: r * s }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(self) -> Self {
        Complex { re: self.re, im: -self.im }
    }

    pub fn norm_sqr(self) -> R {
        self.re * self.re + self.im * self.im
    }

    /// Modulus, scaled so intermediate squares cannot overflow.
    pub fn abs(self) -> R {
        let a = self.re.abs();
        let b = self.im.abs();
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big.is_zero() {
            return R::zero();
        }
        let q = small / big;
        big * (R::one() + q * q).sqrt()
    }

    pub fn arg(self) -> R {
        self.im.atan2(self.re)
    }

    pub fn scale(self, s: R) -> Self {
        Complex { re: self.re * s, im: self.im * s }
    }

    /// Division by Smith's formula.
    pub fn checked_div(self, b: Self) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(smith_div(self, b))
    }

    pub fn inv(self) -> Self {
        smith_div(Self::one(), self)
    }

    pub fn powi(self, n: i64) -> Self {
        let mut base = if n < 0 { self.inv() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// Principal square root.
    pub fn sqrt(self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let m = self.abs();
        let half = R::from_f64(0.5);
        let re = ((m + self.re.abs()) * half).sqrt();
        if self.re >= R::zero() {
            Complex { re, im: self.im / (re + re) }
        } else {
            let im = if self.im < R::zero() { -re } else { re };
            Complex { re: self.im.abs() / (re + re), im }
        }
    }

    /// Largest component magnitude, a cheap norm for tolerances.
    pub fn max_abs(self) -> R {
        self.re.abs().max(self.im.abs())
    }

    pub fn to_c64(self) -> C64 {
        Complex { re: self.re.to_f64(), im: self.im.to_f64() }
    }

    pub fn cast<S: Real>(self) -> Complex<S> {
        Complex { re: S::from_f64(self.re.to_f64()), im: S::from_f64(self.im.to_f64()) }
    }
}

fn smith_div<R: Real>(a: Complex<R>, b: Complex<R>) -> Complex<R> {
    if b.re.abs() >= b.im.abs() {
        let r = b.im / b.re;
        let d = b.re + b.im * r;
        Complex { re: (a.re + a.im * r) / d, im: (a.im - a.re * r) / d }
    } else {
        let r = b.re / b.im;
        let d = b.re * r + b.im;
        Complex { re: (a.re * r + a.im) / d, im: (a.im * r - a.re) / d }
    }
}

impl<R: Real> Neg for Complex<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Complex { re: -self.re, im: -self.im }
    }
}

impl<R: Real> Add for Complex<R> {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        Complex { re: self.re + b.re, im: self.im + b.im }
    }
}

impl<R: Real> Sub for Complex<R> {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        Complex { re: self.re - b.re, im: self.im - b.im }
    }
}

impl<R: Real> Mul for Complex<R> {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        Complex {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

impl<R: Real> Mul<R> for Complex<R> {
    type Output = Self;
    fn mul(self, s: R) -> Self {
        self.scale(s)
    }
}

impl<R: Real> Div for Complex<R> {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        smith_div(self, b)
    }
}

impl<R: Real> Div<R> for Complex<R> {
    type Output = Self;
    fn div(self, s: R) -> Self {
        Complex { re: self.re / s, im: self.im / s }
    }
}

impl<R: Real> AddAssign for Complex<R> {
    fn add_assign(&mut self, b: Self) {
        *self = *self + b;
    }
}

impl<R: Real> SubAssign for Complex<R> {
    fn sub_assign(&mut self, b: Self) {
        *self = *self - b;
    }
}

impl<R: Real> MulAssign for Complex<R> {
    fn mul_assign(&mut self, b: Self) {
        *self = *self * b;
    }
}

impl<R: Real> DivAssign for Complex<R> {
    fn div_assign(&mut self, b: Self) {
        *self = *self / b;
    }
}

impl<R: Real> Sum for Complex<R> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<R: Real> fmt::Display for Complex<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < R::zero() {
            write!(f, "{} - {}i", self.re, -self.im)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}
