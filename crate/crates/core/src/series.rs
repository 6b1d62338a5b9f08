//! Truncated power series and the closed-form reference series.

use crate::error::{Error, Result};
use crate::scalars::{Complex, Real};

/// Power series `c_0 + c_1 t + ... + c_N t^N` truncated at order `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<R> {
    coeffs: Vec<Complex<R>>,
}

impl<R: Real> TruncatedSeries<R> {
    /// Builds a series of order `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Complex<R>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("series needs at least one coefficient".into()));
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex::from_f64(c, 0.0)).collect())
    }

    /// A polynomial padded with zeros (or cut) to the given order.
    pub fn from_polynomial(poly: &[Complex<R>], order: usize) -> Self {
        let mut coeffs = vec![Complex::zero(); order + 1];
        for (c, p) in coeffs.iter_mut().zip(poly) {
            *c = *p;
        }
        TruncatedSeries { coeffs }
    }

    pub fn constant(c: Complex<R>, order: usize) -> Self {
        Self::from_polynomial(&[c], order)
    }

    /// `1 / (1 - t)` truncated: every coefficient one.
    pub fn geometric(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![Complex::one(); order + 1] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex<R>] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex<R> {
        self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<Complex<R>> {
        self.coeffs
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, t: Complex<R>) -> Complex<R> {
        self.coeffs.iter().rev().fold(Complex::zero(), |acc, &c| acc * t + c)
    }

    pub fn max_abs_coeff(&self) -> R {
        self.coeffs.iter().fold(R::zero(), |m, c| m.max(c.abs()))
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::InvalidArgument(format!(
                "series orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| a + b).collect();
        Ok(TruncatedSeries { coeffs })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let coeffs = (0..=n)
            .map(|k| (0..=k).map(|i| self.coeffs[i] * other.coeffs[k - i]).sum())
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    /// Multiplicative inverse via the triangular recurrence
    /// `b_k = -(sum_{i=1..k} a_i b_{k-i}) / a_0`.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        let mut b: Vec<Complex<R>> = Vec::with_capacity(n + 1);
        b.push(Complex::one() / a0);
        for k in 1..=n {
            let s: Complex<R> = (1..=k).map(|i| self.coeffs[i] * b[k - i]).sum();
            b.push(-(s / a0));
        }
        Ok(TruncatedSeries { coeffs: b })
    }

    /// Substitution `t = scale * s`: coefficient `n` is multiplied by `scale^n`.
    pub fn rescale(&self, scale: R) -> Self {
        let mut p = R::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                let d = c * p;
                p *= scale;
                d
            })
            .collect();
        TruncatedSeries { coeffs }
    }
}

/// Binomial series of `sqrt(1 - t)`: `c_{n+1} = c_n (2n - 1) / (2(n + 1))`.
pub fn sqrt_one_minus_t_reference<R: Real>(order: usize) -> TruncatedSeries<R> {
    sqrt_a_minus_t_reference(R::one(), order)
}

/// Series of `sqrt(a - t)` for `a > 0`; its singularity sits at `t = a`.
pub fn sqrt_a_minus_t_reference<R: Real>(a: R, order: usize) -> TruncatedSeries<R> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = a.sqrt();
    for n in 0..=order {
        coeffs.push(Complex::from_real(c));
        let nf = R::from_i64(n as i64);
        let two = R::from_f64(2.0);
        c = c * (two * nf - R::one()) / (two * (nf + R::one()) * a);
    }
    TruncatedSeries { coeffs }
}

/// Ratio `c_n / c_{n+1}`, or `None` where `c_{n+1}` vanishes.
pub type Ratio<R> = Option<Complex<R>>;

/// Ratios `c_n / c_{n+1}` for `n = 0..N-1`.
pub fn ratio_sequence<R: Real>(s: &TruncatedSeries<R>) -> Vec<Ratio<R>> {
    s.coeffs
        .windows(2)
        .map(|w| if w[1].is_zero() { None } else { Some(w[0] / w[1]) })
        .collect()
}
