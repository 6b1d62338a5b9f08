use serde::Serialize;

use super::richardson::{richardson, RichardsonTable};
use crate::error::{Error, Result};
use crate::scalars::{Complex, Real};
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RadarStatus {
    Converged,
    Inconclusive,
    CoefficientsVanish,
}

impl RadarStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RadarStatus::Converged => "Converged",
            RadarStatus::Inconclusive => "Inconclusive",
            RadarStatus::CoefficientsVanish => "CoefficientsVanish",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusEstimate<R> {
    /// Extrapolated limit of `c_n / c_{n+1}`.
    pub z: Complex<R>,
    /// `c_n / c_{n+1}` at the largest `n` used.
    pub raw_ratio: Complex<R>,
    pub n_used: usize,
    pub status: RadarStatus,
    pub table: Option<RichardsonTable<R>>,
}

/// A coefficient counts as zero when `|c_k| rho^k` falls below this many
/// epsilons of the largest `|c_j| rho^j`, with `rho` the estimated radius.
pub const VANISH_FACTOR: f64 = 1e3;

/// Ratios `c_n / c_{n+1}` at `n = 2, 4, ...` up to the largest power of two
/// not exceeding `order - 1`, extrapolated by [`richardson`].
pub fn fabry_estimate<R: Real>(series: &TruncatedSeries<R>) -> Result<RadiusEstimate<R>> {
    let order = series.order();
    if order < 4 {
        return Err(Error::InvalidArgument(format!("series order {order} is below 4")));
    }
    let c = series.coeffs();
    let top = 1usize << (usize::BITS - 1 - (order - 1).leading_zeros());
    let vanished = |n| RadiusEstimate {
        z: Complex::zero(),
        raw_ratio: Complex::zero(),
        n_used: n,
        status: RadarStatus::CoefficientsVanish,
        table: None,
    };

    let mut ratios = Vec::new();
    let mut n = 2;
    while n <= top {
        if c[n + 1].is_zero() || !c[n + 1].is_finite() {
            return Ok(vanished(n));
        }
        ratios.push(c[n] / c[n + 1]);
        n *= 2;
    }
    let table = richardson(&ratios)?;
    if let Some(n) = first_vanishing(c, top, table.best().abs().to_f64()) {
        return Ok(vanished(n));
    }
    let steps = table.diagonal_steps();
    let status = match steps.as_slice() {
        [.., prev, last] if *last < *prev || *last == 0.0 => RadarStatus::Converged,
        [only] if *only == 0.0 => RadarStatus::Converged,
        _ => RadarStatus::Inconclusive,
    };
    let z = table.best();
    let status = if status == RadarStatus::Converged && (z.is_zero() || !z.is_finite()) {
        RadarStatus::Inconclusive
    } else {
        status
    };
    Ok(RadiusEstimate { z, raw_ratio: *ratios.last().unwrap(), n_used: top, status, table: Some(table) })
}

/// First `n` whose `c_{n+1}` is noise at radius `rho`, compared in logs so
/// that `rho^k` cannot overflow.
fn first_vanishing<R: Real>(c: &[Complex<R>], top: usize, rho: f64) -> Option<usize> {
    if !(rho.is_finite() && rho > 0.0) {
        return Some(2);
    }
    let log_d = |k: usize| c[k].abs().to_f64().ln() + k as f64 * rho.ln();
    let peak = (0..=top + 1).map(log_d).fold(f64::NEG_INFINITY, f64::max);
    let floor = peak + (VANISH_FACTOR * R::EPSILON).ln();
    let mut n = 2;
    while n <= top {
        if !(log_d(n + 1) >= floor) {
            return Some(n);
        }
        n *= 2;
    }
    None
}

/// `d_n = c_n |z|^n`: the series in `s = t / |z|`, with radius one when
/// `|z|` is the radius.
pub fn scale_to_unit<R: Real>(series: &TruncatedSeries<R>, z: Complex<R>) -> Result<TruncatedSeries<R>> {
    if z.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(series.rescale(z.abs()))
}

/// Index of the coordinate whose top coefficient is largest in modulus.
pub fn select_coordinate<R: Real>(series: &[TruncatedSeries<R>]) -> usize {
    series
        .iter()
        .enumerate()
        .map(|(i, s)| (i, s.coeff(s.order()).abs().to_f64()))
        .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best })
        .0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::C64;
    use crate::series::{sqrt_a_minus_t_reference, sqrt_one_minus_t_reference};

    #[test]
    fn geometric_is_exact() {
        let est = fabry_estimate(&TruncatedSeries::<f64>::geometric(64)).unwrap();
        assert_eq!(est.status, RadarStatus::Converged);
        assert_eq!(est.z, C64::one());
        assert!(est.table.unwrap().table.iter().flatten().all(|&z| z == C64::one()));
    }

    #[test]
    fn sqrt_reference() {
        let est = fabry_estimate(&sqrt_one_minus_t_reference::<f64>(65)).unwrap();
        assert_eq!(est.status, RadarStatus::Converged);
        assert_eq!(est.n_used, 64);
        assert!((est.z - C64::one()).abs() < 4e-8);
    }

    #[test]
    fn cusp_vanishes() {
        let one = C64::one();
        let s = TruncatedSeries::from_polynomial(&[one, -one.scale(2.0), one], 64);
        assert_eq!(fabry_estimate(&s).unwrap().status, RadarStatus::CoefficientsVanish);
    }

    #[test]
    fn short_series_rejected() {
        assert!(fabry_estimate(&TruncatedSeries::<f64>::geometric(3)).is_err());
    }

    #[test]
    fn rescaling() {
        let unit = sqrt_one_minus_t_reference::<f64>(33);
        let two = sqrt_a_minus_t_reference::<f64>(2.0, 33);
        let scaled = scale_to_unit(&two, C64::from_f64(2.0, 0.0)).unwrap();
        let ru = crate::series::ratio_sequence(&unit);
        let rs = crate::series::ratio_sequence(&scaled);
        for (a, b) in ru.iter().zip(&rs) {
            let (a, b) = (a.unwrap(), b.unwrap());
            assert!((a - b).abs() < 1e-13 * a.abs());
        }
        assert_eq!(scale_to_unit(&unit, C64::one()).unwrap(), unit);
        assert!(scale_to_unit(&unit, C64::zero()).is_err());

        let half = sqrt_a_minus_t_reference::<f64>(0.5, 8);
        let r4 = crate::series::ratio_sequence(&half)[4].unwrap();
        assert!((r4.re - 0.5 * 1.42857142857143).abs() < 1e-13);
    }
}
