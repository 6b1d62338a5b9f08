//! Taylor coefficients of a solution path from samples on a circle.
//!
//! With `omega = exp(2 pi i / n)` and samples `x(t0 + h omega^j)`, the
//! inverse transform returns `g_k = c_k h^k` up to aliasing by `c_{k+n}`.

use crate::error::{Error, Result};
use crate::polysys::Homotopy;
use crate::scalars::{root_of_unity, Complex, Real};
use crate::series::TruncatedSeries;
use crate::tracker::{track_along, PathState, TrackerConfig};

/// Samples further apart than this after a full loop mean a branch switch.
pub const MONODROMY_TOL: f64 = 1e-6;

fn check_len(n: usize) -> Result<()> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("transform length {n} is not a power of two")));
    }
    Ok(())
}

/// In-place iterative radix-2 transform computing `sum_k a_k omega^{sign j k}`.
fn fft_in_place<R: Real>(a: &mut [Complex<R>], sign: i64) -> Result<()> {
    let n = a.len();
    check_len(n)?;
    let bits = n.trailing_zeros();
    if bits == 0 {
        return Ok(());
    }
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if i < j {
            a.swap(i, j);
        }
    }
    let twiddles = (0..n / 2)
        .map(|k| root_of_unity::<R>(n, sign * k as i64))
        .collect::<Result<Vec<_>>>()?;
    let mut len = 2;
    while len <= n {
        let stride = n / len;
        for chunk in a.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(len / 2);
            for k in 0..len / 2 {
                let w = twiddles[k * stride] * hi[k];
                hi[k] = lo[k] - w;
                lo[k] += w;
            }
        }
        len *= 2;
    }
    Ok(())
}

/// `values_j = sum_k g_k omega^{j k}`.
pub fn forward_dft<R: Real>(coeffs: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
    let mut a = coeffs.to_vec();
    fft_in_place(&mut a, 1)?;
    Ok(a)
}

/// Inverse of [`forward_dft`]: `g_k = (1/n) sum_j values_j omega^{-j k}`.
pub fn inverse_dft<R: Real>(values: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
    let mut a = values.to_vec();
    fft_in_place(&mut a, -1)?;
    let inv_n = R::one() / R::from_i64(a.len() as i64);
    Ok(a.into_iter().map(|z| z.scale(inv_n)).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircleSamples<R> {
    pub t0: Complex<R>,
    pub h: f64,
    pub n: usize,
    /// `values[i][k]` is coordinate `i` at `t0 + h omega^k`.
    pub values: Vec<Vec<Complex<R>>>,
    pub max_residual: f64,
}

/// Corrected path points at `t0 + step * omega^k`, `k = 0..n`.
///
/// The path is continued out along the radius to `k = 0` and then around
/// the circle arc by arc, so every sample stays on the branch of `base`.
/// The loop is closed by tracking back to `k = 0` and comparing.
pub fn sample_circle<R: Real>(
    h: &Homotopy<R>,
    base: &PathState<R>,
    step: f64,
    n: usize,
    cfg: &TrackerConfig,
) -> Result<CircleSamples<R>> {
    check_len(n)?;
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::InvalidArgument(format!("circle radius {step} must be positive")));
    }
    let t0 = base.t;
    let hr = R::from_f64(step);
    let node = |k: usize| -> Result<Complex<R>> { Ok(t0 + root_of_unity::<R>(n, k as i64)?.scale(hr)) };

    let first = node(0)?;
    let mut state = track_along(
        h,
        base,
        step,
        |s| if s >= step { first } else { t0 + Complex::from_real(R::from_f64(s)) },
        cfg,
    )?;
    let dim = base.x.len();
    let mut values = vec![Vec::with_capacity(n); dim];
    let mut max_residual = state.residual;
    let arc = 2.0 * std::f64::consts::PI * step / n as f64;
    for k in 0..n {
        for (i, v) in values.iter_mut().enumerate() {
            v.push(state.x[i]);
        }
        let from = root_of_unity::<R>(n, k as i64)?;
        let end = node((k + 1) % n)?;
        let path = |s: f64| {
            if s >= arc {
                end
            } else {
                let (sin, cos) = R::from_f64(s / step).sin_cos();
                t0 + (from * Complex::new(cos, sin)).scale(hr)
            }
        };
        state = track_along(h, &state, arc, path, cfg)?;
        max_residual = max_residual.max(state.residual);
    }
    let mismatch = (0..dim).map(|i| (state.x[i] - values[i][0]).abs().to_f64()).fold(0.0, f64::max);
    if mismatch > MONODROMY_TOL {
        return Err(Error::BranchJump { mismatch });
    }
    Ok(CircleSamples { t0, h: step, n, values, max_residual })
}

/// `g_k = c_k h^k` for every coordinate.
pub fn scaled_coefficients<R: Real>(samples: &CircleSamples<R>) -> Result<Vec<Vec<Complex<R>>>> {
    samples.values.iter().map(|v| inverse_dft(v)).collect()
}

/// Taylor series of each coordinate about `base.t`, of order `n - 1`.
///
/// The constant term is the corrected base point itself; higher terms are
/// `g_k / step^k`.
pub fn taylor_coefficients<R: Real>(
    h: &Homotopy<R>,
    base: &PathState<R>,
    step: f64,
    n: usize,
    cfg: &TrackerConfig,
) -> Result<Vec<TruncatedSeries<R>>> {
    let samples = sample_circle(h, base, step, n, cfg)?;
    let inv_h = R::one() / R::from_f64(step);
    scaled_coefficients(&samples)?
        .into_iter()
        .enumerate()
        .map(|(i, g)| {
            let mut scale = R::one();
            let coeffs = g
                .into_iter()
                .enumerate()
                .map(|(k, gk)| {
                    let c = if k == 0 { base.x[i] } else { gk.scale(scale) };
                    scale *= inv_h;
                    c
                })
                .collect();
            TruncatedSeries::new(coeffs)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::{fixture, FixtureName};
    use crate::scalars::C64;

    #[test]
    fn constant_and_first_harmonic() {
        let c = C64::from_f64(2.0, -1.0);
        let g = inverse_dft(&[c; 8]).unwrap();
        assert!((g[0] - c).abs() < 1e-15);
        assert!(g[1..].iter().all(|z| z.abs() < 1e-15));

        let v: Vec<C64> = (0..8).map(|j| root_of_unity(8, j).unwrap()).collect();
        let g = inverse_dft(&v).unwrap();
        for (k, z) in g.iter().enumerate() {
            let want = if k == 1 { 1.0 } else { 0.0 };
            assert!((*z - C64::from_f64(want, 0.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn bad_lengths() {
        assert!(inverse_dft::<f64>(&[C64::one(); 6]).is_err());
        assert!(inverse_dft::<f64>(&[]).is_err());
        assert_eq!(inverse_dft(&[C64::i()]).unwrap(), vec![C64::i()]);
    }

    #[test]
    fn sqrt_first_sample_and_zero_step() {
        let fx = fixture::<f64>(FixtureName::Sqrt).unwrap();
        let cfg = TrackerConfig::default();
        let base = PathState::new(&fx.homotopy, C64::zero(), fx.start.clone()).unwrap();
        let s = sample_circle(&fx.homotopy, &base, 0.85, 8, &cfg).unwrap();
        assert!((s.values[0][0].re - 0.15f64.sqrt()).abs() < 1e-13);
        for k in 1..8 {
            assert!((s.values[0][k] - s.values[0][8 - k].conj()).abs() < 1e-12);
        }
        assert!(matches!(sample_circle(&fx.homotopy, &base, 0.0, 8, &cfg), Err(Error::InvalidArgument(_))));
        assert!(matches!(sample_circle(&fx.homotopy, &base, 0.5, 12, &cfg), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn circle_around_branch_point_jumps() {
        let fx = fixture::<f64>(FixtureName::Sqrt).unwrap();
        let base = PathState::new(&fx.homotopy, C64::zero(), fx.start.clone()).unwrap();
        let r = sample_circle(&fx.homotopy, &base, 1.2, 64, &TrackerConfig::default());
        assert!(r.is_err());
    }
}
