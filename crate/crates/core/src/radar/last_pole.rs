use serde::Serialize;

use super::fabry::{fabry_estimate, select_coordinate, RadarStatus};
use crate::error::{Error, Result};
use crate::fourier::{sample_circle, scaled_coefficients};
use crate::polysys::Homotopy;
use crate::scalars::{Complex, Real};
use crate::series::TruncatedSeries;
use crate::tracker::{track_to, PathState, TrackerConfig};

/// Samples per checkpoint; ratios go up to `n = 64`.
pub const SWEEP_SAMPLES: usize = 128;
pub const MAX_CHECKPOINTS: usize = 40;
/// Fraction of the distance to the nearest known singularity used as the
/// sampling radius.
pub const STEP_FRACTION: f64 = 0.85;
/// `t0 = t_star + min(DELTA, DELTA_CAP (1 - t_star))`.
pub const DELTA: f64 = 0.25;
pub const DELTA_CAP: f64 = 0.9;
/// A reading locates a pole only if its last diagonal step is below this
/// fraction of the estimate; Fabry ratios wander when two singularities are
/// nearly equidistant, and the table then fails to settle.
pub const RELIABLE_SPREAD: f64 = 0.1;
/// Radius reduction after a failed circle.
pub const SHRINK: f64 = 0.75;

/// One radar reading taken during the sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Detection<R> {
    pub t: f64,
    pub step: f64,
    pub status: RadarStatus,
    /// Last diagonal step of the table relative to the estimate.
    pub spread: f64,
    /// Singularity location in `t`, when the estimate converged and settled.
    pub pole: Option<Complex<R>>,
    /// Whether the reading points at the endpoint `t = 1`.
    pub endpoint: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LastPole<R> {
    /// Interior singularity with the largest real part below one, if any.
    pub rho: Option<Complex<R>>,
    /// Where `rho` and `1` are equally far away.
    pub t_star: f64,
    pub t0: f64,
    pub detections: Vec<Detection<R>>,
}

/// `t` on the real axis with `|t - rho| = |1 - t|`.
pub fn equidistant_point<R: Real>(rho: Complex<R>) -> f64 {
    let (a, b) = (rho.re.to_f64(), rho.im.to_f64());
    ((1.0 - a * a - b * b) / (2.0 * (1.0 - a))).clamp(0.0, 1.0 - f64::EPSILON)
}

pub fn t0_after(t_star: f64) -> f64 {
    t_star + DELTA.min(DELTA_CAP * (1.0 - t_star))
}

fn retryable(e: &Error) -> bool {
    matches!(
        e,
        Error::BranchJump { .. }
            | Error::SingularJacobian { .. }
            | Error::NoConvergence { .. }
            | Error::StepUnderflow { .. }
    )
}

fn probe<R: Real>(
    h: &Homotopy<R>,
    state: &PathState<R>,
    step: f64,
    cfg: &TrackerConfig,
) -> Result<super::RadiusEstimate<R>> {
    let samples = sample_circle(h, state, step, SWEEP_SAMPLES, cfg)?;
    let series = scaled_coefficients(&samples)?
        .into_iter()
        .map(TruncatedSeries::new)
        .collect::<Result<Vec<_>>>()?;
    fabry_estimate(&series[select_coordinate(&series)])
}

/// Sweeps along `t` from `start`, reading the radar at each checkpoint.
///
/// Each checkpoint samples a circle of radius `0.85` times the distance to
/// the nearest singularity seen so far (or to `t = 1`), shrinking it when
/// the samples fail. The sweep advances halfway towards a located singularity
/// (a quarter of the way to `t = 1` otherwise) and stops once the endpoint
/// dominates twice in a row.
pub fn detect_last_pole<R: Real>(
    h: &Homotopy<R>,
    start: &PathState<R>,
    cfg: &TrackerConfig,
) -> Result<LastPole<R>> {
    let one = Complex::<R>::one();
    let mut state = start.clone();
    let mut detections: Vec<Detection<R>> = Vec::new();
    let mut hint: Option<f64> = None;
    let mut endpoint_run = 0;
    for _ in 0..MAX_CHECKPOINTS {
        let tc = state.t_real();
        let remaining = 1.0 - tc;
        if remaining < 1e-3 {
            break;
        }
        let mut step = STEP_FRACTION * hint.unwrap_or(remaining).min(remaining);
        let est = loop {
            match probe(h, &state, step, cfg) {
                Ok(e) => break e,
                Err(e) if retryable(&e) && step > 1e-3 * remaining => step *= SHRINK,
                Err(e) => return Err(e),
            }
        };
        let spread = est
            .table
            .as_ref()
            .and_then(|t| t.diagonal_steps().last().copied())
            .map_or(f64::INFINITY, |d| d / est.z.abs().to_f64());
        let mut reading = Detection { t: tc, step, status: est.status, spread, pole: None, endpoint: false };
        let mut advance = 0.25 * remaining;
        if est.status == RadarStatus::Converged && spread <= RELIABLE_SPREAD {
            let z = est.z.scale(R::from_f64(step));
            let dist = z.abs().to_f64();
            let pole = state.t + z;
            reading.pole = Some(pole);
            reading.endpoint = (pole - one).abs().to_f64() <= 0.05 * dist;
            advance = 0.5 * dist.min(remaining);
        }
        endpoint_run = if reading.endpoint { endpoint_run + 1 } else { 0 };
        let pole = reading.pole;
        detections.push(reading);
        if endpoint_run >= 2 {
            break;
        }
        let t_next = tc + advance;
        state = track_to(h, &state, t_next, cfg)?;
        hint = pole.map(|p| (p - Complex::from_real(R::from_f64(t_next))).abs().to_f64());
    }

    let located = |d: &Detection<R>| d.pole.is_some() || d.status == RadarStatus::CoefficientsVanish;
    if !detections.iter().any(located) {
        return Err(Error::InconclusiveRadar);
    }
    let rho = detections
        .iter()
        .filter(|d| !d.endpoint)
        .filter_map(|d| d.pole)
        .filter(|p| p.re.to_f64() < 1.0)
        .fold(None, |best: Option<Complex<R>>, p| match best {
            Some(b) if b.re >= p.re => Some(b),
            _ => Some(p),
        });
    let t_star = rho.map_or(0.0, equidistant_point);
    Ok(LastPole { rho, t_star, t0: t0_after(t_star), detections })
}
