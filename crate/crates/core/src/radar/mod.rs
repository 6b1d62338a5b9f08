//! Locating the nearest singularity of a solution path from its Taylor
//! coefficients at a regular point.

mod fabry;
mod last_pole;
mod richardson;

pub use fabry::{fabry_estimate, scale_to_unit, select_coordinate, RadarStatus, RadiusEstimate, VANISH_FACTOR};
pub use last_pole::{
    detect_last_pole, equidistant_point, t0_after, Detection, LastPole, DELTA, DELTA_CAP, MAX_CHECKPOINTS,
    RELIABLE_SPREAD, SHRINK, STEP_FRACTION, SWEEP_SAMPLES,
};
pub use richardson::{richardson, RichardsonTable};

use crate::error::{Error, Result};
use crate::fourier::taylor_coefficients;
use crate::polysys::Homotopy;
use crate::scalars::{Complex, Real};
use crate::series::TruncatedSeries;
use crate::tracker::{newton_correct, track_to, PathState, TrackerConfig};

/// `h(x, r s + t0)` with `r = 1 - t0`, so the endpoint sits at `s = 1`.
pub fn recondition<R: Real>(h: &Homotopy<R>, t0: f64) -> Result<Homotopy<R>> {
    if !(0.0..1.0).contains(&t0) {
        return Err(Error::InvalidArgument(format!("t0 = {t0} must lie in [0, 1)")));
    }
    let t0 = R::from_f64(t0);
    Ok(h.reparameterize(R::one() - t0, t0))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadarOptions {
    /// Largest ratio index; `2 * order` circle samples are taken.
    pub order: usize,
    pub coordinate: Option<usize>,
    /// Skip the sweep and recondition at this value.
    pub t0: Option<f64>,
    /// Sampling radius in the reconditioned parameter.
    pub step: Option<f64>,
}

impl Default for RadarOptions {
    fn default() -> Self {
        RadarOptions { order: 64, coordinate: None, t0: None, step: None }
    }
}

pub const DEFAULT_STEP: f64 = 0.85;

#[derive(Clone, Debug)]
pub struct SingularityReport<R> {
    pub t0: f64,
    pub r: R,
    pub last_pole: Option<LastPole<R>>,
    /// Regular solution at `t0`.
    pub base: PathState<R>,
    pub step: f64,
    pub coordinate: usize,
    pub series: Vec<TruncatedSeries<R>>,
    /// Estimate in the reconditioned parameter `s`.
    pub estimate: RadiusEstimate<R>,
    /// `t0 + r z`.
    pub singularity: Complex<R>,
}

/// Sweep, recondition, expand at `s = 0` and extrapolate the ratios.
pub fn locate_singularity<R: Real>(
    h: &Homotopy<R>,
    start: &PathState<R>,
    opts: &RadarOptions,
    cfg: &TrackerConfig,
) -> Result<SingularityReport<R>> {
    if !opts.order.is_power_of_two() || opts.order < 4 {
        return Err(Error::InvalidArgument(format!("order {} must be a power of two >= 4", opts.order)));
    }
    let (t0, last_pole) = match opts.t0 {
        Some(t0) => (t0, None),
        None => {
            let lp = detect_last_pole(h, start, cfg)?;
            (lp.t0, Some(lp))
        }
    };
    let hr = recondition(h, t0)?;
    let at_t0 = if t0 == start.t_real() && start.t.im.is_zero() { start.clone() } else { track_to(h, start, t0, cfg)? };
    let base = newton_correct(&hr, Complex::zero(), &at_t0.x, cfg)?;
    let step = opts.step.unwrap_or(DEFAULT_STEP);
    let series = taylor_coefficients(&hr, &base, step, 2 * opts.order, cfg)?;
    let coordinate = match opts.coordinate {
        Some(i) if i < series.len() => i,
        Some(i) => return Err(Error::InvalidArgument(format!("no coordinate {i}"))),
        None => select_coordinate(&series),
    };
    let estimate = fabry_estimate(&series[coordinate])?;
    let r = R::one() - R::from_f64(t0);
    let singularity = Complex::from_real(R::from_f64(t0)) + estimate.z.scale(r);
    Ok(SingularityReport { t0, r, last_pole, base, step, coordinate, series, estimate, singularity })
}
