//! Newton correction and step-controlled continuation along a parameter path.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polysys::{inf_norm, Homotopy};
use crate::scalars::{Complex, Real};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackerConfig {
    pub newton_tol: f64,
    pub max_newton_iters: usize,
    pub min_step: f64,
    pub initial_step: f64,
    pub max_step: f64,
    pub max_steps: usize,
}

impl TrackerConfig {
    pub fn for_precision<R: Real>() -> Self {
        TrackerConfig {
            newton_tol: R::NEWTON_TOL,
            max_newton_iters: 8,
            min_step: 1e-8,
            initial_step: 0.05,
            max_step: 0.2,
            max_steps: 100_000,
        }
    }

    pub fn validate<R: Real>(&self) -> Result<()> {
        let positive = [self.newton_tol, self.min_step, self.initial_step, self.max_step];
        if positive.iter().any(|v| !(*v > 0.0)) || self.max_newton_iters == 0 || self.max_steps == 0 {
            return Err(Error::InvalidArgument("tracker settings must be positive".into()));
        }
        if self.newton_tol < 10.0 * R::EPSILON {
            return Err(Error::InvalidArgument(format!(
                "newton_tol {:e} is below the {} precision floor",
                self.newton_tol,
                R::NAME
            )));
        }
        if self.min_step > self.initial_step || self.initial_step > self.max_step {
            return Err(Error::InvalidArgument("need min_step <= initial_step <= max_step".into()));
        }
        Ok(())
    }
}

impl Default for TrackerConfig {
    fn default() -> Self {
        Self::for_precision::<f64>()
    }
}

/// A corrected point on a solution path.
#[derive(Clone, Debug, PartialEq)]
pub struct PathState<R> {
    pub t: Complex<R>,
    pub x: Vec<Complex<R>>,
    /// `||h(x, t)||_inf`.
    pub residual: f64,
    pub inv_condition: f64,
    pub newton_iterations: usize,
}

impl<R: Real> PathState<R> {
    /// Wraps `(t, x)` without correcting it; residual and condition are
    /// recomputed here.
    pub fn new(h: &Homotopy<R>, t: Complex<R>, x: Vec<Complex<R>>) -> Result<Self> {
        let residual = inf_norm(&h.evaluate(&x, t)?);
        let inv_condition = h.jacobian(&x, t).map_or(0.0, |j| j.inverse_condition());
        Ok(PathState { t, x, residual, inv_condition, newton_iterations: 0 })
    }

    pub fn t_real(&self) -> f64 {
        self.t.re.to_f64()
    }
}

fn singular_at<R: Real>(t: Complex<R>) -> Error {
    Error::SingularJacobian { t: format!("{}", t.to_c64()) }
}

/// Newton's method at fixed `t`, recording the size of every correction.
///
/// A point is accepted when the residual meets `newton_tol` and the next
/// correction is below `sqrt(newton_tol)` relative to `max(1, |x|)`, so the
/// error left after it is at the tolerance. That verifying correction is
/// applied, which brings extended-precision samples to full working
/// precision, but it is not counted as an iteration. From the second step
/// on, a correction that fails to halve the previous one is treated as
/// divergence.
pub fn newton_trace<R: Real>(
    h: &Homotopy<R>,
    t: Complex<R>,
    x0: &[Complex<R>],
    cfg: &TrackerConfig,
) -> Result<(PathState<R>, Vec<f64>)> {
    newton_run(h, t, x0, cfg, 2)
}

/// Newton with the contraction test starting once `guard_from` corrections
/// are recorded. The tracker's corrector starts from a predicted point and
/// checks from the first step, which keeps it from creeping onto a
/// singular root; a slow start there just halves the step.
fn newton_run<R: Real>(
    h: &Homotopy<R>,
    t: Complex<R>,
    x0: &[Complex<R>],
    cfg: &TrackerConfig,
    guard_from: usize,
) -> Result<(PathState<R>, Vec<f64>)> {
    let mut x = x0.to_vec();
    let mut corrections: Vec<f64> = Vec::new();
    let step_tol = cfg.newton_tol.sqrt();
    let mut residual = f64::INFINITY;
    for k in 0..=cfg.max_newton_iters {
        let fx = h.evaluate(&x, t)?;
        residual = inf_norm(&fx);
        if !residual.is_finite() {
            break;
        }
        let step = newton_step(h, t, &x, &fx)?;
        let size = inf_norm(&step);
        if residual <= cfg.newton_tol && size <= step_tol * inf_norm(&x).max(1.0) {
            let mut y = x.clone();
            apply(&mut y, &step);
            let ry = inf_norm(&h.evaluate(&y, t)?);
            if ry <= residual {
                x = y;
                residual = ry;
            }
            corrections.push(size);
            let state = PathState { t, x, residual, inv_condition: 0.0, newton_iterations: k };
            return Ok((finish(h, state), corrections));
        }
        if k == cfg.max_newton_iters {
            break;
        }
        if corrections.len() >= guard_from {
            let prev = corrections[corrections.len() - 1];
            if size > 0.5 * prev {
                return Err(Error::NoConvergence { iterations: k + 1, residual });
            }
        }
        corrections.push(size);
        apply(&mut x, &step);
    }
    Err(Error::NoConvergence { iterations: corrections.len(), residual })
}

fn newton_step<R: Real>(
    h: &Homotopy<R>,
    t: Complex<R>,
    x: &[Complex<R>],
    fx: &[Complex<R>],
) -> Result<Vec<Complex<R>>> {
    let jac = h.jacobian(x, t)?;
    let rhs: Vec<Complex<R>> = fx.iter().map(|&v| -v).collect();
    jac.solve(&rhs).map_err(|e| match e {
        Error::SingularJacobian { .. } => singular_at(t),
        other => other,
    })
}

fn apply<R: Real>(x: &mut [Complex<R>], dx: &[Complex<R>]) {
    for (xi, &d) in x.iter_mut().zip(dx) {
        *xi += d;
    }
}

fn finish<R: Real>(h: &Homotopy<R>, mut s: PathState<R>) -> PathState<R> {
    s.inv_condition = estimate_inverse_condition(h, &s);
    s
}

pub fn newton_correct<R: Real>(
    h: &Homotopy<R>,
    t: Complex<R>,
    x0: &[Complex<R>],
    cfg: &TrackerConfig,
) -> Result<PathState<R>> {
    newton_trace(h, t, x0, cfg).map(|(s, _)| s)
}

fn corrector<R: Real>(h: &Homotopy<R>, t: Complex<R>, x0: &[Complex<R>], cfg: &TrackerConfig) -> Result<PathState<R>> {
    newton_run(h, t, x0, cfg, 1).map(|(s, _)| s)
}

/// `sigma_min / sigma_max` of the Jacobian at the state; zero if it cannot
/// be evaluated.
pub fn estimate_inverse_condition<R: Real>(h: &Homotopy<R>, s: &PathState<R>) -> f64 {
    h.jacobian(&s.x, s.t).map_or(0.0, |j| j.inverse_condition())
}

fn recoverable(e: &Error) -> bool {
    matches!(e, Error::SingularJacobian { .. } | Error::NoConvergence { .. } | Error::EvaluationSingular)
}

/// Continues `start` along `t = path(s)` for `s` from 0 to `length`.
///
/// `path(length)` is used verbatim for the final point, so callers can make
/// the endpoint exact. The predictor is the previous point; the step halves
/// on a failed correction and doubles after three successes.
pub fn track_along<R: Real, P>(
    h: &Homotopy<R>,
    start: &PathState<R>,
    length: f64,
    path: P,
    cfg: &TrackerConfig,
) -> Result<PathState<R>>
where
    P: Fn(f64) -> Complex<R>,
{
    cfg.validate::<R>()?;
    let mut state = start.clone();
    if length <= 0.0 {
        return Ok(state);
    }
    let mut s = 0.0;
    let mut step = cfg.initial_step.min(length);
    let mut successes = 0;
    for _ in 0..cfg.max_steps {
        let last = s + step >= length;
        let s_next = if last { length } else { s + step };
        match corrector(h, path(s_next), &state.x, cfg) {
            Ok(next) => {
                state = next;
                s = s_next;
                if last {
                    return Ok(state);
                }
                successes += 1;
                if successes >= 3 {
                    step = (2.0 * step).min(cfg.max_step);
                    successes = 0;
                }
            }
            Err(e) if recoverable(&e) => {
                step *= 0.5;
                successes = 0;
                if step < cfg.min_step {
                    return Err(Error::StepUnderflow { t: state.t_real(), step });
                }
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::NoConvergence { iterations: cfg.max_steps, residual: state.residual })
}

/// Tracks along real `t` from `start.t` to `t_target`.
pub fn track_to<R: Real>(
    h: &Homotopy<R>,
    start: &PathState<R>,
    t_target: f64,
    cfg: &TrackerConfig,
) -> Result<PathState<R>> {
    let t0 = start.t;
    let target = Complex::from_real(R::from_f64(t_target));
    let length = (target - t0).abs().to_f64();
    track_along(h, start, length, |s| if s >= length { target } else { t0 + (target - t0).scale(R::from_f64(s / length)) }, cfg)
}

/// Like [`track_to`], also returning every accepted state.
pub fn track_trace<R: Real>(
    h: &Homotopy<R>,
    start: &PathState<R>,
    t_target: f64,
    cfg: &TrackerConfig,
) -> (Vec<PathState<R>>, Option<Error>) {
    let mut states = vec![start.clone()];
    let mut cursor = start.clone();
    let mut step = cfg.initial_step;
    let mut successes = 0;
    let goal = R::from_f64(t_target);
    for _ in 0..cfg.max_steps {
        let t_now = cursor.t.re;
        if !(t_now < goal) {
            return (states, None);
        }
        let remaining = (goal - t_now).to_f64();
        let last = step >= remaining;
        let t_next = if last { Complex::from_real(goal) } else { Complex::from_real(t_now + R::from_f64(step)) };
        match corrector(h, t_next, &cursor.x, cfg) {
            Ok(next) => {
                cursor = next;
                states.push(cursor.clone());
                if last {
                    return (states, None);
                }
                successes += 1;
                if successes >= 3 {
                    step = (2.0 * step).min(cfg.max_step);
                    successes = 0;
                }
            }
            Err(e) if recoverable(&e) => {
                step *= 0.5;
                successes = 0;
                if step < cfg.min_step {
                    return (states, Some(Error::StepUnderflow { t: cursor.t_real(), step }));
                }
            }
            Err(e) => return (states, Some(e)),
        }
    }
    let residual = cursor.residual;
    (states, Some(Error::NoConvergence { iterations: cfg.max_steps, residual }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::{fixture, make_gamma_homotopy, FixtureName};
    use crate::scalars::C64;

    fn t(v: f64) -> C64 {
        C64::from_f64(v, 0.0)
    }

    #[test]
    fn sqrt_newton_from_nearby() {
        let fx = fixture::<f64>(FixtureName::Sqrt).unwrap();
        let cfg = TrackerConfig::default();
        let s = newton_correct(&fx.homotopy, t(0.0), &[t(1.1)], &cfg).unwrap();
        assert!((s.x[0] - t(1.0)).abs() < 1e-14);
        assert!(s.newton_iterations > 0);
    }

    #[test]
    fn fixed_start_needs_no_iterations() {
        let f = crate::polysys::ojika1_target::<f64>();
        let h = make_gamma_homotopy(f.clone(), f, C64::one()).unwrap();
        let x = vec![t(-3.0), t(-6.0)];
        let s = newton_correct(&h, t(0.3), &x, &TrackerConfig::default()).unwrap();
        assert_eq!(s.newton_iterations, 0);
        assert_eq!(s.x, x);
    }

    #[test]
    fn track_sqrt_and_cusp() {
        let cfg = TrackerConfig::default();
        let sq = fixture::<f64>(FixtureName::Sqrt).unwrap();
        let s0 = PathState::new(&sq.homotopy, t(0.0), sq.start.clone()).unwrap();
        let s = track_to(&sq.homotopy, &s0, 0.5, &cfg).unwrap();
        assert!((s.x[0] - t(0.5f64.sqrt())).abs() < 1e-12);

        let cu = fixture::<f64>(FixtureName::Cusp).unwrap();
        let c0 = PathState::new(&cu.homotopy, t(0.0), cu.start.clone()).unwrap();
        let c = track_to(&cu.homotopy, &c0, 0.9, &cfg).unwrap();
        assert!((c.x[0] - t(0.01)).abs() < 1e-10);
    }

    #[test]
    fn invalid_config_rejected() {
        let mut cfg = TrackerConfig { newton_tol: 1e-20, ..Default::default() };
        assert!(cfg.validate::<f64>().is_err());
        cfg.newton_tol = 1e-12;
        cfg.min_step = 0.0;
        assert!(cfg.validate::<f64>().is_err());
    }
}
