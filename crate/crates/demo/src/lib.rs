//! Browser bindings. Every export returns a JSON string; failures come back
//! as `{"error": "..."}` so the page never has to catch.

use homotopy_radar::fourier::taylor_coefficients;
use homotopy_radar::polysys::{fixture, planted_pole_homotopy, FixtureName};
use homotopy_radar::radar::{detect_last_pole, locate_singularity, richardson, RadarOptions};
use homotopy_radar::series::sqrt_one_minus_t_reference;
use homotopy_radar::tracker::{PathState, TrackerConfig};
use homotopy_radar::{Complex, DoubleDouble, Real, C64};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn c(z: C64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn error_json(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

/// `|R_{i,j} - 1|` on the ratios `c_n / c_{n+1}` of `sqrt(1 - t)` at
/// `n = 2, ..., 2^levels`.
#[wasm_bindgen]
pub fn richardson_errors(levels: u32) -> String {
    if !(1..=10).contains(&levels) {
        return error_json("levels must be between 1 and 10");
    }
    let values: Vec<C64> = (1..=levels)
        .map(|i| {
            let n = (1u64 << i) as f64;
            C64::from_f64(2.0 * (n + 1.0) / (2.0 * n - 1.0), 0.0)
        })
        .collect();
    let tab = match richardson(&values) {
        Ok(t) => t,
        Err(e) => return error_json(e),
    };
    let rows: Vec<Value> = (1..=tab.levels)
        .map(|i| json!({ "n": 1u64 << i, "errors": (1..=i).map(|j| (tab.get(i, j) - C64::one()).abs()).collect::<Vec<_>>() }))
        .collect();
    json!({ "rows": rows }).to_string()
}

fn coefficient_errors_in<R: Real>(step: f64, samples: usize) -> homotopy_radar::Result<Vec<f64>> {
    let cfg = TrackerConfig::for_precision::<R>();
    let fx = fixture::<R>(FixtureName::Sqrt)?;
    let base = PathState::new(&fx.homotopy, Complex::zero(), fx.start)?;
    let series = taylor_coefficients(&fx.homotopy, &base, step, samples, &cfg)?;
    let exact = sqrt_one_minus_t_reference::<R>(samples - 1);
    Ok((0..samples / 2)
        .map(|k| ((series[0].coeff(k) - exact.coeff(k)).abs() / exact.coeff(k).abs()).to_f64())
        .collect())
}

/// Relative errors of the first `samples / 2` Taylor coefficients of
/// `sqrt(1 - t)` recovered from `samples` points on the circle `|t| = step`.
#[wasm_bindgen]
pub fn coefficient_errors(step: f64, samples: u32, extended: bool) -> String {
    if !(step > 0.0 && step < 1.0) {
        return error_json("step must lie in (0, 1)");
    }
    let samples = samples as usize;
    if !samples.is_power_of_two() || !(8..=1024).contains(&samples) {
        return error_json("samples must be a power of two between 8 and 1024");
    }
    let errs = if extended {
        coefficient_errors_in::<DoubleDouble>(step, samples)
    } else {
        coefficient_errors_in::<f64>(step, samples)
    };
    match errs {
        Ok(e) => json!({ "step": step, "samples": samples, "extended": extended, "errors": e }).to_string(),
        Err(e) => error_json(e),
    }
}

/// Sweep and radar on `x^2 - (t - p)(t - 1)` with the branch point `p`
/// planted at `re + i im`.
#[wasm_bindgen]
pub fn planted_radar(re: f64, im: f64) -> String {
    let p = C64::from_f64(re, im);
    if !(re.is_finite() && im.is_finite()) || p.abs() < 1e-3 || (im.abs() < 1e-3 && (0.0..=1.0).contains(&re)) {
        return error_json("the pole must stay off the segment from 0 to 1");
    }
    let fx = match planted_pole_homotopy(p) {
        Ok(f) => f,
        Err(e) => return error_json(e),
    };
    let cfg = TrackerConfig::default();
    let run = || -> homotopy_radar::Result<Value> {
        let start = PathState::new(&fx.homotopy, Complex::zero(), fx.start.clone())?;
        let lp = detect_last_pole(&fx.homotopy, &start, &cfg)?;
        let rep = locate_singularity(&fx.homotopy, &start, &RadarOptions { t0: Some(lp.t0), ..Default::default() }, &cfg)?;
        let detections: Vec<Value> = lp
            .detections
            .iter()
            .map(|d| json!({ "t": d.t, "step": d.step, "status": d.status.as_str(), "pole": d.pole.map(c), "endpoint": d.endpoint }))
            .collect();
        Ok(json!({
            "planted": c(p),
            "rho": lp.rho.map(c),
            "t_star": lp.t_star,
            "t0": lp.t0,
            "detections": detections,
            "singularity": c(rep.singularity),
            "status": rep.estimate.status.as_str(),
        }))
    };
    match run() {
        Ok(v) => v.to_string(),
        Err(e) => error_json(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn richardson_rows() {
        let v = parse(&richardson_errors(9));
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 9);
        assert!(rows[8]["errors"][8].as_f64().unwrap() <= 1e-14);
        assert!(parse(&richardson_errors(0))["error"].is_string());
        assert!(parse(&richardson_errors(11))["error"].is_string());
    }

    #[test]
    fn coefficient_curve() {
        let v = parse(&coefficient_errors(0.85, 128, false));
        let e = v["errors"].as_array().unwrap();
        assert_eq!(e.len(), 64);
        assert!(e[1].as_f64().unwrap() <= 3e-7);
        let x = parse(&coefficient_errors(0.5, 128, true));
        assert!(x["errors"][63].as_f64().unwrap() <= 1e-9);
        assert!(parse(&coefficient_errors(1.5, 128, false))["error"].is_string());
        assert!(parse(&coefficient_errors(0.5, 100, false))["error"].is_string());
    }

    #[test]
    fn planted_pole_is_found() {
        let v = parse(&planted_radar(0.5, 0.5));
        let rho = &v["rho"];
        let d = (rho["re"].as_f64().unwrap() - 0.5).hypot(rho["im"].as_f64().unwrap() - 0.5);
        assert!(d <= 1e-2, "{v}");
        assert_eq!(v["status"], "Converged");
        assert!(!v["detections"].as_array().unwrap().is_empty());
        assert!(parse(&planted_radar(0.5, 0.0))["error"].is_string());
    }
}
