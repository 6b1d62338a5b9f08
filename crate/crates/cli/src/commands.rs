use std::io::Write;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use homotopy_radar::fourier::taylor_coefficients;
use homotopy_radar::monomial::{binomial_residual, solve_binomial, IntMatrix};
use homotopy_radar::polysys::{
    fixture, load_homotopy_json, make_gamma_homotopy_with_power, monomial4_exponents, FixtureName, Homotopy,
    HomotopyForm,
};
use homotopy_radar::radar::{detect_last_pole, locate_singularity, LastPole, RadarOptions, RadarStatus};
use homotopy_radar::tracker::{newton_correct, track_to, track_trace, PathState, TrackerConfig};
use homotopy_radar::{Complex, DoubleDouble, Error, Real, C64};
use serde_json::{json, Value};

use crate::config::{Format, GammaChoice, Precision, RunConfig, Source};
use crate::format::{c64_json, complex_json, csv_row, num, write_json};

/// Where the planted fixture's interior branch point sits.
pub const PLANTED_POLE: (f64, f64) = (0.5, 0.5);

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DivisionByZero => "DivisionByZero",
        Error::InvalidArgument(_) => "InvalidArgument",
        Error::NotInvertible => "NotInvertible",
        Error::EvaluationSingular => "EvaluationSingular",
        Error::SingularExponentMatrix => "SingularExponentMatrix",
        Error::OverflowRisk => "OverflowRisk",
        Error::NotApplicable(_) => "NotApplicable",
        Error::SingularJacobian { .. } => "SingularJacobian",
        Error::NoConvergence { .. } => "NoConvergence",
        Error::StepUnderflow { .. } => "StepUnderflow",
        Error::BranchJump { .. } => "BranchJump",
        Error::InconclusiveRadar => "InconclusiveRadar",
        Error::UnknownFixture(_) => "UnknownFixture",
        Error::Parse(_) => "Parse",
    }
}

fn precision_name(p: Precision) -> &'static str {
    match p {
        Precision::Double => "double",
        Precision::Extended => "extended",
    }
}

/// A homotopy with the start point to follow.
pub struct Problem<R> {
    pub label: String,
    pub homotopy: Homotopy<R>,
    pub start: Vec<Complex<R>>,
    /// Singular parameters known in closed form.
    pub known: Vec<C64>,
    pub gamma: Option<C64>,
}

pub fn load_problem<R: Real>(cfg: &RunConfig) -> Result<Problem<R>> {
    let (label, homotopy, start, mut known) = match &cfg.source {
        None => bail!("choose a homotopy with --fixture or --file"),
        Some(Source::Fixture(name)) => {
            let fx = fixture::<R>(*name)?;
            let known = match name {
                FixtureName::Planted => vec![C64::from_f64(PLANTED_POLE.0, PLANTED_POLE.1), C64::one()],
                _ => vec![C64::one()],
            };
            (name.to_string(), fx.homotopy, fx.start, known)
        }
        Some(Source::File(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let loaded = load_homotopy_json::<R>(&text)?;
            let count = loaded.start_points.len();
            let start = loaded
                .start_points
                .into_iter()
                .nth(cfg.path_index)
                .ok_or_else(|| anyhow!("--path {} but the file has {count} start points", cfg.path_index))?;
            (path.display().to_string(), loaded.homotopy, start, Vec::new())
        }
    };
    let homotopy = match cfg.gamma.value() {
        None => homotopy,
        Some(g) => match homotopy.form() {
            HomotopyForm::GammaConvex { target, start, power, .. } => {
                // another gamma may send the path elsewhere
                known.clear();
                make_gamma_homotopy_with_power(target.clone(), start.clone(), g.cast(), *power)?
            }
            _ => bail!("{label} is not a gamma homotopy; --gamma and --seed do not apply"),
        },
    };
    let gamma = match homotopy.form() {
        HomotopyForm::GammaConvex { gamma, .. } => Some(gamma.to_c64()),
        _ => None,
    };
    if start.len() != homotopy.dim() {
        bail!("start point has {} coordinates, the homotopy {}", start.len(), homotopy.dim());
    }
    Ok(Problem { label, homotopy, start, known, gamma })
}

fn seed_json(g: GammaChoice) -> Value {
    match g {
        GammaChoice::Seeded { seed, .. } => json!(seed),
        _ => Value::Null,
    }
}

fn emit_error<R>(out: &mut dyn Write, format: Format, cfg: &RunConfig, p: Option<&Problem<R>>, e: &Error) -> Result<i32> {
    if format == Format::Json {
        let v = json!({
            "source": p.map(|p| p.label.clone()),
            "gamma": p.and_then(|p| p.gamma).map(c64_json),
            "seed": seed_json(cfg.gamma),
            "status": error_kind(e),
            "message": e.to_string(),
        });
        write_json(out, &v)?;
    }
    eprintln!("hradar: {}: {e}", error_kind(e));
    Ok(1)
}

fn last_pole_json<R: Real>(lp: &LastPole<R>) -> Value {
    json!({
        "rho": lp.rho.map(complex_json),
        "t_star": lp.t_star,
        "t0": lp.t0,
        "checkpoints": lp.detections.len(),
    })
}

pub fn cmd_radius(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    match cfg.precision {
        Precision::Double => radius::<f64>(cfg, out),
        Precision::Extended => radius::<DoubleDouble>(cfg, out),
    }
}

fn radius<R: Real>(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let format = cfg.format_or(Format::Json);
    let p = load_problem::<R>(cfg)?;
    let tcfg = TrackerConfig::for_precision::<R>();
    let clock = Instant::now();
    let start = match PathState::new(&p.homotopy, Complex::zero(), p.start.clone()) {
        Ok(s) => s,
        Err(e) => return emit_error(out, format, cfg, Some(&p), &e),
    };
    let (t0, last_pole, sweep_ms) = match cfg.t0 {
        Some(t0) => (t0, None, None),
        None => match detect_last_pole(&p.homotopy, &start, &tcfg) {
            Ok(lp) => (lp.t0, Some(lp), Some(clock.elapsed().as_secs_f64() * 1e3)),
            Err(e) => return emit_error(out, format, cfg, Some(&p), &e),
        },
    };
    let opts = RadarOptions { order: cfg.order, coordinate: cfg.coordinate, t0: Some(t0), step: cfg.step };
    let rep = match locate_singularity(&p.homotopy, &start, &opts, &tcfg) {
        Ok(r) => r,
        Err(e) => return emit_error(out, format, cfg, Some(&p), &e),
    };
    let total_ms = clock.elapsed().as_secs_f64() * 1e3;

    let r = rep.r.to_f64();
    // the singularity nearest to t0 sets the radius
    let target = p
        .known
        .iter()
        .copied()
        .min_by(|a, b| (*a - C64::from_f64(t0, 0.0)).abs().total_cmp(&(*b - C64::from_f64(t0, 0.0)).abs()));
    let target_s = target.map(|t| (t - C64::from_f64(t0, 0.0)).scale(1.0 / r));
    let est = &rep.estimate;
    let singularity = rep.singularity.to_c64();

    match format {
        Format::Json => {
            let diagonal: Vec<Value> =
                est.table.as_ref().map(|t| t.diagonal.iter().map(|&z| complex_json(z)).collect()).unwrap_or_default();
            let v = json!({
                "source": p.label,
                "precision": precision_name(cfg.precision),
                "n": cfg.order,
                "samples": 2 * cfg.order,
                "gamma": p.gamma.map(c64_json),
                "seed": seed_json(cfg.gamma),
                "last_pole": last_pole.as_ref().map(last_pole_json),
                "t0": rep.t0,
                "r": r,
                "step": rep.step,
                "coordinate": rep.coordinate,
                "base": rep.base.x.iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
                "inv_condition": rep.base.inv_condition,
                "raw_ratio": complex_json(est.raw_ratio),
                "diagonal": diagonal,
                "z": complex_json(est.z),
                "singularity": c64_json(singularity),
                "singularity_text": rep.singularity.to_string(),
                "target": target.map(c64_json),
                "error": target.map(|t| (singularity - t).abs()),
                "status": est.status.as_str(),
                "timings": { "sweep_ms": sweep_ms, "total_ms": total_ms },
            });
            write_json(out, &v)?;
        }
        Format::Csv => {
            csv_row(out, &["i", "j", "re", "im", "error"].map(String::from))?;
            if let Some(tab) = &est.table {
                for i in 1..=tab.levels {
                    for j in 1..=i {
                        let z = tab.get(i, j).to_c64();
                        let err = target_s.map(|t| num((z - t).abs())).unwrap_or_default();
                        csv_row(out, &[i.to_string(), j.to_string(), num(z.re), num(z.im), err])?;
                    }
                }
            }
        }
    }
    if est.status == RadarStatus::Converged {
        Ok(0)
    } else {
        eprintln!("hradar: radar status {} for {} at t0 = {}", est.status.as_str(), p.label, rep.t0);
        Ok(1)
    }
}

pub fn cmd_track(cfg: &RunConfig, to: f64, out: &mut dyn Write) -> Result<i32> {
    if !(to >= 0.0 && to.is_finite()) {
        bail!("--to must be a nonnegative number");
    }
    match cfg.precision {
        Precision::Double => track::<f64>(cfg, to, out),
        Precision::Extended => track::<DoubleDouble>(cfg, to, out),
    }
}

fn track<R: Real>(cfg: &RunConfig, to: f64, out: &mut dyn Write) -> Result<i32> {
    let format = cfg.format_or(Format::Csv);
    let p = load_problem::<R>(cfg)?;
    if let GammaChoice::Seeded { seed, gamma } = cfg.gamma {
        eprintln!("hradar: seed {seed} gives gamma {gamma}");
    }
    let tcfg = TrackerConfig::for_precision::<R>();
    let start = match PathState::new(&p.homotopy, Complex::zero(), p.start.clone()) {
        Ok(s) => s,
        Err(e) => return emit_error(out, format, cfg, Some(&p), &e),
    };
    let (states, err) = track_trace(&p.homotopy, &start, to, &tcfg);
    match format {
        Format::Csv => {
            let mut head = vec!["t".to_string()];
            for i in 1..=p.homotopy.dim() {
                head.push(format!("re_x{i}"));
                head.push(format!("im_x{i}"));
            }
            head.push("residual".into());
            head.push("inv_condition".into());
            csv_row(out, &head)?;
            for s in &states {
                let mut cells = vec![num(s.t_real())];
                for z in &s.x {
                    let z = z.to_c64();
                    cells.push(num(z.re));
                    cells.push(num(z.im));
                }
                cells.push(num(s.residual));
                cells.push(num(s.inv_condition));
                csv_row(out, &cells)?;
            }
            if let Some(e) = &err {
                writeln!(out, "# {}: {e}", error_kind(e))?;
            }
        }
        Format::Json => {
            let rows: Vec<Value> = states
                .iter()
                .map(|s| {
                    json!({
                        "t": s.t_real(),
                        "x": s.x.iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
                        "residual": s.residual,
                        "inv_condition": s.inv_condition,
                    })
                })
                .collect();
            let error = err.as_ref().map(|e| json!({ "kind": error_kind(e), "message": e.to_string() }));
            write_json(
                out,
                &json!({ "source": p.label, "gamma": p.gamma.map(c64_json), "seed": seed_json(cfg.gamma),
                         "states": rows, "error": error }),
            )?;
        }
    }
    match err {
        Some(e) => {
            eprintln!("hradar: tracking stopped: {}: {e}", error_kind(&e));
            Ok(1)
        }
        None => Ok(0),
    }
}

/// `2,0;1,3` as the exponent vectors of two equations.
pub fn parse_exponents(text: &str) -> Result<IntMatrix> {
    let cols: Vec<Vec<i64>> = text
        .split(';')
        .map(|eq| eq.split(',').map(|v| v.trim().parse::<i64>().with_context(|| format!("exponent `{v}`"))).collect())
        .collect::<Result<_>>()?;
    exponent_matrix(&cols)
}

/// Column `j` of the result is the exponent vector of equation `j`.
fn exponent_matrix(cols: &[Vec<i64>]) -> Result<IntMatrix> {
    let n = cols.len();
    if cols.iter().any(|c| c.len() != n) {
        bail!("need {n} exponents in each of the {n} equations");
    }
    let rows: Vec<Vec<i64>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    Ok(IntMatrix::from_rows(&rows)?)
}

/// `{"exponents": [[..], ..], "rhs": [{"re": .., "im": ..}, ..]}`.
fn binomial_file(text: &str) -> Result<(IntMatrix, Vec<C64>)> {
    let v: Value = serde_json::from_str(text)?;
    let cols: Vec<Vec<i64>> = v["exponents"]
        .as_array()
        .ok_or_else(|| anyhow!("missing \"exponents\""))?
        .iter()
        .map(|eq| {
            eq.as_array()
                .ok_or_else(|| anyhow!("exponent vector must be an array"))?
                .iter()
                .map(|e| e.as_i64().ok_or_else(|| anyhow!("exponents must be integers")))
                .collect()
        })
        .collect::<Result<_>>()?;
    let a = exponent_matrix(&cols)?;
    let rhs = match v.get("rhs") {
        None => vec![C64::one(); a.dim()],
        Some(r) => r
            .as_array()
            .ok_or_else(|| anyhow!("\"rhs\" must be an array"))?
            .iter()
            .map(|c| {
                let re = c["re"].as_f64().ok_or_else(|| anyhow!("rhs entry without \"re\""))?;
                Ok(C64::from_f64(re, c["im"].as_f64().unwrap_or(0.0)))
            })
            .collect::<Result<_>>()?,
    };
    Ok((a, rhs))
}

pub fn cmd_solve_binomial(cfg: &RunConfig, exponents: Option<&str>, out: &mut dyn Write) -> Result<i32> {
    let (a, rhs) = match (exponents, &cfg.source) {
        (Some(text), _) => {
            let a = parse_exponents(text)?;
            let n = a.dim();
            (a, vec![C64::one(); n])
        }
        (None, Some(Source::Fixture(FixtureName::Monomial4))) => {
            let t = cfg.t0.unwrap_or(0.0);
            (monomial4_exponents(), vec![C64::from_f64(1.0 - t, 0.0); 4])
        }
        (None, Some(Source::Fixture(name))) => bail!("{name} is not a binomial system; use monomial4"),
        (None, Some(Source::File(path))) => {
            binomial_file(&std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)?
        }
        (None, None) => bail!("give --exponents, --fixture monomial4 or --file"),
    };
    match cfg.precision {
        Precision::Double => solve::<f64>(&a, &rhs, cfg, out),
        Precision::Extended => solve::<DoubleDouble>(&a, &rhs, cfg, out),
    }
}

fn solve<R: Real>(a: &IntMatrix, rhs: &[C64], cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let format = cfg.format_or(Format::Csv);
    let c: Vec<Complex<R>> = rhs.iter().map(|z| z.cast()).collect();
    let sols = match solve_binomial(a, &c) {
        Ok(s) => s,
        Err(e) => return emit_error::<R>(out, format, cfg, None, &e),
    };
    match format {
        Format::Csv => {
            let mut head = vec!["solution".to_string()];
            for i in 1..=a.dim() {
                head.push(format!("re_x{i}"));
                head.push(format!("im_x{i}"));
            }
            head.push("residual".into());
            csv_row(out, &head)?;
            for (k, x) in sols.iter().enumerate() {
                let mut cells = vec![k.to_string()];
                for z in x {
                    let z = z.to_c64();
                    cells.push(num(z.re));
                    cells.push(num(z.im));
                }
                cells.push(num(binomial_residual(a, &c, x)));
                csv_row(out, &cells)?;
            }
        }
        Format::Json => {
            let v: Vec<Value> = sols
                .iter()
                .map(|x| {
                    json!({
                        "x": x.iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
                        "residual": binomial_residual(a, &c, x),
                    })
                })
                .collect();
            write_json(out, &json!({ "count": sols.len(), "solutions": v }))?;
        }
    }
    Ok(0)
}

pub fn cmd_coeffs(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    match cfg.precision {
        Precision::Double => coeffs::<f64>(cfg, out),
        Precision::Extended => coeffs::<DoubleDouble>(cfg, out),
    }
}

fn coeffs<R: Real>(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let format = cfg.format_or(Format::Csv);
    let p = load_problem::<R>(cfg)?;
    let tcfg = TrackerConfig::for_precision::<R>();
    let t0 = cfg.t0.unwrap_or(0.0);
    let step = cfg.step.unwrap_or(0.5);
    let series = PathState::new(&p.homotopy, Complex::zero(), p.start.clone())
        .and_then(|s| track_to(&p.homotopy, &s, t0, &tcfg))
        .and_then(|s| newton_correct(&p.homotopy, s.t, &s.x, &tcfg))
        .and_then(|base| taylor_coefficients(&p.homotopy, &base, step, 2 * cfg.order, &tcfg));
    let series = match series {
        Ok(s) => s,
        Err(e) => return emit_error(out, format, cfg, Some(&p), &e),
    };
    match format {
        Format::Csv => {
            csv_row(out, &["coordinate", "k", "re", "im"].map(String::from))?;
            for (i, s) in series.iter().enumerate() {
                for (k, c) in s.coeffs().iter().enumerate() {
                    let c = c.to_c64();
                    csv_row(out, &[i.to_string(), k.to_string(), num(c.re), num(c.im)])?;
                }
            }
        }
        Format::Json => {
            let v: Vec<Value> =
                series.iter().map(|s| Value::Array(s.coeffs().iter().map(|&c| complex_json(c)).collect())).collect();
            write_json(out, &json!({ "t0": t0, "step": step, "coefficients": v }))?;
        }
    }
    Ok(0)
}
