//! The four reference tables: ratio errors and their extrapolation for
//! `sqrt(1 - t)`, and derivatives and coefficients recovered by the DFT.

use std::io::Write;

use anyhow::Result;
use homotopy_radar::fourier::taylor_coefficients;
use homotopy_radar::polysys::{fixture, FixtureName};
use homotopy_radar::radar::{richardson, RichardsonTable};
use homotopy_radar::series::sqrt_one_minus_t_reference;
use homotopy_radar::tracker::{PathState, TrackerConfig};
use homotopy_radar::{Complex, DoubleDouble, Real, C64};
use serde_json::{json, Value};

use crate::config::{Format, Precision, RunConfig, TableName};
use crate::format::{csv_row, num, write_json};

/// Ratio indices `n = 2, 4, ..., 512`.
pub const TABLE1_LEVELS: usize = 9;
pub const TABLE3_ORDERS: std::ops::RangeInclusive<usize> = 0..=16;
pub const TABLE4_ORDERS: [usize; 7] = [0, 1, 2, 4, 8, 32, 64];
pub const TABLE3_STEP: f64 = 0.5;
pub const TABLE4_STEP: f64 = 0.85;

/// `c_n / c_{n+1}` of `sqrt(1 - t)`.
pub fn sqrt_ratio(n: f64) -> f64 {
    2.0 * (n + 1.0) / (2.0 * n - 1.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioRow {
    pub n: u64,
    pub f: f64,
    pub error: f64,
    /// Previous error over this one.
    pub ratio: Option<f64>,
}

pub fn table1_rows() -> Vec<RatioRow> {
    let mut rows: Vec<RatioRow> = Vec::new();
    for i in 1..=TABLE1_LEVELS {
        let n = 1u64 << i;
        let f = sqrt_ratio(n as f64);
        let error = (f - 1.0).abs();
        let ratio = rows.last().map(|p| p.error / error);
        rows.push(RatioRow { n, f, error, ratio });
    }
    rows
}

pub fn table2_extrapolation() -> RichardsonTable<f64> {
    let values: Vec<C64> = table1_rows().iter().map(|r| C64::from_f64(r.f, 0.0)).collect();
    richardson(&values).expect("nonempty input")
}

/// Row `i` lists `|R_{i,j} - 1|` for `j = 1..=i`.
pub fn table2_rows() -> Vec<(u64, Vec<f64>)> {
    let tab = table2_extrapolation();
    (1..=TABLE1_LEVELS).map(|i| (1u64 << i, (1..=i).map(|j| (tab.get(i, j) - C64::one()).abs()).collect())).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientRow {
    pub k: usize,
    pub exact: f64,
    pub approx: f64,
    pub rel_error: f64,
}

/// `c_k` (or `k! c_k` when `derivatives`) of the sqrt path at `t = 0` from
/// `samples` points on the circle of radius `step`.
pub fn sqrt_coefficient_rows<R: Real>(
    step: f64,
    samples: usize,
    orders: &[usize],
    derivatives: bool,
) -> Result<Vec<CoefficientRow>> {
    let cfg = TrackerConfig::for_precision::<R>();
    let fx = fixture::<R>(FixtureName::Sqrt)?;
    let base = PathState::new(&fx.homotopy, Complex::zero(), fx.start)?;
    let series = taylor_coefficients(&fx.homotopy, &base, step, samples, &cfg)?;
    let exact = sqrt_one_minus_t_reference::<R>(samples - 1);
    let mut rows = Vec::new();
    let mut fact = R::one();
    let mut next = 0;
    for k in 0..samples {
        if k > 0 {
            fact *= R::from_f64(k as f64);
        }
        if !orders.contains(&k) {
            continue;
        }
        let weight = if derivatives { fact } else { R::one() };
        let e = exact.coeff(k).re * weight;
        let a = series[0].coeff(k).re * weight;
        let rel = ((a - e) / e).abs();
        rows.push(CoefficientRow { k, exact: e.to_f64(), approx: a.to_f64(), rel_error: rel.to_f64() });
        next += 1;
        if next == orders.len() {
            break;
        }
    }
    Ok(rows)
}

fn coefficient_rows(which: TableName, cfg: &RunConfig) -> Result<Vec<CoefficientRow>> {
    let (step, orders, derivatives) = match which {
        TableName::Table3 => (TABLE3_STEP, TABLE3_ORDERS.collect::<Vec<_>>(), true),
        _ => (TABLE4_STEP, TABLE4_ORDERS.to_vec(), false),
    };
    let step = cfg.step.unwrap_or(step);
    let samples = 2 * cfg.order;
    let orders: Vec<usize> = orders.into_iter().filter(|&k| k < samples).collect();
    match cfg.precision {
        Precision::Double => sqrt_coefficient_rows::<f64>(step, samples, &orders, derivatives),
        Precision::Extended => sqrt_coefficient_rows::<DoubleDouble>(step, samples, &orders, derivatives),
    }
}

pub fn cmd_table(which: TableName, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let format = cfg.format_or(Format::Csv);
    match which {
        TableName::Table1 => {
            let rows = table1_rows();
            match format {
                Format::Csv => {
                    csv_row(out, &["n", "f", "error", "ratio"].map(String::from))?;
                    for r in rows {
                        let ratio = r.ratio.map(num).unwrap_or_default();
                        csv_row(out, &[r.n.to_string(), num(r.f), num(r.error), ratio])?;
                    }
                }
                Format::Json => {
                    let v: Vec<Value> =
                        rows.iter().map(|r| json!({"n": r.n, "f": r.f, "error": r.error, "ratio": r.ratio})).collect();
                    write_json(out, &Value::Array(v))?;
                }
            }
        }
        TableName::Table2 => {
            let rows = table2_rows();
            match format {
                Format::Csv => {
                    let mut head = vec!["n".to_string()];
                    head.extend((0..TABLE1_LEVELS).map(|j| format!("E{j}")));
                    csv_row(out, &head)?;
                    for (n, errs) in rows {
                        let mut cells = vec![n.to_string()];
                        cells.extend(errs.iter().map(|&e| num(e)));
                        cells.resize(TABLE1_LEVELS + 1, String::new());
                        csv_row(out, &cells)?;
                    }
                }
                Format::Json => {
                    let v: Vec<Value> = rows.iter().map(|(n, e)| json!({"n": n, "errors": e})).collect();
                    write_json(out, &Value::Array(v))?;
                }
            }
        }
        TableName::Table3 | TableName::Table4 => {
            let rows = coefficient_rows(which, cfg)?;
            match format {
                Format::Csv => {
                    csv_row(out, &["n", "exact", "approximation", "error"].map(String::from))?;
                    for r in rows {
                        csv_row(out, &[r.k.to_string(), num(r.exact), num(r.approx), num(r.rel_error)])?;
                    }
                }
                Format::Json => {
                    let v: Vec<Value> = rows
                        .iter()
                        .map(|r| json!({"n": r.k, "exact": r.exact, "approximation": r.approx, "error": r.rel_error}))
                        .collect();
                    write_json(out, &Value::Array(v))?;
                }
            }
        }
    }
    Ok(0)
}
