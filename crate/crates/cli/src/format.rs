//! Number formatting shared by every command.

use std::io::Write;

use anyhow::Result;
use homotopy_radar::{Complex, Real, C64};
use serde_json::{json, Value};

/// Shortest text that parses back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn complex_json<R: Real>(z: Complex<R>) -> Value {
    let z = z.to_c64();
    json!({ "re": z.re, "im": z.im })
}

pub fn c64_json(z: C64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn csv_row(out: &mut dyn Write, cells: &[String]) -> Result<()> {
    writeln!(out, "{}", cells.join(","))?;
    Ok(())
}

pub fn write_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}
