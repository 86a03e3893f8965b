//! Text export: fixed-precision numbers, matrices as CSV or coordinate triples, spectra and time series.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use serde_json::json;

use crate::dynamics::EvolutionTrace;
use crate::spectral::{Grading, Spectrum};

/// Significant digits kept by every exported number.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `x` rounded to [`SIGNIFICANT_DIGITS`] significant digits, with `-0` mapped to `0`.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Shortest decimal form of [`round_sig`]`(x)`, in exponent notation outside `[1e-6, 1e15)`.
pub fn format_number(x: f64) -> String {
    let r = round_sig(x);
    if r != 0.0 && r.is_finite() && (r.abs() < 1e-6 || r.abs() >= 1e15) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

/// Rounds every float inside a JSON value in place.
pub fn round_json(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            if let Some(x) = n.as_f64() {
                let r = round_sig(x);
                *v = if r.fract() == 0.0 && r.abs() < 1e15 {
                    json!(r as i64)
                } else {
                    serde_json::Number::from_f64(r).map_or(serde_json::Value::Null, serde_json::Value::Number)
                };
            }
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(round_json),
        serde_json::Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

fn header(m: &DMatrix<f64>, offsets: &[usize]) -> String {
    format!("# {}\n", json!({ "rows": m.nrows(), "cols": m.ncols(), "offsets": offsets }))
}

/// Dense CSV, one matrix row per line, after a `# {json}` header carrying the block offsets.
pub fn matrix_csv(m: &DMatrix<f64>, offsets: &[usize]) -> String {
    let mut out = header(m, offsets);
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format_number(m[(i, j)])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Nonzero entries as `row col value` lines after the same header.
pub fn matrix_coo(m: &DMatrix<f64>, offsets: &[usize]) -> String {
    let mut out = header(m, offsets);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let x = round_sig(m[(i, j)]);
            if x != 0.0 {
                let _ = writeln!(out, "{i} {j} {}", format_number(x));
            }
        }
    }
    out
}

/// `index,eigenvalue,grade`; the grade column is the form degree or the parity weight.
pub fn spectrum_csv(s: &Spectrum) -> String {
    let mut out = String::from("index,eigenvalue,grade\n");
    for (k, &l) in s.eigenvalues.iter().enumerate() {
        let grade = match &s.grading {
            Grading::Degree(d) => d[k].to_string(),
            Grading::Parity(w) => format_number(w[k]),
            Grading::None => String::new(),
        };
        let _ = writeln!(out, "{k},{},{grade}", format_number(l));
    }
    out
}

/// `time,re_0,im_0,...,norm,str_re,str_im`, one line per sample.
pub fn evolution_csv(trace: &EvolutionTrace) -> String {
    let width = trace.states.first().map_or(0, |s| s.len());
    let mut out = String::from("time");
    for i in 0..width {
        let _ = write!(out, ",re_{i},im_{i}");
    }
    out.push_str(",norm,str_re,str_im\n");
    for (k, state) in trace.states.iter().enumerate() {
        out.push_str(&format_number(trace.times[k]));
        for z in &state.values {
            let _ = write!(out, ",{},{}", format_number(z.re), format_number(z.im));
        }
        let st = trace.supertraces[k];
        let _ = writeln!(out, ",{},{},{}", format_number(trace.norms[k]), format_number(st.re), format_number(st.im));
    }
    out
}
