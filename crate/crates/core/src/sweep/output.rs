//! CSV and JSON serialisation of sweep rows.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::model::Scheme;

use super::{CurvePoint, Metric};

pub const CSV_HEADER: [&str; 14] = [
    "scheme",
    "metric",
    "gamma_T_dB",
    "K",
    "Lambda",
    "Phi",
    "R_th",
    "analytic",
    "asymptotic",
    "mc_mean",
    "mc_stderr",
    "n_trials",
    "seed",
    "case",
];

/// Shortest decimal that parses back to the same `f64`; scientific notation
/// outside `1e-5 <= |v| < 1e16`.
pub fn format_real(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..16).contains(&exp) {
        v.to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    }
}

fn opt<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
    v.map(f).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[CurvePoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.scheme.as_str().to_string(),
            r.metric.as_str().to_string(),
            format_real(r.gamma_t_db),
            r.k.to_string(),
            format_real(r.lambda),
            format_real(r.phi),
            format_real(r.r_th),
            opt(r.analytic, format_real),
            opt(r.asymptotic, format_real),
            opt(r.mc_mean, format_real),
            opt(r.mc_stderr, format_real),
            opt(r.n_trials, |n| n.to_string()),
            opt(r.seed, |s| s.to_string()),
            r.case.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(rows: &[CurvePoint], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    out.write_all(b"\n")?;
    Ok(())
}

fn field(rec: &csv::StringRecord, i: usize, line: u64) -> Result<&str> {
    rec.get(i)
        .ok_or_else(|| Error::Config(format!("line {line}: missing column `{}`", CSV_HEADER[i])))
}

fn parse<T: std::str::FromStr>(s: &str, col: usize, line: u64) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Config(format!("line {line}: bad value `{s}` in column `{}`", CSV_HEADER[col])))
}

fn parse_opt<T: std::str::FromStr>(s: &str, col: usize, line: u64) -> Result<Option<T>> {
    if s.is_empty() {
        Ok(None)
    } else {
        parse(s, col, line).map(Some)
    }
}

/// Reads rows written by [`write_csv`].
pub fn read_csv<R: Read>(input: R) -> Result<Vec<CurvePoint>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers()?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::Config(format!("unexpected CSV header: {}", header.iter().collect::<Vec<_>>().join(","))));
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let f = |i| field(&rec, i, line);
        rows.push(CurvePoint {
            scheme: f(0)?.parse::<Scheme>()?,
            metric: f(1)?.parse::<Metric>()?,
            gamma_t_db: parse(f(2)?, 2, line)?,
            k: parse(f(3)?, 3, line)?,
            lambda: parse(f(4)?, 4, line)?,
            phi: parse(f(5)?, 5, line)?,
            r_th: parse(f(6)?, 6, line)?,
            analytic: parse_opt(f(7)?, 7, line)?,
            asymptotic: parse_opt(f(8)?, 8, line)?,
            mc_mean: parse_opt(f(9)?, 9, line)?,
            mc_stderr: parse_opt(f(10)?, 10, line)?,
            n_trials: parse_opt(f(11)?, 11, line)?,
            seed: parse_opt(f(12)?, 12, line)?,
            case: f(13)?.to_string(),
        });
    }
    Ok(rows)
}
