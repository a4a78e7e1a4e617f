//! Output rows and their CSV/JSON encodings.

use serde::{Serialize, Serializer};
use std::io::{self, Write};

/// One evaluated (or skipped) point. `value` and `err` are `None` exactly when
/// `route` carries a skip reason.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub kind: &'static str,
    pub n: u32,
    #[serde(serialize_with = "order")]
    pub alpha: f64,
    #[serde(serialize_with = "opt_order")]
    pub beta: Option<f64>,
    pub value: Option<f64>,
    pub err: Option<f64>,
    pub route: String,
}

impl Record {
    pub const HEADER: &'static str = "kind,n,alpha,beta,value,err,route";

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.kind,
            self.n,
            num(self.alpha),
            opt(self.beta),
            opt(self.value),
            opt(self.err),
            self.route
        )
    }
}

/// One row of an uncertainty report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UncertaintyRecord {
    pub kind: &'static str,
    pub n: u32,
    #[serde(serialize_with = "order")]
    pub alpha: f64,
    #[serde(serialize_with = "opt_order")]
    pub beta: Option<f64>,
    pub left: Option<f64>,
    pub right: Option<f64>,
    pub slack: Option<f64>,
    pub saturated: Option<bool>,
    pub skipped: Option<String>,
}

impl UncertaintyRecord {
    pub const HEADER: &'static str = "kind,n,alpha,beta,left,right,slack,saturated,skipped";

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.kind,
            self.n,
            num(self.alpha),
            opt(self.beta),
            opt(self.left),
            opt(self.right),
            opt(self.slack),
            self.saturated.map(|s| s.to_string()).unwrap_or_default(),
            self.skipped.as_deref().unwrap_or("")
        )
    }
}

/// 17 significant digits; infinities as `inf`.
pub fn num(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn order<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_str(&num(*x))
    }
}

fn opt_order<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => order(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub trait Row: Serialize {
    const HEADER: &'static str;
    fn csv_line(&self) -> String;
}

impl Row for Record {
    const HEADER: &'static str = Record::HEADER;
    fn csv_line(&self) -> String {
        self.csv()
    }
}

impl Row for UncertaintyRecord {
    const HEADER: &'static str = UncertaintyRecord::HEADER;
    fn csv_line(&self) -> String {
        self.csv()
    }
}

/// Writes rows in order; JSON is one object per line.
pub fn write_rows<R: Row, W: Write>(out: &mut W, rows: &[R], format: Format, header: bool) -> io::Result<()> {
    match format {
        Format::Csv => {
            if header {
                writeln!(out, "{}", R::HEADER)?;
            }
            for r in rows {
                writeln!(out, "{}", r.csv_line())?;
            }
        }
        Format::Json => {
            for r in rows {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec() -> Record {
        Record {
            kind: "dirichlet",
            n: 1,
            alpha: 0.5,
            beta: None,
            value: Some(2.860_3),
            err: Some(1e-12),
            route: "quadrature".into(),
        }
    }

    #[test]
    fn csv_uses_seventeen_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(f64::INFINITY), "inf");
        let line = rec().csv();
        assert_eq!(line.split(',').count(), Record::HEADER.split(',').count());
        assert!(line.starts_with("dirichlet,1,5.0000000000000000e-1,,2.8603"));
    }

    #[test]
    fn json_keeps_field_names() {
        let mut r = rec();
        r.alpha = f64::INFINITY;
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["alpha"], "inf");
        assert!(v["beta"].is_null());
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        let mut want: Vec<_> = Record::HEADER.split(',').map(String::from).collect();
        want.sort();
        let mut keys = keys;
        keys.sort();
        assert_eq!(keys, want);
    }
}
