//! `key = value` reports and the solution CSV.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::One;

use crate::trigpoly::TrigPoly;

/// `{:.16e}`: 17 significant digits, enough to round-trip any `f64`.
/// Negative zero prints as zero.
pub fn fmt_real(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

pub(crate) fn fmt_coord(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn text(&mut self, key: &str, value: impl Into<String>) {
        self.entries.push((key.to_string(), value.into()));
    }

    pub fn real(&mut self, key: &str, value: f64) {
        self.text(key, fmt_real(value));
    }

    pub fn flag(&mut self, key: &str, value: bool) {
        self.text(key, if value { "true" } else { "false" });
    }

    /// One `key = cos, sin @ coords` line per term; `key = 0` for the zero
    /// polynomial.
    pub fn poly(&mut self, key: &str, p: &TrigPoly) {
        if p.is_zero() {
            self.text(key, "0");
        }
        for (f, c) in p.terms() {
            let coords: Vec<String> = f.coords().iter().map(fmt_coord).collect();
            self.text(key, format!("{}, {} @ {}", fmt_real(c.cos), fmt_real(c.sin), coords.join(", ")));
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn get_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.entries.iter().filter(move |(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }
}

pub const CSV_HEADER: &str = "t,x,xdot,residual";

/// Rows of `(t, x, ẋ, residual)`; non-finite residuals (edge nodes) are
/// written as `nan`.
pub fn render_csv(rows: impl IntoIterator<Item = (f64, f64, f64, f64)>) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (t, x, xd, r) in rows {
        let r = if r.is_finite() { fmt_real(r) } else { "nan".to_string() };
        let _ = writeln!(out, "{},{},{},{}", fmt_real(t), fmt_real(x), fmt_real(xd), r);
    }
    out
}
