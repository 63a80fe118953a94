//! The problem-file format.
//!
//! ```text
//! # comments run to end of line
//! [equation]
//! a = -3
//! b = 1
//!
//! [basis]
//! generators = 1, 1.4142135623730951   # declared rationally independent
//!
//! [forcing]
//! term = 1, 0 @ 1, 0                    # cos coeff, sin coeff @ coordinates
//! term = 0, 1/2 @ 1/2, 1
//!
//! [nonlinearity]
//! mono = 0.1, 1, 0                      # c·x(t)^p·x(−t)^q
//! radius = 1
//!
//! [solver]
//! mode = spectral                       # spectral | grid | picard
//! T = 40
//! h = 0.005
//! tol = 1e-10
//! max_iter = 200
//! resonance_tol = 1e-9
//!
//! [ivp]
//! x0 = 0.5
//! xdot0 = 0
//! ```
//!
//! Real literals are decimals (optionally with exponent) or `p/q`;
//! frequency coordinates are parsed exactly. Independence of the basis
//! generators over the rationals is the caller's declaration and is not
//! checked.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cli::report::fmt_coord;
use crate::error::{Error, Result};
use crate::grid::half_count;
use crate::nonlinear::{Monomial, Nonlinearity};
use crate::spectral::{classify, EquationParams, SpectralData, DEFAULT_RESONANCE_TOL};
use crate::trigpoly::{FrequencyBasis, TrigPoly};

/// Largest accepted `T/h`.
pub const MAX_HALF_STEPS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverMode {
    Spectral,
    Grid,
    Picard,
}

impl SolverMode {
    pub fn name(&self) -> &'static str {
        match self {
            SolverMode::Spectral => "spectral",
            SolverMode::Grid => "grid",
            SolverMode::Picard => "picard",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    pub mode: SolverMode,
    pub halfwidth: f64,
    pub step: f64,
    pub tol: f64,
    pub max_iter: usize,
    pub resonance_tol: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            mode: SolverMode::Spectral,
            halfwidth: 40.0,
            step: crate::grid::DEFAULT_STEP,
            tol: 1e-10,
            max_iter: 200,
            resonance_tol: DEFAULT_RESONANCE_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IvpSpec {
    pub x0: f64,
    pub xdot0: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub params: EquationParams,
    pub basis: FrequencyBasis,
    pub forcing: TrigPoly,
    /// Monomials and radius; its `forcing` is the `[forcing]` section.
    pub nonlinearity: Option<Nonlinearity>,
    pub solver: SolverSettings,
    pub ivp: Option<IvpSpec>,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn semantic(message: impl Into<String>) -> Error {
    Error::Semantic(message.into())
}

/// Exact value of a decimal (`-1.25`, `3e-2`) or fraction (`-5/4`) literal.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q.is_zero() || q.is_negative() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], i32::from_str(&s[i + 1..]).ok()?),
        None => (s, 0),
    };
    if exponent.abs() > 400 {
        return None;
    }
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let numer = BigInt::from_str(&format!("0{int_part}{frac_part}")).ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(numer);
    if scale >= 0 {
        r *= BigRational::from_integer(ten.pow(scale as u32));
    } else {
        r /= BigRational::from_integer(ten.pow((-scale) as u32));
    }
    Some(if negative { -r } else { r })
}

/// Real literal: decimal via the standard parser, fraction via exact
/// division rounded once.
pub fn parse_real(s: &str) -> Option<f64> {
    if s.contains('/') {
        return parse_rational(s)?.to_f64().filter(|v| v.is_finite());
    }
    parse_rational(s)?;
    f64::from_str(s).ok().filter(|v| v.is_finite())
}

/// Shortest literal that reparses to the same `f64`.
fn format_real(v: f64) -> String {
    format!("{v:?}")
}

/// One comma-separated item with the 1-based column where it starts.
struct Item<'a> {
    column: usize,
    text: &'a str,
}

fn split_items(text: &str, column: usize) -> Vec<Item<'_>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let lead = part.len() - part.trim_start().len();
        out.push(Item {
            column: column + text[..offset + lead].chars().count(),
            text: part.trim(),
        });
        offset += part.len() + 1;
    }
    out
}

#[derive(Default)]
struct Raw {
    scalars: BTreeMap<(&'static str, &'static str), (usize, f64)>,
    mode: Option<SolverMode>,
    max_iter: Option<usize>,
    generators: Option<(usize, Vec<f64>)>,
    terms: Vec<(usize, usize, f64, f64, Vec<(usize, BigRational)>)>,
    monos: Vec<(usize, Monomial)>,
    sections: Vec<&'static str>,
}

const SECTIONS: [&str; 6] = ["equation", "basis", "forcing", "nonlinearity", "solver", "ivp"];

fn section_keys(section: &str) -> &'static [&'static str] {
    match section {
        "equation" => &["a", "b"],
        "basis" => &["generators"],
        "forcing" => &["term"],
        "nonlinearity" => &["mono", "radius"],
        "solver" => &["mode", "T", "h", "tol", "max_iter", "resonance_tol"],
        "ivp" => &["x0", "xdot0"],
        _ => &[],
    }
}

fn real_at(item: &Item<'_>, line: usize, what: &str) -> Result<f64> {
    if item.text.is_empty() {
        return Err(parse_err(line, item.column, format!("missing {what}")));
    }
    parse_real(item.text).ok_or_else(|| parse_err(line, item.column, format!("invalid {what} '{}'", item.text)))
}

fn power_at(item: &Item<'_>, line: usize) -> Result<u32> {
    u32::from_str(item.text).map_err(|_| parse_err(line, item.column, format!("invalid exponent '{}'", item.text)))
}

pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let mut raw = Raw::default();
    let mut section: Option<&'static str> = None;

    for (idx, full_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = full_line.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let lead = content.chars().count() - content.trim_start().chars().count();
        let col0 = lead + 1;

        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return Err(parse_err(line, col0, "unterminated section header"));
            };
            let name = name.trim();
            let Some(known) = SECTIONS.iter().find(|s| **s == name) else {
                return Err(parse_err(line, col0 + 1, format!("unknown section '{name}'")));
            };
            if raw.sections.contains(known) {
                return Err(parse_err(line, col0, format!("duplicate section '{name}'")));
            }
            raw.sections.push(known);
            section = Some(known);
            continue;
        }

        let Some(current) = section else {
            return Err(parse_err(line, col0, "key outside of any section"));
        };
        let Some(eq) = trimmed.find('=') else {
            return Err(parse_err(line, col0, "expected 'key = value'"));
        };
        let key_text = trimmed[..eq].trim();
        let Some(key) = section_keys(current).iter().find(|k| **k == key_text) else {
            return Err(parse_err(line, col0, format!("unknown key '{key_text}' in [{current}]")));
        };
        let after = &trimmed[eq + 1..];
        let value = after.trim();
        let value_col = col0 + trimmed[..eq + 1].chars().count() + (after.chars().count() - after.trim_start().chars().count());
        let value_item = Item {
            column: value_col,
            text: value,
        };

        let repeated = matches!(*key, "term" | "mono");
        if !repeated {
            let seen = match *key {
                "mode" => raw.mode.is_some(),
                "max_iter" => raw.max_iter.is_some(),
                "generators" => raw.generators.is_some(),
                k => raw.scalars.contains_key(&(current, k)),
            };
            if seen {
                return Err(parse_err(line, col0, format!("duplicate key '{key}' in [{current}]")));
            }
        }

        match (current, *key) {
            ("solver", "mode") => {
                raw.mode = Some(match value {
                    "spectral" => SolverMode::Spectral,
                    "grid" => SolverMode::Grid,
                    "picard" => SolverMode::Picard,
                    other => {
                        return Err(parse_err(line, value_col, format!("unknown mode '{other}' (spectral, grid, picard)")))
                    }
                });
            }
            ("solver", "max_iter") => {
                let n = usize::from_str(value)
                    .map_err(|_| parse_err(line, value_col, format!("invalid iteration count '{value}'")))?;
                raw.max_iter = Some(n);
            }
            ("basis", "generators") => {
                let items = split_items(value, value_col);
                let mut gens = Vec::with_capacity(items.len());
                for it in &items {
                    gens.push(real_at(it, line, "generator")?);
                }
                raw.generators = Some((line, gens));
            }
            ("forcing", "term") => {
                let Some(at) = value.find('@') else {
                    return Err(parse_err(line, value_col, "expected 'A, B @ r1, r2, ...'"));
                };
                let coeffs = split_items(&value[..at], value_col);
                if coeffs.len() != 2 {
                    return Err(parse_err(line, value_col, "expected exactly two coefficients before '@'"));
                }
                let cos = real_at(&coeffs[0], line, "cosine coefficient")?;
                let sin = real_at(&coeffs[1], line, "sine coefficient")?;
                let coord_col = value_col + value[..at + 1].chars().count();
                let mut coords = Vec::new();
                for it in split_items(&value[at + 1..], coord_col) {
                    let r = parse_rational(it.text)
                        .ok_or_else(|| parse_err(line, it.column, format!("invalid rational coordinate '{}'", it.text)))?;
                    coords.push((it.column, r));
                }
                raw.terms.push((line, coord_col, cos, sin, coords));
            }
            ("nonlinearity", "mono") => {
                let items = split_items(value, value_col);
                if items.len() != 3 {
                    return Err(parse_err(line, value_col, "expected 'c, p, q'"));
                }
                let c = real_at(&items[0], line, "coefficient")?;
                let p = power_at(&items[1], line)?;
                let q = power_at(&items[2], line)?;
                let m = Monomial::new(c, p, q).map_err(|e| parse_err(line, value_col, e.to_string()))?;
                raw.monos.push((line, m));
            }
            (sec, k) => {
                let v = real_at(&value_item, line, k)?;
                raw.scalars.insert((sec, k), (line, v));
            }
        }
    }
    build(raw)
}

fn build(raw: Raw) -> Result<ProblemSpec> {
    let scalar = |sec: &'static str, key: &'static str| raw.scalars.get(&(sec, key)).map(|(_, v)| *v);
    let need = |sec: &'static str, key: &'static str| {
        scalar(sec, key).ok_or_else(|| semantic(format!("[{sec}] requires key '{key}'")))
    };

    let a = need("equation", "a")?;
    let b = need("equation", "b")?;
    if b == 0.0 {
        return Err(semantic("b must be nonzero"));
    }
    let params = EquationParams::new(a, b).map_err(|e| semantic(e.to_string()))?;

    let Some((gen_line, gens)) = raw.generators else {
        return Err(semantic("[basis] requires key 'generators'"));
    };
    let basis = FrequencyBasis::new(gens).map_err(|e| parse_err(gen_line, 1, e.to_string()))?;

    let mut forcing = TrigPoly::zero(basis.clone());
    for (line, coord_col, cos, sin, coords) in raw.terms {
        if coords.len() != basis.len() {
            return Err(parse_err(
                line,
                coord_col,
                format!("term has {} coordinates but the basis has {} generators", coords.len(), basis.len()),
            ));
        }
        forcing
            .add_term(coords.into_iter().map(|(_, r)| r).collect(), cos, sin)
            .map_err(|e| parse_err(line, coord_col, e.to_string()))?;
    }

    let mut solver = SolverSettings::default();
    if let Some(mode) = raw.mode {
        solver.mode = mode;
    }
    if let Some(n) = raw.max_iter {
        solver.max_iter = n;
    }
    if let Some(v) = scalar("solver", "T") {
        solver.halfwidth = v;
    }
    if let Some(v) = scalar("solver", "h") {
        solver.step = v;
    }
    if let Some(v) = scalar("solver", "tol") {
        solver.tol = v;
    }
    if let Some(v) = scalar("solver", "resonance_tol") {
        solver.resonance_tol = v;
    }
    if !(solver.step > 0.0) {
        return Err(semantic("h must be positive"));
    }
    if !(solver.halfwidth > 0.0) {
        return Err(semantic("T must be positive"));
    }
    let n = half_count(solver.halfwidth, solver.step).map_err(|_| semantic("T/h must be a positive integer"))?;
    if n > MAX_HALF_STEPS {
        return Err(semantic(format!("T/h must not exceed {MAX_HALF_STEPS}")));
    }
    if !(solver.tol > 0.0) {
        return Err(semantic("tol must be positive"));
    }
    if !(solver.resonance_tol > 0.0) {
        return Err(semantic("resonance_tol must be positive"));
    }
    if solver.max_iter == 0 {
        return Err(semantic("max_iter must be at least 1"));
    }

    let has_nonlinearity = raw.sections.contains(&"nonlinearity");
    let nonlinearity = if has_nonlinearity {
        let radius = need("nonlinearity", "radius")?;
        let monos = raw.monos.into_iter().map(|(_, m)| m).collect();
        Some(Nonlinearity::new(forcing.clone(), monos, radius).map_err(|e| semantic(e.to_string()))?)
    } else {
        None
    };
    match (solver.mode, has_nonlinearity) {
        (SolverMode::Picard, false) => return Err(semantic("mode = picard requires a [nonlinearity] section")),
        (SolverMode::Spectral | SolverMode::Grid, true) => {
            return Err(semantic("a [nonlinearity] section requires mode = picard"))
        }
        _ => {}
    }

    let ivp = if raw.sections.contains(&"ivp") {
        let ivp = IvpSpec {
            x0: need("ivp", "x0")?,
            xdot0: need("ivp", "xdot0")?,
        };
        if !matches!(classify(&params), SpectralData::Oscillatory { .. }) {
            return Err(semantic("[ivp] is only allowed in the Oscillatory regime (-a < b < a)"));
        }
        if solver.mode != SolverMode::Spectral {
            return Err(semantic("[ivp] requires mode = spectral"));
        }
        Some(ivp)
    } else {
        None
    };

    Ok(ProblemSpec {
        params,
        basis,
        forcing,
        nonlinearity,
        solver,
        ivp,
    })
}

/// `term = …` lines of the canonical forcing, one per frequency.
pub fn emit_forcing_terms(forcing: &TrigPoly) -> String {
    let mut out = String::new();
    for (f, c) in forcing.terms() {
        let coords: Vec<String> = f.coords().iter().map(fmt_coord).collect();
        let _ = writeln!(out, "term = {}, {} @ {}", format_real(c.cos), format_real(c.sin), coords.join(", "));
    }
    out
}

/// Canonical text of `spec`; [`parse_problem`] maps it back to `spec`.
pub fn emit_problem(spec: &ProblemSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "[equation]\na = {}\nb = {}\n", format_real(spec.params.a), format_real(spec.params.b));
    let gens: Vec<String> = spec.basis.generators().iter().map(|g| format_real(*g)).collect();
    let _ = writeln!(out, "[basis]\ngenerators = {}\n", gens.join(", "));
    let _ = writeln!(out, "[forcing]\n{}", emit_forcing_terms(&spec.forcing));
    if let Some(nl) = &spec.nonlinearity {
        out.push_str("[nonlinearity]\n");
        for m in &nl.monomials {
            let _ = writeln!(out, "mono = {}, {}, {}", format_real(m.coeff), m.x_power, m.reflected_power);
        }
        let _ = writeln!(out, "radius = {}\n", format_real(nl.radius));
    }
    let s = &spec.solver;
    let _ = writeln!(
        out,
        "[solver]\nmode = {}\nT = {}\nh = {}\ntol = {}\nmax_iter = {}\nresonance_tol = {}",
        s.mode.name(),
        format_real(s.halfwidth),
        format_real(s.step),
        format_real(s.tol),
        s.max_iter,
        format_real(s.resonance_tol)
    );
    if let Some(ivp) = &spec.ivp {
        let _ = writeln!(out, "\n[ivp]\nx0 = {}\nxdot0 = {}", format_real(ivp.x0), format_real(ivp.xdot0));
    }
    out
}
