//! Findings file: one tab-separated record per line, after a `#` header.
//!
//! | field | content |
//! |---|---|
//! | 1 | `a` |
//! | 2 | `b` |
//! | 3 | forcing digest: first 16 hex digits of SHA-256 over the basis line and the canonical `term` lines |
//! | 4 | name of the constant or hypothesis tested |
//! | 5 | its value |
//! | 6 | observed ratio (`sup|x|` upper bound over `sup|g|` lower estimate) |
//! | 7 | verdict |
//!
//! Reals use `{:.16e}`.

use sha2::{Digest, Sha256};

use crate::cli::problem::emit_forcing_terms;
use crate::cli::report::fmt_real;
use crate::error::{Error, Result};
use crate::trigpoly::TrigPoly;
use crate::verify::Finding;

pub const FINDINGS_HEADER: &str = "# a\tb\tforcing_digest\tconstant\tconstant_value\tratio\tverdict";

pub fn forcing_digest(g: &TrigPoly) -> String {
    let gens: Vec<String> = g.basis().generators().iter().map(|v| format!("{v:?}")).collect();
    let text = format!("generators = {}\n{}", gens.join(", "), emit_forcing_terms(g));
    Sha256::digest(text.as_bytes()).iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub fn format_finding(f: &Finding) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
        fmt_real(f.a),
        fmt_real(f.b),
        f.forcing_digest,
        f.constant,
        fmt_real(f.constant_value),
        fmt_real(f.ratio),
        f.verdict
    )
}

pub fn render_findings(findings: &[Finding]) -> String {
    let mut out = String::from(FINDINGS_HEADER);
    out.push('\n');
    for f in findings {
        out.push_str(&format_finding(f));
        out.push('\n');
    }
    out
}

pub fn parse_findings(text: &str) -> Result<Vec<Finding>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let bad = |m: &str| Error::Parse {
            line: idx + 1,
            column: 1,
            message: m.to_string(),
        };
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 7 {
            return Err(bad("expected 7 tab-separated fields"));
        }
        let real = |s: &str| s.parse::<f64>().map_err(|_| bad("invalid real"));
        out.push(Finding {
            a: real(fields[0])?,
            b: real(fields[1])?,
            forcing_digest: fields[2].to_string(),
            constant: fields[3].to_string(),
            constant_value: real(fields[4])?,
            ratio: real(fields[5])?,
            verdict: fields[6].to_string(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trigpoly::FrequencyBasis;

    #[test]
    fn digest_depends_on_forcing_and_basis() {
        let g = TrigPoly::term(&FrequencyBasis::unit(), &[1], 1.0, 0.0).unwrap();
        let d = forcing_digest(&g);
        assert_eq!(d.len(), 16);
        assert_eq!(d, forcing_digest(&g.clone()));
        assert_ne!(d, forcing_digest(&g.scale(2.0)));
        let other = TrigPoly::term(&FrequencyBasis::new(vec![2.0]).unwrap(), &[1], 1.0, 0.0).unwrap();
        assert_ne!(d, forcing_digest(&other));
    }

    #[test]
    fn records_round_trip() {
        let f = Finding {
            a: -0.505,
            b: -0.495,
            forcing_digest: "0123456789abcdef".into(),
            constant: "classical_constant".into(),
            constant_value: 21.0,
            ratio: 80.0,
            verdict: "violated".into(),
        };
        let text = render_findings(&[f.clone(), f.clone()]);
        assert!(text.starts_with(FINDINGS_HEADER));
        assert_eq!(parse_findings(&text).unwrap(), vec![f.clone(), f]);
        assert!(parse_findings("1\t2\n").is_err());
    }
}
