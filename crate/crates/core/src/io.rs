//! Text format for coefficient files: one coefficient per line, either `re`
//! or `re im`; `#` starts a comment.

use std::fmt::Write as _;

use num_complex::Complex64;
use thiserror::Error;

use crate::poly::Poly;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("entry {index}: cannot parse {text:?}")]
    Entry { index: usize, text: String },
}

fn parse_number(text: &str) -> Option<f64> {
    text.parse::<f64>().ok().filter(|v| v.is_finite())
}

pub fn parse_coefficients(text: &str) -> Result<Poly, ParseError> {
    let mut coeffs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |message: String| ParseError::Line {
            line: idx + 1,
            message,
        };
        let value = match fields.as_slice() {
            [re] => Complex64::new(
                parse_number(re).ok_or_else(|| bad(format!("bad number {re:?}")))?,
                0.0,
            ),
            [re, im] => Complex64::new(
                parse_number(re).ok_or_else(|| bad(format!("bad number {re:?}")))?,
                parse_number(im).ok_or_else(|| bad(format!("bad number {im:?}")))?,
            ),
            _ => return Err(bad(format!("expected `re` or `re im`, got {line:?}"))),
        };
        coeffs.push(value);
    }
    Ok(Poly::new(coeffs))
}

/// Comma-separated real coefficients, e.g. `"1,-1,0.5"`.
pub fn parse_coeff_list(text: &str) -> Result<Poly, ParseError> {
    text.split(',')
        .enumerate()
        .map(|(index, t)| {
            parse_number(t.trim())
                .map(|v| Complex64::new(v, 0.0))
                .ok_or_else(|| ParseError::Entry {
                    index,
                    text: t.to_string(),
                })
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Poly::new)
}

/// Full-precision file form, `re im` per line.
pub fn format_coefficients(p: &Poly) -> String {
    let mut out = String::new();
    for c in p.coeffs() {
        let _ = writeln!(out, "{} {}", c.re, c.im);
    }
    out
}

fn tidy(v: f64) -> String {
    let s = format!("{v:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Short human-readable list: real parts only when every imaginary part is
/// negligible, else `re+imi` entries; values rounded to 12 decimals.
pub fn format_summary(p: &Poly) -> String {
    let scale = p.max_abs().max(1.0);
    let real = p.coeffs().iter().all(|c| c.im.abs() <= 1e-12 * scale);
    p.coeffs()
        .iter()
        .map(|c| {
            if real {
                tidy(c.re)
            } else {
                let im = tidy(c.im);
                if im.starts_with('-') {
                    format!("{}{}i", tidy(c.re), im)
                } else {
                    format!("{}+{}i", tidy(c.re), im)
                }
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_real_and_complex_lines() {
        let text = "# header\n1\n  2.5 -1 # trailing\n\n-3e-2\n";
        let p = parse_coefficients(text).unwrap();
        assert_eq!(
            p.coeffs(),
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(2.5, -1.0),
                Complex64::new(-0.03, 0.0)
            ]
        );
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(matches!(
            parse_coefficients("1\n1 2 3\n"),
            Err(ParseError::Line { line: 2, .. })
        ));
        assert!(parse_coefficients("abc").is_err());
        assert!(parse_coefficients("nan").is_err());
        assert!(parse_coeff_list("1,,2").is_err());
    }

    #[test]
    fn file_format_round_trips() {
        let p = Poly::new(vec![
            Complex64::new(0.1, -1e-300),
            Complex64::new(1.0 / 3.0, 2.0),
        ]);
        assert_eq!(parse_coefficients(&format_coefficients(&p)).unwrap(), p);
    }

    #[test]
    fn summary_is_tidy() {
        let p = Poly::from_real(&[1.0, 0.5, -0.125, 0.0625, 0.9999999999999998, -1e-17]);
        assert_eq!(format_summary(&p), "1,0.5,-0.125,0.0625,1,0");
        let q = Poly::new(vec![Complex64::new(1.0, -2.0), Complex64::new(0.0, 0.5)]);
        assert_eq!(format_summary(&q), "1-2i,0+0.5i");
    }
}
