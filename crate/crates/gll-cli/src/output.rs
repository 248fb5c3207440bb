//! Text emission and parsing for the two output formats.
//!
//! Delimited output is a comma-separated header plus fixed-precision rows
//! (premiums 3 dp, densities 6 dp, estimates 4 dp). Structured output is a
//! `key=value` document with stable key ordering and full-precision numbers,
//! so structured fit results round-trip exactly through [`parse_kv`].

use gll::{FitResult, GllError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Delimited,
    Structured,
}

/// Header row plus data rows, comma-separated.
pub fn emit_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// `key=value` lines in the order given.
pub fn emit_kv(pairs: &[(String, String)]) -> String {
    let mut out = String::new();
    for (k, v) in pairs {
        out.push_str(k);
        out.push('=');
        out.push_str(v);
        out.push('\n');
    }
    out
}

/// Parse a `key=value` document back into ordered pairs.
pub fn parse_kv(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| GllError::Data(format!("line {} is not key=value: '{line}'", i + 1)))?;
        out.push((k.to_string(), v.to_string()));
    }
    Ok(out)
}

/// Full-precision structured representation of a fit result. Numbers use the
/// shortest round-trip formatting, so parsing recovers identical values.
pub fn fit_to_kv(fit: &FitResult) -> Vec<(String, String)> {
    let se = |i: usize| -> String {
        match &fit.covariance {
            Some(cov) if cov[(i, i)] > 0.0 => format!("{}", cov[(i, i)].sqrt()),
            _ => "NA".to_string(),
        }
    };
    vec![
        ("theta".into(), format!("{}", fit.params.theta())),
        ("lambda".into(), format!("{}", fit.params.lambda())),
        ("p".into(), format!("{}", fit.params.p())),
        ("loglik".into(), format!("{}", fit.loglik)),
        ("score_norm".into(), format!("{}", fit.score_norm)),
        ("converged".into(), format!("{}", fit.converged)),
        ("boundary_lambda".into(), format!("{}", fit.boundary_lambda)),
        ("boundary_p".into(), format!("{}", fit.boundary_p)),
        ("se_theta".into(), se(0)),
        ("se_lambda".into(), se(1)),
        ("se_p".into(), se(2)),
    ]
}

/// The numeric core of a parsed fit document.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedFit {
    pub theta: f64,
    pub lambda: f64,
    pub p: f64,
    pub loglik: f64,
    pub score_norm: f64,
    pub converged: bool,
    pub boundary_lambda: bool,
    pub boundary_p: bool,
}

pub fn parse_fit(text: &str) -> Result<ParsedFit> {
    let kv = parse_kv(text)?;
    let get = |key: &str| -> Result<&str> {
        kv.iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| GllError::Data(format!("missing key '{key}'")))
    };
    let num = |key: &str| -> Result<f64> {
        get(key)?.parse().map_err(|_| GllError::Data(format!("bad number for '{key}'")))
    };
    let flag = |key: &str| -> Result<bool> {
        get(key)?.parse().map_err(|_| GllError::Data(format!("bad flag for '{key}'")))
    };
    Ok(ParsedFit {
        theta: num("theta")?,
        lambda: num("lambda")?,
        p: num("p")?,
        loglik: num("loglik")?,
        score_norm: num("score_norm")?,
        converged: flag("converged")?,
        boundary_lambda: flag("boundary_lambda")?,
        boundary_p: flag("boundary_p")?,
    })
}

/// Premium formatting: 3 decimal places, round-half-even.
pub fn fmt_premium(v: f64) -> String {
    format!("{}", round_half_even(v, 3))
}

/// Round to `dp` decimals with ties to even, then format with exactly `dp`
/// digits.
fn round_half_even(v: f64, dp: u32) -> FixedDecimal {
    let scale = 10f64.powi(dp as i32);
    let scaled = v * scale;
    let floor = scaled.floor();
    let frac = scaled - floor;
    let rounded = if (frac - 0.5).abs() < 1e-9 {
        // tie: choose the even neighbour
        if (floor as i64) % 2 == 0 {
            floor
        } else {
            floor + 1.0
        }
    } else {
        scaled.round()
    };
    FixedDecimal { value: rounded / scale, dp }
}

pub struct FixedDecimal {
    value: f64,
    dp: u32,
}

impl std::fmt::Display for FixedDecimal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.*}", self.dp as usize, self.value)
    }
}

/// Density-like values: 6 decimal places.
pub fn fmt_density(v: f64) -> String {
    format!("{v:.6}")
}

/// Estimates: 4 decimal places.
pub fn fmt_estimate(v: f64) -> String {
    format!("{v:.4}")
}

/// Coefficients: 6 decimal places (at least four significant figures for
/// magnitudes down to 1e-3).
pub fn fmt_coefficient(v: f64) -> String {
    format!("{v:.6}")
}
