//! Command-line front end for the generalized Log-Lindley toolkit.
//!
//! Subcommands: `eval`, `sample`, `fit`, `regress`, `premium`, `grid`,
//! `check`. Exit codes: 0 success, 1 domain or validation error, 2 numeric
//! non-convergence. All output is deterministic given the flags (including
//! `--seed`).

pub mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gll::analysis::CheckOutcome;
use gll::regress::{fit_mean_model, fit_theta_model, Dataset, RegressOptions};
use gll::{
    analysis, premium, sample, FitOptions, GllError, GllParams, MeanParams, PiParams, Result,
    RngState, Sample,
};
use output::{
    emit_kv, emit_table, fit_to_kv, fmt_coefficient, fmt_density, fmt_estimate, fmt_premium,
    Format,
};
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "gll", version, about = "Generalized Log-Lindley distribution toolkit")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Delimited)]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Shape parameter θ > 0.
    #[arg(long)]
    theta: Option<f64>,
    /// λ ≥ 0.
    #[arg(long)]
    lambda: Option<f64>,
    /// Index parameter p ≥ 0.
    #[arg(long)]
    p: Option<f64>,
    /// Bounded alternative to λ: π = λθ/(1+λθ) ∈ [0, 1).
    #[arg(long)]
    pi: Option<f64>,
    /// Mean-parameterization mean μ ∈ (0, 1); requires --phi and --gamma.
    #[arg(long)]
    mu: Option<f64>,
    /// Mean-parameterization dispersion φ > 0.
    #[arg(long)]
    phi: Option<f64>,
    /// Mean-parameterization shape γ ∈ [1, 1/μ).
    #[arg(long)]
    gamma: Option<f64>,
}

impl ParamArgs {
    fn resolve(&self) -> Result<GllParams> {
        if let (Some(mu), Some(phi), Some(gamma)) = (self.mu, self.phi, self.gamma) {
            return GllParams::from_mean(MeanParams::new(mu, phi, gamma)?);
        }
        if self.mu.is_some() || self.phi.is_some() || self.gamma.is_some() {
            return Err(GllError::InvalidParams(
                "the mean parameterization needs all of --mu, --phi, --gamma".into(),
            ));
        }
        let theta = self
            .theta
            .ok_or_else(|| GllError::InvalidParams("--theta is required".into()))?;
        let p = self.p.unwrap_or(0.0);
        if let Some(pi) = self.pi {
            if self.lambda.is_some() {
                return Err(GllError::InvalidParams("give either --lambda or --pi".into()));
            }
            return GllParams::from_pi(PiParams::new(theta, pi, p)?);
        }
        GllParams::new(theta, self.lambda.unwrap_or(0.0), p)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum EvalWhat {
    Pdf,
    Cdf,
    Sf,
    Hazard,
    Moment,
    Entropy,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GridWhat {
    Pdf,
    Cdf,
    Hazard,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModelKind {
    Theta,
    Mean,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate pdf/cdf/survival/hazard/moment/entropy at points.
    Eval {
        #[command(flatten)]
        params: ParamArgs,
        /// Evaluation points in (0, 1), comma-separated.
        #[arg(long, value_delimiter = ',')]
        x: Vec<f64>,
        #[arg(long, value_enum)]
        what: EvalWhat,
        /// Moment order (for --what moment).
        #[arg(long, default_value_t = 1.0)]
        r: f64,
    },
    /// Draw a reproducible sample.
    Sample {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(short = 'n', long, default_value_t = 10)]
        n: usize,
        /// RNG seed (required: no wall-clock default).
        #[arg(long)]
        seed: u64,
    },
    /// Maximum-likelihood fit of (θ, λ, p) to a data file.
    Fit {
        file: PathBuf,
        /// Response column name (default: first column).
        #[arg(long)]
        response: Option<String>,
        /// Multiply the response by this factor on ingestion.
        #[arg(long, default_value_t = 1.0)]
        response_scale: f64,
        /// Model 1 − Y instead of Y.
        #[arg(long)]
        complement: bool,
        /// Fit the p = 0 (Log-Lindley) sub-model.
        #[arg(long)]
        fix_p_zero: bool,
    },
    /// Bounded-response regression (θ-link or mean-link).
    Regress {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModelKind::Theta)]
        model: ModelKind,
        #[arg(long)]
        response: String,
        /// Covariate column names, comma-separated.
        #[arg(long, value_delimiter = ',')]
        covariates: Vec<String>,
        #[arg(long, default_value_t = 1.0)]
        response_scale: f64,
        /// Model 1 − Y instead of Y.
        #[arg(long)]
        complement: bool,
        /// θ-link: pin p (0 gives the Log-Lindley row).
        #[arg(long)]
        fix_p: Option<f64>,
        /// Mean-link: pin γ (1 gives the Log-Lindley row).
        #[arg(long)]
        fix_gamma: Option<f64>,
    },
    /// Distortion premiums: a single cell or the full reference table.
    Premium {
        /// `table1` reproduces the full reference table.
        table: Option<String>,
        /// Risk spec, e.g. exponential:rate=0.5 or weibull:shape=1.5,scale=0.5
        /// or inverse_gaussian:mean=2.5,scale=0.5.
        #[arg(long)]
        risk: Option<String>,
        /// Proportional-hazard exponent n ∈ (0, 1].
        #[arg(long)]
        ph: Option<f64>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Emit a plot-ready grid of pdf/cdf/hazard values over (0, 1).
    Grid {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum)]
        what: GridWhat,
        #[arg(short = 'n', long, default_value_t = 200)]
        n: usize,
    },
    /// Run the structural-property verification suite.
    Check {
        #[arg(long, default_value_t = 2048)]
        grid_size: usize,
    },
}

/// Parse `kind:key=val,key=val` risk specifications.
fn parse_risk(spec: &str) -> Result<premium::RiskModel> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| GllError::Data(format!("risk spec '{spec}' must look like kind:key=val")))?;
    let mut kv = std::collections::BTreeMap::new();
    for part in rest.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| GllError::Data(format!("bad risk parameter '{part}'")))?;
        let value: f64 = v
            .parse()
            .map_err(|_| GllError::Data(format!("bad numeric value in risk spec: '{v}'")))?;
        kv.insert(k.trim().to_string(), value);
    }
    let get = |key: &str| -> Result<f64> {
        kv.get(key).copied().ok_or_else(|| GllError::Data(format!("risk spec needs '{key}='")))
    };
    match kind.trim().to_ascii_lowercase().as_str() {
        "exponential" | "exp" => Ok(premium::RiskModel::Exponential { rate: get("rate")? }),
        "weibull" => Ok(premium::RiskModel::Weibull { shape: get("shape")?, scale: get("scale")? }),
        "inverse_gaussian" | "inverse-gaussian" | "inv-gaussian" | "ig" => {
            // the second parameter is labelled "scale" in the reference table
            let shape = kv.get("scale").or_else(|| kv.get("shape")).copied().ok_or_else(|| {
                GllError::Data("inverse_gaussian risk needs 'scale=' (or 'shape=')".into())
            })?;
            Ok(premium::RiskModel::InverseGaussian { mean: get("mean")?, shape })
        }
        other => Err(GllError::Data(format!("unknown risk kind '{other}'"))),
    }
}

fn run_eval(params: &ParamArgs, xs: &[f64], what: EvalWhat, r: f64, format: Format) -> Result<String> {
    let p = params.resolve()?;
    match what {
        EvalWhat::Pdf | EvalWhat::Cdf | EvalWhat::Sf | EvalWhat::Hazard => {
            if xs.is_empty() {
                return Err(GllError::Data("--x is required for pointwise evaluation".into()));
            }
            let name = match what {
                EvalWhat::Pdf => "pdf",
                EvalWhat::Cdf => "cdf",
                EvalWhat::Sf => "sf",
                EvalWhat::Hazard => "hazard",
                _ => unreachable!(),
            };
            let mut rows = Vec::new();
            let mut pairs = Vec::new();
            for &x in xs {
                let v = match what {
                    EvalWhat::Pdf => p.pdf(x)?,
                    EvalWhat::Cdf => p.cdf(x)?,
                    EvalWhat::Sf => p.survival(x)?,
                    EvalWhat::Hazard => p.hazard(x)?,
                    _ => unreachable!(),
                };
                rows.push(vec![format!("{x}"), fmt_density(v)]);
                pairs.push((format!("{name}[{x}]"), format!("{v}")));
            }
            Ok(match format {
                Format::Delimited => emit_table(&["x", name], &rows),
                Format::Structured => emit_kv(&pairs),
            })
        }
        EvalWhat::Moment => {
            let v = p.moment(r)?;
            Ok(match format {
                Format::Delimited => emit_table(
                    &["quantity", "value"],
                    &[vec![format!("moment[{r}]"), fmt_density(v)]],
                ),
                Format::Structured => emit_kv(&[(format!("moment[{r}]"), format!("{v}"))]),
            })
        }
        EvalWhat::Entropy => {
            let numeric = p.entropy_numeric()?;
            let closed = p.entropy_closed().ok();
            let value = closed.as_ref().map_or(numeric, |c| c.value);
            match format {
                Format::Delimited => {
                    let mut rows = vec![vec!["entropy".to_string(), fmt_density(value)]];
                    if let Some(c) = &closed {
                        if let Some(d) = &c.diagnostic {
                            rows.push(vec![
                                "closed_form_discrepancy".to_string(),
                                format!("{:.6e}", d.delta()),
                            ]);
                        }
                    }
                    Ok(emit_table(&["quantity", "value"], &rows))
                }
                Format::Structured => {
                    let mut pairs = vec![
                        ("entropy".to_string(), format!("{value}")),
                        ("entropy_numeric".to_string(), format!("{numeric}")),
                    ];
                    if let Some(c) = &closed {
                        pairs.push(("entropy_closed_form".to_string(), format!("{}", c.closed_form)));
                        pairs.push((
                            "closed_form_diagnostic".to_string(),
                            match &c.diagnostic {
                                Some(d) => d.quantity.to_string(),
                                None => "none".to_string(),
                            },
                        ));
                    }
                    Ok(emit_kv(&pairs))
                }
            }
        }
    }
}

fn run_sample(params: &ParamArgs, n: usize, seed: u64) -> Result<String> {
    let p = params.resolve()?;
    let mut rng = RngState::new(seed);
    let draws = sample::sample_gll(&p, n, &mut rng)?;
    let rows: Vec<Vec<String>> = draws.iter().map(|d| vec![format!("{d}")]).collect();
    Ok(emit_table(&["draw"], &rows))
}

fn load_univariate(
    file: &PathBuf,
    response: Option<&str>,
    scale: f64,
    complement: bool,
) -> Result<Sample> {
    let text = std::fs::read_to_string(file)?;
    let header = text.lines().next().ok_or_else(|| GllError::Data("empty file".into()))?;
    let delim = if header.contains('\t') { '\t' } else { ',' };
    let first_col = header
        .split(delim)
        .next()
        .map(|s| s.trim().to_string())
        .ok_or_else(|| GllError::Data("empty header".into()))?;
    let col = response.map(str::to_string).unwrap_or(first_col);
    let data = Dataset::from_delimited_str(&text, &col, &[], scale)?;
    let data = if complement { data.complement() } else { data };
    Sample::new(data.response().to_vec())
}

fn run_fit(
    file: &PathBuf,
    response: Option<&str>,
    scale: f64,
    complement: bool,
    fix_p_zero: bool,
    format: Format,
) -> Result<String> {
    let sample = load_univariate(file, response, scale, complement)?;
    let options = FitOptions { fix_p_zero, ..Default::default() };
    let fit = gll::fit::fit_mle(&sample, &options)?;
    match format {
        Format::Structured => Ok(emit_kv(&fit_to_kv(&fit))),
        Format::Delimited => {
            let se = |i: usize| match &fit.covariance {
                Some(cov) if cov[(i, i)] > 0.0 => fmt_estimate(cov[(i, i)].sqrt()),
                _ => "NA".to_string(),
            };
            let rows = vec![
                vec!["theta".into(), fmt_estimate(fit.params.theta()), se(0)],
                vec!["lambda".into(), fmt_estimate(fit.params.lambda()), se(1)],
                vec!["p".into(), fmt_estimate(fit.params.p()), se(2)],
                vec!["loglik".into(), fmt_estimate(fit.loglik), String::new()],
                vec!["converged".into(), fit.converged.to_string(), String::new()],
                vec![
                    "boundary".into(),
                    format!(
                        "lambda={} p={}",
                        fit.boundary_lambda as u8, fit.boundary_p as u8
                    ),
                    String::new(),
                ],
            ];
            Ok(emit_table(&["quantity", "estimate", "std_error"], &rows))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_regress(
    file: &PathBuf,
    model: ModelKind,
    response: &str,
    covariates: &[String],
    scale: f64,
    complement: bool,
    fix_p: Option<f64>,
    fix_gamma: Option<f64>,
    format: Format,
) -> Result<String> {
    let data = Dataset::from_path(file, response, covariates, scale)?;
    let data = if complement { data.complement() } else { data };
    let mut names = vec!["intercept".to_string()];
    names.extend(covariates.iter().cloned());

    let (coefs, aux, loglik, converged, se): (Vec<f64>, Vec<(String, f64)>, f64, bool, Vec<f64>) =
        match model {
            ModelKind::Theta => {
                let options = RegressOptions { fix_p, ..Default::default() };
                let fit = fit_theta_model(&data, &options)?;
                (
                    fit.model.beta.clone(),
                    vec![("lambda".into(), fit.model.lambda), ("p".into(), fit.model.p)],
                    fit.loglik,
                    fit.converged,
                    fit.std_errors,
                )
            }
            ModelKind::Mean => {
                let options = RegressOptions { fix_gamma, ..Default::default() };
                let fit = fit_mean_model(&data, &options)?;
                (
                    fit.model.beta.clone(),
                    vec![("phi".into(), fit.model.phi), ("gamma".into(), fit.model.gamma)],
                    fit.loglik,
                    fit.converged,
                    fit.std_errors,
                )
            }
        };

    match format {
        Format::Structured => {
            let mut pairs = Vec::new();
            for (name, b) in names.iter().zip(&coefs) {
                pairs.push((format!("beta[{name}]"), format!("{b}")));
            }
            for (name, v) in &aux {
                pairs.push((name.clone(), format!("{v}")));
            }
            pairs.push(("loglik".into(), format!("{loglik}")));
            pairs.push(("converged".into(), format!("{converged}")));
            Ok(emit_kv(&pairs))
        }
        Format::Delimited => {
            let mut rows = Vec::new();
            for (i, (name, b)) in names.iter().zip(&coefs).enumerate() {
                rows.push(vec![
                    format!("beta[{name}]"),
                    fmt_coefficient(*b),
                    fmt_coefficient(se.get(i).copied().unwrap_or(f64::NAN)),
                ]);
            }
            for (j, (name, v)) in aux.iter().enumerate() {
                rows.push(vec![
                    name.clone(),
                    fmt_coefficient(*v),
                    fmt_coefficient(se.get(coefs.len() + j).copied().unwrap_or(f64::NAN)),
                ]);
            }
            rows.push(vec!["loglik".into(), fmt_estimate(loglik), String::new()]);
            rows.push(vec!["converged".into(), converged.to_string(), String::new()]);
            Ok(emit_table(&["quantity", "estimate", "std_error"], &rows))
        }
    }
}

fn run_premium(
    table: Option<&str>,
    risk: Option<&str>,
    ph: Option<f64>,
    params: &ParamArgs,
    format: Format,
) -> Result<String> {
    if let Some(t) = table {
        if t != "table1" {
            return Err(GllError::Data(format!("unknown premium table '{t}' (try 'table1')")));
        }
        let table = premium::reference_table()?;
        let mut header: Vec<String> = vec!["risk".into()];
        for n in &table.ph_exponents {
            header.push(format!("ph_n={n}"));
        }
        for spec in &table.gll_specs {
            header.push(format!(
                "gll_p={}_theta={}_lambda={}",
                spec.p(),
                spec.theta(),
                spec.lambda()
            ));
        }
        let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
        let width = header.len();
        let mut rows = Vec::new();
        for (i, row) in table.rows.iter().enumerate() {
            for (at, label) in &table.sections {
                if *at == i {
                    let mut section = vec![label.clone()];
                    section.resize(width, String::new());
                    rows.push(section);
                }
            }
            let mut cells = vec![row.label.clone()];
            cells.extend(row.ph.iter().map(|v| fmt_premium(*v)));
            cells.extend(row.distorted.iter().map(|v| fmt_premium(*v)));
            rows.push(cells);
        }
        return Ok(emit_table(&header_refs, &rows));
    }

    let risk = parse_risk(
        risk.ok_or_else(|| GllError::Data("--risk is required for single premiums".into()))?,
    )?;
    let mut rows = Vec::new();
    let mut pairs = Vec::new();
    if let Some(n) = ph {
        let v = premium::ph_premium(&risk, n)?;
        rows.push(vec![format!("ph[n={n}]"), fmt_premium(v)]);
        pairs.push((format!("ph[n={n}]"), format!("{v}")));
    }
    if params.theta.is_some() || params.mu.is_some() {
        let spec = params.resolve()?;
        let v = premium::distorted_premium(&risk, &spec)?;
        let key = format!(
            "distorted[theta={},lambda={},p={}]",
            spec.theta(),
            spec.lambda(),
            spec.p()
        );
        rows.push(vec![key.clone(), fmt_premium(v)]);
        pairs.push((key, format!("{v}")));
    }
    if rows.is_empty() {
        return Err(GllError::Data(
            "give --ph and/or distortion parameters (--theta --lambda --p)".into(),
        ));
    }
    Ok(match format {
        Format::Delimited => emit_table(&["premium", "value"], &rows),
        Format::Structured => emit_kv(&pairs),
    })
}

fn run_grid(params: &ParamArgs, what: GridWhat, n: usize) -> Result<String> {
    let p = params.resolve()?;
    if n < 2 {
        return Err(GllError::Data("grid needs at least 2 points".into()));
    }
    let name = match what {
        GridWhat::Pdf => "pdf",
        GridWhat::Cdf => "cdf",
        GridWhat::Hazard => "hazard",
    };
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let x = i as f64 / (n + 1) as f64;
        let v = match what {
            GridWhat::Pdf => p.pdf(x)?,
            GridWhat::Cdf => p.cdf(x)?,
            GridWhat::Hazard => p.hazard(x)?,
        };
        rows.push(vec![fmt_density(x), fmt_density(v)]);
    }
    Ok(emit_table(&["x", name], &rows))
}

fn run_check(grid_size: usize) -> Result<(String, bool)> {
    let results = analysis::run_full_suite(grid_size)?;
    let mut out = String::new();
    let mut all_ok = true;
    for (name, outcome) in results {
        let line = match outcome {
            CheckOutcome::Pass(_) => format!("PASS {name}"),
            CheckOutcome::NotApplicable(why) => format!("N/A  {name} ({why})"),
            CheckOutcome::Fail(report) => {
                all_ok = false;
                match report.first_violation {
                    Some((x, lhs, rhs)) => {
                        format!("FAIL {name} (first violation at x={x:.6e}: {lhs:.6e} vs {rhs:.6e})")
                    }
                    None => format!("FAIL {name}"),
                }
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    Ok((out, all_ok))
}

/// Parse arguments and run; returns (exit code, output text).
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own usage text; exit 1 on bad usage, 0 on
            // --help/--version
            let code = if e.use_stderr() { 1 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let format = cli.format;
    let result: Result<(String, i32)> = (|| {
        Ok(match &cli.command {
            Command::Eval { params, x, what, r } => {
                (run_eval(params, x, *what, *r, format)?, 0)
            }
            Command::Sample { params, n, seed } => (run_sample(params, *n, *seed)?, 0),
            Command::Fit { file, response, response_scale, complement, fix_p_zero } => (
                run_fit(file, response.as_deref(), *response_scale, *complement, *fix_p_zero, format)?,
                0,
            ),
            Command::Regress {
                file,
                model,
                response,
                covariates,
                response_scale,
                complement,
                fix_p,
                fix_gamma,
            } => (
                run_regress(
                    file,
                    *model,
                    response,
                    covariates,
                    *response_scale,
                    *complement,
                    *fix_p,
                    *fix_gamma,
                    format,
                )?,
                0,
            ),
            Command::Premium { table, risk, ph, params } => {
                (run_premium(table.as_deref(), risk.as_deref(), *ph, params, format)?, 0)
            }
            Command::Grid { params, what, n } => (run_grid(params, *what, *n)?, 0),
            Command::Check { grid_size } => {
                let (text, ok) = run_check(*grid_size)?;
                (text, if ok { 0 } else { 1 })
            }
        })
    })();
    match result {
        Ok((text, code)) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    return (1, format!("error: cannot write {}: {e}\n", path.display()));
                }
                return (code, String::new());
            }
            (code, text)
        }
        Err(e) => {
            let code = match &e {
                GllError::NonConvergence(_) | GllError::Overflow(_) => 2,
                _ => 1,
            };
            (code, format!("error: {e}\n"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        run(args.iter().map(|s| s.to_string()))
    }

    #[test]
    fn eval_pdf_example() {
        let (code, out) = run_str(&[
            "gll", "eval", "--theta", "1", "--lambda", "0", "--p", "0", "--x", "0.367879441",
            "--what", "pdf",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "x,pdf\n0.367879441,1.000000\n");
    }

    #[test]
    fn risk_spec_parsing() {
        assert_eq!(
            parse_risk("exponential:rate=0.5").unwrap(),
            premium::RiskModel::Exponential { rate: 0.5 }
        );
        assert_eq!(
            parse_risk("weibull:shape=1.5,scale=0.5").unwrap(),
            premium::RiskModel::Weibull { shape: 1.5, scale: 0.5 }
        );
        assert_eq!(
            parse_risk("inverse_gaussian:mean=2.5,scale=0.5").unwrap(),
            premium::RiskModel::InverseGaussian { mean: 2.5, shape: 0.5 }
        );
        assert!(parse_risk("pareto:alpha=2").is_err());
        assert!(parse_risk("exponential").is_err());
        assert!(parse_risk("exponential:rate=abc").is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        let (code, _) = run_str(&["gll", "frobnicate"]);
        assert_eq!(code, 1);
        let (code, _) = run_str(&["gll", "eval", "--what", "pdf"]); // missing --theta/--x
        assert_eq!(code, 1);
    }

    #[test]
    fn domain_errors_exit_one() {
        let (code, out) =
            run_str(&["gll", "eval", "--theta", "-1", "--x", "0.5", "--what", "pdf"]);
        assert_eq!(code, 1, "{out}");
        assert!(out.starts_with("error:"));
    }

    #[test]
    fn pi_parameterization_round_trip() {
        // π = 0.5 at θ = 1 is λ = 1
        let (_, a) = run_str(&[
            "gll", "eval", "--theta", "1", "--pi", "0.5", "--x", "0.4", "--what", "pdf",
        ]);
        let (_, b) = run_str(&[
            "gll", "eval", "--theta", "1", "--lambda", "1", "--x", "0.4", "--what", "pdf",
        ]);
        assert_eq!(a, b);
    }
}
