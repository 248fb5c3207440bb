//! Bounded-response regression.
//!
//! Two models map covariates into the unit-interval family:
//! the θ-link model sends the linear predictor through a logistic map to the
//! per-observation θ parameter (with common λ and p), and the mean-link
//! model sends it to the per-observation mean μ under the (μ, φ, γ)
//! parameterization.

use crate::dist::{GllParams, MeanParams};
use crate::error::{GllError, Result};
use crate::fit::{FitOptions, Sample};
use crate::optim::bfgs_maximize;
use nalgebra::DMatrix;
use std::path::Path;

/// Overflow-safe logistic map `exp(η)/(1+exp(η))`.
pub fn logistic(eta: f64) -> f64 {
    if eta >= 0.0 {
        1.0 / (1.0 + (-eta).exp())
    } else {
        let e = eta.exp();
        e / (1.0 + e)
    }
}

/// A regression dataset: responses strictly inside (0, 1) and a covariate
/// matrix with named columns. The intercept is implicit.
#[derive(Debug, Clone)]
pub struct Dataset {
    response: Vec<f64>,
    /// Row-major covariate matrix, n × k.
    covariates: Vec<Vec<f64>>,
    names: Vec<String>,
}

impl Dataset {
    pub fn new(response: Vec<f64>, covariates: Vec<Vec<f64>>, names: Vec<String>) -> Result<Self> {
        if response.is_empty() {
            return Err(GllError::Data("empty response".into()));
        }
        if covariates.len() != response.len() {
            return Err(GllError::Data(format!(
                "covariate rows ({}) do not match response length ({})",
                covariates.len(),
                response.len()
            )));
        }
        let k = names.len();
        for (i, row) in covariates.iter().enumerate() {
            if row.len() != k {
                return Err(GllError::Data(format!(
                    "row {i} has {} covariates, expected {k}",
                    row.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(GllError::Data(format!("non-finite covariate in row {i}")));
            }
        }
        for (i, &y) in response.iter().enumerate() {
            if !(y.is_finite() && 0.0 < y && y < 1.0) {
                return Err(GllError::Data(format!(
                    "response {i} = {y} is not strictly inside (0, 1); boundary observations \
                     can be shrunk with the (y(n-1)+0.5)/n convention, which is not applied \
                     automatically"
                )));
            }
        }
        Ok(Self { response, covariates, names })
    }

    /// Parse delimiter-separated text with a header row. The delimiter is
    /// sniffed between comma and tab; missing values are a hard error.
    /// `response_scale` multiplies the response column on ingestion.
    pub fn from_delimited_str(
        text: &str,
        response_col: &str,
        covariate_cols: &[String],
        response_scale: f64,
    ) -> Result<Self> {
        let header = text.lines().next().ok_or_else(|| GllError::Data("empty file".into()))?;
        let delim = if header.contains('\t') { b'\t' } else { b',' };
        let mut reader = csv::ReaderBuilder::new()
            .delimiter(delim)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let headers = reader.headers()?.clone();
        let col_index = |name: &str| -> Result<usize> {
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| GllError::Data(format!("column '{name}' not found in header")))
        };
        let ridx = col_index(response_col)?;
        let cidx: Vec<usize> =
            covariate_cols.iter().map(|c| col_index(c)).collect::<Result<_>>()?;

        let mut response = Vec::new();
        let mut covariates = Vec::new();
        for (line, record) in reader.records().enumerate() {
            let record = record?;
            let parse = |idx: usize| -> Result<f64> {
                let field = record.get(idx).unwrap_or("");
                if field.is_empty() {
                    return Err(GllError::Data(format!(
                        "missing value in data row {} column {}",
                        line + 1,
                        headers.get(idx).unwrap_or("?")
                    )));
                }
                field.parse::<f64>().map_err(|_| {
                    GllError::Data(format!("cannot parse '{field}' in data row {}", line + 1))
                })
            };
            response.push(parse(ridx)? * response_scale);
            covariates.push(cidx.iter().map(|&i| parse(i)).collect::<Result<Vec<f64>>>()?);
        }
        Self::new(response, covariates, covariate_cols.to_vec())
    }

    pub fn from_path(
        path: &Path,
        response_col: &str,
        covariate_cols: &[String],
        response_scale: f64,
    ) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_delimited_str(&text, response_col, covariate_cols, response_scale)
    }

    /// The same covariates with response `1 − y`.
    pub fn complement(&self) -> Self {
        Self {
            response: self.response.iter().map(|y| 1.0 - y).collect(),
            covariates: self.covariates.clone(),
            names: self.names.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.response.len()
    }

    pub fn is_empty(&self) -> bool {
        self.response.is_empty()
    }

    pub fn n_covariates(&self) -> usize {
        self.names.len()
    }

    pub fn response(&self) -> &[f64] {
        &self.response
    }

    pub fn covariate_names(&self) -> &[String] {
        &self.names
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.covariates[i]
    }

    fn eta(&self, i: usize, beta: &[f64]) -> f64 {
        let mut eta = beta[0];
        for (j, &x) in self.covariates[i].iter().enumerate() {
            eta += beta[j + 1] * x;
        }
        eta
    }
}

/// θ-link model: `θᵢ = logistic(xᵢᵀβ)` with common λ ≥ 0 and p ≥ 0.
#[derive(Debug, Clone)]
pub struct ThetaLinkModel {
    pub beta: Vec<f64>,
    pub lambda: f64,
    pub p: f64,
}

/// Mean-link model: `μᵢ = logistic(xᵢᵀβ)` with common φ > 0, γ ≥ 1; each
/// observation's parameters come from the (μᵢ, φ, γ) conversion.
#[derive(Debug, Clone)]
pub struct MeanLinkModel {
    pub beta: Vec<f64>,
    pub phi: f64,
    pub gamma: f64,
}

impl ThetaLinkModel {
    pub fn params_for(&self, eta: f64) -> Result<GllParams> {
        GllParams::new(logistic(eta), self.lambda, self.p)
    }

    /// Log-likelihood over the dataset.
    pub fn loglik(&self, data: &Dataset) -> Result<f64> {
        let mut total = 0.0;
        for i in 0..data.len() {
            let params = self.params_for(data.eta(i, &self.beta))?;
            total += params.ln_pdf(data.response[i]).map_err(|e| {
                GllError::Infeasible(format!("observation {i}: {e}"))
            })?;
        }
        Ok(total)
    }

    /// Predicted mean for one covariate row (length k, intercept implicit).
    pub fn predict(&self, row: &[f64]) -> Result<f64> {
        let mut eta = self.beta[0];
        for (j, &x) in row.iter().enumerate() {
            eta += self.beta[j + 1] * x;
        }
        Ok(self.params_for(eta)?.mean())
    }
}

impl MeanLinkModel {
    pub fn params_for(&self, eta: f64) -> Result<GllParams> {
        let mu = logistic(eta);
        let mp = MeanParams::new(mu, self.phi, self.gamma).map_err(|e| {
            GllError::Infeasible(format!("mu = {mu}: {e}"))
        })?;
        GllParams::from_mean(mp)
    }

    pub fn loglik(&self, data: &Dataset) -> Result<f64> {
        let mut total = 0.0;
        for i in 0..data.len() {
            let params = self.params_for(data.eta(i, &self.beta)).map_err(|e| {
                GllError::Infeasible(format!("observation {i}: {e}"))
            })?;
            total += params.ln_pdf(data.response[i])?;
        }
        Ok(total)
    }

    /// Predicted mean is the linked μ itself.
    pub fn predict(&self, row: &[f64]) -> Result<f64> {
        let mut eta = self.beta[0];
        for (j, &x) in row.iter().enumerate() {
            eta += self.beta[j + 1] * x;
        }
        let mu = logistic(eta);
        if mu * self.gamma >= 1.0 {
            return Err(GllError::Infeasible(format!("mu*gamma = {} >= 1", mu * self.gamma)));
        }
        Ok(mu)
    }
}

/// Per-observation score of the log-density in (θ, λ, p).
fn obs_score(params: &GllParams, y: f64) -> (f64, f64, f64) {
    let (theta, lambda, p) = (params.theta(), params.lambda(), params.p());
    let c = 1.0 + p + lambda * theta;
    let t = -y.ln();
    let s_theta = (2.0 + p) / theta - lambda / c + y.ln();
    let s_lambda = -theta / c + 1.0 / (lambda + t);
    let s_p =
        theta.ln() - crate::special::polygamma(0, 1.0 + p).expect("p+1 > 0") - 1.0 / c + t.ln();
    (s_theta, s_lambda, s_p)
}

/// Analytic gradient of the θ-link log-likelihood with respect to
/// (β₀…β_k, λ, p).
pub fn theta_model_gradient(model: &ThetaLinkModel, data: &Dataset) -> Result<Vec<f64>> {
    let k = data.n_covariates();
    let mut grad = vec![0.0; k + 3];
    for i in 0..data.len() {
        let eta = data.eta(i, &model.beta);
        let theta = logistic(eta);
        let params = model.params_for(eta)?;
        let (s_t, s_l, s_p) = obs_score(&params, data.response[i]);
        let dtheta_deta = theta * (1.0 - theta);
        grad[0] += s_t * dtheta_deta;
        for j in 0..k {
            grad[j + 1] += s_t * dtheta_deta * data.covariates[i][j];
        }
        grad[k + 1] += s_l;
        grad[k + 2] += s_p;
    }
    Ok(grad)
}

/// Derivatives of the (μ, φ, γ) → (θ, λ, p) conversion by implicit
/// differentiation of the defining quadratic
/// `(1−μγ)(1+φ)θ² − μγ(2+φ)θ − μγ = 0`.
struct MeanChain {
    params: GllParams,
    dtheta: [f64; 3], // d θ / d(μ, φ, γ)
    dp: [f64; 3],
    dlambda: [f64; 3],
}

fn mean_chain(mu: f64, phi: f64, gamma: f64) -> Result<MeanChain> {
    let params = GllParams::from_mean(MeanParams::new(mu, phi, gamma)?)?;
    let theta = params.theta();
    let p = params.p();
    let poly = (1.0 + phi) * theta * theta + (2.0 + phi) * theta + 1.0;
    let q_theta = 2.0 * (1.0 - mu * gamma) * (1.0 + phi) * theta - mu * gamma * (2.0 + phi);
    let q_mu = -gamma * poly;
    let q_phi = (1.0 - mu * gamma) * theta * theta - mu * gamma * theta;
    let q_gamma = -mu * poly;
    let dtheta = [-q_mu / q_theta, -q_phi / q_theta, -q_gamma / q_theta];

    let cap_l = ((1.0 + theta) / theta).ln();
    // ∂p/∂θ = ln γ / (L² θ(1+θ)); ∂p/∂γ(direct) = 1/(γL)
    let dp_dtheta = gamma.ln() / (cap_l * cap_l * theta * (1.0 + theta));
    let mut dp = [dp_dtheta * dtheta[0], dp_dtheta * dtheta[1], dp_dtheta * dtheta[2]];
    dp[2] += 1.0 / (gamma * cap_l);

    // λ = (1+p)φ/(1+θ)
    let lam_p = phi / (1.0 + theta);
    let lam_theta = -(1.0 + p) * phi / ((1.0 + theta) * (1.0 + theta));
    let mut dlambda = [
        lam_p * dp[0] + lam_theta * dtheta[0],
        lam_p * dp[1] + lam_theta * dtheta[1],
        lam_p * dp[2] + lam_theta * dtheta[2],
    ];
    dlambda[1] += (1.0 + p) / (1.0 + theta);
    Ok(MeanChain { params, dtheta, dp, dlambda })
}

/// Analytic gradient of the mean-link log-likelihood with respect to
/// (β₀…β_k, φ, γ).
pub fn mean_model_gradient(model: &MeanLinkModel, data: &Dataset) -> Result<Vec<f64>> {
    let k = data.n_covariates();
    let mut grad = vec![0.0; k + 3];
    for i in 0..data.len() {
        let eta = data.eta(i, &model.beta);
        let mu = logistic(eta);
        let chain = mean_chain(mu, model.phi, model.gamma)
            .map_err(|e| GllError::Infeasible(format!("observation {i}: {e}")))?;
        let (s_t, s_l, s_p) = obs_score(&chain.params, data.response[i]);
        // d log f / d(μ, φ, γ)
        let dmu = s_t * chain.dtheta[0] + s_l * chain.dlambda[0] + s_p * chain.dp[0];
        let dphi = s_t * chain.dtheta[1] + s_l * chain.dlambda[1] + s_p * chain.dp[1];
        let dgamma = s_t * chain.dtheta[2] + s_l * chain.dlambda[2] + s_p * chain.dp[2];
        let dmu_deta = mu * (1.0 - mu);
        grad[0] += dmu * dmu_deta;
        for j in 0..k {
            grad[j + 1] += dmu * dmu_deta * data.covariates[i][j];
        }
        grad[k + 1] += dphi;
        grad[k + 2] += dgamma;
    }
    Ok(grad)
}

/// Options for the regression fits.
#[derive(Debug, Clone)]
pub struct RegressOptions {
    pub max_iterations: usize,
    pub grad_tolerance: f64,
    /// θ-link: pin p (e.g. 0 for the Log-Lindley row).
    pub fix_p: Option<f64>,
    /// mean-link: pin γ (e.g. 1 for the Log-Lindley row).
    pub fix_gamma: Option<f64>,
}

impl Default for RegressOptions {
    fn default() -> Self {
        Self { max_iterations: 3000, grad_tolerance: 1e-6, fix_p: None, fix_gamma: None }
    }
}

/// Fit diagnostics shared by both models.
#[derive(Debug, Clone)]
pub struct RegressionFit<M> {
    pub model: M,
    pub loglik: f64,
    /// Asymptotic standard errors of (β₀…β_k, aux1, aux2) from the observed
    /// information (numeric Hessian); pinned coordinates report 0.
    pub std_errors: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
    pub boundary: bool,
}

fn check_design(data: &Dataset) -> Result<()> {
    let k = data.n_covariates();
    if data.len() <= k + 3 {
        return Err(GllError::Data(format!(
            "need more than k+3 = {} observations, got {}",
            k + 3,
            data.len()
        )));
    }
    // rank check on the design matrix (with intercept)
    let n = data.len();
    let mut m = DMatrix::zeros(n, k + 1);
    for i in 0..n {
        m[(i, 0)] = 1.0;
        for j in 0..k {
            m[(i, j + 1)] = data.covariates[i][j];
        }
    }
    let svd = m.svd(false, false);
    let max_sv = svd.singular_values.max();
    let min_sv = svd.singular_values.min();
    if min_sv <= max_sv * 1e-12 {
        return Err(GllError::Data("rank-deficient design matrix".into()));
    }
    Ok(())
}

/// Numeric Hessian of `f` at `x` by central differences.
fn numeric_hessian<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64]) -> DMatrix<f64> {
    let n = x.len();
    let mut h = DMatrix::zeros(n, n);
    let step: Vec<f64> = x.iter().map(|v| 1e-4 * (1.0 + v.abs())).collect();
    let f0 = f(x);
    for i in 0..n {
        for j in i..n {
            let mut xpp = x.to_vec();
            let mut xpm = x.to_vec();
            let mut xmp = x.to_vec();
            let mut xmm = x.to_vec();
            if i == j {
                xpp[i] += step[i];
                xmm[i] -= step[i];
                let v = (f(&xpp) - 2.0 * f0 + f(&xmm)) / (step[i] * step[i]);
                h[(i, i)] = v;
            } else {
                xpp[i] += step[i];
                xpp[j] += step[j];
                xpm[i] += step[i];
                xpm[j] -= step[j];
                xmp[i] -= step[i];
                xmp[j] += step[j];
                xmm[i] -= step[i];
                xmm[j] -= step[j];
                let v = (f(&xpp) - f(&xpm) - f(&xmp) + f(&xmm)) / (4.0 * step[i] * step[j]);
                h[(i, j)] = v;
                h[(j, i)] = v;
            }
        }
    }
    h
}

/// Standard errors from the numeric observed information over the free
/// coordinates; `pinned[i]` entries are reported as 0.
fn std_errors_from_hessian<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64], pinned: &[bool]) -> Vec<f64> {
    let free: Vec<usize> = (0..x.len()).filter(|&i| !pinned[i]).collect();
    let g = |z: &[f64]| {
        let mut full = x.to_vec();
        for (a, &i) in free.iter().enumerate() {
            full[i] = z[a];
        }
        f(&full)
    };
    let z0: Vec<f64> = free.iter().map(|&i| x[i]).collect();
    let h = numeric_hessian(&g, &z0);
    let info = -h;
    let mut out = vec![0.0; x.len()];
    if let Some(cov) = info.try_inverse() {
        for (a, &i) in free.iter().enumerate() {
            let v = cov[(a, a)];
            out[i] = if v > 0.0 { v.sqrt() } else { f64::NAN };
        }
    } else {
        for &i in &free {
            out[i] = f64::NAN;
        }
    }
    out
}

/// Deterministic starting points for the θ-link model.
fn theta_starts(data: &Dataset, fix_p: Option<f64>) -> Vec<(Vec<f64>, f64, f64)> {
    let k = data.n_covariates();
    let mut starts = Vec::new();
    // moment start from a plain univariate fit
    if let Ok(sample) = Sample::new(data.response.to_vec()) {
        let opts = FitOptions { fix_p_zero: fix_p == Some(0.0), ..Default::default() };
        if let Ok(fit) = crate::fit::fit_mle(&sample, &opts) {
            let theta0 = fit.params.theta().clamp(0.02, 0.98);
            let mut beta = vec![0.0; k + 1];
            beta[0] = (theta0 / (1.0 - theta0)).ln();
            starts.push((
                beta,
                fit.params.lambda().clamp(1e-3, 1e3),
                fix_p.unwrap_or(fit.params.p().clamp(1e-3, 50.0)),
            ));
        }
    }
    let mut b0 = vec![0.0; k + 1];
    starts.push((b0.clone(), 0.5, fix_p.unwrap_or(0.5)));
    b0[0] = 2.0;
    starts.push((b0, 1.0, fix_p.unwrap_or(2.0)));
    starts
}

/// Maximum-likelihood fit of the θ-link model.
pub fn fit_theta_model(data: &Dataset, options: &RegressOptions) -> Result<RegressionFit<ThetaLinkModel>> {
    check_design(data)?;
    let k = data.n_covariates();
    let fix_p = options.fix_p;

    // packed coordinates: (β..., ln λ [, ln p if free])
    let build = |z: &[f64]| -> ThetaLinkModel {
        ThetaLinkModel {
            beta: z[..k + 1].to_vec(),
            lambda: z[k + 1].exp(),
            p: fix_p.unwrap_or_else(|| z[k + 2].exp()),
        }
    };
    let f = |z: &[f64]| build(z).loglik(data).unwrap_or(f64::NEG_INFINITY);
    let g = |z: &[f64]| {
        let model = build(z);
        match theta_model_gradient(&model, data) {
            Ok(grad) => {
                let mut out = grad[..k + 1].to_vec();
                out.push(grad[k + 1] * model.lambda);
                if fix_p.is_none() {
                    out.push(grad[k + 2] * model.p);
                }
                out
            }
            Err(_) => vec![0.0; if fix_p.is_none() { k + 3 } else { k + 2 }],
        }
    };

    let mut best: Option<crate::optim::OptimResult> = None;
    for (beta, lam, p) in theta_starts(data, fix_p) {
        let mut z = beta;
        z.push(lam.max(1e-8).ln());
        if fix_p.is_none() {
            z.push(p.max(1e-8).ln());
        }
        let r = bfgs_maximize(&f, &g, &z, options.grad_tolerance, options.max_iterations);
        if best.as_ref().map_or(true, |b| r.value > b.value + 1e-9) {
            best = Some(r);
        }
    }
    let best = best.expect("at least one start");
    let mut model = build(&best.x);
    let mut boundary = false;

    // p collapsing to 0 means the Log-Lindley sub-model: refit pinned
    if fix_p.is_none() && model.p < 1e-6 {
        let sub =
            fit_theta_model(data, &RegressOptions { fix_p: Some(0.0), ..options.clone() })?;
        if sub.loglik >= best.value - 1e-7 {
            let mut out = sub;
            out.boundary = true;
            return Ok(out);
        }
    }
    if fix_p.is_some() {
        boundary = true;
    }

    let loglik = model.loglik(data)?;
    // standard errors in natural coordinates (β..., λ, p)
    let nat = |v: &[f64]| {
        ThetaLinkModel { beta: v[..k + 1].to_vec(), lambda: v[k + 1].max(1e-12), p: v[k + 2].max(0.0) }
            .loglik(data)
            .unwrap_or(f64::NEG_INFINITY)
    };
    let mut x_nat: Vec<f64> = model.beta.clone();
    x_nat.push(model.lambda);
    x_nat.push(model.p);
    let mut pinned = vec![false; k + 3];
    pinned[k + 2] = fix_p.is_some() || model.p < 1e-6;
    let std_errors = std_errors_from_hessian(&nat, &x_nat, &pinned);

    if let Some(pv) = fix_p {
        model.p = pv;
    }
    Ok(RegressionFit {
        model,
        loglik,
        std_errors,
        converged: best.converged,
        iterations: best.iterations,
        boundary,
    })
}

/// Deterministic starting points for the mean-link model.
fn mean_starts(data: &Dataset, fix_gamma: Option<f64>) -> Vec<(Vec<f64>, f64, f64)> {
    let k = data.n_covariates();
    let ybar: f64 = data.response.iter().sum::<f64>() / data.len() as f64;
    let mut beta = vec![0.0; k + 1];
    beta[0] = (ybar / (1.0 - ybar)).ln();
    let gamma_mid = fix_gamma.unwrap_or(1.2);
    vec![
        (beta.clone(), 1.0, gamma_mid),
        (beta.clone(), 0.1, fix_gamma.unwrap_or(1.02)),
        (beta, 10.0, gamma_mid),
    ]
}

/// Maximum-likelihood fit of the mean-link model under the feasibility
/// constraint `γ < 1/maxᵢ μᵢ`, enforced by rejecting infeasible iterates in
/// the line search (γ is optimized as `1 + e^h`).
pub fn fit_mean_model(data: &Dataset, options: &RegressOptions) -> Result<RegressionFit<MeanLinkModel>> {
    check_design(data)?;
    let k = data.n_covariates();
    let fix_gamma = options.fix_gamma;

    let build = |z: &[f64]| -> MeanLinkModel {
        MeanLinkModel {
            beta: z[..k + 1].to_vec(),
            phi: z[k + 1].exp(),
            gamma: fix_gamma.unwrap_or_else(|| 1.0 + z[k + 2].exp()),
        }
    };
    let f = |z: &[f64]| build(z).loglik(data).unwrap_or(f64::NEG_INFINITY);
    let g = |z: &[f64]| {
        let model = build(z);
        match mean_model_gradient(&model, data) {
            Ok(grad) => {
                let mut out = grad[..k + 1].to_vec();
                out.push(grad[k + 1] * model.phi);
                if fix_gamma.is_none() {
                    out.push(grad[k + 2] * (model.gamma - 1.0));
                }
                out
            }
            Err(_) => vec![0.0; if fix_gamma.is_none() { k + 3 } else { k + 2 }],
        }
    };

    // infeasible starts get backed off before optimization
    let feasible_start = |beta: &[f64], gamma: f64| -> bool {
        (0..data.len()).all(|i| logistic(data.eta(i, beta)) * gamma < 1.0)
    };

    let mut best: Option<crate::optim::OptimResult> = None;
    for (beta, phi, mut gamma) in mean_starts(data, fix_gamma) {
        let mut guard = 0;
        while !feasible_start(&beta, gamma) && guard < 60 {
            gamma = 1.0 + 0.5 * (gamma - 1.0);
            guard += 1;
        }
        if !feasible_start(&beta, gamma) {
            continue;
        }
        let mut z = beta;
        z.push(phi.ln());
        if fix_gamma.is_none() {
            z.push((gamma - 1.0).max(1e-9).ln());
        }
        let r = bfgs_maximize(&f, &g, &z, options.grad_tolerance, options.max_iterations);
        if best.as_ref().map_or(true, |b| r.value > b.value + 1e-9) {
            best = Some(r);
        }
    }
    let best = best.ok_or_else(|| {
        GllError::Infeasible("no feasible starting point for the mean-link model".into())
    })?;
    let model = build(&best.x);
    let mut boundary = fix_gamma.is_some();

    // γ collapsing to 1 means the Log-Lindley sub-model: refit pinned
    if fix_gamma.is_none() && model.gamma - 1.0 < 1e-6 {
        let sub =
            fit_mean_model(data, &RegressOptions { fix_gamma: Some(1.0), ..options.clone() })?;
        if sub.loglik >= best.value - 1e-7 {
            let mut out = sub;
            out.boundary = true;
            return Ok(out);
        }
    }
    if fix_gamma == Some(1.0) {
        boundary = true;
    }

    let loglik = model.loglik(data)?;
    let nat = |v: &[f64]| {
        MeanLinkModel {
            beta: v[..k + 1].to_vec(),
            phi: v[k + 1].max(1e-12),
            gamma: v[k + 2].max(1.0),
        }
        .loglik(data)
        .unwrap_or(f64::NEG_INFINITY)
    };
    let mut x_nat: Vec<f64> = model.beta.clone();
    x_nat.push(model.phi);
    x_nat.push(model.gamma);
    let mut pinned = vec![false; k + 3];
    pinned[k + 2] = fix_gamma.is_some() || model.gamma - 1.0 < 1e-6;
    let std_errors = std_errors_from_hessian(&nat, &x_nat, &pinned);

    Ok(RegressionFit {
        model,
        loglik,
        std_errors,
        converged: best.converged,
        iterations: best.iterations,
        boundary,
    })
}
