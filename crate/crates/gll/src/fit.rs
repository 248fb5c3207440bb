//! Maximum-likelihood estimation with analytic score, Hessian and Fisher
//! information.
//!
//! The optimizer works in (log θ, log λ, log p) so the positivity
//! constraints disappear; fits that drift to the λ → 0 or p → 0 boundary
//! are refit on the corresponding sub-model and flagged.

use crate::dist::{integral_p, GllParams};
use crate::error::{GllError, Result};
use crate::optim::bfgs_maximize;
use crate::quad;
use crate::special;
use nalgebra::{Matrix3, Vector3};

/// A validated sample: every value strictly inside (0, 1).
#[derive(Debug, Clone)]
pub struct Sample {
    values: Vec<f64>,
    /// −log xᵢ, cached for the likelihood sums.
    neg_logs: Vec<f64>,
    sum_log_x: f64,
    sum_log_neg_log: f64,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(GllError::Data("sample must contain at least one value".into()));
        }
        for (i, &v) in values.iter().enumerate() {
            if !(v.is_finite() && 0.0 < v && v < 1.0) {
                return Err(GllError::Data(format!(
                    "observation {i} = {v} is outside the open interval (0, 1)"
                )));
            }
        }
        let neg_logs: Vec<f64> = values.iter().map(|&v| -v.ln()).collect();
        let sum_log_x = -neg_logs.iter().sum::<f64>();
        let sum_log_neg_log = neg_logs.iter().map(|t| t.ln()).sum();
        Ok(Self { values, neg_logs, sum_log_x, sum_log_neg_log })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn n(&self) -> f64 {
        self.values.len() as f64
    }
}

/// Options controlling `fit_mle`.
#[derive(Debug, Clone)]
pub struct FitOptions {
    pub max_iterations: usize,
    /// Convergence threshold on ‖score‖∞ in natural coordinates.
    pub score_tolerance: f64,
    /// Fix λ = 0 (fit the sub-model).
    pub fix_lambda_zero: bool,
    /// Fix p = 0 (fit the Log-Lindley sub-model).
    pub fix_p_zero: bool,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            score_tolerance: 1e-6,
            fix_lambda_zero: false,
            fix_p_zero: false,
        }
    }
}

/// Maximum-likelihood fit output.
#[derive(Debug, Clone)]
pub struct FitResult {
    pub params: GllParams,
    pub loglik: f64,
    /// ‖score‖∞ over the free coordinates at the reported optimum.
    pub score_norm: f64,
    /// Negative Hessian of the log-likelihood at the estimate.
    pub observed_info: Matrix3<f64>,
    /// Fisher information at the estimate (λ > 0 only).
    pub expected_info: Option<Matrix3<f64>>,
    /// Inverse of the observed information over the free coordinates.
    pub covariance: Option<Matrix3<f64>>,
    pub converged: bool,
    /// λ was pinned at the boundary 0.
    pub boundary_lambda: bool,
    /// p was pinned at the boundary 0.
    pub boundary_p: bool,
    pub iterations: usize,
}

/// Log-likelihood of the sample under the given parameters.
pub fn log_likelihood(params: &GllParams, data: &Sample) -> f64 {
    let (theta, lambda, p) = (params.theta(), params.lambda(), params.p());
    let n = data.n();
    let mut sum_log_lam = 0.0;
    for &t in &data.neg_logs {
        sum_log_lam += (lambda + t).ln();
    }
    n * (2.0 + p) * theta.ln()
        - n * special::log_gamma(1.0 + p).expect("p + 1 > 0")
        - n * params.c().ln()
        + p * data.sum_log_neg_log
        + sum_log_lam
        + (theta - 1.0) * data.sum_log_x
}

/// Analytic score (∂l/∂θ, ∂l/∂λ, ∂l/∂p).
pub fn score(params: &GllParams, data: &Sample) -> Vector3<f64> {
    let (theta, lambda, p) = (params.theta(), params.lambda(), params.p());
    let n = data.n();
    let c = params.c();
    let mut sum_inv = 0.0;
    for &t in &data.neg_logs {
        sum_inv += 1.0 / (lambda + t);
    }
    Vector3::new(
        n * (2.0 + p) / theta - n * lambda / c + data.sum_log_x,
        -n * theta / c + sum_inv,
        n * theta.ln() - n * special::polygamma(0, 1.0 + p).expect("p + 1 > 0") - n / c
            + data.sum_log_neg_log,
    )
}

/// Analytic Hessian of the log-likelihood.
pub fn observed_hessian(params: &GllParams, data: &Sample) -> Matrix3<f64> {
    let (theta, lambda, p) = (params.theta(), params.lambda(), params.p());
    let n = data.n();
    let c = params.c();
    let c2 = c * c;
    let mut sum_inv2 = 0.0;
    for &t in &data.neg_logs {
        sum_inv2 += 1.0 / ((lambda + t) * (lambda + t));
    }
    let h11 = -n * (2.0 + p) / (theta * theta) + n * lambda * lambda / c2;
    let h12 = -n * (1.0 + p) / c2;
    let h13 = n / theta + n * lambda / c2;
    let h22 = n * theta * theta / c2 - sum_inv2;
    let h23 = n * theta / c2;
    let h33 = -n * special::polygamma(1, 1.0 + p).expect("p + 1 > 0") + n / c2;
    Matrix3::new(h11, h12, h13, h12, h22, h23, h13, h23, h33)
}

/// `E[(λ − log X)⁻²]` under the distribution. A finite sum of upper
/// incomplete gammas for integral `p`, quadrature otherwise; the integral-p
/// closed form is always cross-checked against the quadrature.
pub fn expected_inv_square(params: &GllParams) -> Result<f64> {
    let (theta, lambda, p) = (params.theta(), params.lambda(), params.p());
    if lambda <= 0.0 {
        return Err(GllError::Domain(
            "E[(lambda - log X)^-2] requires lambda > 0".into(),
        ));
    }
    let log_norm = params.log_norm();
    let by_quad = quad::integrate_semi_infinite(
        move |t| {
            if t <= 0.0 {
                return 0.0;
            }
            let p_term = if p == 0.0 { 0.0 } else { p * t.ln() };
            (log_norm + p_term - theta * t).exp() / (lambda + t)
        },
        1e-12,
        1e-11,
    )?
    .value;

    if let Some(m) = integral_p(p) {
        // θ^{2+p} e^{λθ} / (Γ(1+p)(1+p+λθ)) · Σ C(p,r)(−λ)^{p−r} θ^{−r} Γ(r, λθ)
        // with the r = 0 term reading Γ(0, λθ) = E₁(λθ)
        let a = lambda * theta;
        let mut sum = 0.0;
        let mut binom = 1.0f64;
        for r in 0..=m {
            if r > 0 {
                binom *= (m - r + 1) as f64 / r as f64;
            }
            let g = special::upper_incomplete_gamma(r as f64, a)?;
            let sign = if (m - r) % 2 == 0 { 1.0 } else { -1.0 };
            sum += binom * sign * lambda.powi((m - r) as i32) * theta.powi(-(r as i32)) * g;
        }
        let closed = (log_norm + a).exp() * sum;
        let scale = by_quad.abs().max(1e-300);
        if ((closed - by_quad) / scale).abs() > 1e-6 {
            return Err(GllError::NonConvergence(format!(
                "inverse-square expectation: closed form {closed:.12e} disagrees with quadrature {by_quad:.12e}"
            )));
        }
        return Ok(closed);
    }
    Ok(by_quad)
}

/// Fisher information for a sample of size `n`, as `−E[Hessian]`.
pub fn expected_information(params: &GllParams, n: usize) -> Result<Matrix3<f64>> {
    let (theta, lambda, p) = (params.theta(), params.lambda(), params.p());
    if lambda <= 0.0 {
        return Err(GllError::Domain(
            "expected_information requires lambda > 0 (boundary case)".into(),
        ));
    }
    let nf = n as f64;
    let c = params.c();
    let c2 = c * c;
    let e_inv2 = expected_inv_square(params)?;
    let i11 = (2.0 + p) / (theta * theta) - lambda * lambda / c2;
    let i12 = (1.0 + p) / c2;
    let i13 = -1.0 / theta - lambda / c2;
    let i22 = -theta * theta / c2 + e_inv2;
    let i23 = -theta / c2;
    let i33 = special::polygamma(1, 1.0 + p)? - 1.0 / c2;
    Ok(Matrix3::new(i11, i12, i13, i12, i22, i23, i13, i23, i33) * nf)
}

/// Deterministic starting points from the first two moments of `−log x`.
fn moment_seeds(data: &Sample) -> Vec<[f64; 3]> {
    let n = data.n();
    let m1 = data.neg_logs.iter().sum::<f64>() / n;
    let m2 = data.neg_logs.iter().map(|t| t * t).sum::<f64>() / n;
    let var = (m2 - m1 * m1).max(1e-8);
    let theta0 = (m1 / var).clamp(1e-3, 1e6);
    let k0 = m1 * m1 / var;
    let p0 = (k0 - 1.5).max(0.05);
    let lam_mid = (1.0 + p0) / (2.0 * theta0);
    vec![
        [theta0, lam_mid, p0],
        [theta0, 0.1 / theta0, p0],
        [theta0, lam_mid, (p0 / 4.0).max(0.02)],
        [1.5 * theta0, 0.5 * lam_mid, 2.0 * p0 + 0.5],
        [(2.0 / m1).clamp(1e-3, 1e6), 0.5, 0.5],
    ]
}

/// Internal fit over a subset of free coordinates of (log θ, log λ, log p).
/// `fixed_lambda`/`fixed_p` pin those parameters (boundary sub-models).
fn fit_free(
    data: &Sample,
    start: [f64; 3],
    fixed_lambda: Option<f64>,
    fixed_p: Option<f64>,
    options: &FitOptions,
) -> (GllParams, f64, f64, usize, bool) {
    // map free coordinates into the full parameter vector
    let build = move |z: &[f64]| -> GllParams {
        let mut idx = 0;
        let theta = z[idx].exp();
        idx += 1;
        let lambda = match fixed_lambda {
            Some(v) => v,
            None => {
                let v = z[idx].exp();
                idx += 1;
                v
            }
        };
        let p = match fixed_p {
            Some(v) => v,
            None => z[idx].exp(),
        };
        GllParams::new(
            theta.clamp(1e-300, 1e300),
            lambda.clamp(0.0, 1e300),
            p.clamp(0.0, 1e300),
        )
        .expect("positive by construction")
    };
    let f = |z: &[f64]| log_likelihood(&build(z), data);
    let g = |z: &[f64]| {
        let params = build(z);
        let s = score(&params, data);
        let mut out = vec![s[0] * params.theta()];
        if fixed_lambda.is_none() {
            out.push(s[1] * params.lambda());
        }
        if fixed_p.is_none() {
            out.push(s[2] * params.p());
        }
        out
    };

    let mut z0 = vec![start[0].max(1e-12).ln()];
    if fixed_lambda.is_none() {
        z0.push(start[1].max(1e-12).ln());
    }
    if fixed_p.is_none() {
        z0.push(start[2].max(1e-12).ln());
    }
    // the transformed gradient tolerance scales with the parameter values,
    // so converge on the natural-coordinate score afterwards
    let r = bfgs_maximize(&f, &g, &z0, options.score_tolerance * 1e-3, options.max_iterations);

    // Newton polish with the analytic Hessian: BFGS gets close, Newton
    // drives the score norm to machine level on the curved ridge.
    let mut z = r.x.clone();
    let free_idx: Vec<usize> = {
        let mut v = vec![0usize];
        if fixed_lambda.is_none() {
            v.push(1);
        }
        if fixed_p.is_none() {
            v.push(2);
        }
        v
    };
    let score_norm_of = |params: &GllParams| -> f64 {
        let s = score(params, data);
        free_idx.iter().fold(0.0f64, |m, &i| m.max(s[i].abs()))
    };
    for _ in 0..60 {
        let params = build(&z);
        if score_norm_of(&params) <= options.score_tolerance * 1e-3 {
            break;
        }
        let s = score(&params, data);
        let h = observed_hessian(&params, data);
        let vals = [params.theta(), params.lambda(), params.p()];
        let k = free_idx.len();
        let mut hz = nalgebra::DMatrix::zeros(k, k);
        let mut gz = nalgebra::DVector::zeros(k);
        for (a, &i) in free_idx.iter().enumerate() {
            gz[a] = s[i] * vals[i];
            for (b, &j) in free_idx.iter().enumerate() {
                hz[(a, b)] = vals[i] * vals[j] * h[(i, j)];
            }
            hz[(a, a)] += vals[i] * s[i];
        }
        // damped Newton ascent: solve (−H + μI) d = g with μ escalating
        // until the direction is an ascent direction
        let mut mu = 0.0f64;
        let mut step: Option<nalgebra::DVector<f64>> = None;
        for _ in 0..40 {
            let mut m = -hz.clone();
            for a in 0..k {
                m[(a, a)] += mu;
            }
            if let Some(sol) = m.lu().solve(&gz) {
                if sol.dot(&gz) > 0.0 && sol.iter().all(|v| v.is_finite()) {
                    step = Some(sol);
                    break;
                }
            }
            mu = if mu == 0.0 { 1e-6 } else { mu * 10.0 };
        }
        let Some(step) = step else { break };
        // near the optimum the log-likelihood is flat to rounding noise, so
        // the line search accepts on score-norm descent instead
        let norm_old = score_norm_of(&params);
        let mut alpha = 1.0f64;
        let mut improved = false;
        for _ in 0..30 {
            let z_new: Vec<f64> =
                (0..k).map(|a| (z[a] + alpha * step[a]).clamp(-700.0, 700.0)).collect();
            let norm_new = score_norm_of(&build(&z_new));
            if norm_new.is_finite() && norm_new < norm_old {
                z = z_new;
                improved = true;
                break;
            }
            alpha *= 0.5;
        }
        if !improved {
            break;
        }
    }

    // never hand back something meaningfully worse than the BFGS optimum
    if f(&z) < r.value - 1e-6 {
        z = r.x.clone();
    }
    let params = build(&z);
    let value = f(&z);
    let norm = score_norm_of(&params);
    (params, value, norm, r.iterations, r.converged || norm <= options.score_tolerance)
}

/// Maximum-likelihood estimation with deterministic multistart and explicit
/// boundary handling for λ → 0 and p → 0.
pub fn fit_mle(data: &Sample, options: &FitOptions) -> Result<FitResult> {
    if data.len() < 4 {
        return Err(GllError::Data(format!(
            "need at least 4 observations to fit three parameters, got {}",
            data.len()
        )));
    }
    let spread = data
        .values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if spread.1 - spread.0 < 1e-13 {
        return Err(GllError::Data("degenerate sample: all values equal".into()));
    }

    let fixed_lambda = if options.fix_lambda_zero { Some(0.0) } else { None };
    let fixed_p = if options.fix_p_zero { Some(0.0) } else { None };

    let mut best: Option<(GllParams, f64, f64, usize, bool)> = None;
    for seed in moment_seeds(data) {
        let cand = fit_free(data, seed, fixed_lambda, fixed_p, options);
        if best.as_ref().map_or(true, |b| cand.1 > b.1 + 1e-10) {
            best = Some(cand);
        }
    }
    let (mut params, mut loglik, mut score_norm, iterations, mut converged) =
        best.expect("at least one seed");

    // boundary handling: a free fit that collapsed towards λ = 0 or p = 0 is
    // re-fit with the coordinate pinned, keeping whichever model is better
    let mut boundary_lambda = options.fix_lambda_zero;
    let mut boundary_p = options.fix_p_zero;
    let lambda_small = fixed_lambda.is_none() && params.lambda() < 1e-6;
    let p_small = fixed_p.is_none() && params.p() < 1e-6;
    if lambda_small || p_small {
        let fl = if lambda_small { Some(0.0) } else { fixed_lambda };
        let fp = if p_small { Some(0.0) } else { fixed_p };
        let mut sub_best: Option<(GllParams, f64, f64, usize, bool)> = None;
        for seed in moment_seeds(data) {
            let cand = fit_free(data, seed, fl, fp, options);
            if sub_best.as_ref().map_or(true, |b| cand.1 > b.1 + 1e-10) {
                sub_best = Some(cand);
            }
        }
        let sub = sub_best.expect("at least one seed");
        if sub.1 >= loglik - 1e-7 {
            params = sub.0;
            loglik = sub.1;
            score_norm = sub.2;
            converged = sub.4;
            boundary_lambda |= lambda_small;
            boundary_p |= p_small;
        }
    }
    converged = converged || score_norm <= options.score_tolerance;

    let observed_info = -observed_hessian(&params, data);
    let expected_info =
        if params.lambda() > 0.0 { expected_information(&params, data.len()).ok() } else { None };
    let covariance = invert_information(&observed_info, boundary_lambda, boundary_p);

    Ok(FitResult {
        params,
        loglik,
        score_norm,
        observed_info,
        expected_info,
        covariance,
        converged,
        boundary_lambda,
        boundary_p,
        iterations,
    })
}

/// Invert the observed information over the free block; pinned coordinates
/// get zero rows/columns in the reported covariance.
fn invert_information(info: &Matrix3<f64>, boundary_lambda: bool, boundary_p: bool) -> Option<Matrix3<f64>> {
    let free: Vec<usize> = (0..3)
        .filter(|&i| !(i == 1 && boundary_lambda) && !(i == 2 && boundary_p))
        .collect();
    let k = free.len();
    let mut sub = nalgebra::DMatrix::zeros(k, k);
    for (a, &i) in free.iter().enumerate() {
        for (b, &j) in free.iter().enumerate() {
            sub[(a, b)] = info[(i, j)];
        }
    }
    let inv = sub.try_inverse()?;
    let mut out = Matrix3::zeros();
    for (a, &i) in free.iter().enumerate() {
        for (b, &j) in free.iter().enumerate() {
            out[(i, j)] = inv[(a, b)];
        }
    }
    Some(out)
}
