//! Seedable random variate generation.
//!
//! GLL draws go through the gamma-mixture representation of `T = −log X`:
//! with probability `λθ/(1+p+λθ)` draw `T ~ Gamma(p+1, θ)`, otherwise
//! `T ~ Gamma(p+2, θ)`, and return `X = exp(−T)`. Gamma variates use
//! Cheng's rejection method (Cheng 1977) for shape > 1 and the log-inverse
//! shortcut at shape 1.

use crate::dist::GllParams;
use crate::error::{GllError, Result};
use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Deterministic generator state. The same seed always yields the same
/// stream; uniforms are drawn from the open interval (0, 1).
#[derive(Debug, Clone)]
pub struct RngState {
    rng: ChaCha12Rng,
    seed: u64,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha12Rng::seed_from_u64(seed), seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw in the open interval (0, 1).
    pub fn uniform_open(&mut self) -> f64 {
        self.rng.sample(Open01)
    }
}

/// Constant `1 + ln(9/2)` of Cheng's quick-acceptance squeeze.
const CHENG_SQUEEZE: f64 = 2.504_077_396_776_274;

/// Draw from Gamma(shape, rate) with density
/// `rate^shape x^{shape−1} e^{−rate·x} / Γ(shape)`, for `shape ≥ 1`.
///
/// Shape 1 short-circuits to `−ln U / rate`; larger shapes use Cheng's
/// rejection method with the log-logistic envelope.
pub fn gamma_variate(shape: f64, rate: f64, rng: &mut RngState) -> Result<f64> {
    if !(shape.is_finite() && shape >= 1.0) {
        return Err(GllError::Domain(format!(
            "gamma_variate requires shape >= 1, got {shape}"
        )));
    }
    if !(rate.is_finite() && rate > 0.0) {
        return Err(GllError::Domain(format!("gamma_variate requires rate > 0, got {rate}")));
    }
    if shape == 1.0 {
        return Ok(-rng.uniform_open().ln() / rate);
    }
    let b = shape - (4.0f64).ln();
    let lam = (2.0 * shape - 1.0).sqrt();
    let c = shape + lam;
    loop {
        let u1: f64 = rng.uniform_open();
        let u2: f64 = rng.uniform_open();
        let v = (u1 / (1.0 - u1)).ln() / lam;
        let y = shape * v.exp();
        let z = u1 * u1 * u2;
        let r = b + c * v - y;
        if r + CHENG_SQUEEZE - 4.5 * z >= 0.0 || r >= z.ln() {
            return Ok(y / rate);
        }
    }
}

/// Largest double strictly below 1, used to keep draws inside the open interval.
fn clamp_open_unit(z: f64) -> f64 {
    if z >= 1.0 {
        1.0 - f64::EPSILON / 2.0
    } else if z <= 0.0 {
        f64::MIN_POSITIVE
    } else {
        z
    }
}

/// `n` independent GLL draws via the two-component gamma mixture.
pub fn sample_gll(params: &GllParams, n: usize, rng: &mut RngState) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(GllError::Domain("sample size must be >= 1".into()));
    }
    let weight = params.mixture_weight();
    let (theta, p) = (params.theta(), params.p());
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let shape = if weight > 0.0 && rng.uniform_open() <= weight {
            p + 1.0
        } else {
            p + 2.0
        };
        let t = if shape == 1.0 {
            -rng.uniform_open().ln() / theta
        } else {
            gamma_variate(shape, theta, rng)?
        };
        out.push(clamp_open_unit((-t).exp()));
    }
    Ok(out)
}

/// Log-Lindley (p = 0) draws using only logarithm evaluations: the first
/// mixture component is a single exponential, the second the sum of two.
pub fn sample_ll(theta: f64, lambda: f64, n: usize, rng: &mut RngState) -> Result<Vec<f64>> {
    let params = GllParams::new(theta, lambda, 0.0)?;
    if n == 0 {
        return Err(GllError::Domain("sample size must be >= 1".into()));
    }
    let weight = params.mixture_weight(); // λθ/(1+λθ)
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let branch_one = weight > 0.0 && rng.uniform_open() <= weight;
        let t = if branch_one {
            -rng.uniform_open().ln() / theta
        } else {
            (-rng.uniform_open().ln() - rng.uniform_open().ln()) / theta
        };
        out.push(clamp_open_unit((-t).exp()));
    }
    Ok(out)
}

impl GllParams {
    /// Convenience method: `n` draws from this distribution.
    pub fn sample(&self, n: usize, rng: &mut RngState) -> Result<Vec<f64>> {
        sample_gll(self, n, rng)
    }
}

/// Kolmogorov–Smirnov statistic of `data` against the model cdf. Sorts a copy.
pub fn ks_statistic<F: Fn(f64) -> f64>(data: &[f64], cdf: F) -> f64 {
    let mut sorted = data.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        let lo = (f - i as f64 / n).abs();
        let hi = ((i + 1) as f64 / n - f).abs();
        d = d.max(lo).max(hi);
    }
    d
}
