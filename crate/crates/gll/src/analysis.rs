//! Numeric verification of the family's structural properties: likelihood-
//! ratio ordering, moment/hazard ordering, log-concavity of the density and
//! shape classification of the cdf.
//!
//! Each check scans a log-spaced grid concentrated near both endpoints and
//! reports the first violation, if any. Checks whose hypotheses are not met
//! return [`CheckOutcome::NotApplicable`] instead of a verdict.

use crate::dist::GllParams;
use crate::error::Result;

/// A grid scan verdict.
#[derive(Debug, Clone)]
pub struct GridReport {
    /// Evaluation points in (0, 1).
    pub grid: Vec<f64>,
    pub pass: bool,
    /// First violating point with the two compared values.
    pub first_violation: Option<(f64, f64, f64)>,
}

impl GridReport {
    fn pass(grid: Vec<f64>) -> Self {
        Self { grid, pass: true, first_violation: None }
    }

    fn fail(grid: Vec<f64>, at: f64, lhs: f64, rhs: f64) -> Self {
        Self { grid, pass: false, first_violation: Some((at, lhs, rhs)) }
    }
}

/// Outcome of one structural check.
#[derive(Debug, Clone)]
pub enum CheckOutcome {
    Pass(GridReport),
    Fail(GridReport),
    /// The check's hypothesis is not satisfied; no verdict.
    NotApplicable(&'static str),
}

impl CheckOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, CheckOutcome::Pass(_))
    }

    pub fn is_not_applicable(&self) -> bool {
        matches!(self, CheckOutcome::NotApplicable(_))
    }

    fn from_report(report: GridReport) -> Self {
        if report.pass {
            CheckOutcome::Pass(report)
        } else {
            CheckOutcome::Fail(report)
        }
    }
}

/// Shape classification of the cdf on (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeClass {
    Concave,
    Convex,
    Neither,
}

/// Log-spaced grid on (ε, 1−ε) with points piled near both endpoints, where
/// the shape transitions of this family concentrate.
pub fn default_grid(size: usize) -> Vec<f64> {
    let size = size.max(8);
    let half = size / 2;
    let lo_start: f64 = 1e-8;
    let mut grid = Vec::with_capacity(size);
    // geometric from 1e-8 to 0.5
    let ratio = (0.5f64 / lo_start).powf(1.0 / (half as f64 - 1.0));
    let mut x = lo_start;
    for _ in 0..half {
        grid.push(x);
        x *= ratio;
    }
    // mirrored geometric from the right endpoint
    let mut x = lo_start;
    for _ in 0..(size - half) {
        grid.push(1.0 - x);
        x *= (0.5f64 / lo_start).powf(1.0 / ((size - half) as f64 - 1.0));
    }
    grid.sort_by(|a, b| a.total_cmp(b));
    grid.dedup();
    grid
}

/// Checks that the density ratio `f(x; p2)/f(x; p1)` is non-decreasing on
/// the grid (the likelihood-ratio order `X₁ ≤_LR X₂` when the parameter
/// hypothesis `θ₁ ≤ θ₂, λ₁ ≤ λ₂, p₂ ≤ p₁` holds).
pub fn lr_ratio_monotone(p1: &GllParams, p2: &GllParams, grid_size: usize) -> Result<CheckOutcome> {
    let grid = default_grid(grid_size);
    let mut prev: Option<f64> = None;
    for &x in &grid {
        let log_ratio = p2.ln_pdf(x)? - p1.ln_pdf(x)?;
        if let Some(last) = prev {
            let tol = 1e-12 * last.abs().max(log_ratio.abs()).max(1.0);
            if log_ratio < last - tol {
                return Ok(CheckOutcome::from_report(GridReport::fail(grid, x, last, log_ratio)));
            }
        }
        prev = Some(log_ratio);
    }
    Ok(CheckOutcome::from_report(GridReport::pass(grid)))
}

fn lr_hypothesis(p1: &GllParams, p2: &GllParams) -> bool {
    p1.theta() <= p2.theta() && p1.lambda() <= p2.lambda() && p2.p() <= p1.p()
}

/// Moment and hazard-rate ordering implied by the likelihood-ratio order:
/// `E[X₁^k] ≤ E[X₂^k]` for k > 0, and `r₁(x) ≥ r₂(x)` pointwise (the
/// LR-smaller variable carries the larger hazard, as with two exponentials
/// of ordered rates). Guarded: returns `NotApplicable` unless
/// `θ₁ ≤ θ₂, λ₁ ≤ λ₂, p₂ ≤ p₁`.
pub fn moment_hazard_ordering(p1: &GllParams, p2: &GllParams) -> Result<CheckOutcome> {
    if !lr_hypothesis(p1, p2) {
        return Ok(CheckOutcome::NotApplicable("hypothesis not satisfied"));
    }
    let grid = default_grid(256);
    for &k in &[0.5, 1.0, 2.0, 3.0] {
        let m1 = p1.moment(k)?;
        let m2 = p2.moment(k)?;
        if m1 > m2 * (1.0 + 1e-12) + 1e-15 {
            return Ok(CheckOutcome::from_report(GridReport::fail(grid, k, m1, m2)));
        }
    }
    for &x in &grid {
        let h1 = match p1.hazard(x) {
            Ok(v) => v,
            Err(_) => continue, // survival underflow very near 1
        };
        let h2 = match p2.hazard(x) {
            Ok(v) => v,
            Err(_) => continue,
        };
        if h2 > h1 * (1.0 + 1e-9) {
            return Ok(CheckOutcome::from_report(GridReport::fail(grid, x, h1, h2)));
        }
    }
    Ok(CheckOutcome::from_report(GridReport::pass(grid)))
}

/// Log-concavity of the density for `θ > 1`, verified through the analytic
/// derivative ratio
/// `(θ−1){(−log x) − (λ − (p+1)/(θ−1)) − (pλ/(θ−1))/(−log x)}`
/// being decreasing along the grid. Returns `NotApplicable` for `θ ≤ 1`.
pub fn log_concavity_check(params: &GllParams, grid_size: usize) -> Result<CheckOutcome> {
    let theta = params.theta();
    if theta <= 1.0 {
        return Ok(CheckOutcome::NotApplicable("outside the log-concavity regime (theta <= 1)"));
    }
    let (lambda, p) = (params.lambda(), params.p());
    let grid = default_grid(grid_size);
    let expr = |x: f64| {
        let u = -x.ln();
        (theta - 1.0) * (u - (lambda - (p + 1.0) / (theta - 1.0)) - (p * lambda / (theta - 1.0)) / u)
    };
    let mut prev: Option<f64> = None;
    for &x in &grid {
        let v = expr(x);
        if let Some(last) = prev {
            let tol = 1e-12 * last.abs().max(v.abs()).max(1.0);
            if v > last + tol {
                return Ok(CheckOutcome::from_report(GridReport::fail(grid, x, last, v)));
            }
        }
        prev = Some(v);
    }
    Ok(CheckOutcome::from_report(GridReport::pass(grid)))
}

/// Classify the cdf shape from the sign of
/// `F″ ∝ (θ−1)u² + ((θ−1)λ − (p+1))u − pλ`, `u = −log x`, scanned on the grid.
pub fn cdf_shape_classify(params: &GllParams, grid_size: usize) -> (ShapeClass, GridReport) {
    let (theta, lambda, p) = (params.theta(), params.lambda(), params.p());
    let grid = default_grid(grid_size);
    let bracket = |u: f64| (theta - 1.0) * u * u + ((theta - 1.0) * lambda - (p + 1.0)) * u - p * lambda;
    let mut any_pos = false;
    let mut any_neg = false;
    let mut first_change: Option<(f64, f64, f64)> = None;
    let mut prev: Option<(f64, f64)> = None;
    for &x in &grid {
        let u = -x.ln();
        let b = bracket(u);
        let tol = 1e-12 * (theta - 1.0).abs().max(1.0) * (u * u).max(1.0);
        if b > tol {
            any_pos = true;
        }
        if b < -tol {
            any_neg = true;
        }
        if let Some((px, pb)) = prev {
            if first_change.is_none() && ((pb > tol && b < -tol) || (pb < -tol && b > tol)) {
                first_change = Some((x, pb, b));
                let _ = px;
            }
        }
        prev = Some((x, b));
    }
    let class = match (any_pos, any_neg) {
        (false, true) | (false, false) => ShapeClass::Concave,
        (true, false) => ShapeClass::Convex,
        (true, true) => ShapeClass::Neither,
    };
    let report = match (class, first_change) {
        (ShapeClass::Neither, Some((x, a, b))) => GridReport::fail(grid, x, a, b),
        _ => GridReport::pass(grid),
    };
    (class, report)
}

/// Batch re-export of the cdf dominance bound `F(x; θ, λ, p) ≥ x^θ`.
pub fn dominance_check(params: &GllParams, grid_size: usize) -> Result<CheckOutcome> {
    let grid = default_grid(grid_size);
    for &x in &grid {
        let f = params.cdf(x)?;
        let bound = x.powf(params.theta());
        if f < bound - 1e-12 {
            return Ok(CheckOutcome::from_report(GridReport::fail(grid, x, f, bound)));
        }
    }
    Ok(CheckOutcome::from_report(GridReport::pass(grid)))
}

/// Run the full structural suite on a deterministic set of configurations.
/// Used by the command-line `check` subcommand.
pub fn run_full_suite(grid_size: usize) -> Result<Vec<(String, CheckOutcome)>> {
    let mut out = Vec::new();
    let pairs = [
        ((1.0, 1.0, 2.0), (2.0, 2.0, 1.0)),
        ((0.5, 0.2, 1.5), (1.5, 0.8, 0.5)),
        ((2.0, 1.0, 1.0), (2.0, 1.0, 1.0)),
        ((1.0, 0.5, 3.0), (1.2, 0.5, 3.0)),
        ((0.7, 0.0, 2.0), (0.7, 1.0, 2.0)),
    ];
    for (a, b) in pairs {
        let p1 = GllParams::new(a.0, a.1, a.2)?;
        let p2 = GllParams::new(b.0, b.1, b.2)?;
        out.push((
            format!("lr-ratio-monotone {:?} vs {:?}", a, b),
            lr_ratio_monotone(&p1, &p2, grid_size)?,
        ));
        out.push((
            format!("moment-hazard-ordering {:?} vs {:?}", a, b),
            moment_hazard_ordering(&p1, &p2)?,
        ));
    }
    for cfg in [(2.0, 1.0, 1.0), (1.0001, 0.0, 0.0), (5.0, 2.0, 3.0), (0.5, 1.0, 1.0)] {
        let p = GllParams::new(cfg.0, cfg.1, cfg.2)?;
        out.push((format!("log-concavity {:?}", cfg), log_concavity_check(&p, grid_size)?));
    }
    for (cfg, expect) in [
        ((0.7, 1.0, 2.0), ShapeClass::Concave),
        ((2.0, 1.0, 1.0), ShapeClass::Neither),
        ((2.0, 2.0, 0.0), ShapeClass::Convex),
    ] {
        let p = GllParams::new(cfg.0, cfg.1, cfg.2)?;
        let (class, report) = cdf_shape_classify(&p, grid_size);
        let outcome = if class == expect {
            CheckOutcome::Pass(GridReport::pass(report.grid.clone()))
        } else {
            CheckOutcome::Fail(report)
        };
        out.push((format!("cdf-shape {:?} = {:?}", cfg, class), outcome));
    }
    // dominance bound over the premium distortion grid
    for p in crate::premium::reference_distortions()? {
        let label = format!(
            "cdf-dominance (theta={}, lambda={}, p={})",
            p.theta(),
            p.lambda(),
            p.p()
        );
        out.push((label, dominance_check(&p, grid_size)?));
    }
    Ok(out)
}
