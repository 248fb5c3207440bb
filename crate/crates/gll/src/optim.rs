//! Small deterministic quasi-Newton maximizer used by the fitting routines.

/// Outcome of a BFGS run.
#[derive(Debug, Clone)]
pub(crate) struct OptimResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Maximize `f` with analytic gradient `g` by BFGS with Armijo backtracking.
/// Fully deterministic: no randomness, fixed iteration budget.
pub(crate) fn bfgs_maximize<F, G>(
    f: &F,
    g: &G,
    x0: &[f64],
    grad_tol: f64,
    max_iter: usize,
) -> OptimResult
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> Vec<f64>,
{
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    if !fx.is_finite() {
        return OptimResult { x, value: fx, iterations: 0, converged: false };
    }
    let mut grad = g(&x);
    // inverse-Hessian approximation, started at identity
    let mut h = identity(n);

    for iter in 0..max_iter {
        let gnorm = grad.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if gnorm <= grad_tol {
            return OptimResult { x, value: fx, iterations: iter, converged: true };
        }
        // ascent direction d = H·grad
        let mut d = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                d[i] += h[i][j] * grad[j];
            }
        }
        let mut slope: f64 = d.iter().zip(&grad).map(|(a, b)| a * b).sum();
        if !slope.is_finite() || slope <= 0.0 {
            // reset curvature information and take a gradient step
            h = identity(n);
            d = grad.clone();
            slope = grad.iter().map(|v| v * v).sum();
            if slope == 0.0 {
                return OptimResult { x, value: fx, iterations: iter, converged: true };
            }
        }

        // Armijo backtracking
        let mut step = 1.0f64;
        let mut accepted = false;
        let mut x_new = x.clone();
        let mut f_new = fx;
        for _ in 0..60 {
            for i in 0..n {
                x_new[i] = x[i] + step * d[i];
            }
            f_new = f(&x_new);
            if f_new.is_finite() && f_new >= fx + 1e-4 * step * slope {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            let gnorm = grad.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            return OptimResult { x, value: fx, iterations: iter, converged: gnorm <= grad_tol };
        }

        let grad_new = g(&x_new);
        // BFGS update on the inverse Hessian (maximization convention:
        // y = −(grad_new − grad) so the usual formulas apply to −f)
        let s: Vec<f64> = (0..n).map(|i| x_new[i] - x[i]).collect();
        let y: Vec<f64> = (0..n).map(|i| grad[i] - grad_new[i]).collect();
        let sy: f64 = s.iter().zip(&y).map(|(a, b)| a * b).sum();
        if sy > 1e-12 {
            let mut hy = vec![0.0; n];
            for i in 0..n {
                for j in 0..n {
                    hy[i] += h[i][j] * y[j];
                }
            }
            let yhy: f64 = y.iter().zip(&hy).map(|(a, b)| a * b).sum();
            let coef = (sy + yhy) / (sy * sy);
            for i in 0..n {
                for j in 0..n {
                    h[i][j] += coef * s[i] * s[j] - (hy[i] * s[j] + s[i] * hy[j]) / sy;
                }
            }
        }
        x = x_new;
        fx = f_new;
        grad = grad_new;
    }
    let gnorm = grad.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    OptimResult { x, value: fx, iterations: max_iter, converged: gnorm <= grad_tol }
}

fn identity(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        // maximize −(x−1)² − 2(y+0.5)²
        let f = |x: &[f64]| -(x[0] - 1.0).powi(2) - 2.0 * (x[1] + 0.5).powi(2);
        let g = |x: &[f64]| vec![-2.0 * (x[0] - 1.0), -4.0 * (x[1] + 0.5)];
        let r = bfgs_maximize(&f, &g, &[5.0, 5.0], 1e-10, 200);
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-8);
        assert!((r.x[1] + 0.5).abs() < 1e-8);
    }

    #[test]
    fn rosenbrock_flipped() {
        let f = |x: &[f64]| -((1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2));
        let g = |x: &[f64]| {
            vec![
                2.0 * (1.0 - x[0]) + 400.0 * x[0] * (x[1] - x[0] * x[0]),
                -200.0 * (x[1] - x[0] * x[0]),
            ]
        };
        let r = bfgs_maximize(&f, &g, &[-1.2, 1.0], 1e-8, 2000);
        assert!((r.x[0] - 1.0).abs() < 1e-5, "{:?}", r);
        assert!((r.x[1] - 1.0).abs() < 1e-5);
    }
}
