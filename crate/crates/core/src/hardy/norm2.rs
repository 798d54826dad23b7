//! Largest singular value of the truncated Cesàro matrix `C_N`,
//! `(C x)_n = (x_0 + ... + x_n) / (n + 1)`, by matrix-free power iteration.

/// `y_n = (1/(n+1)) Σ_{k<=n} x_k`, one prefix pass.
pub fn cesaro_matvec(x: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    x.iter()
        .enumerate()
        .map(|(n, v)| {
            acc += v;
            acc / (n + 1) as f64
        })
        .collect()
}

/// `z_k = Σ_{n>=k} y_n / (n+1)`, one suffix pass.
pub fn cesaro_adjoint_matvec(y: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; y.len()];
    let mut acc = 0.0;
    for n in (0..y.len()).rev() {
        acc += y[n] / (n + 1) as f64;
        out[n] = acc;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Norm2Estimate {
    /// `sqrt(vᵀ CᵀC v)` for the final unit iterate; never exceeds the true norm.
    pub sigma: f64,
    /// `‖CᵀC v - σ² v‖₂` at the final iterate.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Power iteration on `CᵀC` for the `(n+1) × (n+1)` truncation, from the all-ones vector.
///
/// Stops once the residual drops below `tol` or after `max_iters` steps.
pub fn cesaro_norm2(n: usize, max_iters: usize, tol: f64) -> Norm2Estimate {
    let dim = n + 1;
    let mut v = vec![1.0 / (dim as f64).sqrt(); dim];
    let mut estimate = Norm2Estimate {
        sigma: 0.0,
        residual: f64::INFINITY,
        iterations: 0,
        converged: false,
    };
    for it in 1..=max_iters.max(1) {
        let w = cesaro_adjoint_matvec(&cesaro_matvec(&v));
        let lambda = dot(&v, &w);
        let residual = w
            .iter()
            .zip(&v)
            .map(|(wi, vi)| (wi - lambda * vi).powi(2))
            .sum::<f64>()
            .sqrt();
        estimate = Norm2Estimate {
            sigma: lambda.sqrt(),
            residual,
            iterations: it,
            converged: residual < tol,
        };
        if estimate.converged {
            break;
        }
        let norm = dot(&w, &w).sqrt();
        v = w.into_iter().map(|x| x / norm).collect();
    }
    estimate
}
