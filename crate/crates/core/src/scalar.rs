//! Gamma-family kernels and Gauss-Laguerre quadrature.

use crate::dd::Dd;
use crate::error::{Error, Result};

/// ln Γ(x) for x > 0.
///
/// Evaluated in double-double via the recurrence and Stirling's series, so
/// the result is correctly rounded in practice over the whole positive axis.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || x.is_infinite() {
        return Err(Error::domain("log_gamma", format!("argument must be positive and finite, got {x}")));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    Ok(Dd::from_f64(x).ln_gamma().to_f64())
}

/// 1/Γ(x) for every real x; zero at the poles of Γ.
pub fn reciprocal_gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if x >= 0.5 {
        if x > 180.0 {
            return 0.0;
        }
        return (-Dd::from_f64(x).ln_gamma()).exp().to_f64();
    }
    // 1/Γ(x) = Γ(1-x) sin(πx) / π
    let s = sin_pi(x);
    let lg = Dd::from_f64(1.0 - x).ln_gamma() - crate::dd::PI.ln();
    s * lg.exp().to_f64()
}

/// sin(πx), exact at multiples of 1/2.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    // Reduce to [-1, 1]; the reduction is exact for binary floating point.
    let r = x % 2.0;
    let r = if r > 1.0 {
        r - 2.0
    } else if r < -1.0 {
        r + 2.0
    } else {
        r
    };
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r.abs() == 0.5 {
        return r.signum();
    }
    // Fold onto [-1/2, 1/2] using sin(π(1-r)) = sin(πr).
    let r = if r > 0.5 {
        1.0 - r
    } else if r < -0.5 {
        -1.0 - r
    } else {
        r
    };
    (std::f64::consts::PI * r).sin()
}

/// cos(πx), exact at multiples of 1/2.
pub fn cos_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let r = (x % 2.0).abs();
    if r == 0.5 || r == 1.5 {
        return 0.0;
    }
    sin_pi(r + 0.5)
}

/// Nodes and weights for ∫₀^∞ e^{-s} g(s) ds ≈ Σ wᵢ g(sᵢ).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Applies the rule to `g`.
    pub fn integrate(&self, mut g: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&s, &w)| w * g(s))
            .sum()
    }
}

pub const MAX_LAGUERRE_ORDER: usize = 128;

/// L_n(x) and L_{n-1}(x) by the three-term recurrence.
fn laguerre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 0.0;
    let mut p = 1.0;
    for j in 1..=n {
        let jf = j as f64;
        let next = ((2.0 * jf - 1.0 - x) * p - (jf - 1.0) * p_prev) / jf;
        p_prev = p;
        p = next;
    }
    (p, p_prev)
}

/// The n-point Gauss-Laguerre rule for the weight e^{-s} on [0, ∞).
pub fn gauss_laguerre_rule(n: usize) -> Result<QuadratureRule> {
    if !(1..=MAX_LAGUERRE_ORDER).contains(&n) {
        return Err(Error::range(
            "gauss_laguerre_rule",
            format!("order must lie in [1, {MAX_LAGUERRE_ORDER}], got {n}"),
        ));
    }
    let nf = n as f64;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut z = 0.0;
    for i in 0..n {
        // Initial guesses from the asymptotic distribution of the zeros.
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
            }
        };
        let mut converged = false;
        for _ in 0..100 {
            let (p, p_prev) = laguerre_pair(n, z);
            let dp = nf * (p - p_prev) / z;
            let step = p / dp;
            z -= step;
            if step.abs() <= 1e-14 * z.abs().max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::non_convergence(
                "gauss_laguerre_rule",
                format!("Newton iteration stalled at root {i} of order {n}"),
            ));
        }
        // w = x / ((n+1)^2 L_{n+1}(x)^2)
        let (p_next, _) = laguerre_pair(n + 1, z);
        let w = z / ((nf + 1.0) * (nf + 1.0) * p_next * p_next);
        nodes.push(z);
        weights.push(w);
    }
    Ok(QuadratureRule { nodes, weights })
}
