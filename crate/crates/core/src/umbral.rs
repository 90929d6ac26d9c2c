//! The composition algebra behind the Mittag-Leffler semigroup: umbral
//! moments, modified binomials, composed powers and closed-form integrals.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::mittag::{accuracy_envelope, ml_trig};
use crate::scalar::{reciprocal_gamma, sin_pi};
use crate::series::{log_pow, sign_pow, sum_finite, LogAccumulator, Term};

/// Largest truncation order accepted by [`ml_semigroup_sum`].
pub const SEMIGROUP_MAX_ORDER: u32 = 200;

/// Relative size of the last composed terms below which a semigroup sum
/// counts as converged.
pub const SEMIGROUP_TOL: f64 = 1e-10;

/// An umbral operator, identified by the moments it produces on the vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UmbralMoment {
    /// ĉ^μ ↦ 1/Γ(μ+1).
    C,
    /// _{α,β}d̂^κ ↦ Γ(κ+1)/Γ(ακ+β).
    D { alpha: f64, beta: f64 },
}

impl UmbralMoment {
    pub fn evaluate(&self, order: f64) -> Result<f64> {
        match *self {
            UmbralMoment::C => Ok(umbral_c_moment(order)),
            UmbralMoment::D { alpha, beta } => umbral_d_moment(order, alpha, beta),
        }
    }
}

/// ĉ^μ applied to the vacuum: 1/Γ(μ+1).
pub fn umbral_c_moment(mu: f64) -> f64 {
    reciprocal_gamma(mu + 1.0)
}

/// _{α,β}d̂^κ applied to the vacuum: Γ(κ+1)/Γ(ακ+β).
pub fn umbral_d_moment(kappa: f64, alpha: f64, beta: f64) -> Result<f64> {
    if !(kappa > -1.0) || !kappa.is_finite() {
        return Err(Error::domain("umbral_d_moment", format!("kappa must exceed -1, got {kappa}")));
    }
    if !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::domain("umbral_d_moment", "alpha and beta must be finite"));
    }
    let den = alpha * kappa + beta;
    let num = Dd::from_f64(kappa + 1.0).ln_gamma();
    if den > 0.0 {
        let den = Dd::from_prod(alpha, kappa) + beta;
        Ok((num - den.ln_gamma()).exp().to_f64())
    } else {
        Ok(num.exp().to_f64() * reciprocal_gamma(den))
    }
}

fn check_positive(op: &'static str, name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("{name} must be positive and finite, got {v}")))
    }
}

// ln Γ(αk + β) in double-double.
fn ln_gamma_lin(alpha: f64, k: u32, beta: f64) -> Dd {
    (Dd::from_prod(alpha, k as f64) + beta).ln_gamma()
}

fn ln_ml_binomial(n: u32, r: u32, alpha: f64, beta: f64) -> Dd {
    ln_gamma_lin(alpha, n, beta) - ln_gamma_lin(alpha, n - r, beta) - ln_gamma_lin(alpha, r, beta)
}

/// Γ(αn+β) / (Γ(α(n-r)+β) Γ(αr+β)).
pub fn ml_binomial(n: u32, r: u32, alpha: f64, beta: f64) -> Result<f64> {
    check_positive("ml_binomial", "alpha", alpha)?;
    check_positive("ml_binomial", "beta", beta)?;
    if r > n {
        return Err(Error::index("ml_binomial", format!("r = {r} exceeds n = {n}")));
    }
    Ok(ln_ml_binomial(n, r, alpha, beta).exp().to_f64())
}

fn compose_term(x: f64, y: f64, n: u32, r: u32, alpha: f64, beta: f64) -> Term {
    let k = (n - r) as u64;
    let sign = sign_pow(x, k) * sign_pow(y, r as u64);
    Term::new(sign, ln_ml_binomial(n, r, alpha, beta) + log_pow(x, k) + log_pow(y, r as u64))
}

/// (x ⊕_{ml} y)^n = Σ_r ml_binomial(n, r, α, β) x^{n-r} y^r.
pub fn ml_compose_power(x: f64, y: f64, n: u32, alpha: f64, beta: f64) -> Result<f64> {
    check_positive("ml_compose_power", "alpha", alpha)?;
    check_positive("ml_compose_power", "beta", beta)?;
    if !x.is_finite() || !y.is_finite() {
        return Err(Error::domain("ml_compose_power", "x and y must be finite"));
    }
    let (v, _) = sum_finite(n as usize + 1, |r| compose_term(x, y, n, r as u32, alpha, beta));
    Ok(v)
}

/// (x ⊕_l y)^n = Σ_r C(n,r)² x^{n-r} y^r.
pub fn laguerre_binomial_power(x: f64, y: f64, n: u32) -> f64 {
    let ln_n = Dd::from_f64(n as f64 + 1.0).ln_gamma();
    let (v, _) = sum_finite(n as usize + 1, |r| {
        let r = r as u32;
        let k = (n - r) as u64;
        let ln_c = ln_n - Dd::from_f64(r as f64 + 1.0).ln_gamma() - Dd::from_f64(k as f64 + 1.0).ln_gamma();
        let sign = sign_pow(x, k) * sign_pow(y, r as u64);
        Term::new(sign, ln_c * 2.0 + log_pow(x, k) + log_pow(y, r as u64))
    });
    v
}

/// A truncated semigroup sum and whether its last terms were negligible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemigroupSum {
    pub value: f64,
    /// Magnitude of the last two blocks, a proxy for the truncation error.
    pub tail: f64,
    pub converged: bool,
}

/// Σ_{n ≤ n_max} (x ⊕ y)^n / Γ(αn+β), the left side of E(x ⊕ y) = E(x) E(y).
pub fn ml_semigroup_sum(x: f64, y: f64, alpha: f64, beta: f64, n_max: u32) -> Result<SemigroupSum> {
    check_positive("ml_semigroup_sum", "alpha", alpha)?;
    check_positive("ml_semigroup_sum", "beta", beta)?;
    if n_max == 0 || n_max > SEMIGROUP_MAX_ORDER {
        return Err(Error::range(
            "ml_semigroup_sum",
            format!("n_max must lie in [1, {SEMIGROUP_MAX_ORDER}], got {n_max}"),
        ));
    }
    let env = accuracy_envelope(alpha);
    if !(x.abs() <= env && y.abs() <= env) {
        return Err(Error::domain(
            "ml_semigroup_sum",
            format!("x and y must lie within the envelope |x| <= {env}"),
        ));
    }
    let mut total = LogAccumulator::new();
    let mut blocks = Vec::with_capacity(2);
    for n in 0..=n_max {
        let ln_den = ln_gamma_lin(alpha, n, beta);
        let mut block = LogAccumulator::new();
        for r in 0..=n {
            let mut t = compose_term(x, y, n, r, alpha, beta);
            if !t.is_zero() {
                t.log_mag = t.log_mag - ln_den;
            }
            total.add(t);
            if n + 1 >= n_max {
                block.add(t);
            }
        }
        if n + 1 >= n_max {
            blocks.push(block.value().abs());
        }
    }
    let value = total.value();
    let bound = SEMIGROUP_TOL * value.abs().max(1.0);
    Ok(SemigroupSum {
        value,
        tail: blocks.iter().sum(),
        converged: value.is_finite() && blocks.iter().all(|&b| b <= bound),
    })
}

/// The composed trigonometric pair (C(x ⊕ y), S(x ⊕ y)) truncated at
/// composed powers of order `n_max`, next to the product forms
/// (C(x)C(y) - S(x)S(y), S(x)C(y) + C(x)S(y)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigComposition {
    pub composed: (f64, f64),
    pub product: (f64, f64),
}

pub fn ml_trig_compose(alpha: f64, x: f64, y: f64, n_max: u32) -> Result<TrigComposition> {
    check_positive("ml_trig_compose", "alpha", alpha)?;
    let mut c = LogAccumulator::new();
    let mut s = LogAccumulator::new();
    for k in 0..=n_max {
        let p = ml_compose_power(x, y, k, alpha, 1.0)?;
        // i^k splits into the real (even k) and imaginary (odd k) parts.
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let ln_den = ln_gamma_lin(alpha, k, 1.0);
        let t = Term::new(sign * p.signum(), Dd::from_f64(p.abs()).ln() - ln_den);
        if k % 2 == 0 {
            c.add(t);
        } else {
            s.add(t);
        }
    }
    let (cx, sx) = ml_trig(alpha, x)?;
    let (cy, sy) = ml_trig(alpha, y)?;
    Ok(TrigComposition {
        composed: (c.value(), s.value()),
        product: (cx * cy - sx * sy, sx * cy + cx * sy),
    })
}

/// ∫_{-∞}^{∞} E_{α,β}(-x²) dx = π / Γ(β - α/2).
pub fn ml_gaussian_integral(alpha: f64, beta: f64) -> Result<f64> {
    check_positive("ml_gaussian_integral", "alpha", alpha)?;
    check_positive("ml_gaussian_integral", "beta", beta)?;
    Ok(std::f64::consts::PI * reciprocal_gamma(beta - alpha / 2.0))
}

/// ∫₀^∞ E_{α,1}(-x^γ) dx = π / (γ sin(π/γ)) · 1/Γ(1 - α/γ).
pub fn ml_stretched_integral(alpha: f64, gamma: f64) -> Result<f64> {
    check_positive("ml_stretched_integral", "alpha", alpha)?;
    if !(gamma > 1.0) || !gamma.is_finite() {
        return Err(Error::precondition("ml_stretched_integral", format!("gamma must exceed 1, got {gamma}")));
    }
    let ratio = alpha / gamma;
    if ratio == ratio.round() {
        return Err(Error::precondition(
            "ml_stretched_integral",
            format!("alpha/gamma = {ratio} must not be a positive integer"),
        ));
    }
    let pi = std::f64::consts::PI;
    Ok(pi / (gamma * sin_pi(1.0 / gamma)) * reciprocal_gamma(1.0 - ratio))
}
