//! The Mittag-Leffler family and its relatives.
//!
//! Every series here is summed term by term in the log domain with
//! double-double accumulation (see [`crate::series`]). For negative arguments
//! where the alternating series cancels beyond what that precision can
//! absorb, functions of Fox-Wright type switch to the Mellin-Barnes contour
//! integral of [`crate::mellin`].

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::mellin::FoxWright;
use crate::scalar::QuadratureRule;
use crate::series::{
    log_pow, sign_pow, sum_series, times_log, sum_series_bounded, Method, SeriesResult, SeriesSum, Term, STOP_TOL,
    TERM_CAP,
};

/// Relative accuracy demanded of [`ml_e`] before a value is returned.
pub const ML_TOL: f64 = 1e-12;

/// Relative accuracy demanded of [`e_sab`].
pub const E_SAB_TOL: f64 = 1e-10;

// Growth of the terms (natural log) beyond which a cancelling series is
// abandoned in favour of the contour integral: e^40 times the double-double
// rounding is already close to 1e-12.
const MAX_GROWTH: f64 = 40.0;

/// Largest positive argument accepted by the Borel quadrature.
pub const BOREL_POSITIVE_LIMIT: f64 = 5.0;

/// Minimum quadrature order for positive Borel arguments.
pub const BOREL_MIN_ORDER: usize = 64;

/// The pair (α, β) of E_{α,β}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    alpha: f64,
    beta: f64,
}

impl MLParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::domain("MLParams", format!("alpha must be positive and finite, got {alpha}")));
        }
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::domain("MLParams", format!("beta must be positive and finite, got {beta}")));
        }
        Ok(MLParams { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Largest |x| for which [`ml_e`] is documented to meet its accuracy target.
///
/// Negative arguments beyond this are still evaluated when α < 2, through
/// the contour integral, and for α = 2 with β ∈ {1, 2} through the circular
/// closed forms.
pub fn accuracy_envelope(alpha: f64) -> f64 {
    if alpha >= 0.5 {
        30.0
    } else {
        10.0
    }
}

fn check_finite(op: &'static str, name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("{name} must be finite, got {v}")))
    }
}

/// E_{α,β}(x) = Σ x^r / Γ(αr + β).
pub fn ml_e(params: MLParams, x: f64) -> Result<SeriesResult> {
    check_finite("ml_e", "x", x)?;
    let (alpha, beta) = (params.alpha, params.beta);
    let env = accuracy_envelope(alpha);
    let negative_ok = alpha < 2.0 || (alpha == 2.0 && (beta == 1.0 || beta == 2.0));
    if x > env || (x < -env && !negative_ok) {
        return Err(Error::non_convergence(
            "ml_e",
            format!("x = {x} lies outside the accuracy envelope |x| <= {env} for alpha = {alpha}"),
        ));
    }
    ml_e_core(alpha, beta, x, ML_TOL)
}

/// E_{α,β}(x) without the envelope check, for callers that bound their own
/// arguments.
pub(crate) fn ml_e_core(alpha: f64, beta: f64, x: f64, rel_tol: f64) -> Result<SeriesResult> {
    let fw = FoxWright {
        a: 1.0,
        big_a: 1.0,
        b: beta,
        big_b: alpha,
    };
    match route("ml_e", fw, x, 0.0, rel_tol, ml_term(alpha, beta, x)) {
        Err(e) if alpha == 2.0 && x < 0.0 && (beta == 1.0 || beta == 2.0) => {
            circular_closed_form(beta, -x).ok_or(e)
        }
        other => other,
    }
}

fn ml_term(alpha: f64, beta: f64, x: f64) -> impl FnMut(usize) -> Term {
    let lx = log_pow(x, 1);
    move |r| {
        let arg = Dd::from_prod(alpha, r as f64) + beta;
        Term::new(sign_pow(x, r as u64), times_log(lx, r) - arg.ln_gamma())
    }
}

// E_{2,1}(-z) = cos √z and E_{2,2}(-z) = sin √z / √z.
fn circular_closed_form(beta: f64, z: f64) -> Option<SeriesResult> {
    let w = z.sqrt();
    let value = if beta == 1.0 { w.cos() } else { w.sin() / w };
    if !value.is_finite() {
        return None;
    }
    Some(SeriesResult {
        value,
        est_error: 4.0 * f64::EPSILON * (1.0 + w),
        terms_used: 0,
        method: Method::ClosedForm,
    })
}

/// Sums a Fox-Wright type series, falling back to the contour integral for
/// negative arguments when the series cannot deliver `rel_tol`.
fn route(
    op: &'static str,
    fw: FoxWright,
    xi: f64,
    log_prefactor: f64,
    rel_tol: f64,
    term: impl FnMut(usize) -> Term,
) -> Result<SeriesResult> {
    let contour = xi < 0.0 && fw.applicable();
    let growth = if contour { MAX_GROWTH } else { f64::INFINITY };
    let s = sum_series_bounded(TERM_CAP, STOP_TOL, growth, term);
    let series = s.into_result();
    if s.converged && !s.overflowed() && series.within(rel_tol) {
        return Ok(series);
    }
    if contour {
        if let Some(cv) = fw.integrate(-xi, log_prefactor) {
            let mb = SeriesResult {
                value: cv.value,
                est_error: cv.est_error,
                terms_used: 0,
                method: Method::MellinBarnes,
            };
            if mb.within(rel_tol) {
                return Ok(mb);
            }
            return Err(Error::non_convergence(
                op,
                format!(
                    "contour integral error estimate {:e} exceeds tolerance at argument {xi}",
                    mb.est_error
                ),
            ));
        }
    }
    Err(series_failure(op, &s, xi))
}

fn series_failure(op: &'static str, s: &SeriesSum, xi: f64) -> Error {
    if s.overflowed() {
        Error::overflow(op, format!("value exceeds the f64 range at argument {xi}"))
    } else if !s.converged {
        Error::non_convergence(op, format!("term cap {TERM_CAP} reached at argument {xi}"))
    } else {
        Error::non_convergence(
            op,
            format!("error estimate {:e} too large for value {:e} at argument {xi}", s.est_error, s.value),
        )
    }
}

fn wright_sum(alpha: f64, mu: f64, x: f64) -> SeriesSum {
    let lx = log_pow(x, 1);
    sum_series(TERM_CAP, STOP_TOL, |r| {
        let rf = r as f64;
        let lg = Dd::from_f64(rf + 1.0).ln_gamma() + (Dd::from_prod(alpha, rf) + (mu + 1.0)).ln_gamma();
        Term::new(sign_pow(x, r as u64), times_log(lx, r) - lg)
    })
}

/// The Wright function W_α^{(μ)}(x) = Σ x^r / (r! Γ(αr + μ + 1)).
pub fn wright(alpha: f64, mu: f64, x: f64) -> Result<SeriesResult> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::domain("wright", format!("alpha must be positive and finite, got {alpha}")));
    }
    if !(mu >= 0.0) || !mu.is_finite() {
        return Err(Error::domain("wright", format!("mu must be non-negative and finite, got {mu}")));
    }
    check_finite("wright", "x", x)?;
    let s = wright_sum(alpha, mu, x);
    let r = s.into_result();
    if s.converged && !s.overflowed() && r.within(ML_TOL) {
        Ok(r)
    } else {
        Err(series_failure("wright", &s, x))
    }
}

fn check_borel(op: &'static str, alpha: f64, x: f64, rule: &QuadratureRule) -> Result<()> {
    check_finite(op, "x", x)?;
    if x <= 0.0 {
        return Ok(());
    }
    if alpha > 1.0 {
        return Err(Error::domain(op, format!("positive x = {x} needs alpha <= 1, got {alpha}")));
    }
    if x > BOREL_POSITIVE_LIMIT {
        return Err(Error::domain(
            op,
            format!("x = {x} exceeds the Borel envelope x <= {BOREL_POSITIVE_LIMIT}"),
        ));
    }
    if rule.len() < BOREL_MIN_ORDER {
        return Err(Error::domain(
            op,
            format!("positive x needs a rule of order >= {BOREL_MIN_ORDER}, got {}", rule.len()),
        ));
    }
    Ok(())
}

/// Σ wᵢ sᵢ^m W(x sᵢ), tolerating unconverged Wright sums only at nodes whose
/// weight makes them irrelevant.
fn borel_sum(op: &'static str, alpha: f64, mu: f64, m: u32, x: f64, rule: &QuadratureRule) -> Result<f64> {
    let mut total = Dd::ZERO;
    for (&s, &w) in rule.nodes().iter().zip(rule.weights()) {
        let weight = w * s.powi(m as i32);
        let ws = wright_sum(alpha, mu, x * s);
        if ws.converged && !ws.overflowed() {
            total += Dd::from_prod(weight, ws.value);
        } else if weight.ln() + ws.log_abs_sum > (1e-17f64).ln() {
            return Err(Error::non_convergence(
                op,
                format!("Wright series failed at node {s} with non-negligible weight"),
            ));
        }
    }
    Ok(total.to_f64())
}

/// E_{α,β}(x) through the Borel-Laplace integral ∫₀^∞ e^{-s} W_α^{(β-1)}(xs) ds.
///
/// Accepted arguments are x ≤ 0 for every α, and 0 < x ≤ 5 for α ≤ 1 with a
/// rule of order at least 64. Agreement with [`ml_e`] to 1e-8 relative to
/// max(1, |E|) holds for 1/2 ≤ α ≤ 1 and -6 ≤ x ≤ 5; further out the
/// Wright series at the far nodes may fail, which is reported as
/// non-convergence, and a fixed-order rule loses accuracy.
pub fn ml_via_borel(params: MLParams, x: f64, rule: &QuadratureRule) -> Result<f64> {
    check_borel("ml_via_borel", params.alpha, x, rule)?;
    borel_sum("ml_via_borel", params.alpha, params.beta - 1.0, 0, x, rule)
}

/// The m-th derivative of E_{α,1} at x, via ∫₀^∞ e^{-s} s^m W_α^{(αm)}(xs) ds.
pub fn deriv_ml_integer(m: u32, alpha: f64, x: f64, rule: &QuadratureRule) -> Result<f64> {
    if m > 8 {
        return Err(Error::range("deriv_ml_integer", format!("order m must be at most 8, got {m}")));
    }
    let params = MLParams::new(alpha, 1.0)?;
    check_borel("deriv_ml_integer", params.alpha, x, rule)?;
    borel_sum("deriv_ml_integer", alpha, alpha * m as f64, m, x, rule)
}

/// The pair (C, S) with E_α(ix) = C + iS.
///
/// C(x) = E_{2α,1}(-x²) and S(x) = x E_{2α,1+α}(-x²).
pub fn ml_trig(alpha: f64, x: f64) -> Result<(f64, f64)> {
    MLParams::new(alpha, 1.0)?;
    check_finite("ml_trig", "x", x)?;
    let z = -x * x;
    let c = ml_e_core(2.0 * alpha, 1.0, z, ML_TOL)?;
    let s = ml_e_core(2.0 * alpha, 1.0 + alpha, z, ML_TOL)?;
    Ok((c.value, x * s.value))
}

/// The Laguerre exponential Σ x^r / (r!)², equal to I₀(2√x) for x ≥ 0.
pub fn laguerre_exp(x: f64) -> Result<SeriesResult> {
    wright(1.0, 0.0, x)
}

/// (1 ⊕_l z)^n = Σ_r C(n,r)² z^r.
pub fn laguerre_limit_term(z: f64, n: u32) -> f64 {
    crate::umbral::laguerre_binomial_power(1.0, z, n)
}

fn e_sab_term(s: u32, alpha: f64, beta: f64, xi: f64, log_prefactor: f64) -> impl FnMut(usize) -> Term {
    let lx = log_pow(xi, 1);
    let ab = Dd::from_prod(alpha, beta);
    move |r| {
        let n = (r as u64 + s as u64) as f64;
        let num = Dd::from_prod(beta, n) + 1.0;
        let den = ab * n + 1.0;
        let lm = times_log(lx, r) - Dd::from_f64(r as f64 + 1.0).ln_gamma() + num.ln_gamma() - den.ln_gamma()
            + log_prefactor;
        Term::new(sign_pow(xi, r as u64), lm)
    }
}

/// e_s^{(α,β)}(ξ) = Σ_r ξ^r / r! · Γ(β(r+s)+1) / Γ(αβ(r+s)+1).
///
/// The series is accepted only for α > 1/β.
pub fn e_sab(s: u32, alpha: f64, beta: f64, xi: f64) -> Result<SeriesResult> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::domain("e_sab", format!("beta must be positive and finite, got {beta}")));
    }
    check_finite("e_sab", "alpha", alpha)?;
    check_finite("e_sab", "xi", xi)?;
    if !(alpha > 1.0 / beta) {
        return Err(Error::precondition(
            "e_sab",
            format!("alpha = {alpha} must exceed 1/beta = {}", 1.0 / beta),
        ));
    }
    e_sab_scaled(s, alpha, beta, xi, 0.0, E_SAB_TOL)
}

/// `exp(log_prefactor) · e_s^{(α,β)}(ξ)` without the α > 1/β gate.
///
/// The prefactor is folded into every term (and into the contour
/// integrand) so that products such as X^m/m! · e_m never overflow.
pub(crate) fn e_sab_scaled(
    s: u32,
    alpha: f64,
    beta: f64,
    xi: f64,
    log_prefactor: f64,
    rel_tol: f64,
) -> Result<SeriesResult> {
    if !(alpha > 0.0) {
        return Err(Error::domain("e_sab", format!("alpha must be positive, got {alpha}")));
    }
    let fw = FoxWright {
        a: beta * s as f64 + 1.0,
        big_a: beta,
        b: alpha * beta * s as f64 + 1.0,
        big_b: alpha * beta,
    };
    route("e_sab", fw, xi, log_prefactor, rel_tol, e_sab_term(s, alpha, beta, xi, log_prefactor))
}

/// The same series summed with a hard term cap and no fallback; the flag
/// reports whether the stopping rule fired and the error estimate met
/// `rel_tol`.
pub(crate) fn e_sab_capped(
    s: u32,
    alpha: f64,
    beta: f64,
    xi: f64,
    log_prefactor: f64,
    cap: usize,
    rel_tol: f64,
) -> (SeriesResult, bool) {
    let sum = sum_series(cap, STOP_TOL, e_sab_term(s, alpha, beta, xi, log_prefactor));
    let r = sum.into_result();
    (r, sum.converged && !sum.overflowed() && r.within(rel_tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::gauss_laguerre_rule;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn ml(alpha: f64, beta: f64, x: f64) -> SeriesResult {
        ml_e(MLParams::new(alpha, beta).unwrap(), x).unwrap()
    }

    #[test]
    fn params_are_validated() {
        assert!(MLParams::new(0.0, 1.0).is_err());
        assert!(MLParams::new(1.0, -1.0).is_err());
        assert!(MLParams::new(f64::NAN, 1.0).is_err());
        assert!(MLParams::new(0.3, 2.0).is_ok());
    }

    #[test]
    fn exponential_limit() {
        for &x in &[-2.0f64, 0.0, 3.0] {
            let r = ml(1.0, 1.0, x);
            assert!((r.value - x.exp()).abs() <= 1e-15 * x.exp(), "x = {x}");
        }
        assert_eq!(ml(1.0, 1.0, 0.0).value, 1.0);
    }

    #[test]
    fn cosh_identity_for_alpha_two() {
        let r = ml(2.0, 1.0, 4.0);
        assert!((r.value - 2f64.cosh()).abs() < 1e-15 * 2f64.cosh());
    }

    #[test]
    fn half_order_matches_erfc_oracle() {
        // E_{1/2}(-1) = e · erfc(1), 30-digit reference.
        let r = ml(0.5, 1.0, -1.0);
        assert!((r.value - 0.427583576155807004410750344490515).abs() < 1e-15);
        assert!(r.within(ML_TOL));
    }

    #[test]
    fn two_parameter_identity() {
        for i in 0..=20 {
            let x = -5.0 + 0.5 * i as f64;
            if x == 0.0 {
                continue;
            }
            let expect = x.exp_m1() / x;
            let r = ml(1.0, 2.0, x);
            assert!((r.value - expect).abs() <= 1e-12 * expect.abs(), "x = {x}");
        }
    }

    #[test]
    fn large_negative_arguments_use_the_contour() {
        // E_{1/2}(-30) = e^{900} erfc(30), 30-digit reference.
        let r = ml(0.5, 1.0, -30.0);
        assert_eq!(r.method, Method::MellinBarnes);
        assert!((r.value - 0.018795888861416751497125329).abs() < 1e-14, "{}", r.value);
        // Beyond the envelope the contour keeps working for α < 2.
        let r = ml(1.0, 1.0, -200.0);
        assert!(r.value.abs() < 1e-13);
        let r = ml(0.8, 1.0, -6400.0);
        assert!(r.within(ML_TOL));
        // E_{0.8}(-z) ~ z^{-1}/Γ(0.2) - z^{-2}/Γ(-0.6)
        let z = 6400.0;
        let asym = 1.0 / (z * 4.590843711998803) + 1.0 / (z * z * 3.6969325729294803);
        assert!((r.value - asym).abs() < 1e-11, "{} vs {asym}", r.value);
    }

    #[test]
    fn alpha_two_uses_circular_closed_form_far_out() {
        let r = ml(2.0, 1.0, -2500.0);
        assert_eq!(r.method, Method::ClosedForm);
        assert!((r.value - 50f64.cos()).abs() < 1e-13);
    }

    #[test]
    fn envelope_is_enforced() {
        let p = MLParams::new(0.5, 1.0).unwrap();
        assert!(matches!(ml_e(p, 31.0), Err(Error::NonConvergence { .. })));
        let p = MLParams::new(0.3, 1.0).unwrap();
        assert!(matches!(ml_e(p, 10.5), Err(Error::NonConvergence { .. })));
        let p = MLParams::new(2.5, 1.0).unwrap();
        assert!(ml_e(p, -31.0).is_err());
    }

    #[test]
    fn positive_edge_of_envelope_fails_cleanly() {
        // E_{1/2}(30) ~ 2e^{900} is not representable.
        let p = MLParams::new(0.5, 1.0).unwrap();
        assert!(ml_e(p, 30.0).unwrap_err().is_convergence_failure());
    }

    #[test]
    fn wright_examples() {
        assert_eq!(wright(0.7, 0.0, 0.0).unwrap().value, 1.0);
        // W(0) = 1/Γ(μ+1) in general.
        let v = wright(0.7, 1.3, 0.0).unwrap().value;
        assert!((v - crate::scalar::reciprocal_gamma(2.3)).abs() < 1e-16);
        // Σ 1/(r!(r+1)!) = I₁(2)
        let v = wright(1.0, 1.0, 1.0).unwrap().value;
        assert!((v - 1.590636854637329).abs() < 1e-15);
        assert!(wright(0.0, 0.0, 1.0).is_err());
        assert!(wright(1.0, -0.5, 1.0).is_err());
    }

    #[test]
    fn laguerre_exponential_values() {
        assert_eq!(laguerre_exp(0.0).unwrap().value, 1.0);
        assert!((laguerre_exp(1.0).unwrap().value - 2.279585302336067).abs() < 1e-15);
        // I₀(3)
        assert!((laguerre_exp(2.25).unwrap().value - 4.880792585865024).abs() < 1e-14);
        for &x in &[-3.0, -0.5, 0.7, 2.0, 9.0] {
            assert_eq!(laguerre_exp(x).unwrap().value, wright(1.0, 0.0, x).unwrap().value);
        }
    }

    #[test]
    fn laguerre_limits() {
        assert_eq!(laguerre_limit_term(0.3, 1), 1.3);
        let n = 200u32;
        let v = laguerre_limit_term(1.0 / (n as f64 * n as f64), n);
        assert!((v - 2.279585302336067).abs() < 1e-2);
        // J₀(2) as the limit of (1 ⊕_l -(x/2n)²)^n
        let n = 400u32;
        let v = laguerre_limit_term(-(2.0 / (2.0 * n as f64)).powi(2), n);
        assert!((v - 0.2238907791412357).abs() < 1e-2);
    }

    #[test]
    fn trig_pair_special_cases() {
        let (c, s) = ml_trig(1.0, 0.7).unwrap();
        assert!((c - 0.7f64.cos()).abs() < 1e-15 && (s - 0.7f64.sin()).abs() < 1e-15);
        assert_eq!(ml_trig(0.6, 0.0).unwrap(), (1.0, 0.0));
    }

    fn complex_ml(alpha: f64, z: Complex64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        for r in 0..120 {
            sum += pow * crate::scalar::reciprocal_gamma(alpha * r as f64 + 1.0);
            pow *= z;
        }
        sum
    }

    #[test]
    fn trig_pair_reassembles_complex_series() {
        for &alpha in &[0.5, 0.8, 1.0] {
            for &x in &[0.3, 1.0, 2.5] {
                let (c, s) = ml_trig(alpha, x).unwrap();
                let e = complex_ml(alpha, Complex64::new(0.0, x));
                assert!((e.re - c).abs() < 1e-10 && (e.im - s).abs() < 1e-10, "alpha {alpha} x {x}");
            }
        }
    }

    #[test]
    fn borel_matches_series() {
        let rule = gauss_laguerre_rule(64).unwrap();
        let p = MLParams::new(1.0, 1.0).unwrap();
        assert!((ml_via_borel(p, 0.0, &rule).unwrap() - 1.0).abs() < 1e-12);
        assert!((ml_via_borel(p, 1.0, &rule).unwrap() - std::f64::consts::E).abs() < 1e-8);
        let p = MLParams::new(0.5, 1.0).unwrap();
        let b = ml_via_borel(p, -1.0, &rule).unwrap();
        assert!((b - ml_e(p, -1.0).unwrap().value).abs() < 1e-8);
    }

    #[test]
    fn borel_envelope() {
        let small = gauss_laguerre_rule(32).unwrap();
        let big = gauss_laguerre_rule(64).unwrap();
        let p = MLParams::new(0.8, 1.0).unwrap();
        assert!(ml_via_borel(p, 1.0, &small).is_err());
        assert!(ml_via_borel(p, 5.5, &big).is_err());
        let p = MLParams::new(1.5, 1.0).unwrap();
        assert!(ml_via_borel(p, 1.0, &big).is_err());
        assert!(ml_via_borel(p, -1.0, &small).is_ok());
    }

    fn differentiated_series(m: u32, alpha: f64, x: f64) -> f64 {
        // Σ_r x^r (r+m)! / (r! Γ(α(r+m)+1))
        (0..150u32)
            .map(|r| {
                let n = (r + m) as f64;
                let lg = crate::scalar::log_gamma(n + 1.0).unwrap() - crate::scalar::log_gamma(r as f64 + 1.0).unwrap();
                x.powi(r as i32) * (lg.exp() * crate::scalar::reciprocal_gamma(alpha * n + 1.0))
            })
            .sum()
    }

    #[test]
    fn integer_derivatives() {
        let rule = gauss_laguerre_rule(64).unwrap();
        let d = deriv_ml_integer(1, 1.0, 0.5, &rule).unwrap();
        assert!((d - 0.5f64.exp()).abs() < 1e-8);
        let d0 = deriv_ml_integer(0, 0.5, -1.0, &rule).unwrap();
        assert!((d0 - ml(0.5, 1.0, -1.0).value).abs() < 1e-8);
        for &m in &[1u32, 2] {
            for &alpha in &[0.5, 1.0] {
                for &x in &[-1.0, 0.0, 0.5] {
                    let d = deriv_ml_integer(m, alpha, x, &rule).unwrap();
                    let e = differentiated_series(m, alpha, x);
                    assert!((d - e).abs() < 1e-8, "m {m} alpha {alpha} x {x}: {d} vs {e}");
                }
            }
        }
        assert!(deriv_ml_integer(9, 1.0, 0.0, &rule).is_err());
    }

    #[test]
    fn e_sab_examples() {
        for &xi in &[-2.0f64, 0.5] {
            let v = e_sab(3, 1.0, 2.0, xi).unwrap().value;
            assert!((v - xi.exp()).abs() < 1e-14 * xi.exp());
        }
        // s = 1, ξ = 0: Γ(β+1)/Γ(αβ+1) = Γ(3)/Γ(2.5)
        let v = e_sab(1, 0.75, 2.0, 0.0).unwrap().value;
        assert!((v - 2.0 / 1.329340388179137).abs() < 1e-14);
        // s = 0, α = 0.75, β = 2, ξ = -1 by 40-digit summation.
        let v = e_sab(0, 0.75, 2.0, -1.0).unwrap().value;
        assert!((v - 0.39085903497230704).abs() < 1e-13, "{v}");
        assert!(matches!(e_sab(0, 0.5, 2.0, -1.0), Err(Error::Precondition { .. })));
        assert!(matches!(e_sab(0, 0.9, 1.0, -1.0), Err(Error::Precondition { .. })));
    }

    proptest! {
        #[test]
        fn exponential_limit_everywhere(x in -10.0f64..10.0) {
            let r = ml(1.0, 1.0, x);
            prop_assert!((r.value - x.exp()).abs() <= 1e-12 * x.exp());
        }

        #[test]
        fn ml_one_two_is_exp_difference(x in -5.0f64..5.0) {
            prop_assume!(x.abs() > 1e-3);
            let expect = x.exp_m1() / x;
            prop_assert!((ml(1.0, 2.0, x).value - expect).abs() <= 1e-12 * expect.abs());
        }

        #[test]
        fn series_and_contour_agree_where_both_work(alpha in 0.3f64..1.9, beta in 0.5f64..2.0, z in 2.0f64..12.0) {
            let fw = FoxWright { a: 1.0, big_a: 1.0, b: beta, big_b: alpha };
            let s = sum_series(TERM_CAP, STOP_TOL, ml_term(alpha, beta, -z));
            let c = fw.integrate(z, 0.0).unwrap();
            prop_assume!(s.converged);
            prop_assert!((s.value - c.value).abs() <= 1e-11 + s.est_error + c.est_error,
                "series {} contour {}", s.value, c.value);
        }
    }
}
