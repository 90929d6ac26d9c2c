//! Fractional photon-counting statistics.
//!
//! Three count distributions are built from the same Fox-Wright type sums:
//!
//! * the Schrödinger variant, p_m = X^m/m! · e_m^{(α,2)}(-X);
//! * the Laskin fractional Poisson law, P_m = Λ^m/m! · e_m^{(α,1)}(-Λ);
//! * the Hermitian variant, X^m/m! · e_m^{(α,2)}(X cos πα), which is not
//!   normalized.
//!
//! All of them are evaluated with the power prefactor folded into the log
//! domain, so large m never overflows.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::mittag::{e_sab, e_sab_capped, e_sab_scaled, ml_e, MLParams, E_SAB_TOL};
use crate::parallel::{map_indexed, try_map_indexed, Execution};
use crate::scalar::{cos_pi, reciprocal_gamma};
use crate::series::SeriesResult;

/// Largest Λ accepted by [`p_m_laskin`].
pub const LASKIN_MAX_LAMBDA: f64 = 10.0;

/// Largest truncation index of a [`CountDistribution`].
pub const MAX_TRUNCATION: usize = 400;

/// The table stops once `TAIL_FACTOR * p_M < TAIL_TOL`.
pub const TAIL_TOL: f64 = 1e-9;
const TAIL_FACTOR: f64 = 10.0;

/// Negative probabilities down to this are rounding noise and clamped.
pub const CLAMP_TOL: f64 = 1e-12;

/// Sampling requires at least this much retained probability.
pub const SAMPLING_MASS: f64 = 1.0 - 1e-9;

/// Coherent-state sums that need the capped fallback stop at this many terms.
pub const COHERENT_TERM_CAP: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Schrodinger,
    Laskin,
    Hermitian,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Schrodinger => "schrodinger",
            Variant::Laskin => "laskin",
            Variant::Hermitian => "hermitian",
        }
    }

    fn normalized(&self) -> bool {
        !matches!(self, Variant::Hermitian)
    }
}

fn check_alpha(op: &'static str, alpha: f64) -> Result<()> {
    if alpha > 0.5 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(op, format!("alpha must lie in (1/2, 1], got {alpha}")))
    }
}

fn check_intensity(op: &'static str, name: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("{name} must be finite and non-negative, got {v}")))
    }
}

/// ln(v^m / m!).
fn log_poisson_weight(v: f64, m: u32) -> f64 {
    let lp = if m == 0 {
        Dd::ZERO
    } else {
        Dd::from_f64(v).ln() * m as f64
    };
    (lp - Dd::from_f64(m as f64 + 1.0).ln_gamma()).to_f64()
}

fn clamp(op: &'static str, r: SeriesResult) -> Result<f64> {
    if r.value >= 0.0 {
        Ok(r.value)
    } else if r.value >= -CLAMP_TOL {
        Ok(0.0)
    } else {
        Err(Error::non_convergence(
            op,
            format!("probability {:e} is negative beyond rounding noise", r.value),
        ))
    }
}

/// (v^m/m!) · e_m^{(α,β)}(ξ), with v = 0 handled exactly.
fn weighted_sum(op: &'static str, m: u32, alpha: f64, beta: f64, v: f64, xi: f64) -> Result<f64> {
    if v == 0.0 {
        return Ok(if m == 0 { 1.0 } else { 0.0 });
    }
    clamp(op, e_sab_scaled(m, alpha, beta, xi, log_poisson_weight(v, m), E_SAB_TOL)?)
}

/// Probability of m photons for the Schrödinger-derived distribution at
/// X = (Ω t^α)².
pub fn p_m_schrodinger(m: u32, alpha: f64, x: f64) -> Result<f64> {
    const OP: &str = "p_m_schrodinger";
    check_alpha(OP, alpha)?;
    check_intensity(OP, "X", x)?;
    weighted_sum(OP, m, alpha, 2.0, x, -x)
}

/// Probability of m events for the fractional Poisson law at Λ = Ω t^α.
pub fn p_m_laskin(m: u32, alpha: f64, lambda: f64) -> Result<f64> {
    const OP: &str = "p_m_laskin";
    check_alpha(OP, alpha)?;
    check_intensity(OP, "lambda", lambda)?;
    if lambda > LASKIN_MAX_LAMBDA {
        return Err(Error::non_convergence(
            OP,
            format!("lambda = {lambda} exceeds the supported limit {LASKIN_MAX_LAMBDA}"),
        ));
    }
    weighted_sum(OP, m, alpha, 1.0, lambda, -lambda)
}

/// |⟨m|Ψ⟩|² = (X^m/m!) · e_m^{(α,2)}(X cos πα).
///
/// α = 1/2 is admitted, where only the leading term survives and the
/// amplitudes reduce to C(2m, m) X^m; their sum is finite only for X < 1/4.
pub fn hermitian_square_amplitude(m: u32, alpha: f64, x: f64) -> Result<f64> {
    const OP: &str = "hermitian_square_amplitude";
    if !(alpha >= 0.5 && alpha <= 1.0) {
        return Err(Error::domain(OP, format!("alpha must lie in [1/2, 1], got {alpha}")));
    }
    check_intensity(OP, "X", x)?;
    if alpha == 0.5 && x >= 0.25 {
        return Err(Error::domain(OP, format!("at alpha = 1/2 the amplitudes need X < 1/4, got {x}")));
    }
    weighted_sum(OP, m, alpha, 2.0, x, x * cos_pi(alpha))
}

/// G(s) = E_{α,1}(-(1 - s) Λ), the generating function of the fractional
/// Poisson law.
pub fn generating_function_value(s: f64, alpha: f64, lambda: f64) -> Result<f64> {
    const OP: &str = "generating_function_value";
    check_intensity(OP, "lambda", lambda)?;
    if !s.is_finite() {
        return Err(Error::domain(OP, format!("s must be finite, got {s}")));
    }
    Ok(ml_e(MLParams::new(alpha, 1.0)?, -(1.0 - s) * lambda)?.value)
}

/// First two moments and the Mandel parameter Q = (σ² - ⟨m⟩)/⟨m⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSummary {
    pub mean: f64,
    pub variance: f64,
    pub mandel_q: f64,
}

/// Closed-form moments of the Schrödinger variant.
pub fn schrodinger_moments(alpha: f64, x: f64) -> Result<MomentSummary> {
    const OP: &str = "schrodinger_moments";
    check_alpha(OP, alpha)?;
    check_intensity(OP, "X", x)?;
    let g2 = reciprocal_gamma(2.0 * alpha + 1.0);
    let g4 = reciprocal_gamma(4.0 * alpha + 1.0);
    let excess = 6.0 * g4 - g2 * g2;
    let mean = 2.0 * x * g2;
    let variance = 2.0 * x * (2.0 * x * excess + g2);
    let mandel_q = 2.0 * x * excess / g2;
    Ok(MomentSummary {
        mean,
        variance,
        mandel_q,
    })
}

/// Closed-form moments of the fractional Poisson law.
pub fn laskin_moments(alpha: f64, lambda: f64) -> Result<MomentSummary> {
    const OP: &str = "laskin_moments";
    check_alpha(OP, alpha)?;
    check_intensity(OP, "lambda", lambda)?;
    let g1 = reciprocal_gamma(alpha + 1.0);
    let g2 = reciprocal_gamma(2.0 * alpha + 1.0);
    let mean = lambda * g1;
    let variance = 2.0 * lambda * lambda * g2 + lambda * g1 - lambda * lambda * g1 * g1;
    let mandel_q = lambda * (2.0 * g2 / g1 - g1);
    Ok(MomentSummary {
        mean,
        variance,
        mandel_q,
    })
}

/// Modulus factor of a Laskin coherent-state coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentAmplitude {
    pub value: f64,
    /// False when the capped fallback sum did not settle.
    pub converged: bool,
}

/// (1/√n!) · e_n^{(α,1)}(-|ζ|²/2).
///
/// e_sab insists on α > 1/β = 1, which excludes the whole physical range;
/// the sum is then taken with at most [`COHERENT_TERM_CAP`] terms and the
/// outcome flagged rather than refused.
pub fn coherent_amplitude_laskin(n: u32, zeta_abs2: f64, alpha: f64) -> Result<CoherentAmplitude> {
    const OP: &str = "coherent_amplitude_laskin";
    check_alpha(OP, alpha)?;
    check_intensity(OP, "|zeta|^2", zeta_abs2)?;
    let xi = -zeta_abs2 / 2.0;
    let log_norm = -0.5 * Dd::from_f64(n as f64 + 1.0).ln_gamma().to_f64();
    match e_sab(n, alpha, 1.0, xi) {
        Ok(r) => Ok(CoherentAmplitude {
            value: r.value * log_norm.exp(),
            converged: true,
        }),
        Err(Error::Precondition { .. }) => {
            let (r, converged) = e_sab_capped(n, alpha, 1.0, xi, log_norm, COHERENT_TERM_CAP, E_SAB_TOL);
            if !converged {
                log::warn!("{OP}: capped sum did not settle for n = {n}, alpha = {alpha}");
            }
            Ok(CoherentAmplitude {
                value: r.value,
                converged,
            })
        }
        Err(e) => Err(e),
    }
}

/// A truncated probability table p_0, ..., p_M.
#[derive(Debug, Clone, PartialEq)]
pub struct CountDistribution {
    alpha: f64,
    intensity: f64,
    variant: Variant,
    probs: Vec<f64>,
    /// Total of the negative rounding noise that was clamped to zero.
    clamped_mass: f64,
    /// False when [`MAX_TRUNCATION`] was hit before the tail criterion.
    tail_converged: bool,
}

// Probabilities are evaluated in blocks of this many indices.
const CHUNK: usize = 16;

impl CountDistribution {
    /// Builds the table, growing M until 10·p_M < 1e-9 past the mean.
    pub fn new(variant: Variant, alpha: f64, intensity: f64) -> Result<Self> {
        CountDistribution::with_execution(variant, alpha, intensity, Execution::default())
    }

    pub fn with_execution(variant: Variant, alpha: f64, intensity: f64, exec: Execution) -> Result<Self> {
        let raw = |m: u32| -> Result<SeriesResult> {
            let op = "CountDistribution";
            let (beta, xi) = match variant {
                Variant::Schrodinger => (2.0, -intensity),
                Variant::Laskin => (1.0, -intensity),
                Variant::Hermitian => (2.0, intensity * cos_pi(alpha)),
            };
            if intensity == 0.0 {
                let value = if m == 0 { 1.0 } else { 0.0 };
                return Ok(SeriesResult {
                    value,
                    est_error: 0.0,
                    terms_used: 0,
                    method: crate::series::Method::Series,
                });
            }
            let lp = log_poisson_weight(intensity, m);
            e_sab_scaled(m, alpha, beta, xi, lp, E_SAB_TOL).map_err(|e| match e {
                Error::NonConvergence { msg, .. } => Error::non_convergence(op, format!("p_{m}: {msg}")),
                other => other,
            })
        };
        // Validate the parameters once through the public evaluators.
        let min_index = match variant {
            Variant::Schrodinger => {
                p_m_schrodinger(0, alpha, intensity)?;
                schrodinger_moments(alpha, intensity)?.mean
            }
            Variant::Laskin => {
                p_m_laskin(0, alpha, intensity)?;
                laskin_moments(alpha, intensity)?.mean
            }
            Variant::Hermitian => {
                hermitian_square_amplitude(0, alpha, intensity)?;
                intensity
            }
        };

        let mut probs = Vec::new();
        let mut clamped_mass = 0.0;
        let mut tail_converged = false;
        'outer: while probs.len() <= MAX_TRUNCATION {
            let start = probs.len();
            let count = CHUNK.min(MAX_TRUNCATION + 1 - start);
            let block = try_map_indexed(exec, count, |i| raw((start + i) as u32))?;
            for (i, r) in block.into_iter().enumerate() {
                let m = start + i;
                let p = if r.value < 0.0 {
                    if r.value < -CLAMP_TOL {
                        return Err(Error::non_convergence(
                            "CountDistribution",
                            format!("p_{m} = {:e} is negative beyond rounding noise", r.value),
                        ));
                    }
                    clamped_mass += -r.value;
                    0.0
                } else {
                    r.value
                };
                probs.push(p);
                if m as f64 >= min_index && TAIL_FACTOR * p < TAIL_TOL {
                    tail_converged = true;
                    break 'outer;
                }
            }
        }
        if !tail_converged {
            log::warn!(
                "CountDistribution: truncation cap {MAX_TRUNCATION} reached for {} at alpha = {alpha}, intensity = {intensity}",
                variant.name()
            );
        }
        Ok(CountDistribution {
            alpha,
            intensity,
            variant,
            probs,
            clamped_mass,
            tail_converged,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn intensity(&self) -> f64 {
        self.intensity
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// The truncation index M; the table holds M + 1 entries.
    pub fn truncation_m(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn clamped_mass(&self) -> f64 {
        self.clamped_mass
    }

    pub fn tail_converged(&self) -> bool {
        self.tail_converged
    }

    pub fn total_mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Moments of the truncated table, normalized by its total mass.
    pub fn moments(&self) -> Result<MomentSummary> {
        let mass = self.total_mass();
        if !(mass > 0.0) {
            return Err(Error::ZeroMass { op: "CountDistribution::moments" });
        }
        let (mut s1, mut s2) = (0.0, 0.0);
        for (m, p) in self.probs.iter().enumerate() {
            let mf = m as f64;
            s1 += mf * p;
            s2 += mf * mf * p;
        }
        let mean = s1 / mass;
        let variance = (s2 / mass - mean * mean).max(0.0);
        let mandel_q = if mean > 0.0 { (variance - mean) / mean } else { 0.0 };
        Ok(MomentSummary {
            mean,
            variance,
            mandel_q,
        })
    }

    fn cdf(&self, op: &'static str) -> Result<Vec<f64>> {
        if !self.variant.normalized() {
            return Err(Error::domain(op, "the hermitian variant is not a probability distribution"));
        }
        let mass = self.total_mass();
        if !(mass >= SAMPLING_MASS) {
            return Err(Error::TruncationMass {
                op,
                mass,
                required: SAMPLING_MASS,
            });
        }
        let mut acc = 0.0;
        Ok(self
            .probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect())
    }
}

fn draw(cdf: &[f64], rng: &mut ChaCha8Rng) -> u32 {
    let total = cdf[cdf.len() - 1];
    let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64) * total;
    cdf.partition_point(|&c| c <= u).min(cdf.len() - 1) as u32
}

/// Inverse-CDF samples from the table; the same seed always gives the same
/// stream.
pub fn sample_counts(dist: &CountDistribution, seed: u64, n_samples: usize) -> Result<Vec<u32>> {
    let cdf = dist.cdf("sample_counts")?;
    if n_samples == 0 {
        return Err(Error::domain("sample_counts", "n_samples must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n_samples).map(|_| draw(&cdf, &mut rng)).collect())
}

/// Independent streams, one per seed, possibly generated concurrently.
/// Stream i equals `sample_counts(dist, seeds[i], n_samples)`.
pub fn sample_counts_streams(
    dist: &CountDistribution,
    seeds: &[u64],
    n_samples: usize,
    exec: Execution,
) -> Result<Vec<Vec<u32>>> {
    let cdf = dist.cdf("sample_counts_streams")?;
    if n_samples == 0 {
        return Err(Error::domain("sample_counts_streams", "n_samples must be positive"));
    }
    Ok(map_indexed(exec, seeds.len(), |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seeds[i]);
        (0..n_samples).map(|_| draw(&cdf, &mut rng)).collect()
    }))
}
