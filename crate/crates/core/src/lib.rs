//! Mittag-Leffler functions and their umbral calculus.
//!
//! * [`mittag`]: E_{α,β}, Wright and Laguerre exponentials, Borel sums and
//!   the generalized e_m^{(α,β)} sums, all with error estimates.
//! * [`umbral`]: umbral moments, the modified binomial composition law and
//!   closed-form integrals.
//! * [`fracpde`]: spectral solver for time-fractional diffusion, the drift
//!   problem through two-variable Hermite polynomials, and fractional
//!   derivatives of generalized power series.
//! * [`fracstats`]: fractional photon-counting distributions, their moments
//!   and seeded sampling.
//!
//! Independent evaluations run on the rayon pool when the `parallel`
//! feature is on (the default); see [`parallel::Execution`].

mod dd;
pub mod error;
pub mod fracpde;
pub mod fracstats;
mod mellin;
pub mod mittag;
pub mod parallel;
pub mod scalar;
pub mod series;
pub mod umbral;

pub use error::{Error, Result};
pub use fracpde::{
    grid_second_moment, hermite_kdf, ml_derivative_apply, rl_frac_derivative, solve_drift_pde,
    solve_fractional_diffusion, GenPowerSeries, Grid, GridFunction,
};
pub use fracstats::{
    coherent_amplitude_laskin, generating_function_value, hermitian_square_amplitude, laskin_moments, p_m_laskin,
    p_m_schrodinger, sample_counts, schrodinger_moments, CountDistribution, MomentSummary, Variant,
};
pub use mittag::{
    deriv_ml_integer, e_sab, laguerre_exp, laguerre_limit_term, ml_e, ml_trig, ml_via_borel, wright, MLParams,
};
pub use parallel::Execution;
pub use scalar::{cos_pi, gauss_laguerre_rule, log_gamma, reciprocal_gamma, sin_pi, QuadratureRule};
pub use series::{Method, SeriesResult};
pub use umbral::{ml_gaussian_integral, ml_semigroup_sum, ml_stretched_integral};
