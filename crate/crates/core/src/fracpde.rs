//! Time-fractional PDEs on a periodic grid and fractional derivatives of
//! generalized power series.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::mittag::{ml_e, ml_e_core, MLParams, ML_TOL};
use crate::parallel::{map_indexed, try_map_indexed, Execution};
use crate::scalar::reciprocal_gamma;

/// A uniform periodic grid: `x_j = x_min + j (x_max - x_min) / n_points`.
///
/// `x_max` itself is identified with `x_min` and is not sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !x_min.is_finite() || !x_max.is_finite() || !(x_max > x_min) {
            return Err(Error::domain(
                "Grid",
                format!("need finite x_min < x_max, got [{x_min}, {x_max}]"),
            ));
        }
        if n_points < 2 {
            return Err(Error::domain("Grid", format!("need at least 2 points, got {n_points}")));
        }
        Ok(Grid { x_min, x_max, n_points })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn spacing(&self) -> f64 {
        self.length() / self.n_points as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.spacing()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.x(j)).collect()
    }

    /// |k| of mode `j` in the symmetric ordering 0, 1, ..., n/2, -(n/2 - 1), ..., -1.
    fn wavenumber(&self, j: usize) -> f64 {
        let m = j.min(self.n_points - j);
        2.0 * std::f64::consts::PI * m as f64 / self.length()
    }

    /// Largest |k| resolved by the grid.
    pub fn k_max(&self) -> f64 {
        self.wavenumber(self.n_points / 2)
    }
}

/// Samples of a function on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_points {
            return Err(Error::domain(
                "GridFunction",
                format!("expected {} values, got {}", grid.n_points, values.len()),
            ));
        }
        if let Some(j) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain("GridFunction", format!("value at index {j} is not finite")));
        }
        Ok(GridFunction { grid, values })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.points().into_iter().map(f).collect();
        GridFunction::new(grid, values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// ∫ F dx by the periodic trapezoid rule.
    pub fn integral(&self) -> f64 {
        self.grid.spacing() * self.values.iter().sum::<f64>()
    }

    pub fn sup_distance(&self, other: &GridFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: f64) -> GridFunction {
        GridFunction {
            grid: self.grid,
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }
}

/// H_n(x, y) = n! Σ_r x^{n-2r} y^r / ((n-2r)! r!).
pub const HERMITE_MAX_ORDER: u32 = 60;

/// Two-variable Hermite polynomial H_n(x, y), generated by e^{xt + yt²}.
pub fn hermite_kdf(n: u32, x: f64, y: f64) -> Result<f64> {
    if n > HERMITE_MAX_ORDER {
        return Err(Error::range(
            "hermite_kdf",
            format!("order must not exceed {HERMITE_MAX_ORDER}, got {n}"),
        ));
    }
    Ok(hermite_sequence(n as usize, x, y)[n as usize])
}

// H_0..=H_n via H_{k+1} = x H_k + 2k y H_{k-1}.
fn hermite_sequence(n: usize, x: f64, y: f64) -> Vec<f64> {
    let mut h = Vec::with_capacity(n + 1);
    h.push(1.0);
    if n >= 1 {
        h.push(x);
    }
    for k in 1..n {
        let next = x * h[k] + 2.0 * k as f64 * y * h[k - 1];
        h.push(next);
    }
    h
}

/// Settings for [`solve_fractional_diffusion_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DiffusionOptions {
    /// Admit α ∈ (2, 4]. The symbol E_α(-t^α k²) oscillates and may grow
    /// there, so results carry no accuracy guarantee.
    pub experimental: bool,
    pub execution: Execution,
}

/// Relative boundary magnitude above which periodic aliasing is reported.
pub const DECAY_GUARD: f64 = 1e-8;

/// F(x, t) = (1/√(2π)) ∫ E_α(-t^α k²) f̃(k) e^{ikx} dk on a periodic grid.
pub fn solve_fractional_diffusion(f: &GridFunction, alpha: f64, t: f64) -> Result<GridFunction> {
    solve_fractional_diffusion_with(f, alpha, t, &DiffusionOptions::default())
}

pub fn solve_fractional_diffusion_with(
    f: &GridFunction,
    alpha: f64,
    t: f64,
    opts: &DiffusionOptions,
) -> Result<GridFunction> {
    const OP: &str = "solve_fractional_diffusion";
    let alpha_max = if opts.experimental { 4.0 } else { 2.0 };
    if !(alpha > 0.0 && alpha <= alpha_max) {
        return Err(Error::domain(OP, format!("alpha must lie in (0, {alpha_max}], got {alpha}")));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain(OP, format!("t must be finite and non-negative, got {t}")));
    }
    if t == 0.0 {
        return Ok(f.clone());
    }

    let peak = f.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let edge = f.values[0].abs().max(f.values[f.values.len() - 1].abs());
    if edge > DECAY_GUARD * peak {
        log::warn!("{OP}: boundary value {edge:e} exceeds {DECAY_GUARD:e} of the peak {peak:e}; periodic aliasing likely");
    }

    let grid = f.grid;
    let n = grid.n_points;
    let ta = t.powf(alpha);
    // The symbol depends on |k| only, so one evaluation per distinct |k|.
    let half = n / 2;
    let symbol = try_map_indexed(opts.execution, half + 1, |m| {
        let z = -ta * grid.wavenumber(m).powi(2);
        let r = if alpha <= 2.0 {
            ml_e(MLParams::new(alpha, 1.0)?, z)?
        } else {
            ml_e_core(alpha, 1.0, z, ML_TOL)?
        };
        Ok::<f64, Error>(r.value)
    })?;

    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);
    let mut buf: Vec<Complex<f64>> = f.values.iter().map(|&v| Complex::new(v, 0.0)).collect();
    forward.process(&mut buf);
    for (j, c) in buf.iter_mut().enumerate() {
        *c *= symbol[j.min(n - j)];
    }
    inverse.process(&mut buf);
    let scale = 1.0 / n as f64;
    let values = buf.iter().map(|c| c.re * scale).collect();
    GridFunction::new(grid, values)
}

/// Result of [`solve_drift_pde`].
#[derive(Debug, Clone, PartialEq)]
pub struct DriftSolution {
    pub solution: GridFunction,
    /// Worst-case absolute error over the grid.
    pub est_error: f64,
    pub terms_used: usize,
}

pub const DRIFT_TERM_CAP: usize = 120;
pub const DRIFT_TOL: f64 = 1e-12;

/// Solution of the drift problem with initial condition e^{-x²}:
///
/// F = e^{-x²} Σ_r t^{αr}/Γ(αr+1) · H_r(x(a+2b), -(ab/2 + b²)).
pub fn solve_drift_pde(a: f64, b: f64, alpha: f64, t: f64, grid: &Grid) -> Result<DriftSolution> {
    solve_drift_pde_with(a, b, alpha, t, grid, Execution::default())
}

pub fn solve_drift_pde_with(
    a: f64,
    b: f64,
    alpha: f64,
    t: f64,
    grid: &Grid,
    execution: Execution,
) -> Result<DriftSolution> {
    const OP: &str = "solve_drift_pde";
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(OP, format!("a and b must be finite, got a = {a}, b = {b}")));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain(OP, format!("alpha must lie in (0, 1], got {alpha}")));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain(OP, format!("t must be finite and non-negative, got {t}")));
    }

    let y = -(a * b / 2.0 + b * b);
    let coeff: Vec<f64> = (0..=DRIFT_TERM_CAP)
        .map(|r| {
            if r == 0 {
                1.0
            } else if t == 0.0 {
                0.0
            } else {
                let ar = alpha * r as f64;
                (Dd::from_f64(ar * t.ln()) - Dd::from_f64(ar + 1.0).ln_gamma()).exp().to_f64()
            }
        })
        .collect();

    // Row j holds the terms r = 0..=cap at grid point j.
    let rows = map_indexed(execution, grid.n_points, |j| {
        let x = grid.x(j);
        let gauss = (-x * x).exp();
        let h = hermite_sequence(DRIFT_TERM_CAP, x * (a + 2.0 * b), y);
        h.iter().zip(&coeff).map(|(h, c)| gauss * c * h).collect::<Vec<f64>>()
    });
    if rows.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::overflow(OP, "series terms exceed the f64 range"));
    }

    let mut sums = vec![0.0; grid.n_points];
    let mut abs_sums = vec![0.0; grid.n_points];
    let mut small_run = 0;
    let mut used = 0;
    while used < DRIFT_TERM_CAP {
        let r = used;
        let mut term_sup = 0.0f64;
        for (j, row) in rows.iter().enumerate() {
            sums[j] += row[r];
            abs_sums[j] += row[r].abs();
            term_sup = term_sup.max(row[r].abs());
        }
        used += 1;
        let sum_sup = sums.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if term_sup < DRIFT_TOL * sum_sup || term_sup == 0.0 {
            small_run += 1;
            if small_run == 2 {
                break;
            }
        } else {
            small_run = 0;
        }
    }
    if small_run < 2 {
        return Err(Error::non_convergence(
            OP,
            format!("term cap {DRIFT_TERM_CAP} reached before the series settled"),
        ));
    }
    let est_error = rows
        .iter()
        .zip(&abs_sums)
        .map(|(row, s)| 2.0 * row[used].abs() + 4.0 * f64::EPSILON * s)
        .fold(0.0, f64::max);
    Ok(DriftSolution {
        solution: GridFunction::new(*grid, sums)?,
        est_error,
        terms_used: used,
    })
}

/// ∫ x² F dx / ∫ F dx by the periodic trapezoid rule.
pub fn grid_second_moment(f: &GridFunction) -> Result<f64> {
    let grid = f.grid;
    let mass: f64 = f.values.iter().sum();
    if !(mass > 0.0) {
        return Err(Error::ZeroMass { op: "grid_second_moment" });
    }
    let m2: f64 = f
        .values
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let x = grid.x(j);
            x * x * v
        })
        .sum();
    Ok(m2 / mass)
}

/// A finite sum Σ c_i x^{p_i} with distinct exponents in increasing order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GenPowerSeries {
    terms: Vec<(f64, f64)>,
}

/// Exponents closer than this are merged.
pub const EXPONENT_MERGE_TOL: f64 = 1e-12;

impl GenPowerSeries {
    /// Builds a series from `(coeff, exponent)` pairs in any order. Terms
    /// with matching exponents are added together.
    pub fn new(terms: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut terms: Vec<(f64, f64)> = terms.into_iter().collect();
        for &(c, p) in &terms {
            if !c.is_finite() || !p.is_finite() {
                return Err(Error::domain(
                    "GenPowerSeries",
                    format!("coefficient and exponent must be finite, got ({c}, {p})"),
                ));
            }
        }
        terms.sort_by(|a, b| a.1.total_cmp(&b.1));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(terms.len());
        for (c, p) in terms {
            match merged.last_mut() {
                Some(last) if (p - last.1).abs() <= EXPONENT_MERGE_TOL => last.0 += c,
                _ => merged.push((c, p)),
            }
        }
        Ok(GenPowerSeries { terms: merged })
    }

    /// The first `n_terms` terms of E_{α,β}(λ x^{step}) = Σ λ^r x^{step·r} / Γ(αr + β).
    pub fn mittag_leffler(alpha: f64, beta: f64, lambda: f64, step: f64, n_terms: usize) -> Result<Self> {
        MLParams::new(alpha, beta)?;
        if !lambda.is_finite() || !(step > 0.0) || !step.is_finite() {
            return Err(Error::domain(
                "GenPowerSeries::mittag_leffler",
                format!("need finite lambda and positive step, got lambda = {lambda}, step = {step}"),
            ));
        }
        GenPowerSeries::new((0..n_terms).map(|r| {
            let rf = r as f64;
            (lambda.powi(r as i32) * reciprocal_gamma(alpha * rf + beta), step * rf)
        }))
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.terms.iter().map(|&(c, p)| c * x.powf(p)).sum()
    }

    pub fn scale(&self, k: f64) -> GenPowerSeries {
        GenPowerSeries {
            terms: self.terms.iter().map(|&(c, p)| (k * c, p)).collect(),
        }
    }

    /// Keeps the first `n` terms.
    pub fn truncated(&self, n: usize) -> GenPowerSeries {
        GenPowerSeries {
            terms: self.terms.iter().take(n).copied().collect(),
        }
    }

    pub fn sub(&self, other: &GenPowerSeries) -> GenPowerSeries {
        let terms = self.terms.iter().copied().chain(other.terms.iter().map(|&(c, p)| (-c, p)));
        GenPowerSeries::new(terms).expect("finite terms stay finite")
    }

    /// Largest |c| over the terms, zero for the empty series.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.iter().fold(0.0, |m, &(c, _)| m.max(c.abs()))
    }
}

/// Result of [`rl_frac_derivative`]: a regular part plus the image of the
/// constant term, c x^{-α}/Γ(1-α), kept apart because it is singular at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct RlDerivative {
    pub regular: GenPowerSeries,
    /// `(coeff, exponent)` of the constant-term image; `None` when the
    /// series has no constant term or 1/Γ(1-α) vanishes.
    pub singular: Option<(f64, f64)>,
}

/// Termwise Riemann-Liouville derivative of order α:
/// c x^p ↦ c Γ(p+1)/Γ(p+1-α) x^{p-α}.
pub fn rl_frac_derivative(series: &GenPowerSeries, alpha: f64) -> Result<RlDerivative> {
    const OP: &str = "rl_frac_derivative";
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::domain(OP, format!("alpha must be positive and finite, got {alpha}")));
    }
    let mut regular = Vec::with_capacity(series.len());
    let mut singular = None;
    for &(c, p) in &series.terms {
        if p == 0.0 {
            let k = reciprocal_gamma(1.0 - alpha);
            if k != 0.0 && c != 0.0 {
                singular = Some((c * k, -alpha));
            }
            continue;
        }
        let shifted = p + 1.0 - alpha;
        if shifted <= 0.0 && shifted == shifted.floor() {
            // 1/Γ vanishes at the poles: the derivative annihilates the term.
            continue;
        }
        if p < 0.0 || p - alpha <= -1.0 {
            return Err(Error::domain(
                OP,
                format!("term x^{p} has no integrable derivative of order {alpha}"),
            ));
        }
        let ratio = (Dd::from_f64(p + 1.0).ln_gamma() - Dd::from_f64(shifted).ln_gamma()).exp().to_f64();
        regular.push((c * ratio, p - alpha));
    }
    Ok(RlDerivative {
        regular: GenPowerSeries::new(regular)?,
        singular,
    })
}

/// The Mittag-Leffler derivative n^n (x^{1-1/n} d/dx)^n applied termwise.
pub fn ml_derivative_apply(series: &GenPowerSeries, n: u32) -> Result<GenPowerSeries> {
    const OP: &str = "ml_derivative_apply";
    if n == 0 {
        return Err(Error::domain(OP, "order n must be at least 1"));
    }
    if let Some(&(_, p)) = series.terms.iter().find(|t| t.1 < 0.0) {
        return Err(Error::domain(OP, format!("exponents must be non-negative, found {p}")));
    }
    let step = 1.0 / n as f64;
    let scale = (n as f64).powi(n as i32);
    let terms = series.terms.iter().filter_map(|&(c, p)| {
        let mut coeff = c * scale;
        let mut q = p;
        for _ in 0..n {
            coeff *= q;
            q -= step;
        }
        (coeff != 0.0).then_some((coeff, p - 1.0))
    });
    GenPowerSeries::new(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::log_gamma;
    use proptest::prelude::*;

    fn gaussian() -> GridFunction {
        let grid = Grid::new(-20.0, 20.0, 1024).unwrap();
        GridFunction::from_fn(grid, |x| (-x * x).exp()).unwrap()
    }

    #[test]
    fn hermite_low_orders() {
        assert_eq!(hermite_kdf(0, 0.3, 7.0).unwrap(), 1.0);
        assert_eq!(hermite_kdf(1, 0.3, 7.0).unwrap(), 0.3);
        let (x, y) = (1.7, -0.4);
        assert!((hermite_kdf(2, x, y).unwrap() - (x * x + 2.0 * y)).abs() < 1e-15);
        assert!((hermite_kdf(3, x, y).unwrap() - (x * x * x + 6.0 * x * y)).abs() < 1e-14);
        assert!(hermite_kdf(61, x, y).is_err());
    }

    #[test]
    fn hermite_generating_function() {
        let (x, y, t) = (0.7, -0.3, 0.5f64);
        let mut sum = 0.0;
        let mut fact = 1.0;
        for n in 0..=40u32 {
            if n > 0 {
                fact *= n as f64;
            }
            sum += t.powi(n as i32) / fact * hermite_kdf(n, x, y).unwrap();
        }
        assert!((sum - (x * t + y * t * t).exp()).abs() < 1e-10);
    }

    #[test]
    fn diffusion_at_time_zero_is_identity() {
        let f = gaussian();
        for alpha in [0.3, 1.0, 2.0] {
            assert_eq!(solve_fractional_diffusion(&f, alpha, 0.0).unwrap(), f);
        }
    }

    #[test]
    fn heat_equation_matches_closed_form() {
        let f = gaussian();
        let t = 0.5;
        let u = solve_fractional_diffusion(&f, 1.0, t).unwrap();
        let exact = GridFunction::from_fn(*f.grid(), |x| {
            let s = 1.0 + 4.0 * t;
            (-x * x / s).exp() / s.sqrt()
        })
        .unwrap();
        assert!(u.sup_distance(&exact) < 1e-6, "{}", u.sup_distance(&exact));
    }

    #[test]
    fn diffusion_conserves_mass_and_spreads_as_predicted() {
        let f = gaussian();
        let m0 = grid_second_moment(&f).unwrap();
        let t = 1.0;
        let alpha = 0.5;
        let u = solve_fractional_diffusion(&f, alpha, t).unwrap();
        assert!((u.integral() - f.integral()).abs() < 1e-8);
        let growth = grid_second_moment(&u).unwrap() - m0;
        let expect = 2.0 * t.powf(alpha) / log_gamma(1.0 + alpha).unwrap().exp();
        assert!((growth - expect).abs() < 1e-3, "{growth} vs {expect}");
    }

    #[test]
    fn diffusion_is_schedule_independent() {
        let f = gaussian();
        let seq = DiffusionOptions {
            experimental: false,
            execution: Execution::Sequential,
        };
        let par = DiffusionOptions {
            execution: Execution::Parallel,
            ..seq
        };
        let a = solve_fractional_diffusion_with(&f, 0.8, 0.3, &seq).unwrap();
        let b = solve_fractional_diffusion_with(&f, 0.8, 0.3, &par).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn diffusion_rejects_large_alpha_unless_experimental() {
        let grid = Grid::new(-10.0, 10.0, 256).unwrap();
        let f = GridFunction::from_fn(grid, |x| (-x * x).exp()).unwrap();
        assert!(matches!(solve_fractional_diffusion(&f, 3.5, 0.2), Err(Error::Domain { .. })));
        let opts = DiffusionOptions {
            experimental: true,
            ..Default::default()
        };
        let u = solve_fractional_diffusion_with(&f, 3.5, 0.2, &opts).unwrap();
        assert!(u.values().iter().all(|v| v.is_finite()));
    }

    #[test]
    fn drift_initial_condition() {
        let grid = Grid::new(-8.0, 8.0, 128).unwrap();
        let s = solve_drift_pde(1.0, 0.5, 0.6, 0.0, &grid).unwrap();
        let f0 = GridFunction::from_fn(grid, |x| (-x * x).exp()).unwrap();
        assert_eq!(s.solution, f0);
    }

    #[test]
    fn drift_matches_weyl_form_at_alpha_one() {
        let grid = Grid::new(-10.0, 10.0, 512).unwrap();
        let (a, b, t) = (1.0, 0.5, 0.4);
        let s = solve_drift_pde(a, b, 1.0, t, &grid).unwrap();
        let exact = GridFunction::from_fn(grid, |x| {
            (a * x * t - a * b * t * t / 2.0).exp() * (-(x - b * t).powi(2)).exp()
        })
        .unwrap();
        assert!(s.solution.sup_distance(&exact) < 1e-8);
        assert!(s.est_error < 1e-8);
    }

    #[test]
    fn drift_without_b_multiplies_by_mittag_leffler() {
        let grid = Grid::new(-4.0, 4.0, 64).unwrap();
        let (a, alpha, t) = (1.0, 0.7, 1.0);
        let s = solve_drift_pde(a, 0.0, alpha, t, &grid).unwrap();
        let p = MLParams::new(alpha, 1.0).unwrap();
        for (j, v) in s.solution.values().iter().enumerate() {
            let x = grid.x(j);
            let e = ml_e(p, a * x * t.powf(alpha)).unwrap().value * (-x * x).exp();
            assert!((v - e).abs() < 1e-8, "x = {x}");
        }
    }

    #[test]
    fn second_moment_of_gaussians() {
        let f = gaussian();
        assert!((grid_second_moment(&f).unwrap() - 0.5).abs() < 1e-8);
        let grid = Grid::new(-10.0, 10.0, 2048).unwrap();
        let w = 0.05;
        let g = GridFunction::from_fn(grid, |x| (-(x - 2.0).powi(2) / (2.0 * w * w)).exp()).unwrap();
        assert!((grid_second_moment(&g).unwrap() - (4.0 + w * w)).abs() < 1e-10);
        assert_eq!(grid_second_moment(&f.scaled(4.0)).unwrap(), grid_second_moment(&f).unwrap());
        assert!(matches!(grid_second_moment(&f.scaled(0.0)), Err(Error::ZeroMass { .. })));
    }

    #[test]
    fn power_series_merges_exponents() {
        let s = GenPowerSeries::new([(1.0, 2.0), (3.0, 0.5), (2.0, 2.0 + 1e-14)]).unwrap();
        assert_eq!(s.terms(), &[(3.0, 0.5), (3.0, 2.0)]);
        assert!(GenPowerSeries::new([(f64::NAN, 1.0)]).is_err());
    }

    #[test]
    fn rl_derivative_simple_cases() {
        let d = rl_frac_derivative(&GenPowerSeries::new([(1.0, 2.0)]).unwrap(), 1.0).unwrap();
        assert_eq!(d.regular.terms(), &[(2.0, 1.0)]);
        assert!(d.singular.is_none());

        let d = rl_frac_derivative(&GenPowerSeries::new([(1.0, 0.0)]).unwrap(), 0.5).unwrap();
        assert!(d.regular.is_empty());
        let (c, p) = d.singular.unwrap();
        assert!((c - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-15);
        assert_eq!(p, -0.5);

        // x has no second derivative.
        let d = rl_frac_derivative(&GenPowerSeries::new([(1.0, 1.0)]).unwrap(), 2.0).unwrap();
        assert!(d.regular.is_empty());
        assert!(rl_frac_derivative(&GenPowerSeries::new([(1.0, 0.2)]).unwrap(), 1.5).is_err());
    }

    #[test]
    fn rl_eigenrelation_on_truncated_series() {
        let lambda = 0.8;
        for alpha in [0.3, 0.5, 0.8] {
            let e = GenPowerSeries::mittag_leffler(alpha, 1.0, lambda, alpha, 40).unwrap();
            let d = rl_frac_derivative(&e, alpha).unwrap();
            let residual = d.regular.sub(&e.truncated(39).scale(lambda));
            assert!(residual.max_abs_coeff() <= 1e-12, "alpha = {alpha}");
            let (c, p) = d.singular.unwrap();
            assert!((c - reciprocal_gamma(1.0 - alpha)).abs() < 1e-15);
            assert_eq!(p, -alpha);
        }
    }

    #[test]
    fn ml_derivative_eigenrelation() {
        let lambda = 0.6;
        for n in 1..=3u32 {
            let e = GenPowerSeries::mittag_leffler(n as f64, 1.0, lambda, 1.0, 30).unwrap();
            let d = ml_derivative_apply(&e, n).unwrap();
            let residual = d.sub(&e.truncated(29).scale(lambda));
            assert!(residual.max_abs_coeff() <= 1e-12, "n = {n}");
        }
        let c = GenPowerSeries::new([(5.0, 0.0)]).unwrap();
        assert!(ml_derivative_apply(&c, 3).unwrap().is_empty());
    }

    proptest! {
        #[test]
        fn diffusion_conserves_mass(alpha in 0.2f64..2.0, t in 0.0f64..2.0) {
            let grid = Grid::new(-20.0, 20.0, 256).unwrap();
            let f = GridFunction::from_fn(grid, |x| (-x * x).exp()).unwrap();
            let u = solve_fractional_diffusion(&f, alpha, t).unwrap();
            prop_assert!((u.integral() - f.integral()).abs() < 1e-8);
        }

        #[test]
        fn hermite_recurrence_matches_explicit_sum(n in 0u32..20, x in -2.0f64..2.0, y in -2.0f64..2.0) {
            let mut s = 0.0;
            for r in 0..=n / 2 {
                let k = n - 2 * r;
                let lc = log_gamma(n as f64 + 1.0).unwrap()
                    - log_gamma(k as f64 + 1.0).unwrap()
                    - log_gamma(r as f64 + 1.0).unwrap();
                s += lc.exp() * x.powi(k as i32) * y.powi(r as i32);
            }
            let h = hermite_kdf(n, x, y).unwrap();
            prop_assert!((h - s).abs() <= 1e-9 * s.abs().max(1.0));
        }
    }
}
