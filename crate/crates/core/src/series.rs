//! Log-domain series summation in double-double precision.
//!
//! Terms are supplied as a sign and a double-double natural logarithm of
//! the magnitude. The accumulator keeps its running sum scaled by a power of
//! two, so neither huge intermediate terms nor tiny prefactors overflow
//! before the final conversion to `f64`.

use crate::dd::{ldexp, Dd, EPS, LN2};

/// Number of terms after which a series is declared non-convergent.
pub const TERM_CAP: usize = 400;

/// Relative size below which two consecutive terms stop a series.
pub(crate) const STOP_TOL: f64 = 1e-17;

/// How a [`SeriesResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Direct summation of the defining power series.
    Series,
    /// Trapezoidal quadrature of the Mellin-Barnes contour integral, used
    /// for large negative arguments where the power series cancels
    /// catastrophically.
    MellinBarnes,
    /// An elementary closed form valid for the given parameters.
    ClosedForm,
}

/// A computed value with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    /// Bound on the truncation error (first omitted term) plus rounding.
    pub est_error: f64,
    /// Series terms summed; zero when the contour integral was used.
    pub terms_used: usize,
    pub method: Method,
}

impl SeriesResult {
    /// True when `est_error <= rel * max(1, |value|)`.
    pub fn within(&self, rel: f64) -> bool {
        self.est_error <= rel * self.value.abs().max(1.0)
    }
}

/// One series term: `sign * exp(log_mag)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Term {
    pub sign: f64,
    pub log_mag: Dd,
}

impl Term {
    pub const ZERO: Term = Term {
        sign: 0.0,
        log_mag: Dd::new(f64::NEG_INFINITY, 0.0),
    };

    pub fn new(sign: f64, log_mag: Dd) -> Self {
        if sign == 0.0 || log_mag.hi == f64::NEG_INFINITY {
            Term::ZERO
        } else {
            Term { sign, log_mag }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0.0
    }
}

/// `k * ln|x|` with the convention `0 * ln 0 = 0`.
pub(crate) fn log_pow(x: f64, k: u64) -> Dd {
    if k == 0 {
        Dd::ZERO
    } else if x == 0.0 {
        Dd::from_f64(f64::NEG_INFINITY)
    } else {
        Dd::from_f64(x.abs()).ln() * k as f64
    }
}

/// `k * lx` where `lx = ln|x|`, with the convention `0 * ln 0 = 0`.
pub(crate) fn times_log(lx: Dd, k: usize) -> Dd {
    if k == 0 {
        Dd::ZERO
    } else {
        lx * k as f64
    }
}

/// Sign of `x^k`.
pub(crate) fn sign_pow(x: f64, k: u64) -> f64 {
    if k == 0 {
        1.0
    } else if x == 0.0 {
        0.0
    } else if x < 0.0 && k % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Running sum `sum * 2^exp` with rounding bookkeeping.
#[derive(Debug, Clone)]
pub(crate) struct LogAccumulator {
    exp: i32,
    sum: Dd,
    abs_sum: f64,
    log_err: f64,
    empty: bool,
}

impl Default for LogAccumulator {
    fn default() -> Self {
        Self::new()
    }
}

impl LogAccumulator {
    pub fn new() -> Self {
        LogAccumulator {
            exp: 0,
            sum: Dd::ZERO,
            abs_sum: 0.0,
            log_err: 0.0,
            empty: true,
        }
    }

    /// Adds a term and returns its magnitude relative to the current scale,
    /// together with the scaled magnitude of the running sum.
    pub fn add(&mut self, t: Term) -> (f64, f64) {
        if t.is_zero() {
            return (0.0, self.sum.hi.abs());
        }
        let k = (t.log_mag.hi / LN2.hi).floor();
        let k = k.clamp(-1.0e6, 1.0e6) as i32;
        if self.empty || k > self.exp {
            let shift = if self.empty { 0 } else { self.exp - k };
            self.sum = self.sum.scale_pow2(shift);
            self.abs_sum = ldexp(self.abs_sum, shift);
            self.log_err = ldexp(self.log_err, shift);
            self.exp = k;
            self.empty = false;
        }
        let v = (t.log_mag - LN2 * self.exp as f64).exp();
        let mag = v.hi;
        self.sum += v * t.sign;
        self.abs_sum += mag;
        // Each log-magnitude carries the rounding of a few ln Γ evaluations,
        // whose shifted Stirling sums are of order a hundred.
        self.log_err += mag * (t.log_mag.hi.abs() + 200.0) * 8.0 * EPS;
        (mag, self.sum.hi.abs())
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn value(&self) -> f64 {
        if self.empty {
            return 0.0;
        }
        ldexp(self.sum.hi, self.exp) + ldexp(self.sum.lo, self.exp)
    }

    /// Rounding error bound of the accumulated sum (not the truncation).
    pub fn rounding_error(&self) -> f64 {
        if self.empty {
            return 0.0;
        }
        ldexp(8.0 * EPS * self.abs_sum + self.log_err, self.exp)
    }

    pub fn log_abs_sum(&self) -> f64 {
        if self.empty {
            return f64::NEG_INFINITY;
        }
        self.abs_sum.ln() + self.log_scale()
    }

    /// Natural log of the largest partial magnitude scale seen so far.
    pub fn log_scale(&self) -> f64 {
        self.exp as f64 * LN2.hi
    }

    /// Magnitude of a term relative to `2^exp`, without adding it.
    pub fn relative(&self, t: Term) -> f64 {
        if t.is_zero() {
            return 0.0;
        }
        (t.log_mag.hi - self.log_scale()).exp()
    }
}

/// Outcome of an infinite-series summation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesSum {
    pub value: f64,
    pub est_error: f64,
    pub terms_used: usize,
    /// The stopping rule fired before the term cap.
    pub converged: bool,
    /// ln Σ|term|, a magnitude bound that never overflows.
    pub log_abs_sum: f64,
}

impl SeriesSum {
    pub fn overflowed(&self) -> bool {
        !self.value.is_finite() || !self.est_error.is_finite()
    }

    pub fn into_result(self) -> SeriesResult {
        SeriesResult {
            value: self.value,
            est_error: self.est_error,
            terms_used: self.terms_used,
            method: Method::Series,
        }
    }
}

/// Sums `term(0) + term(1) + ...` until two consecutive terms are both
/// below `tol` times the partial sum, or `cap` terms have been used.
pub(crate) fn sum_series(cap: usize, tol: f64, term: impl FnMut(usize) -> Term) -> SeriesSum {
    sum_series_bounded(cap, tol, f64::INFINITY, term)
}

/// Like [`sum_series`], but gives up once the terms have grown by more than
/// `max_growth` (natural log) over the first non-zero term. Callers with a
/// better method for heavily cancelling series use this to fail fast.
pub(crate) fn sum_series_bounded(
    cap: usize,
    tol: f64,
    max_growth: f64,
    mut term: impl FnMut(usize) -> Term,
) -> SeriesSum {
    let mut acc = LogAccumulator::new();
    let mut small_run = 0;
    let mut used = 0;
    let mut converged = false;
    let mut first_log = None;
    while used < cap {
        let t = term(used);
        if first_log.is_none() && !t.is_zero() {
            first_log = Some(t.log_mag.hi.max(0.0));
        }
        if let Some(base) = first_log {
            if t.log_mag.hi - base > max_growth {
                break;
            }
        }
        let (mag, total) = acc.add(t);
        used += 1;
        if mag <= tol * total {
            small_run += 1;
            if small_run == 2 {
                converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    let omitted = term(used);
    let tail = if omitted.is_zero() {
        0.0
    } else if acc.is_empty() {
        omitted.log_mag.hi.exp()
    } else {
        ldexp(acc.relative(omitted), acc.exp)
    };
    let value = acc.value();
    let est_error = 2.0 * tail + acc.rounding_error() + f64::EPSILON * 0.5 * value.abs();
    SeriesSum {
        value,
        est_error,
        terms_used: used,
        converged,
        log_abs_sum: acc.log_abs_sum(),
    }
}

/// Sums exactly `n` terms.
pub(crate) fn sum_finite(n: usize, term: impl FnMut(usize) -> Term) -> (f64, f64) {
    let mut acc = LogAccumulator::new();
    for t in (0..n).map(term) {
        acc.add(t);
    }
    let v = acc.value();
    (v, acc.rounding_error() + f64::EPSILON * 0.5 * v.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp_term(x: f64) -> impl FnMut(usize) -> Term {
        move |r| {
            let lm = log_pow(x, r as u64) - Dd::from_f64(r as f64 + 1.0).ln_gamma();
            Term::new(sign_pow(x, r as u64), lm)
        }
    }

    #[test]
    fn exponential_series_is_accurate_for_negative_argument() {
        let s = sum_series(TERM_CAP, STOP_TOL, exp_term(-20.0));
        assert!(s.converged);
        let exact = (-20.0f64).exp();
        let err = (s.value - exact).abs();
        assert!(err <= 1e-13 * exact, "{} vs {exact}", s.value);
        assert!(s.est_error >= err && s.est_error < 1e-18, "{err:e} {:e}", s.est_error);
    }

    #[test]
    fn zero_argument_stops_immediately() {
        let s = sum_series(TERM_CAP, STOP_TOL, exp_term(0.0));
        assert_eq!(s.value, 1.0);
        assert!(s.terms_used <= 3);
        assert!(s.est_error <= f64::EPSILON);
    }

    #[test]
    fn cap_is_reported() {
        let s = sum_series(10, STOP_TOL, exp_term(50.0));
        assert!(!s.converged);
        assert_eq!(s.terms_used, 10);
    }

    #[test]
    fn huge_terms_do_not_overflow_the_accumulator() {
        // e^{800} is only infinite once converted to f64.
        let (v, _) = sum_finite(3, |r| Term::new(1.0, Dd::from_f64(800.0 - r as f64 * 800.0)));
        assert!(v.is_infinite());
        // A tiny leading term does not hide the large ones that follow.
        let (v, _) = sum_finite(2, |r| Term::new(1.0, Dd::from_f64(if r == 0 { -800.0 } else { 0.0 })));
        assert_eq!(v, 1.0);
    }
}
