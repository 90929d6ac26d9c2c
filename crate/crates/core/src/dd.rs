//! Double-double arithmetic.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, which
//! carries roughly 106 bits of significand. Every series in the crate is
//! summed in this representation and every Gamma-function term is generated
//! through [`Dd::ln_gamma`], so alternating series only lose accuracy once
//! their cancellation exceeds about 1e15 relative to the f64 output.
//!
//! The algorithms are the classical error-free transformations (Knuth's
//! two-sum, fused multiply-add two-product) and the QD-library style
//! exp/log kernels.

use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub(crate) const LN2: Dd = Dd::new(0.6931471805599453, 2.3190468138462996e-17);
pub(crate) const HALF_LN_2PI: Dd = Dd::new(0.9189385332046728, -3.8782941580672414e-17);
pub(crate) const PI: Dd = Dd::new(3.141592653589793, 1.2246467991473532e-16);

/// Relative precision of the representation, 2^-104.
pub(crate) const EPS: f64 = 4.930380657631324e-32;

// B_{2k} / (2k (2k-1)) for k = 1..=16, split into hi/lo parts.
const STIRLING: [Dd; 16] = [
    Dd::new(0.08333333333333333, 4.625929269271485e-18),
    Dd::new(-0.002777777777777778, 1.0601087908747154e-19),
    Dd::new(0.0007936507936507937, 6.883823317368282e-22),
    Dd::new(-0.0005952380952380953, 5.36938218754726e-20),
    Dd::new(0.0008417508417508417, 3.6870174889237694e-20),
    Dd::new(-0.0019175269175269176, 1.0675702776872475e-19),
    Dd::new(0.00641025641025641, 2.2240044563805217e-19),
    Dd::new(-0.029550653594771242, 4.861760957508855e-19),
    Dd::new(0.17964437236883057, -6.401600482710946e-19),
    Dd::new(-1.3924322169059011, 1.5837056989230303e-17),
    Dd::new(13.402864044168393, -6.154114101993966e-16),
    Dd::new(-156.84828462600203, 9.391823141715389e-15),
    Dd::new(2193.1033333333335, -1.3339255626002948e-13),
    Dd::new(-36108.77125372499, 5.897583353514365e-13),
    Dd::new(691472.268851313, 2.5585296305158e-11),
    Dd::new(-15238221.539407415, -8.76774522490625e-10),
];

// Stirling's series is used at or above this argument; smaller arguments
// are shifted up by the recurrence.
const STIRLING_MIN: f64 = 25.0;

#[inline]
pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
pub(crate) fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

/// `x * 2^k` without intermediate overflow for any representable result.
pub(crate) fn ldexp(mut x: f64, mut k: i32) -> f64 {
    while k > 1000 {
        x *= 2f64.powi(1000);
        k -= 1000;
    }
    while k < -1000 {
        x *= 2f64.powi(-1000);
        k += 1000;
    }
    x * 2f64.powi(k)
}

impl Dd {
    pub const ZERO: Dd = Dd::new(0.0, 0.0);
    pub const ONE: Dd = Dd::new(1.0, 0.0);

    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    pub const fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact product of two doubles.
    pub fn from_prod(a: f64, b: f64) -> Self {
        let (p, e) = two_prod(a, b);
        Dd { hi: p, lo: e }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn scale_pow2(self, k: i32) -> Self {
        Dd::new(ldexp(self.hi, k), ldexp(self.lo, k))
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.78 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Dd::ZERO;
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ONE;
        }
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2 * k).scale_pow2(-10);

        // expm1(r) by Taylor series; |r| < 3.4e-4 so a dozen terms is ample.
        let mut p = r;
        let mut term = r;
        for i in 2..=14 {
            term = term * r / (i as f64);
            p += term;
            if term.hi.abs() <= 1e-36 * p.hi.abs() {
                break;
            }
        }
        // expm1(2x) = 2 expm1(x) + expm1(x)^2
        for _ in 0..10 {
            p = p.scale_pow2(1) + p.sqr();
        }
        (p + 1.0).scale_pow2(k as i32)
    }

    /// Natural logarithm; NaN for non-positive input.
    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::from_f64(if self.hi == 0.0 {
                f64::NEG_INFINITY
            } else {
                f64::NAN
            });
        }
        if self.hi.is_infinite() {
            return self;
        }
        // Split off the binary exponent so exp(-y) below never goes subnormal.
        let e = self.hi.log2().floor() as i32;
        let m = self.scale_pow2(-e);
        let y = Dd::from_f64(m.hi.ln());
        // One Newton step on exp(y) = m doubles the number of correct bits.
        y + m * (-y).exp() - 1.0 + LN2 * e as f64
    }

    /// ln Γ(self) for self > 0.
    pub fn ln_gamma(self) -> Self {
        debug_assert!(self.hi > 0.0);
        if self.hi >= STIRLING_MIN {
            return stirling(self);
        }
        let shift = (STIRLING_MIN - self.hi).ceil() as usize;
        let mut prod = self;
        for j in 1..shift {
            prod = prod * (self + j as f64);
        }
        stirling(self + shift as f64) - prod.ln()
    }
}

fn stirling(z: Dd) -> Dd {
    let inv = Dd::ONE / z;
    let w = inv.sqr();
    let mut acc = STIRLING[STIRLING.len() - 1];
    for c in STIRLING.iter().rev().skip(1) {
        acc = acc * w + *c;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + acc * inv
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::from_f64(x)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd::new(-self.hi, -self.lo)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd::new(hi, lo)
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    fn add(self, b: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Dd::new(hi, lo)
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl AddAssign<f64> for Dd {
    fn add_assign(&mut self, b: f64) {
        *self = *self + b;
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    fn sub(self, b: f64) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd::new(hi, lo)
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd::new(hi, lo)
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd::new(hi, lo) + q3
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    fn div(self, b: f64) -> Dd {
        self / Dd::from_f64(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values from a 60-digit evaluation, stored as (hi, lo).
    fn close(a: Dd, hi: f64, lo: f64, rel: f64) -> bool {
        let d = (a - Dd::new(hi, lo)).to_f64().abs();
        d <= rel * hi.abs()
    }

    #[test]
    fn two_sum_is_exact() {
        let (s, e) = two_sum(1.0, 1e-20);
        assert_eq!(s, 1.0);
        assert_eq!(e, 1e-20);
    }

    #[test]
    fn exp_and_ln_round_trip() {
        for &x in &[-600.0, -30.5, -1.0, -1e-10, 1e-12, 0.3, 1.0, 2.5, 88.0, 700.0] {
            let v = Dd::from_f64(x);
            let back = v.exp().ln();
            assert!((back - v).to_f64().abs() <= 1e-30 * x.abs().max(1.0), "x = {x}");
        }
    }

    #[test]
    fn exp_one_matches_e() {
        // e = 2.718281828459045 + 1.4456468917292502e-16
        assert!(close(Dd::ONE.exp(), 2.718281828459045, 1.4456468917292502e-16, 1e-31));
    }

    #[test]
    fn ln_two_matches_constant() {
        assert!(close(Dd::from_f64(2.0).ln(), LN2.hi, LN2.lo, 1e-31));
    }

    #[test]
    fn ln_gamma_integers_match_factorials() {
        let mut fact = Dd::ONE;
        for n in 1..60u32 {
            // Γ(n+1) = n!
            fact = fact * n as f64;
            let lg = Dd::from_f64(n as f64 + 1.0).ln_gamma();
            let expect = fact.ln();
            assert!((lg - expect).to_f64().abs() <= 1e-29 * expect.hi.abs().max(1.0), "n = {n}");
        }
    }

    #[test]
    fn ln_gamma_half_is_half_ln_pi() {
        let lg = Dd::from_f64(0.5).ln_gamma();
        let expect = PI.ln() * 0.5;
        assert!((lg - expect).to_f64().abs() < 1e-28);
    }

    #[test]
    fn ln_gamma_near_one_keeps_relative_accuracy() {
        // ln Γ(1 + h) ≈ -γ h for small h
        let h = 2f64.powi(-40);
        let lg = Dd::from_f64(1.0 + h).ln_gamma().to_f64();
        let euler = 0.5772156649015329;
        assert!((lg / (-euler * h) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = Dd::new(3.0, 1e-17);
        let b = Dd::new(7.0, -2e-17);
        let q = a / b;
        assert!(((q * b) - a).to_f64().abs() < 1e-31);
    }
}
