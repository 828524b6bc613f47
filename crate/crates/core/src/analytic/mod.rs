//! Floating-point evaluations: Euler products and Dirichlet series for
//! `Re(s) > 1`, the functional-equation cross-check, Gauss sums, and the
//! coprimality probabilities.
//!
//! Everything runs in IEEE double precision. Truncation tails carry an a
//! priori bound; rounding error is not tracked.

mod euler;
mod primes;
mod probability;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use crate::arith::Rational;

pub use euler::{
    dirichlet_series, euler_l_moore, functional_equation_check, gauss_sum_magnitude,
    functional_equation_factor_ln, series_l, zeta_real, FunctionalEquationReport,
};
pub use primes::{classify_prime, primes_up_to, PrimeClass, PrimeClassification, Splitting};
pub use probability::{
    coprimality_closed_form, coprimality_probability, monte_carlo_probability, ExactPiMultiple,
    MonteCarloReport, ProbabilityReport,
};

/// Mantissa bits of the floating type used throughout.
pub const PRECISION_BITS: u32 = f64::MANTISSA_DIGITS;

/// A real approximation with an a priori truncation bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealApprox {
    pub value: f64,
    pub error_bound: f64,
    pub precision_bits: u32,
}

impl RealApprox {
    pub fn new(value: f64, error_bound: f64) -> Self {
        RealApprox { value, error_bound, precision_bits: PRECISION_BITS }
    }

    /// `|value - other| <= tol + error_bound`.
    pub fn agrees_with(&self, other: f64, tol: f64) -> bool {
        (self.value - other).abs() <= tol + self.error_bound
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexApprox {
    pub value: Complex64,
    pub error_bound: f64,
    pub precision_bits: u32,
}

impl ComplexApprox {
    pub fn new(value: Complex64, error_bound: f64) -> Self {
        ComplexApprox { value, error_bound, precision_bits: PRECISION_BITS }
    }
}

/// Natural log of `|n|`, valid far beyond the `f64` range.
pub(crate) fn ln_abs_big(n: &BigInt) -> f64 {
    let n = n.abs();
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top: BigInt = &n >> shift;
    top.to_f64().expect("64-bit value").ln() + shift as f64 * std::f64::consts::LN_2
}

pub(crate) fn ln_abs_rational(q: &Rational) -> f64 {
    ln_abs_big(q.numer()) - ln_abs_big(q.denom())
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn merge(&mut self, other: CompensatedSum) {
        self.add(other.sum);
        self.add(other.carry);
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_logs() {
        let n = BigInt::from(10).pow(400);
        assert!((ln_abs_big(&n) - 400.0 * std::f64::consts::LN_10).abs() < 1e-9);
        let q = Rational::new(BigInt::from(-4), BigInt::from(3));
        assert!((ln_abs_rational(&q) - (4.0f64 / 3.0).ln()).abs() < 1e-15);
    }

    #[test]
    fn compensated() {
        let mut s = CompensatedSum::default();
        s.add(1.0);
        for _ in 0..10 {
            s.add(1e-16);
        }
        assert!((s.value() - (1.0 + 1e-15)).abs() < 1e-17);
    }
}
