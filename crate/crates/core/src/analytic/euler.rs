use std::f64::consts::{LN_2, PI, TAU};

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::primes::{primes_up_to, splitting_of, Splitting};
use super::{ln_abs_rational, ComplexApprox, CompensatedSum, RealApprox};
use crate::arith::modular::is_odd_prime;
use crate::bernoulli::classical_bernoulli;
use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::lvalues::moore_l_special;

const CHUNK: usize = 4096;

/// `Σ_{n > N} n^{-s} ≤ N^{1-s}/(s-1)`.
fn zeta_tail(n: f64, s: f64) -> f64 {
    n.powf(1.0 - s) / (s - 1.0)
}

/// `ζ(s)` for real `s > 1` by Euler–Maclaurin summation.
pub fn zeta_real(s: f64) -> Result<f64> {
    if s.is_nan() || s <= 1.0 {
        return Err(Error::InvalidArgument(format!("zeta_real needs s > 1, got {s}")));
    }
    const N: u32 = 16;
    const K: u64 = 10;
    let n = N as f64;
    let mut sum = CompensatedSum::default();
    for k in 1..N {
        sum.add((k as f64).powf(-s));
    }
    sum.add(n.powf(1.0 - s) / (s - 1.0));
    sum.add(0.5 * n.powf(-s));
    // Σ B_{2k}/(2k)! · s(s+1)…(s+2k-2) · N^{-s-2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    for k in 1..=K {
        let b = classical_bernoulli(2 * k).to_f64().expect("small Bernoulli number");
        sum.add(b / fact * rising * n.powf(-s - 2.0 * k as f64 + 1.0));
        let (a, c) = (s + 2.0 * k as f64 - 1.0, s + 2.0 * k as f64);
        rising *= a * c;
        fact *= (2 * k + 1) as f64 * (2 * k + 2) as f64;
    }
    Ok(sum.value())
}

/// `L(s, S/p)` for real `s > 1` from its Euler product over `ℓ ≤ prime_bound`:
///
/// `L(s, S/p) = 1/((1 - p^{-s}) ζ(s)) · Π_{split} (1 - ℓ^{-s})^{-p} · Π_{inert} (1 - ℓ^{-ps})^{-1}`.
///
/// Each local factor is combined with the matching factor of `1/ζ(s)`, so the
/// truncation drops only the primes above the bound. The bound is
/// `|log tail| ≤ (p-1)/(1 - B^{-s}) · B^{1-s}/(s-1)`.
pub fn euler_l_moore(s: f64, p: u64, prime_bound: u64) -> Result<RealApprox> {
    if s.is_nan() || s <= 1.0 {
        return Err(Error::InvalidArgument(format!("Euler product needs s > 1, got {s}")));
    }
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if prime_bound < 2 {
        return Err(Error::InvalidArgument("prime bound must be at least 2".into()));
    }
    let primes = primes_up_to(prime_bound);
    let pf = p as f64;
    // Fixed chunking keeps the reduction order independent of thread count.
    let partials: Vec<CompensatedSum> = primes
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = CompensatedSum::default();
            for &ell in chunk {
                let x = (ell as f64).powf(-s);
                match splitting_of(ell, p) {
                    Splitting::Split => acc.add(-(pf - 1.0) * (-x).ln_1p()),
                    Splitting::Inert => {
                        acc.add((-x).ln_1p());
                        acc.add(-(-(ell as f64).powf(-s * pf)).ln_1p());
                    }
                    Splitting::Ramified => {}
                }
            }
            acc
        })
        .collect();
    let mut total = CompensatedSum::default();
    for part in partials {
        total.merge(part);
    }
    let value = total.value().exp();
    let b = prime_bound as f64;
    let log_tail = (pf - 1.0) / (1.0 - b.powf(-s)) * zeta_tail(b, s);
    Ok(RealApprox::new(value, value * log_tail.exp_m1()))
}

/// Truncated Dirichlet series `Σ_{n ≤ n_max} χ(n) n^{-s}`.
pub fn series_l(chi: &DirichletCharacter, s: f64, n_max: u64) -> Result<ComplexApprox> {
    if s.is_nan() || s <= 1.0 {
        return Err(Error::InvalidArgument(format!("Dirichlet series needs s > 1, got {s}")));
    }
    let d = chi.order() as f64;
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    for n in 1..=n_max {
        if let Some(e) = chi.exponent(n as i64) {
            let w = Complex64::from_polar((n as f64).powf(-s), TAU * e as f64 / d);
            re.add(w.re);
            im.add(w.im);
        }
    }
    let tail = zeta_tail(n_max.max(1) as f64, s);
    Ok(ComplexApprox::new(Complex64::new(re.value(), im.value()), tail))
}

/// `Σ_{n ≥ 1} values[n-1]·n^{-s}` over the supplied terms.
pub fn dirichlet_series(values: &[Complex64], s: f64) -> Complex64 {
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    for (i, v) in values.iter().enumerate() {
        let w = v * ((i + 1) as f64).powf(-s);
        re.add(w.re);
        im.add(w.im);
    }
    Complex64::new(re.value(), im.value())
}

/// `|Σ_{r=1}^{f} χ(r)·e^{2πir/f}|` for primitive `χ`.
pub fn gauss_sum_magnitude(chi: &DirichletCharacter) -> Result<RealApprox> {
    let f = chi.modulus();
    let conductor = chi.conductor();
    if conductor != f {
        return Err(Error::Imprimitive { modulus: f, conductor });
    }
    let d = chi.order();
    let denom = (d * f) as u128;
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    for r in 1..=f {
        if let Some(e) = chi.exponent(r as i64) {
            // angle/2π = e/d + r/f, reduced exactly before rounding
            let num = (e as u128 * f as u128 + r as u128 * d as u128) % denom;
            let theta = TAU * num as f64 / denom as f64;
            re.add(theta.cos());
            im.add(theta.sin());
        }
    }
    let value = Complex64::new(re.value(), im.value()).norm();
    Ok(RealApprox::new(value, f as f64 * 4.0 * f64::EPSILON))
}

/// `ln((2^{n-1} π^n / (p^{2n-1} (n-1)!))^{p-1})`.
pub fn functional_equation_factor_ln(p: u64, n: u64) -> f64 {
    let nf = n as f64;
    let ln_fact: f64 = (1..n).map(|k| (k as f64).ln()).sum();
    (p as f64 - 1.0)
        * ((nf - 1.0) * LN_2 + nf * PI.ln() - (2.0 * nf - 1.0) * (p as f64).ln() - ln_fact)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalEquationReport {
    pub p: u64,
    pub n: u64,
    pub prime_bound: u64,
    pub tolerance: f64,
    /// Euler-product value of `L(n, S/p)`.
    pub euler: RealApprox,
    /// `(2^{n-1}π^n/(p^{2n-1}(n-1)!))^{p-1}·|L(1-n, S/p)|`.
    pub closed_form: f64,
    pub exact_special_value: crate::arith::Rational,
    pub relative_error: f64,
}

impl FunctionalEquationReport {
    /// `|euler - closed| ≤ tol·|closed| + error_bound`.
    pub fn passed(&self) -> bool {
        (self.euler.value - self.closed_form).abs()
            <= self.tolerance * self.closed_form.abs() + self.euler.error_bound
    }
}

/// Compares the Euler product at `s = n` with the functional-equation image
/// of the exact value `L(1 - n, S/p)`, in absolute value.
pub fn functional_equation_check(
    p: u64,
    n: u64,
    prime_bound: u64,
    tolerance: f64,
) -> Result<FunctionalEquationReport> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!("n must be even and >= 2, got {n}")));
    }
    let euler = euler_l_moore(n as f64, p, prime_bound)?;
    let exact = moore_l_special(p, 1 - n as i64)?;
    let closed_form = (functional_equation_factor_ln(p, n) + ln_abs_rational(&exact)).exp();
    let relative_error = (euler.value - closed_form).abs() / closed_form.abs();
    Ok(FunctionalEquationReport {
        p,
        n,
        prime_bound,
        tolerance,
        euler,
        closed_form,
        exact_special_value: exact,
        relative_error,
    })
}
