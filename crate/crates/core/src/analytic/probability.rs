use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::euler::{euler_l_moore, zeta_real};
use super::primes::{splitting_of, Splitting};
use super::{ln_abs_rational, RealApprox};
use crate::arith::modular::is_odd_prime;
use crate::arith::{format_rational, Rational};
use crate::error::{Error, Result};
use crate::lvalues::moore_l_special;

/// An exact number `coefficient · π^{pi_power}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPiMultiple {
    pub coefficient: Rational,
    pub pi_power: i32,
}

impl ExactPiMultiple {
    pub fn to_f64(&self) -> f64 {
        let ln = ln_abs_rational(&self.coefficient) + self.pi_power as f64 * std::f64::consts::PI.ln();
        let sign = if self.coefficient.is_negative() { -1.0 } else { 1.0 };
        sign * ln.exp()
    }
}

impl fmt::Display for ExactPiMultiple {
    /// `59049/(64π^6)` style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = (self.coefficient.numer(), self.coefficient.denom());
        match self.pi_power {
            0 => f.write_str(&format_rational(&self.coefficient)),
            k if k > 0 && den.is_one() => write!(f, "{num}π^{k}"),
            k if k > 0 => write!(f, "{num}π^{k}/{den}"),
            k if den.is_one() => write!(f, "{num}/π^{}", -k),
            k => write!(f, "{num}/({den}π^{})", -k),
        }
    }
}

/// Closed form of the coprimality probability
/// `1/((1 - p^{-2})·ζ(2)·L(2, S/p))`, using `ζ(2) = π²/6` and the
/// functional equation `L(2, S/p) = (2π²/p³)^{p-1}·L(-1, S/p)`:
/// `p²/(p²-1) · 6 · (p³/2)^{p-1} / L(-1, S/p) · π^{-2p}`.
pub fn coprimality_closed_form(p: u64) -> Result<ExactPiMultiple> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let l = moore_l_special(p, -1)?.abs();
    let big = |n: u64| Rational::from_integer(BigInt::from(n));
    let p2 = big(p * p);
    let cube_half = Rational::new(BigInt::from(p).pow(3), BigInt::from(2));
    let coefficient = &p2 / (&p2 - Rational::one())
        * big(6)
        * num_traits::pow(cube_half, (p - 1) as usize)
        / l;
    Ok(ExactPiMultiple { coefficient, pi_power: -2 * p as i32 })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityReport {
    pub p: u64,
    pub prime_bound: u64,
    /// `1/((1 - p^{-2})·ζ(2)·L(2, S/p))` with the truncated Euler product.
    pub euler_route: RealApprox,
    pub closed_form: ExactPiMultiple,
    pub closed_form_value: f64,
}

impl ProbabilityReport {
    pub fn difference(&self) -> f64 {
        (self.euler_route.value - self.closed_form_value).abs()
    }
}

pub fn coprimality_probability(p: u64, prime_bound: u64) -> Result<ProbabilityReport> {
    let l2 = euler_l_moore(2.0, p, prime_bound)?;
    let pf = p as f64;
    let denom = (1.0 - pf.powi(-2)) * zeta_real(2.0)? * l2.value;
    let value = 1.0 / denom;
    let rel = l2.error_bound / (l2.value - l2.error_bound).max(f64::MIN_POSITIVE);
    let closed_form = coprimality_closed_form(p)?;
    Ok(ProbabilityReport {
        p,
        prime_bound,
        euler_route: RealApprox::new(value, value * rel),
        closed_form_value: closed_form.to_f64(),
        closed_form,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloReport {
    pub p: u64,
    pub samples: u64,
    pub range_bound: u64,
    pub seed: u64,
    pub successes: u64,
    pub frequency: f64,
    pub standard_error: f64,
}

impl MonteCarloReport {
    /// Distance from `target` in units of the standard error.
    pub fn z_score(&self, target: f64) -> f64 {
        (self.frequency - target).abs() / self.standard_error
    }
}

const BATCH: u64 = 1 << 14;
const SPF_LIMIT: u64 = 1 << 24;

/// Smallest-prime-factor table for fast factoring of gcds.
struct Factorer {
    spf: Vec<u32>,
}

impl Factorer {
    fn new(limit: u64) -> Self {
        let n = limit.min(SPF_LIMIT) as usize;
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Factorer { spf }
    }

    /// Whether `pred` holds for some prime factor of `n`.
    fn any_prime(&self, mut n: u64, mut pred: impl FnMut(u64) -> bool) -> bool {
        while n > 1 && (n as usize) >= self.spf.len() {
            let mut d = 2;
            while d * d <= n && !n.is_multiple_of(d) {
                d += 1;
            }
            let q = if d * d > n { n } else { d };
            if pred(q) {
                return true;
            }
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        while n > 1 {
            let q = self.spf[n as usize] as u64;
            if pred(q) {
                return true;
            }
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        false
    }
}

/// Frequency with which `2p` integers drawn uniformly from `[1, range_bound]`
/// satisfy both conditions:
///
/// 1. no inert prime `ℓ` (`χ(ℓ) ≠ 1`) divides all `2p` of them;
/// 2. no split prime `ℓ ≠ p` (`χ(ℓ) = 1`) divides both entries of any pair.
///
/// Samples are drawn in fixed batches, batch `b` from the ChaCha8 stream `b`
/// of `seed`, so results do not depend on the thread count. The finite range
/// biases the frequency slightly relative to natural density.
pub fn monte_carlo_probability(
    p: u64,
    samples: u64,
    range_bound: u64,
    seed: u64,
) -> Result<MonteCarloReport> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    if range_bound < 2 {
        return Err(Error::InvalidArgument("range bound must be at least 2".into()));
    }
    let factorer = Factorer::new(range_bound);
    let batches = samples.div_ceil(BATCH);
    let width = 2 * p as usize;
    let successes: u64 = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let count = BATCH.min(samples - b * BATCH);
            let mut tuple = vec![0u64; width];
            let mut ok = 0u64;
            for _ in 0..count {
                for x in tuple.iter_mut() {
                    *x = rng.random_range(1..=range_bound);
                }
                let all = tuple.iter().fold(0u64, |g, &x| g.gcd(&x));
                let cond1 = !factorer
                    .any_prime(all, |ell| splitting_of(ell, p) == Splitting::Inert);
                let cond2 = cond1
                    && tuple.chunks_exact(2).all(|pair| {
                        !factorer.any_prime(pair[0].gcd(&pair[1]), |ell| {
                            splitting_of(ell, p) == Splitting::Split
                        })
                    });
                ok += cond2 as u64;
            }
            ok
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    let frequency = successes as f64 / samples as f64;
    let standard_error = (frequency * (1.0 - frequency) / samples as f64).sqrt();
    Ok(MonteCarloReport {
        p,
        samples,
        range_bound,
        seed,
        successes,
        frequency,
        standard_error: standard_error.max(f64::MIN_POSITIVE),
    })
}
