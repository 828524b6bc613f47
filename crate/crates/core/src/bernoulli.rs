//! Classical and generalized Bernoulli numbers.
//!
//! Convention: the classical numbers come from `t·e^t/(e^t - 1)`, so
//! `B_1 = +1/2`. This is the modulus-1 case of the generalized definition
//! `Σ_{r=1}^{f} χ(r)·t·e^{rt}/(e^{ft} - 1) = Σ_n B_n^χ tⁿ/n!`, and it makes
//! `ζ(1 - n) = -B_n/n` hold for every `n ≥ 1`, including `ζ(0) = -1/2`.
//! Most tables use `B_1 = -1/2`; only `B_1` differs.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{Cyclotomic, Rational};
use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};

/// A power series over `Q(ζ_m)` truncated after `precision` terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    order: u64,
    coeffs: Vec<Cyclotomic>,
}

impl PowerSeries {
    /// Builds `Σ_{k < coeffs.len()} coeffs[k]·t^k`, known modulo `t^{coeffs.len()}`.
    pub fn new(order: u64, coeffs: Vec<Cyclotomic>) -> Result<Self> {
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.embed(order))
            .collect::<Result<Vec<_>>>()?;
        Ok(PowerSeries { order, coeffs })
    }

    pub fn from_rationals(order: u64, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let coeffs = coeffs.into_iter().map(|q| Cyclotomic::from_rational(order, q)).collect();
        PowerSeries { order, coeffs }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Number of known terms; coefficients of `t^k` for `k ≥ precision` are unknown.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, k: usize) -> Result<&Cyclotomic> {
        self.coeffs.get(k).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "coefficient t^{k} requested from a series known to precision {}",
                self.coeffs.len()
            ))
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let prec = self.precision().min(other.precision());
        let order = self.check_order(other)?;
        let mut out = vec![Cyclotomic::zero(order); prec];
        for (i, a) in self.coeffs.iter().take(prec).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(prec - i).enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(PowerSeries { order, coeffs: out })
    }

    /// Truncated quotient by long division; the divisor needs a nonzero
    /// constant term.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let prec = self.precision().min(divisor.precision());
        let order = self.check_order(divisor)?;
        let lead_inv = divisor.coefficient(0)?.inverse()?;
        let mut out: Vec<Cyclotomic> = Vec::with_capacity(prec);
        for k in 0..prec {
            let mut acc = self.coeffs[k].clone();
            for i in 1..=k {
                let d = &divisor.coeffs[i];
                if !d.is_zero() {
                    acc = &acc - &(d * &out[k - i]);
                }
            }
            out.push(&acc * &lead_inv);
        }
        Ok(PowerSeries { order, coeffs: out })
    }

    fn check_order(&self, other: &Self) -> Result<u64> {
        if self.order == other.order {
            Ok(self.order)
        } else {
            Err(Error::IncompatibleOrders(self.order, other.order))
        }
    }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 1..=n {
        let next = &row[k as usize - 1] * (n - k + 1) / k;
        row.push(next);
    }
    row
}

/// `B_n` with `B_1 = +1/2`, by the Akiyama–Tanigawa transform.
pub fn classical_bernoulli(n: u64) -> Rational {
    let mut a: Vec<Rational> = Vec::with_capacity(n as usize + 1);
    for m in 0..=n as usize {
        a.push(Rational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            a[j - 1] = (&a[j - 1] - &a[j]) * Rational::from_integer(BigInt::from(j));
        }
    }
    a.swap_remove(0)
}

/// `ζ(1 - n) = -B_n/n` for `n ≥ 1`.
pub fn riemann_zeta_special(one_minus_n: i64) -> Result<Rational> {
    if one_minus_n > 0 {
        return Err(Error::InvalidArgument(format!(
            "zeta special values are taken at nonpositive integers, got {one_minus_n}"
        )));
    }
    let n = (1 - one_minus_n) as u64;
    Ok(-classical_bernoulli(n) / Rational::from_integer(BigInt::from(n)))
}

/// Key of the in-process memo: `(modulus, log_value, n)`.
pub type CacheKey = (u64, u64, u64);

/// Thread-safe memo of generalized Bernoulli numbers. Entries are inserted
/// whole under the write lock, so readers never see partial values.
#[derive(Default, Debug)]
pub struct BernoulliCache {
    entries: RwLock<HashMap<CacheKey, Cyclotomic>>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide cache used by [`generalized_bernoulli`].
    pub fn global() -> &'static BernoulliCache {
        static GLOBAL: OnceLock<BernoulliCache> = OnceLock::new();
        GLOBAL.get_or_init(BernoulliCache::new)
    }

    pub fn get(&self, key: &CacheKey) -> Option<Cyclotomic> {
        self.entries.read().expect("bernoulli cache poisoned").get(key).cloned()
    }

    pub fn insert(&self, key: CacheKey, value: Cyclotomic) {
        self.entries
            .write()
            .expect("bernoulli cache poisoned")
            .entry(key)
            .or_insert(value);
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("bernoulli cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All entries, sorted by key.
    pub fn snapshot(&self) -> Vec<(CacheKey, Cyclotomic)> {
        let mut all: Vec<_> = self
            .entries
            .read()
            .expect("bernoulli cache poisoned")
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        all.sort_by_key(|(k, _)| *k);
        all
    }

    pub fn get_or_compute(&self, chi: &DirichletCharacter, n: u64) -> Cyclotomic {
        let key = (chi.modulus(), chi.log_value(), n);
        if let Some(v) = self.get(&key) {
            return v;
        }
        let value = generalized_bernoulli_uncached(chi, n);
        self.insert(key, value.clone());
        value
    }
}

/// `B_n^χ ∈ Q(ζ_d)` (`d` the order of `χ`), memoised in the global cache.
pub fn generalized_bernoulli(chi: &DirichletCharacter, n: u64) -> Cyclotomic {
    BernoulliCache::global().get_or_compute(chi, n)
}

/// `B_n^χ` from the generating function: expand `A(t) = Σ_r χ(r)·e^{rt}`
/// and `D(t) = (e^{ft} - 1)/t` to degree `n`, divide, and read `n!·[tⁿ]`.
pub fn generalized_bernoulli_uncached(chi: &DirichletCharacter, n: u64) -> Cyclotomic {
    let f = chi.modulus();
    let d = chi.order();
    let terms = n as usize + 1;

    // Group residues by the exponent of their character value so each
    // coefficient of A is one integer vector over ζ_d.
    let classes: Vec<(u64, u64)> = (1..=f)
        .filter_map(|r| chi.exponent(r as i64).map(|e| (r, e)))
        .collect();
    let mut powers: Vec<BigInt> = vec![BigInt::one(); classes.len()];
    let mut numerator = Vec::with_capacity(terms);
    let mut divisor = Vec::with_capacity(terms);
    let mut k_fact = BigInt::one();
    let mut f_pow = BigInt::from(f);
    for k in 0..terms as u64 {
        if k > 0 {
            k_fact *= k;
            for (pw, (r, _)) in powers.iter_mut().zip(&classes) {
                *pw *= *r;
            }
            f_pow *= f;
        }
        let mut sums = vec![BigInt::zero(); d as usize];
        for (pw, (_, e)) in powers.iter().zip(&classes) {
            sums[*e as usize] += pw;
        }
        let inv_fact = Rational::new(BigInt::one(), k_fact.clone());
        numerator.push(Cyclotomic::from_exponent_sums(d, sums).scale(&inv_fact));
        // f^{k+1}/(k+1)!
        divisor.push(Rational::new(f_pow.clone(), &k_fact * (k + 1)));
    }
    let a = PowerSeries { order: d, coeffs: numerator };
    let dser = PowerSeries::from_rationals(d, divisor);
    let q = a.div(&dser).expect("divisor has constant term f != 0");
    q.coefficient(n as usize)
        .expect("series carries n + 1 terms")
        .scale(&Rational::from_integer(factorial(n)))
}

/// Classical numbers with `B_1 = -1/2` from `Σ_{k ≤ m} C(m+1, k)·B_k = 0`.
fn bernoulli_minus_table(n: u64) -> Vec<Rational> {
    let mut b: Vec<Rational> = vec![Rational::one()];
    for m in 1..=n {
        let row = binomial_row(m + 1);
        let s: Rational = (0..m as usize)
            .map(|k| &b[k] * Rational::from_integer(row[k].clone()))
            .sum();
        b.push(-s / Rational::from_integer(row[m as usize].clone()));
    }
    b
}

/// Independent check of [`generalized_bernoulli`] through
/// `B_n^χ = f^{n-1}·Σ_{a=1}^{f} χ(a)·B_n(a/f)`, with `B_n(x)` the Bernoulli
/// polynomial of `t·e^{xt}/(e^t - 1)`.
pub fn generalized_bernoulli_oracle(chi: &DirichletCharacter, n: u64) -> Cyclotomic {
    let f = chi.modulus();
    let d = chi.order();
    let b = bernoulli_minus_table(n);
    let row = binomial_row(n);
    let poly: Vec<Rational> = (0..=n as usize)
        .map(|k| &b[k] * Rational::from_integer(row[k].clone()))
        .collect();
    let f_big = BigInt::from(f);
    let mut total = Cyclotomic::zero(d);
    for a in 1..=f {
        let value = chi.eval(a as i64);
        if value.is_zero() {
            continue;
        }
        let x = Rational::new(BigInt::from(a), f_big.clone());
        // B_n(x) = Σ_k C(n,k) B_k x^{n-k}, by Horner in x
        let mut bx = Rational::zero();
        for c in &poly {
            bx = bx * &x + c;
        }
        total = &total + &value.scale(&bx);
    }
    let scale = if n == 0 {
        Rational::new(BigInt::one(), f_big)
    } else {
        Rational::from_integer(f_big.pow(n as u32 - 1))
    };
    total.scale(&scale)
}
