//! Elements of `Q(ζ_m)` in the power basis `1, ζ, …, ζ^{φ(m)-1}` reduced
//! modulo the cyclotomic polynomial `Φ_m`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modular::{euler_phi, is_odd_prime, residue};
use super::poly;
use super::rational::{padic_valuation, Rational, Valuation};
use crate::error::{Error, Result};

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients of `Φ_m`, lowest degree first. Monic of degree `φ(m)`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    phi_shared(m).as_ref().clone()
}

fn phi_shared(m: u64) -> Arc<Vec<BigInt>> {
    assert!(m >= 1, "cyclotomic order must be positive");
    if let Some(p) = phi_cache().read().expect("phi cache poisoned").get(&m) {
        return Arc::clone(p);
    }
    // x^m - 1 = prod_{d | m} Phi_d
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in super::modular::divisors(m) {
        if d < m {
            num = div_exact_monic(&num, &phi_shared(d));
        }
    }
    let shared = Arc::new(num);
    phi_cache()
        .write()
        .expect("phi cache poisoned")
        .entry(m)
        .or_insert_with(|| Arc::clone(&shared));
    shared
}

fn div_exact_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        if !c.is_zero() {
            for (k, bk) in b.iter().enumerate() {
                r[i + k] -= &c * bk;
            }
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero), "inexact cyclotomic division");
    q
}

/// Folds exponents modulo `m` (valid since `Φ_m | x^m - 1`) and then reduces
/// modulo `Φ_m`. Works for any additive coefficient type.
fn reduce_with<T>(m: u64, mut poly: Vec<T>, mut sub_mul: impl FnMut(&mut T, &T, &BigInt)) -> Vec<T>
where
    T: Clone + Zero,
{
    let m_us = m as usize;
    if poly.len() > m_us {
        let tail = poly.split_off(m_us);
        for (i, c) in tail.into_iter().enumerate() {
            let slot = &mut poly[i % m_us];
            *slot = std::mem::replace(slot, T::zero()) + c;
        }
    }
    let phi = phi_shared(m);
    let deg = phi.len() - 1;
    while poly.len() > deg {
        let top = poly.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let base = poly.len() - deg;
        for k in 0..deg {
            sub_mul(&mut poly[base + k], &top, &phi[k]);
        }
    }
    poly.resize(deg, T::zero());
    poly
}

fn reduce_rational(m: u64, poly: Vec<Rational>) -> Vec<Rational> {
    reduce_with(m, poly, |slot, top, c| {
        if !c.is_zero() {
            *slot -= top * Rational::from_integer(c.clone());
        }
    })
}

fn reduce_integer(m: u64, poly: Vec<BigInt>) -> Vec<BigInt> {
    reduce_with(m, poly, |slot, top, c| {
        if !c.is_zero() {
            *slot -= top * c;
        }
    })
}

/// An element of the cyclotomic field `Q(ζ_m)`.
///
/// Equality is structural: same order and same reduced coordinates. Elements
/// of different orders are only combined when one order divides the other,
/// via `ζ_m = ζ_M^{M/m}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<Rational>,
}

/// The image of an element of `Z[ζ_p]` in `Z[ζ_p]/(1 - ζ_p) ≅ F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueModLambda {
    pub value: u64,
    pub p: u64,
}

impl Cyclotomic {
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let deg = euler_phi(order) as usize;
        Cyclotomic { order, coeffs: vec![Rational::zero(); deg] }
    }

    pub fn from_rational(order: u64, q: Rational) -> Self {
        let mut out = Self::zero(order);
        out.coeffs[0] = q;
        out
    }

    pub fn from_int(order: u64, n: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(n.into()))
    }

    pub fn one(order: u64) -> Self {
        Self::from_int(order, 1)
    }

    /// `ζ_m^e` for any integer exponent.
    pub fn zeta_pow(order: u64, e: i64) -> Self {
        let e = residue(e, order) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::from_coeffs(order, poly)
    }

    /// Reduces an arbitrary-length coefficient vector modulo `Φ_m`.
    pub fn from_coeffs(order: u64, coeffs: Vec<Rational>) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        Cyclotomic { order, coeffs: reduce_rational(order, coeffs) }
    }

    /// `Σ_e sums[e]·ζ_m^e` for integer weights indexed by exponent.
    pub fn from_exponent_sums(order: u64, sums: Vec<BigInt>) -> Self {
        let ints = reduce_integer(order, sums);
        Cyclotomic { order, coeffs: ints.into_iter().map(Rational::from_integer).collect() }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coordinates in the power basis; length `φ(order)`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// All power-basis coordinates are integers, i.e. the element lies in
    /// `Z[ζ_m]`, which is the full ring of integers of `Q(ζ_m)`.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Common denominator `d` and integer coordinates `d·self`.
    fn integer_parts(&self) -> (Vec<BigInt>, BigInt) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (ints, den)
    }

    /// Re-expresses `self` in `Q(ζ_target)`; requires `order | target`.
    pub fn embed(&self, target: u64) -> Result<Self> {
        if target == self.order {
            return Ok(self.clone());
        }
        if !target.is_multiple_of(self.order) {
            return Err(Error::IncompatibleOrders(self.order, target));
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(Self::from_coeffs(target, poly))
    }

    fn common(&self, other: &Self) -> Result<(Self, Self)> {
        if self.order == other.order {
            Ok((self.clone(), other.clone()))
        } else if other.order.is_multiple_of(self.order) {
            Ok((self.embed(other.order)?, other.clone()))
        } else if self.order.is_multiple_of(other.order) {
            Ok((self.clone(), other.embed(self.order)?))
        } else {
            Err(Error::IncompatibleOrders(self.order, other.order))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            let (a, b) = self.common(other)?;
            return a.checked_add(&b);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Cyclotomic { order: self.order, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            let (a, b) = self.common(other)?;
            return a.checked_mul(&b);
        }
        if let Some(q) = other.as_rational() {
            return Ok(self.scale(&q));
        }
        if let Some(q) = self.as_rational() {
            return Ok(other.scale(&q));
        }
        let (ia, da) = self.integer_parts();
        let (ib, db) = other.integer_parts();
        let mut prod = vec![BigInt::zero(); ia.len() + ib.len() - 1];
        for (i, x) in ia.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in ib.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        let den = da * db;
        let coeffs = reduce_integer(self.order, prod)
            .into_iter()
            .map(|c| Rational::new(c, den.clone()))
            .collect();
        Ok(Cyclotomic { order: self.order, coeffs })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Φ_m` over Q.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.order, q.recip()));
        }
        let modulus: Vec<Rational> = phi_shared(self.order)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let (g, s) = poly::ext_gcd_left(&self.coeffs, &modulus);
        if g.len() != 1 {
            return Err(Error::Internal(format!(
                "gcd with Phi_{} has degree {}",
                self.order,
                g.len() as i64 - 1
            )));
        }
        let unit = g[0].recip();
        Ok(Self::from_coeffs(self.order, s.into_iter().map(|c| c * &unit).collect()))
    }

    /// The automorphism `ζ_m ↦ ζ_m^k`.
    pub fn galois_conj(&self, k: i64) -> Result<Self> {
        let m = self.order;
        let k = residue(k, m);
        if k.gcd(&m) != 1 && m > 1 {
            return Err(Error::NotCoprime { index: k as i64, order: m });
        }
        let mut poly = vec![Rational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = ((i as u128 * k as u128) % m as u128) as usize;
            poly[e] += c;
        }
        Ok(Self::from_coeffs(m, poly))
    }

    /// Indices `k ∈ [1, m)` coprime to `m` (just `[1]` for `m ≤ 2`).
    pub fn galois_indices(order: u64) -> Vec<i64> {
        if order <= 2 {
            return vec![1];
        }
        (1..order).filter(|k| k.gcd(&order) == 1).map(|k| k as i64).collect()
    }

    /// `N_{Q(ζ_m)/Q}`: product of all Galois conjugates.
    pub fn norm(&self) -> Rational {
        let mut acc = self.clone();
        for k in Self::galois_indices(self.order).into_iter().skip(1) {
            let conj = self.galois_conj(k).expect("index coprime by construction");
            acc = &acc * &conj;
        }
        acc.as_rational()
            .expect("the field norm of a cyclotomic element is rational")
    }

    fn check_lambda_domain(&self, p: u64) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        let a = match self.order {
            1 => self.embed(p)?,
            o if o == p => self.clone(),
            o => return Err(Error::WrongOrder { expected: p, found: o }),
        };
        if !a.is_integral() {
            return Err(Error::NonIntegral(a.to_string()));
        }
        Ok(a)
    }

    /// Image of an element of `Z[ζ_p]` under `ζ_p ↦ 1` followed by reduction
    /// mod `p`.
    pub fn reduce_mod_lambda(&self, p: u64) -> Result<ResidueModLambda> {
        let a = self.check_lambda_domain(p)?;
        Ok(a.residue_unchecked(p))
    }

    fn residue_unchecked(&self, p: u64) -> ResidueModLambda {
        let pb = BigInt::from(p);
        let sum: BigInt = self.coeffs.iter().map(|c| c.numer().clone()).sum();
        let value = sum.mod_floor(&pb).to_u64().expect("residue below p");
        ResidueModLambda { value, p }
    }

    /// `(1 - ζ_p)`-adic valuation on `Z[ζ_p]`, by repeated exact division by
    /// `1 - ζ_p`. The loop is bounded by `(p-1)·ν_p(N(a))`.
    pub fn lambda_valuation(&self, p: u64) -> Result<Valuation> {
        let mut a = self.check_lambda_domain(p)?;
        if a.is_zero() {
            return Ok(Valuation::Infinity);
        }
        let norm_val = padic_valuation(&a.norm(), p)
            .finite()
            .expect("nonzero element has finite norm valuation");
        let bound = (p as i64 - 1) * norm_val;
        let lambda_inv = (&Self::one(p) - &Self::zeta_pow(p, 1)).inverse()?;
        let mut v = 0i64;
        while a.residue_unchecked(p).value == 0 {
            if v >= bound {
                return Err(Error::Internal(format!(
                    "lambda valuation exceeded bound {bound} for p = {p}"
                )));
            }
            a = &a * &lambda_inv;
            if !a.is_integral() {
                return Err(Error::Internal("inexact division by 1 - zeta_p".into()));
            }
            v += 1;
        }
        Ok(Valuation::Finite(v))
    }

    /// Complex embedding sending `ζ_m` to `e^{2πi/m}`.
    pub fn to_complex(&self) -> Complex64 {
        let m = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let theta = std::f64::consts::TAU * k as f64 / m;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if wrote {
                write!(f, " {sign} ")?;
            } else if sign == "-" {
                f.write_str("-")?;
            }
            let mag = super::format_rational(&mag);
            match k {
                0 => f.write_str(&mag)?,
                _ => {
                    if mag != "1" {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "z{}", self.order)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[Q(z{})]({})", self.order, self)
    }
}

// Operator sugar panics on orders with no common embedding; use the
// `checked_*` methods where that can happen.
impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_add(rhs).expect("incompatible cyclotomic orders")
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_sub(rhs).expect("incompatible cyclotomic orders")
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_mul(rhs).expect("incompatible cyclotomic orders")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}
