//! Dirichlet characters of modulus 1 and of odd prime-power modulus, stored
//! as a discrete logarithm against a fixed primitive root.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_integer::Integer;

use crate::arith::modular::{
    divisors, euler_phi, is_odd_prime, mod_inverse, multiplicative_order, odd_prime_power,
    pow_mod, residue,
};
use crate::arith::Cyclotomic;
use crate::error::{Error, Result};

/// Smallest `g ≥ 2` generating `(Z/f)^×` for an odd prime power `f`.
///
/// For `f = p^k` with `k ≥ 2` such a `g` is a primitive root modulo every
/// power of `p`.
pub fn primitive_root(f: u64) -> Result<u64> {
    let (p, _) = odd_prime_power(f).ok_or(Error::UnsupportedModulus(f))?;
    let phi = euler_phi(f);
    let g = (2..f)
        .find(|&g| multiplicative_order(g, f) == Some(phi))
        .ok_or_else(|| Error::Internal(format!("no primitive root modulo {f}")))?;
    debug_assert_eq!(multiplicative_order(g, p), Some(p - 1));
    Ok(g)
}

/// Baby-step giant-step tables for one modulus and generator.
#[derive(Debug)]
struct DiscreteLog {
    modulus: u64,
    generator: u64,
    phi: u64,
    step: u64,
    baby: HashMap<u64, u64>,
    giant: u64,
}

impl DiscreteLog {
    fn new(modulus: u64) -> Result<Self> {
        let generator = primitive_root(modulus)?;
        let phi = euler_phi(modulus);
        let step = (phi as f64).sqrt().ceil() as u64;
        let mut baby = HashMap::with_capacity(step as usize);
        let mut x = 1u64;
        for j in 0..step {
            baby.entry(x).or_insert(j);
            x = x * generator % modulus;
        }
        let g_step = pow_mod(generator, step, modulus);
        let giant = mod_inverse(g_step, modulus).expect("unit");
        Ok(DiscreteLog { modulus, generator, phi, step, baby, giant })
    }

    /// `log_g(n)` in `[0, φ(f))`, or `None` when `gcd(n, f) > 1`.
    fn log(&self, n: u64) -> Option<u64> {
        let n = n % self.modulus;
        if n.gcd(&self.modulus) != 1 {
            return None;
        }
        let mut y = n;
        for i in 0..=self.phi / self.step {
            if let Some(&j) = self.baby.get(&y) {
                return Some((i * self.step + j) % self.phi);
            }
            y = (y as u128 * self.giant as u128 % self.modulus as u128) as u64;
        }
        unreachable!("every unit has a discrete logarithm")
    }
}

/// A Dirichlet character `χ` of modulus `f ∈ {1} ∪ {p^k : p odd}` with
/// `χ(g) = ζ_{φ(f)}^{log_value}` for the canonical primitive root `g`.
///
/// Values are returned in the smallest cyclotomic field containing them,
/// `Q(ζ_d)` with `d` the order of `χ`.
#[derive(Clone)]
pub struct DirichletCharacter {
    modulus: u64,
    phi: u64,
    log_value: u64,
    dlog: Option<Arc<DiscreteLog>>,
}

impl DirichletCharacter {
    pub fn new(modulus: u64, log_value: u64) -> Result<Self> {
        let dlog = Self::table_for(modulus)?;
        Ok(Self::with_table(modulus, log_value, dlog))
    }

    pub fn principal(modulus: u64) -> Result<Self> {
        Self::new(modulus, 0)
    }

    fn table_for(modulus: u64) -> Result<Option<Arc<DiscreteLog>>> {
        match modulus {
            0 => Err(Error::UnsupportedModulus(0)),
            1 => Ok(None),
            f => Ok(Some(Arc::new(DiscreteLog::new(f)?))),
        }
    }

    fn with_table(modulus: u64, log_value: u64, dlog: Option<Arc<DiscreteLog>>) -> Self {
        let phi = euler_phi(modulus);
        DirichletCharacter { modulus, phi, log_value: log_value % phi, dlog }
    }

    fn sibling(&self, log_value: u64) -> Self {
        Self::with_table(self.modulus, log_value, self.dlog.clone())
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The primitive root the character is encoded against (`None` for `f = 1`).
    pub fn generator(&self) -> Option<u64> {
        self.dlog.as_ref().map(|d| d.generator)
    }

    pub fn log_value(&self) -> u64 {
        self.log_value
    }

    /// `φ(f)`, the order of the character group.
    pub fn group_order(&self) -> u64 {
        self.phi
    }

    /// Order of `χ` in `Dir(f)`; also the cyclotomic order of its values.
    pub fn order(&self) -> u64 {
        self.phi / self.log_value.gcd(&self.phi)
    }

    /// The odd prime dividing the modulus, if any.
    pub fn prime(&self) -> Option<u64> {
        odd_prime_power(self.modulus).map(|(p, _)| p)
    }

    pub fn is_principal(&self) -> bool {
        self.log_value == 0
    }

    /// Exponent `e` with `χ(n) = ζ_d^e`, `d = order()`; `None` when `χ(n) = 0`.
    pub fn exponent(&self, n: i64) -> Option<u64> {
        let Some(table) = &self.dlog else {
            return Some(0);
        };
        let idx = table.log(residue(n, self.modulus))?;
        let d = self.order();
        let scale = self.log_value / (self.phi / d);
        Some(((scale as u128 * idx as u128) % d as u128) as u64)
    }

    /// `χ(n)` as an element of `Q(ζ_d)`, `d = order()`.
    pub fn eval(&self, n: i64) -> Cyclotomic {
        let d = self.order();
        match self.exponent(n) {
            Some(e) => Cyclotomic::zeta_pow(d, e as i64),
            None => Cyclotomic::zero(d),
        }
    }

    /// `χ(n)` embedded in `Q(ζ_field)`; `order()` must divide `field`.
    pub fn eval_in(&self, n: i64, field: u64) -> Result<Cyclotomic> {
        self.eval(n).embed(field)
    }

    /// `χ(-1) = 1`.
    pub fn is_even(&self) -> bool {
        self.exponent(-1) == Some(0)
    }

    /// Smallest induced modulus: the least `d | f` such that `χ(n) = 1`
    /// for every unit `n ≡ 1 (mod d)`.
    pub fn conductor(&self) -> u64 {
        let f = self.modulus;
        divisors(f)
            .into_iter()
            .find(|&d| {
                (1..=f)
                    .step_by(d as usize)
                    .filter(|n| n.gcd(&f) == 1)
                    .all(|n| self.exponent(n as i64) == Some(0))
            })
            .unwrap_or(f)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// Pointwise product; both characters must share a modulus.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply characters of moduli {} and {}",
                self.modulus, other.modulus
            )));
        }
        Ok(self.sibling(self.log_value + other.log_value))
    }

    /// Complex conjugate character `n ↦ conj(χ(n))`.
    pub fn conjugate(&self) -> Self {
        self.sibling(self.phi - self.log_value)
    }

    /// `χ^σ` for `σ: ζ_d ↦ ζ_d^k`, `k` coprime to the order `d` of `χ`.
    pub fn galois_conj(&self, k: i64) -> Result<Self> {
        let d = self.order();
        let k = residue(k, d.max(1));
        if d > 1 && k.gcd(&d) != 1 {
            return Err(Error::NotCoprime { index: k as i64, order: d });
        }
        let j = (self.log_value as u128 * k as u128 % self.phi as u128) as u64;
        Ok(self.sibling(j))
    }

    /// `{χ^σ : σ ∈ Gal(Q(ζ_d)/Q)}` ordered by the Galois index `k`.
    pub fn galois_orbit(&self) -> Result<Vec<Self>> {
        if self.is_principal() {
            return Err(Error::PrincipalCharacter);
        }
        Cyclotomic::galois_indices(self.order())
            .into_iter()
            .map(|k| self.galois_conj(k))
            .collect()
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.log_value == other.log_value
    }
}

impl Eq for DirichletCharacter {}

impl Hash for DirichletCharacter {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.modulus.hash(state);
        self.log_value.hash(state);
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.generator() {
            Some(g) => write!(
                f,
                "chi mod {}: chi({g}) = z{}^{}",
                self.modulus, self.phi, self.log_value
            ),
            None => write!(f, "chi mod 1 (trivial)"),
        }
    }
}

/// A subgroup of `Dir(f)` listed explicitly; all members share one
/// discrete-log table.
#[derive(Clone, Debug)]
pub struct CharacterGroup {
    modulus: u64,
    characters: Vec<DirichletCharacter>,
}

impl CharacterGroup {
    /// The full group `Dir(f)` of order `φ(f)`, cyclic for odd prime powers.
    pub fn full(modulus: u64) -> Result<Self> {
        let table = DirichletCharacter::table_for(modulus)?;
        let phi = euler_phi(modulus);
        let characters = (0..phi)
            .map(|j| DirichletCharacter::with_table(modulus, j, table.clone()))
            .collect();
        Ok(CharacterGroup { modulus, characters })
    }

    /// `Dir(p²)[p]`: the characters mod `p²` whose values are `p`-th roots
    /// of unity. Element `k` sends the primitive root to `ζ_p^k`.
    pub fn torsion_subgroup(p: u64) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        let modulus = p * p;
        let table = DirichletCharacter::table_for(modulus)?;
        let characters = (0..p)
            .map(|k| DirichletCharacter::with_table(modulus, k * (p - 1), table.clone()))
            .collect();
        Ok(CharacterGroup { modulus, characters })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn characters(&self) -> &[DirichletCharacter] {
        &self.characters
    }

    pub fn iter(&self) -> impl Iterator<Item = &DirichletCharacter> {
        self.characters.iter()
    }

    pub fn contains(&self, chi: &DirichletCharacter) -> bool {
        self.characters.contains(chi)
    }

    pub fn nonprincipal(&self) -> impl Iterator<Item = &DirichletCharacter> {
        self.characters.iter().filter(|c| !c.is_principal())
    }

    /// First nonprincipal member, which generates the group when it is
    /// cyclic of prime order.
    pub fn generator(&self) -> Option<&DirichletCharacter> {
        self.nonprincipal().next()
    }
}

/// `(χ1 ∗ χ2)(n) = Σ_{d | n} χ1(d)·χ2(n/d)` for `n = 1..=n_max`, in the
/// field `Q(ζ_lcm)` of the two value orders.
pub fn dirichlet_convolution(
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    n_max: u64,
) -> Result<Vec<Cyclotomic>> {
    let field = chi1.order().lcm(&chi2.order());
    let v1 = (1..=n_max as i64).map(|n| chi1.eval_in(n, field)).collect::<Result<Vec<_>>>()?;
    let v2 = (1..=n_max as i64).map(|n| chi2.eval_in(n, field)).collect::<Result<Vec<_>>>()?;
    Ok(convolve(&v1, &v2))
}

/// Dirichlet convolution of two value sequences indexed from `n = 1`.
pub fn convolve(a: &[Cyclotomic], b: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let n_max = a.len().min(b.len());
    let field = a.first().map(Cyclotomic::order).unwrap_or(1);
    let mut out = vec![Cyclotomic::zero(field); n_max];
    for d in 1..=n_max {
        if a[d - 1].is_zero() {
            continue;
        }
        for k in 1..=n_max / d {
            if b[k - 1].is_zero() {
                continue;
            }
            let term = &a[d - 1] * &b[k - 1];
            out[d * k - 1] = &out[d * k - 1] + &term;
        }
    }
    out
}
