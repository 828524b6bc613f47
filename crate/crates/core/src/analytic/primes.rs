use crate::arith::modular::{is_odd_prime, is_prime, multiplicative_order, pow_mod};
use crate::error::{Error, Result};

/// Sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Position of `ℓ` relative to the primitive roots modulo `p²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimeClass {
    /// `G_p`: `ℓ` generates `(Z/p²)^×`.
    PrimitiveRoot,
    /// `N_p`: `ℓ ≠ p` and not a primitive root modulo `p²`.
    NonPrimitiveRoot,
    /// `ℓ = p`.
    Ramified,
}

/// Behaviour of `ℓ` in the degree-`p` field `F`, read off from `χ(ℓ)` for a
/// generator `χ` of `Dir(p²)[p]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Splitting {
    /// `χ(ℓ)` is a primitive `p`-th root of unity, i.e. `ℓ^{p-1} ≢ 1 (mod p²)`.
    Inert,
    /// `χ(ℓ) = 1`, i.e. `ℓ^{p-1} ≡ 1 (mod p²)`.
    Split,
    Ramified,
}

/// Every primitive root modulo `p²` is inert, but so is every other `ℓ`
/// whose order modulo `p²` is divisible by `p`; only the `ℓ` with
/// `ℓ^{p-1} ≡ 1 (mod p²)` split. The Euler factors of `L(s, S/p)` follow
/// [`Splitting`], not [`PrimeClass`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeClassification {
    pub prime: u64,
    pub class: PrimeClass,
    pub splitting: Splitting,
}

pub(crate) fn splitting_of(ell: u64, p: u64) -> Splitting {
    if ell == p {
        Splitting::Ramified
    } else if pow_mod(ell, p - 1, p * p) == 1 {
        Splitting::Split
    } else {
        Splitting::Inert
    }
}

pub fn classify_prime(ell: u64, p: u64) -> Result<PrimeClassification> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if !is_prime(ell) {
        return Err(Error::InvalidArgument(format!("{ell} is not prime")));
    }
    let class = if ell == p {
        PrimeClass::Ramified
    } else if multiplicative_order(ell, p * p) == Some(p * (p - 1)) {
        PrimeClass::PrimitiveRoot
    } else {
        PrimeClass::NonPrimitiveRoot
    };
    Ok(PrimeClassification { prime: ell, class, splitting: splitting_of(ell, p) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lvalues::moore_generator;

    #[test]
    fn sieve() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(primes_up_to(1), Vec::<u64>::new());
        assert_eq!(primes_up_to(1_000_000).len(), 78_498);
    }

    #[test]
    fn classification() {
        let c = |l, p| classify_prime(l, p).unwrap();
        assert_eq!(c(2, 3).class, PrimeClass::PrimitiveRoot);
        assert_eq!(c(7, 3).class, PrimeClass::NonPrimitiveRoot);
        assert_eq!(c(3, 3).class, PrimeClass::Ramified);
        // order 3 mod 9: not a primitive root, yet chi(7) != 1
        assert_eq!(c(7, 3).splitting, Splitting::Inert);
        assert_eq!(c(17, 3).splitting, Splitting::Split);
        assert!(classify_prime(9, 3).is_err());
        assert!(classify_prime(5, 2).is_err());
    }

    #[test]
    fn splitting_matches_character_values() {
        for p in [3u64, 5, 7] {
            let chi = moore_generator(p).unwrap();
            for ell in primes_up_to(400) {
                let class = classify_prime(ell, p).unwrap();
                let trivial = chi.exponent(ell as i64) == Some(0);
                match class.splitting {
                    Splitting::Split => assert!(trivial),
                    Splitting::Inert => assert!(!trivial),
                    Splitting::Ramified => assert_eq!(ell, p),
                }
                if class.class == PrimeClass::PrimitiveRoot {
                    assert_eq!(class.splitting, Splitting::Inert);
                }
            }
        }
    }
}
