use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Trial-division factorization of an integer, possibly partial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub negative: bool,
    pub zero: bool,
    pub primes: Vec<(BigUint, u32)>,
    /// Part left after dividing out every prime up to the bound; not known to be prime.
    pub cofactor: Option<BigUint>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_none()
    }
}

/// Divides out every prime `≤ bound`. A remaining factor below `(bound+1)²`
/// is prime; anything larger is kept as an unfactored cofactor.
pub fn trial_factor(n: &BigInt, bound: u64) -> Factorization {
    let (sign, mag) = n.clone().into_parts();
    let mut out = Factorization {
        negative: sign == Sign::Minus,
        zero: mag.is_zero(),
        primes: Vec::new(),
        cofactor: None,
    };
    if out.zero {
        return out;
    }
    let mut rest = mag;
    let mut d = 2u64;
    while d <= bound {
        if BigUint::from(d) * BigUint::from(d) > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&BigUint::from(d));
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.primes.push((BigUint::from(d), e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let limit = BigUint::from(bound + 1).pow(2);
        if rest < limit {
            out.primes.push((rest, 1));
        } else {
            out.cofactor = Some(rest);
        }
    }
    out
}

impl fmt::Display for Factorization {
    /// `2^2·7·43·1171`; an unfactored cofactor is shown as `·C(…)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self
            .primes
            .iter()
            .map(|(q, e)| if *e == 1 { q.to_string() } else { format!("{q}^{e}") })
            .collect();
        if let Some(c) = &self.cofactor {
            parts.push(format!("C({c})"));
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        if self.negative {
            f.write_str("-")?;
        }
        f.write_str(&parts.join("·"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn appendix_numerators() {
        assert_eq!(trial_factor(&BigInt::from(1409884), 1171).to_string(), "2^2·7·43·1171");
        assert_eq!(trial_factor(&BigInt::from(1136), 100).to_string(), "2^4·71");
        assert_eq!(trial_factor(&BigInt::from(796), 20).to_string(), "2^2·199");
    }

    #[test]
    fn cofactor_flagged() {
        let f = trial_factor(&BigInt::from(1409884), 10);
        assert!(!f.is_complete());
        assert_eq!(f.to_string(), "2^2·7·C(50353)");
    }

    #[test]
    fn edge_cases() {
        assert_eq!(trial_factor(&BigInt::from(0), 10).to_string(), "0");
        assert_eq!(trial_factor(&BigInt::from(1), 10).to_string(), "1");
        assert_eq!(trial_factor(&BigInt::from(-12), 10).to_string(), "-2^2·3");
        assert_eq!(trial_factor(&BigInt::from(97), 10).to_string(), "97");
    }
}
