//! Orders of the homotopy groups of the KU-local mod-p Moore spectrum.
//!
//! For odd `p`, `π_*(L_KU S/p) ≅ E(α₁) ⊗ F_p[v₁^{±1}]` with `|α₁| = 2p - 3`
//! and `|v₁| = 2p - 2`, so `π_n` has order `p` when `n ≡ 0` or `-1`
//! (mod `2p - 2`) and is trivial otherwise.

use crate::arith::modular::is_odd_prime;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomotopyPattern {
    p: u64,
}

impl HomotopyPattern {
    pub fn new(p: u64) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(HomotopyPattern { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// `|v₁| = 2p - 2`, the period of the pattern.
    pub fn period(&self) -> i64 {
        2 * self.p as i64 - 2
    }

    pub fn alpha1_degree(&self) -> i64 {
        2 * self.p as i64 - 3
    }

    pub fn v1_degree(&self) -> i64 {
        self.period()
    }

    pub fn order(&self, n: i64) -> u64 {
        match n.rem_euclid(self.period()) {
            0 => self.p,
            r if r == self.period() - 1 => self.p,
            _ => 1,
        }
    }
}

/// `#π_n(L_KU S/p)`.
pub fn homotopy_order(p: u64, n: i64) -> Result<u64> {
    Ok(HomotopyPattern::new(p)?.order(n))
}

/// Checks `#π_n = #π_{n + k(2p-2)}` for `k = 1..=steps`.
pub fn periodicity_witness(p: u64, n: i64, steps: u32) -> Result<bool> {
    let pattern = HomotopyPattern::new(p)?;
    let base = pattern.order(n);
    Ok((1..=steps as i64).all(|k| pattern.order(n + k * pattern.period()) == base))
}

/// `#π_{2(p-1)p^j - 1}(L_KU S/p)` for `j = 0..=j_max`; every entry is finite
/// and equal to `p`.
pub fn leopoldt_sequence(p: u64, j_max: u32) -> Result<Vec<u64>> {
    let pattern = HomotopyPattern::new(p)?;
    let mut out = Vec::with_capacity(j_max as usize + 1);
    for j in 0..=j_max {
        let degree = (p as i64)
            .checked_pow(j)
            .and_then(|pj| pj.checked_mul(2 * (p as i64 - 1)))
            .ok_or_else(|| Error::InvalidArgument(format!("degree overflow at j = {j}")))?
            - 1;
        out.push(pattern.order(degree));
    }
    if out.iter().any(|&o| o != p) {
        return Err(Error::Internal(format!("nonconstant Leopoldt sequence {out:?}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(homotopy_order(3, 4).unwrap(), 3);
        assert_eq!(homotopy_order(5, 7).unwrap(), 5);
        assert_eq!(homotopy_order(5, 3).unwrap(), 1);
        assert_eq!(homotopy_order(5, -1).unwrap(), 5);
        assert_eq!(homotopy_order(7, 0).unwrap(), 7);
        assert_eq!(homotopy_order(2, 0), Err(Error::NotOddPrime(2)));
        assert_eq!(homotopy_order(9, 0), Err(Error::NotOddPrime(9)));
        let pat = HomotopyPattern::new(5).unwrap();
        assert_eq!((pat.alpha1_degree(), pat.v1_degree()), (7, 8));
    }

    #[test]
    fn periodicity() {
        assert!(periodicity_witness(3, -1, 10).unwrap());
        assert!(periodicity_witness(5, 0, 10).unwrap());
        assert!(periodicity_witness(7, 5, 10).unwrap());
    }

    #[test]
    fn leopoldt() {
        assert_eq!(leopoldt_sequence(3, 4).unwrap(), vec![3; 5]);
        assert_eq!(leopoldt_sequence(5, 3).unwrap(), vec![5; 4]);
    }

    #[test]
    fn two_nontrivial_degrees_per_period() {
        for p in [3u64, 5, 7, 11, 13] {
            let pat = HomotopyPattern::new(p).unwrap();
            for start in -30..30 {
                let count = (start..start + pat.period()).filter(|&n| pat.order(n) != 1).count();
                assert_eq!(count, 2);
            }
        }
    }
}
