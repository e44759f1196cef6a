use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::smith::{smith_normal_form, IntMatrix};

/// `Z^r ⊕ Z/d_1 ⊕ ⋯ ⊕ Z/d_k` with `2 ≤ d_1 | d_2 | ⋯ | d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FinGenAbGroup {
    #[serde(rename = "rank")]
    pub free_rank: usize,
    #[serde(rename = "torsion")]
    pub invariant_factors: Vec<u64>,
}

impl FinGenAbGroup {
    /// Normalizes arbitrary cyclic summands `Z/c_i` (with `Z/0 = Z`) to
    /// invariant factors.
    pub fn new(free_rank: usize, cyclic: &[u64]) -> Result<Self> {
        let extra_free = cyclic.iter().filter(|&&c| c == 0).count();
        let mut torsion: Vec<u64> = cyclic.iter().copied().filter(|&c| c > 1).collect();
        if torsion.len() > 1 {
            let n = torsion.len();
            let mut diag = IntMatrix::zeros(n, n);
            for (i, &c) in torsion.iter().enumerate() {
                diag.set(i, i, c as i128);
            }
            torsion = smith_normal_form(&diag)?
                .diagonal()
                .into_iter()
                .map(|d| u64::try_from(d).map_err(|_| Error::Overflow("invariant factor")))
                .collect::<Result<Vec<_>>>()?;
            torsion.retain(|&d| d > 1);
        }
        Ok(FinGenAbGroup { free_rank: free_rank + extra_free, invariant_factors: torsion })
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn integers() -> Self {
        FinGenAbGroup { free_rank: 1, invariant_factors: vec![] }
    }

    /// `Z/d`, trivial for `d = 1` and `Z` for `d = 0`.
    pub fn cyclic(d: u64) -> Self {
        match d {
            0 => Self::integers(),
            1 => Self::trivial(),
            _ => FinGenAbGroup { free_rank: 0, invariant_factors: vec![d] },
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Number of elements of a finite group.
    pub fn order(&self) -> Option<u128> {
        if !self.is_finite() {
            return None;
        }
        self.invariant_factors.iter().try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let cyclic: Vec<u64> = self.invariant_factors.iter().chain(&other.invariant_factors).copied().collect();
        Self::new(self.free_rank + other.free_rank, &cyclic)
    }

    /// `G^n`.
    pub fn power(&self, n: usize) -> Result<Self> {
        let cyclic: Vec<u64> = (0..n).flat_map(|_| self.invariant_factors.iter().copied()).collect();
        Self::new(self.free_rank * n, &cyclic)
    }

    /// Single cyclic group `Z/d` if the group is cyclic and finite.
    pub fn cyclic_order(&self) -> Option<u64> {
        match (self.free_rank, self.invariant_factors.as_slice()) {
            (0, []) => Some(1),
            (0, [d]) => Some(*d),
            _ => None,
        }
    }
}

impl fmt::Display for FinGenAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{}", d)));
        write!(f, "{}", parts.join(" + "))
    }
}

/// `0 → sub → G → quot → 0`, with `G` filled in when it is determined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionData {
    pub sub: FinGenAbGroup,
    pub quot: FinGenAbGroup,
    pub resolved: Option<FinGenAbGroup>,
}

impl ExtensionData {
    /// Resolves only when one of the pieces is trivial.
    pub fn new(sub: FinGenAbGroup, quot: FinGenAbGroup) -> Self {
        let resolved = if sub.is_trivial() {
            Some(quot.clone())
        } else if quot.is_trivial() {
            Some(sub.clone())
        } else {
            None
        };
        ExtensionData { sub, quot, resolved }
    }

    /// Order of the middle group when both pieces are finite.
    pub fn order(&self) -> Option<u128> {
        self.sub.order()?.checked_mul(self.quot.order()?)
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form() {
        let g = FinGenAbGroup::new(1, &[2, 3, 1, 0]).unwrap();
        assert_eq!(g, FinGenAbGroup { free_rank: 2, invariant_factors: vec![6] });
        let g = FinGenAbGroup::new(0, &[4, 6]).unwrap();
        assert_eq!(g.invariant_factors, vec![2, 12]);
        assert_eq!(g.order(), Some(24));
        assert_eq!(g.to_string(), "Z/2 + Z/12");
        assert_eq!(FinGenAbGroup::trivial().to_string(), "0");
        assert_eq!(FinGenAbGroup::cyclic(1), FinGenAbGroup::trivial());
    }

    #[test]
    fn extension_resolution() {
        let z2 = FinGenAbGroup::cyclic(2);
        let e = ExtensionData::new(FinGenAbGroup::trivial(), z2.clone());
        assert_eq!(e.resolved, Some(z2.clone()));
        let e = ExtensionData::new(z2.clone(), z2.clone());
        assert_eq!(e.resolved, None);
        assert_eq!(e.order(), Some(4));
    }

    #[test]
    fn json_shape() {
        let g = FinGenAbGroup::new(1, &[2]).unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"rank":1,"torsion":[2]}"#);
    }
}
