use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{PadicScalar, Zp};

use super::group::FiniteGroup;

/// Normalized 2-cocycle `ω: G × G → Z_p^×`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    group: Arc<FiniteGroup>,
    ring: Zp,
    values: Vec<Vec<PadicScalar>>,
}

impl Cocycle {
    /// Checks units, normalization and the cocycle identity exhaustively.
    pub fn new(group: Arc<FiniteGroup>, ring: &Zp, values: Vec<Vec<PadicScalar>>) -> Result<Self> {
        let n = group.order();
        let bad = |msg: String| Error::InvalidCocycle(msg);
        if values.len() != n || values.iter().any(|row| row.len() != n) {
            return Err(bad(format!("value table must be {}x{}", n, n)));
        }
        for row in &values {
            for w in row {
                if w.ring() != ring {
                    return Err(Error::RingMismatch(w.prime(), w.precision(), ring.prime(), ring.precision()));
                }
                if !w.is_unit() {
                    return Err(bad(format!("{} is not a unit", w)));
                }
            }
        }
        let e = group.identity();
        let one = ring.one();
        let eq = |a: &PadicScalar, b: &PadicScalar| (a - b).is_below_precision();
        for g in 0..n {
            if !eq(&values[g][e], &one) || !eq(&values[e][g], &one) {
                return Err(bad(format!("not normalized at {}", group.label(g))));
            }
        }
        for g in 0..n {
            for h in 0..n {
                let gh = group.mul(g, h);
                for k in 0..n {
                    let lhs = &values[g][h] * &values[gh][k];
                    let rhs = &values[g][group.mul(h, k)] * &values[h][k];
                    if !eq(&lhs, &rhs) {
                        return Err(bad(format!(
                            "identity fails at ({}, {}, {})",
                            group.label(g),
                            group.label(h),
                            group.label(k)
                        )));
                    }
                }
            }
        }
        Ok(Cocycle { group, ring: ring.clone(), values })
    }

    pub fn from_fn(group: Arc<FiniteGroup>, ring: &Zp, f: impl Fn(usize, usize) -> PadicScalar) -> Result<Self> {
        let n = group.order();
        let values = (0..n).map(|g| (0..n).map(|h| f(g, h)).collect()).collect();
        Self::new(group, ring, values)
    }

    pub fn trivial(group: Arc<FiniteGroup>, ring: &Zp) -> Self {
        Self::from_fn(group, ring, |_, _| ring.one()).expect("constant cocycle")
    }

    /// Coboundary `b(g) b(h) / b(gh)` of a unit-valued function with
    /// `b(e) = 1`.
    pub fn coboundary(group: Arc<FiniteGroup>, ring: &Zp, b: &[PadicScalar]) -> Result<Self> {
        if b.len() != group.order() {
            return Err(Error::InvalidCocycle(format!("need {} values, got {}", group.order(), b.len())));
        }
        let inv = b.iter().map(PadicScalar::invert).collect::<Result<Vec<_>>>()?;
        let g = group.clone();
        Self::from_fn(group, ring, |x, y| &(&b[x] * &b[y]) * &inv[g.mul(x, y)])
    }

    /// Bicharacter `ζ^{b·c}` on `Z/m × Z/n` for elements `(a, b)`, `(c, d)`,
    /// given the positions of the two factors as `x / n` and `x % n`.
    pub fn bicharacter(group: Arc<FiniteGroup>, ring: &Zp, n: usize, zeta: &PadicScalar) -> Result<Self> {
        if n == 0 || !group.order().is_multiple_of(n) {
            return Err(Error::InvalidCocycle(format!("second factor of order {} does not divide |G|", n)));
        }
        Self::from_fn(group, ring, |x, y| zeta.pow(((x % n) * (y / n)) as u64))
    }

    /// Pointwise product of two cocycles on the same group.
    pub fn product(&self, other: &Cocycle) -> Result<Self> {
        self.check_group(&other.group)?;
        Self::from_fn(self.group.clone(), &self.ring, |g, h| &self.values[g][h] * &other.values[g][h])
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn value(&self, g: usize, h: usize) -> &PadicScalar {
        &self.values[g][h]
    }

    pub fn values(&self) -> &[Vec<PadicScalar>] {
        &self.values
    }

    pub(crate) fn check_group(&self, group: &FiniteGroup) -> Result<()> {
        if *self.group == *group {
            Ok(())
        } else {
            Err(Error::CarrierMismatch)
        }
    }
}
