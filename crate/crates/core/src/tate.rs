//! Polynomials in `τ = s + s*` and the Gauss norm.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::Window;
use crate::operator::{shift_operator, OperatorMatrix, ShiftDirection};
use crate::scalar::{max_norm, NormValue, PadicScalar, Zp};

/// `max_k |a_k|`.
pub fn gauss_norm(coeffs: &[PadicScalar], ring: &Zp) -> NormValue {
    max_norm(coeffs.iter().map(PadicScalar::norm)).unwrap_or_else(|| ring.zero().norm())
}

/// `τ = RIGHT + LEFT` on the window `{0, ..., len-1}`.
pub fn tau(len: usize, ring: &Zp) -> Result<OperatorMatrix> {
    let window = Window::range(0, len, 0)?;
    let right = shift_operator(&window, ring, ShiftDirection::Right)?;
    let left = shift_operator(&window, ring, ShiftDirection::Left)?;
    right.add(&left)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateReport {
    pub degree: usize,
    pub gauss_norm: NormValue,
    /// Largest entry norm of `f(τ)` over the interior columns.
    pub operator_norm: NormValue,
    pub interior: Range<usize>,
    pub isometric: bool,
}

/// Evaluates `f(τ)` on a window of `len` points and compares its interior
/// column norm with the Gauss norm of `f`.
pub fn tate_check(coeffs: &[PadicScalar], len: usize, ring: &Zp) -> Result<TateReport> {
    let degree = coeffs.len().saturating_sub(1);
    if 2 * degree >= len {
        return Err(Error::WindowTooSmall(format!("degree {} needs more than {} points", degree, 2 * degree)));
    }
    if coeffs.iter().any(|c| !c.is_integral()) {
        return Err(Error::NotIntegral);
    }
    let f_tau = tau(len, ring)?.polynomial(coeffs)?;
    let interior = degree..len - degree;
    let operator_norm = f_tau.norm_on_columns(&interior);
    let gauss = gauss_norm(coeffs, ring);
    Ok(TateReport {
        degree,
        gauss_norm: gauss,
        operator_norm,
        interior,
        isometric: gauss.is_exact() && gauss == operator_norm,
    })
}

/// Valuations of the entries of `f(τ)` row by row; `None` marks an entry
/// below precision or structurally zero.
pub fn valuation_grid(coeffs: &[PadicScalar], len: usize, ring: &Zp) -> Result<Vec<Vec<Option<i64>>>> {
    let f_tau = tau(len, ring)?.polynomial(coeffs)?;
    Ok((0..len)
        .map(|i| (0..len).map(|j| f_tau.get(i, j).and_then(PadicScalar::valuation)).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_is_symmetric_tridiagonal() {
        let r = Zp::new(3, 8).unwrap();
        let t = tau(5, &r).unwrap();
        assert_eq!(t.adjoint(), t);
        assert!(t.get(2, 2).is_none());
        assert_eq!(t.entry(1, 2), r.one());
    }

    #[test]
    fn gauss_norm_examples() {
        let r = Zp::new(5, 8).unwrap();
        let f = [r.from_integer(5), r.from_integer(25), r.from_integer(10)];
        assert_eq!(gauss_norm(&f, &r), NormValue::exact(1));
        assert_eq!(gauss_norm(&[], &r), NormValue::upper_bound(8));
    }

    #[test]
    fn tate_examples() {
        let r = Zp::new(2, 16).unwrap();
        let f = [r.from_integer(1), r.from_integer(2), r.from_integer(4)];
        let rep = tate_check(&f, 20, &r).unwrap();
        assert!(rep.isometric);
        assert_eq!(rep.operator_norm, NormValue::exact(0));

        let f = [r.from_integer(2), r.from_integer(0), r.from_integer(6), r.from_integer(4)];
        let rep = tate_check(&f, 30, &r).unwrap();
        assert_eq!(rep.gauss_norm, NormValue::exact(1));
        assert!(rep.isometric);

        assert!(matches!(tate_check(&f, 6, &r), Err(Error::WindowTooSmall(_))));
    }
}
