use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{Label, Window};
use crate::operator::OperatorMatrix;
use crate::scalar::{PadicScalar, Zp};

/// Truncated generators of the rotation algebra on `{-M..M}²`:
/// `U δ_{m,n} = z^m δ_{m,n+1}` and `V δ_{m,n} = δ_{m+1,n}`.
#[derive(Debug, Clone)]
pub struct RotationGenerators {
    pub z: PadicScalar,
    pub half_size: usize,
    pub u: OperatorMatrix,
    pub v: OperatorMatrix,
    /// `δ_{m,n} ↦ z^{-m} δ_{m,n-1}`.
    pub u_inverse: OperatorMatrix,
    /// Columns `δ_{m,n}` with `|m|, |n| ≤ M - 1`.
    pub interior: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationReport {
    /// `UV = z VU` on the interior.
    pub commutation: bool,
    /// `V*V = VV* = 1` on the interior.
    pub v_unitary: bool,
    /// `U U⁻¹ = U⁻¹ U = 1` on the interior.
    pub u_invertible: bool,
    /// `U*U = UU* = 1` on the interior; needs `z² = 1` since the adjoint is
    /// the transpose.
    pub u_unitary: bool,
}

impl RotationReport {
    /// The relations that must hold for every unit `z`.
    pub fn holds(&self) -> bool {
        self.commutation && self.v_unitary && self.u_invertible
    }
}

pub fn rotation_generators(z: &PadicScalar, half_size: usize) -> Result<RotationGenerators> {
    if !z.is_unit() {
        return Err(Error::NotAUnit);
    }
    if half_size == 0 {
        return Err(Error::WindowTooSmall("rotation window needs M >= 1".into()));
    }
    let ring: &Zp = z.ring();
    let m_max = half_size as i64;
    let side = 2 * half_size + 1;
    let coords: Vec<i64> = (-m_max..=m_max).collect();
    let labels = coords
        .iter()
        .flat_map(|&m| coords.iter().map(move |&n| Label::pair(Label::Int(m), Label::Int(n))))
        .collect();
    let window = Window::new(labels, 0)?;
    let pos = |m: i64, n: i64| -> Option<usize> {
        (m.abs() <= m_max && n.abs() <= m_max).then(|| (m + m_max) as usize * side + (n + m_max) as usize)
    };
    let z_inv = z.invert()?;
    let phase = |m: i64| if m >= 0 { z.pow(m as u64) } else { z_inv.pow(m.unsigned_abs()) };
    let mut u = Vec::new();
    let mut u_inverse = Vec::new();
    let mut v = Vec::new();
    let mut interior = vec![false; side * side];
    for &m in &coords {
        for &n in &coords {
            let here = pos(m, n).expect("inside");
            interior[here] = m.abs() < m_max && n.abs() < m_max;
            if let Some(to) = pos(m, n + 1) {
                u.push((to, here, phase(m)));
            }
            if let Some(to) = pos(m, n - 1) {
                u_inverse.push((to, here, phase(-m)));
            }
            if let Some(to) = pos(m + 1, n) {
                v.push((to, here, ring.one()));
            }
        }
    }
    Ok(RotationGenerators {
        z: z.clone(),
        half_size,
        u: OperatorMatrix::from_triplets(&window, ring, u)?,
        v: OperatorMatrix::from_triplets(&window, ring, v)?,
        u_inverse: OperatorMatrix::from_triplets(&window, ring, u_inverse)?,
        interior,
    })
}

impl RotationGenerators {
    pub fn verify(&self) -> Result<RotationReport> {
        let ring = self.u.ring();
        let id = OperatorMatrix::identity(self.u.window(), ring);
        let cols = &self.interior;
        let uv = self.u.compose(&self.v)?;
        let zvu = self.v.compose(&self.u)?.scale(&self.z);
        let commutation = uv.congruent_on(&zvu, cols)?;
        let unitary = |t: &OperatorMatrix| -> Result<bool> {
            let adj = t.adjoint();
            Ok(adj.compose(t)?.congruent_on(&id, cols)? && t.compose(&adj)?.congruent_on(&id, cols)?)
        };
        let v_unitary = unitary(&self.v)?;
        let u_unitary = unitary(&self.u)?;
        let u_invertible = self.u.compose(&self.u_inverse)?.congruent_on(&id, cols)?
            && self.u_inverse.compose(&self.u)?.congruent_on(&id, cols)?;
        Ok(RotationReport { commutation, v_unitary, u_invertible, u_unitary })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn untwisted_shifts_commute() {
        let r = Zp::new(5, 10).unwrap();
        let gens = rotation_generators(&r.one(), 3).unwrap();
        let rep = gens.verify().unwrap();
        assert!(rep.holds() && rep.u_unitary);
        let uv = gens.u.compose(&gens.v).unwrap();
        assert!(uv.congruent_on(&gens.v.compose(&gens.u).unwrap(), &gens.interior).unwrap());
    }

    #[test]
    fn twisted_relation_at_p5() {
        let r = Zp::new(5, 16).unwrap();
        let gens = rotation_generators(&r.from_integer(2), 4).unwrap();
        let rep = gens.verify().unwrap();
        assert!(rep.commutation && rep.v_unitary && rep.u_invertible);
        assert!(!rep.u_unitary);
        // z = -1 squares to one, so U is unitary as well
        let rep = rotation_generators(&r.from_integer(-1), 2).unwrap().verify().unwrap();
        assert!(rep.holds() && rep.u_unitary);
    }

    #[test]
    fn rejects_non_unit() {
        let r = Zp::new(5, 8).unwrap();
        assert_eq!(rotation_generators(&r.from_integer(10), 2).unwrap_err(), Error::NotAUnit);
    }
}
