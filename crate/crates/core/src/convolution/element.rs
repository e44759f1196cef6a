use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hilbert::Label;
use crate::operator::OperatorMatrix;
use crate::scalar::{max_norm, NormValue, PadicScalar, Zp};

use super::cocycle::Cocycle;
use super::group::FiniteGroup;
use super::groupoid::FiniteGroupoid;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Carrier {
    Group(Arc<FiniteGroup>),
    Groupoid(Arc<FiniteGroupoid>),
}

impl Carrier {
    pub fn len(&self) -> usize {
        match self {
            Carrier::Group(g) => g.order(),
            Carrier::Groupoid(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn label(&self, i: usize) -> &Label {
        match self {
            Carrier::Group(g) => g.label(i),
            Carrier::Groupoid(g) => g.label(i),
        }
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        match self {
            Carrier::Group(g) => g.index_of(label),
            Carrier::Groupoid(g) => g.index_of(label),
        }
    }

    pub fn as_group(&self) -> Option<&FiniteGroup> {
        match self {
            Carrier::Group(g) => Some(g),
            Carrier::Groupoid(_) => None,
        }
    }

    pub fn as_groupoid(&self) -> Option<&FiniteGroupoid> {
        match self {
            Carrier::Groupoid(g) => Some(g),
            Carrier::Group(_) => None,
        }
    }

    fn inv(&self, i: usize) -> usize {
        match self {
            Carrier::Group(g) => g.inv(i),
            Carrier::Groupoid(g) => g.inv(i),
        }
    }

    fn same(&self, other: &Carrier) -> bool {
        match (self, other) {
            (Carrier::Group(a), Carrier::Group(b)) => Arc::ptr_eq(a, b) || a == b,
            (Carrier::Groupoid(a), Carrier::Groupoid(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

impl From<FiniteGroup> for Carrier {
    fn from(g: FiniteGroup) -> Self {
        Carrier::Group(Arc::new(g))
    }
}

impl From<Arc<FiniteGroup>> for Carrier {
    fn from(g: Arc<FiniteGroup>) -> Self {
        Carrier::Group(g)
    }
}

impl From<FiniteGroupoid> for Carrier {
    fn from(g: FiniteGroupoid) -> Self {
        Carrier::Groupoid(Arc::new(g))
    }
}

/// Finitely supported `Z_p`-valued function on a group or groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvolutionElement {
    carrier: Carrier,
    ring: Zp,
    coeffs: Vec<PadicScalar>,
}

impl ConvolutionElement {
    pub fn zero(carrier: &Carrier, ring: &Zp) -> Self {
        ConvolutionElement { carrier: carrier.clone(), ring: ring.clone(), coeffs: vec![ring.zero(); carrier.len()] }
    }

    pub fn delta(carrier: &Carrier, ring: &Zp, label: &Label) -> Result<Self> {
        let i = carrier.index_of(label).ok_or_else(|| Error::InvalidInput(format!("{} is not in the carrier", label)))?;
        let mut out = Self::zero(carrier, ring);
        out.coeffs[i] = ring.one();
        Ok(out)
    }

    /// Coefficients listed in carrier order.
    pub fn from_coefficients(carrier: &Carrier, ring: &Zp, coeffs: Vec<PadicScalar>) -> Result<Self> {
        if coeffs.len() != carrier.len() {
            return Err(Error::ShapeMismatch(format!("expected {} coefficients, got {}", carrier.len(), coeffs.len())));
        }
        for c in &coeffs {
            if c.ring() != ring {
                return Err(Error::RingMismatch(c.prime(), c.precision(), ring.prime(), ring.precision()));
            }
            if !c.is_integral() {
                return Err(Error::NotIntegral);
            }
        }
        Ok(ConvolutionElement { carrier: carrier.clone(), ring: ring.clone(), coeffs })
    }

    /// Coefficients given by label; unlisted labels are zero.
    pub fn from_pairs(carrier: &Carrier, ring: &Zp, pairs: Vec<(Label, PadicScalar)>) -> Result<Self> {
        let mut coeffs = vec![ring.zero(); carrier.len()];
        for (label, c) in pairs {
            let i = carrier.index_of(&label).ok_or_else(|| Error::InvalidInput(format!("{} is not in the carrier", label)))?;
            coeffs[i] = c;
        }
        Self::from_coefficients(carrier, ring, coeffs)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn ring(&self) -> &Zp {
        &self.ring
    }

    pub fn coefficients(&self) -> &[PadicScalar] {
        &self.coeffs
    }

    pub fn coefficient(&self, label: &Label) -> Option<&PadicScalar> {
        self.carrier.index_of(label).map(|i| &self.coeffs[i])
    }

    pub fn sup_norm(&self) -> NormValue {
        max_norm(self.coeffs.iter().map(PadicScalar::norm)).unwrap_or_else(|| self.ring.zero().norm())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !self.carrier.same(&other.carrier) {
            return Err(Error::CarrierMismatch);
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.prime(), self.ring.precision(), other.ring.prime(), other.ring.precision()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(ConvolutionElement { carrier: self.carrier.clone(), ring: self.ring.clone(), coeffs })
    }

    pub fn scale(&self, lambda: &PadicScalar) -> Self {
        let coeffs = self.coeffs.iter().map(|a| lambda * a).collect();
        ConvolutionElement { carrier: self.carrier.clone(), ring: self.ring.clone(), coeffs }
    }

    /// Every coefficient of the difference is below precision.
    pub fn congruent(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| (a - b).is_below_precision()))
    }

    /// `(φ∗ψ)(h) = Σ φ(g) ψ(g⁻¹h)`, summed over `r(g) = r(h)` for groupoids.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.carrier, &self.ring);
        // Expanding over pairs (g, k) with g k = h gives the same sum.
        let mut acc = |h: usize, term: PadicScalar| out.coeffs[h] = &out.coeffs[h] + &term;
        for (g, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_negligible()) {
            for (k, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_negligible()) {
                let h = match &self.carrier {
                    Carrier::Group(grp) => Some(grp.mul(g, k)),
                    Carrier::Groupoid(gpd) => gpd.compose(g, k),
                };
                if let Some(h) = h {
                    acc(h, a * b);
                }
            }
        }
        Ok(out)
    }

    /// Twisted product `(φ∗_ω ψ)(h) = Σ φ(g) ψ(g⁻¹h) ω(g, g⁻¹h)`.
    pub fn twisted_convolve(&self, other: &Self, omega: &Cocycle) -> Result<Self> {
        self.check_compatible(other)?;
        let group = self.group_carrier()?;
        omega.check_group(group)?;
        let mut out = Self::zero(&self.carrier, &self.ring);
        for (g, a) in self.coeffs.iter().enumerate() {
            for (k, b) in other.coeffs.iter().enumerate() {
                let h = group.mul(g, k);
                out.coeffs[h] = &out.coeffs[h] + &(&(a * b) * omega.value(g, k));
            }
        }
        Ok(out)
    }

    /// `φ*(g) = φ(g⁻¹)`.
    pub fn involution(&self) -> Self {
        let coeffs = (0..self.coeffs.len()).map(|g| self.coeffs[self.carrier.inv(g)].clone()).collect();
        ConvolutionElement { carrier: self.carrier.clone(), ring: self.ring.clone(), coeffs }
    }

    fn group_carrier(&self) -> Result<&FiniteGroup> {
        self.carrier.as_group().ok_or(Error::CarrierMismatch)
    }

    /// Left regular representation `λ(φ) = Σ φ(g) λ_g` with
    /// `λ_g δ_k = δ_{gk}`, on the window formed by the group elements.
    pub fn regular_representation(&self) -> Result<OperatorMatrix> {
        let group = self.group_carrier()?;
        let n = group.order();
        let triplets = (0..n).flat_map(|g| (0..n).map(move |k| (g, k))).filter_map(|(g, k)| {
            let a = &self.coeffs[g];
            (!a.is_negligible()).then(|| (group.mul(g, k), k, a.clone()))
        });
        OperatorMatrix::from_triplets(&group.window(), &self.ring, triplets)
    }

    /// `λ^ω(φ) = Σ φ(g) λ^ω_g` with `λ^ω_g δ_k = ω(g, k) δ_{gk}`.
    pub fn twisted_regular_representation(&self, omega: &Cocycle) -> Result<OperatorMatrix> {
        let group = self.group_carrier()?;
        omega.check_group(group)?;
        let n = group.order();
        let mut triplets = Vec::new();
        for g in 0..n {
            let a = &self.coeffs[g];
            if a.is_negligible() {
                continue;
            }
            for k in 0..n {
                triplets.push((group.mul(g, k), k, a * omega.value(g, k)));
            }
        }
        OperatorMatrix::from_triplets(&group.window(), &self.ring, triplets)
    }
}
