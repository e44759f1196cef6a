//! Finite windows of the p-adic Hilbert space `Q_p(X)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{max_norm, NormValue, PadicScalar, Zp};

/// Index label of a basis vector `δ_x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Str(String),
    Pair(Box<Label>, Box<Label>),
}

impl Label {
    pub fn pair(a: Label, b: Label) -> Label {
        Label::Pair(Box::new(a), Box::new(b))
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Label::Int(n) => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(n) => write!(f, "{}", n),
            Label::Str(s) => write!(f, "{}", s),
            Label::Pair(a, b) => write!(f, "({},{})", a, b),
        }
    }
}

impl From<i64> for Label {
    fn from(n: i64) -> Self {
        Label::Int(n)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::Str(s.to_string())
    }
}

struct WindowData {
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
    margin: usize,
}

/// Ordered, duplicate-free finite set of labels with an interior margin.
///
/// Relations of truncated infinite operators are only checked on the
/// interior positions `margin..len - margin`.
#[derive(Clone)]
pub struct Window(Arc<WindowData>);

impl PartialEq for Window {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }
}

impl Eq for Window {}

impl fmt::Debug for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Window")
            .field("len", &self.len())
            .field("margin", &self.0.margin)
            .finish()
    }
}

impl Window {
    pub fn new(labels: Vec<Label>, margin: usize) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidWindow("window has no labels".into()));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidWindow(format!("duplicate label {}", l)));
            }
        }
        if 2 * margin >= labels.len() {
            return Err(Error::InvalidWindow(format!(
                "interior margin {} leaves no interior in a window of {} labels",
                margin,
                labels.len()
            )));
        }
        Ok(Window(Arc::new(WindowData { labels, index, margin })))
    }

    /// Consecutive integers `start, ..., start + len - 1`.
    pub fn range(start: i64, len: usize, margin: usize) -> Result<Self> {
        Window::new((0..len as i64).map(|k| Label::Int(start + k)).collect(), margin)
    }

    /// Pair labels `(a, b)`, ordered with the first factor as the major index.
    pub fn product(a: &Window, b: &Window) -> Self {
        let labels = a
            .labels()
            .iter()
            .flat_map(|x| b.labels().iter().map(move |y| Label::pair(x.clone(), y.clone())))
            .collect();
        Window::new(labels, 0).expect("product of valid windows is valid")
    }

    pub fn with_margin(&self, margin: usize) -> Result<Self> {
        Window::new(self.0.labels.clone(), margin)
    }

    pub fn labels(&self) -> &[Label] {
        &self.0.labels
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.labels.is_empty()
    }

    pub fn margin(&self) -> usize {
        self.0.margin
    }

    pub fn position(&self, label: &Label) -> Option<usize> {
        self.0.index.get(label).copied()
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.0.labels[i]
    }

    pub fn interior(&self) -> Range<usize> {
        self.0.margin..self.len() - self.0.margin
    }

    /// Whether the labels are consecutive increasing integers.
    pub fn is_consecutive(&self) -> bool {
        let ints: Option<Vec<i64>> = self.labels().iter().map(Label::as_int).collect();
        match ints {
            Some(v) => v.windows(2).all(|w| w[1] == w[0] + 1),
            None => false,
        }
    }
}

/// Vector in `Q_p(X)` restricted to a window. Absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicVector {
    window: Window,
    ring: Zp,
    entries: Vec<Option<PadicScalar>>,
}

impl PadicVector {
    pub fn zero(window: &Window, ring: &Zp) -> Self {
        PadicVector { window: window.clone(), ring: ring.clone(), entries: vec![None; window.len()] }
    }

    /// `δ_x`.
    pub fn basis(window: &Window, ring: &Zp, label: &Label) -> Result<Self> {
        let i = window
            .position(label)
            .ok_or_else(|| Error::InvalidInput(format!("label {} not in window", label)))?;
        Ok(Self::basis_at(window, ring, i))
    }

    pub(crate) fn basis_at(window: &Window, ring: &Zp, i: usize) -> Self {
        let mut v = Self::zero(window, ring);
        v.entries[i] = Some(ring.one());
        v
    }

    pub fn from_entries(window: &Window, ring: &Zp, entries: Vec<Option<PadicScalar>>) -> Result<Self> {
        if entries.len() != window.len() {
            return Err(Error::WindowMismatch);
        }
        for e in entries.iter().flatten() {
            if e.ring() != ring {
                return Err(Error::RingMismatch(e.prime(), e.precision(), ring.prime(), ring.precision()));
            }
        }
        Ok(PadicVector { window: window.clone(), ring: ring.clone(), entries })
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn ring(&self) -> &Zp {
        &self.ring
    }

    pub fn entries(&self) -> &[Option<PadicScalar>] {
        &self.entries
    }

    pub fn get(&self, label: &Label) -> Option<&PadicScalar> {
        self.window.position(label).and_then(|i| self.entries[i].as_ref())
    }

    pub fn set(&mut self, i: usize, value: PadicScalar) {
        self.entries[i] = Some(value);
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.window != other.window {
            return Err(Error::WindowMismatch);
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.prime(), self.ring.precision(), other.ring.prime(), other.ring.precision()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(a + b),
                (Some(a), None) => Some(a.clone()),
                (None, b) => b.clone(),
            })
            .collect();
        Ok(PadicVector { window: self.window.clone(), ring: self.ring.clone(), entries })
    }

    pub fn scale(&self, lambda: &PadicScalar) -> Self {
        let entries = self.entries.iter().map(|e| e.as_ref().map(|x| lambda * x)).collect();
        PadicVector { window: self.window.clone(), ring: self.ring.clone(), entries }
    }

    /// `sup_x |ξ(x)|_p`. An all-zero vector reports the precision floor.
    pub fn sup_norm(&self) -> NormValue {
        max_norm(self.entries.iter().flatten().map(PadicScalar::norm))
            .unwrap_or_else(|| self.ring.zero().norm())
    }

    /// Whether every entry is below precision.
    pub fn is_negligible(&self) -> bool {
        self.entries.iter().flatten().all(PadicScalar::is_below_precision)
    }

    /// `<ξ, η> = Σ ξ(x) η(x) + Z_p`.
    pub fn pairing(&self, other: &Self) -> Result<ResidueClass> {
        self.check_compatible(other)?;
        let mut sum = self.ring.zero();
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if let (Some(a), Some(b)) = (a, b) {
                sum = &sum + &(a * b);
            }
        }
        ResidueClass::from_scalar(&sum)
    }
}

/// Element `numerator / p^exponent + Z_p` of `Q_p / Z_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueClass {
    pub prime: u64,
    pub numerator: BigUint,
    pub exponent: u32,
}

impl ResidueClass {
    pub fn zero(prime: u64) -> Self {
        ResidueClass { prime, numerator: BigUint::zero(), exponent: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.exponent == 0
    }

    /// Keeps the negative-valuation digits of `x`.
    pub fn from_scalar(x: &PadicScalar) -> Result<Self> {
        let p = x.prime();
        if x.absolute_precision() < 0 {
            return Err(Error::PrecisionLoss(format!(
                "fractional digits of {:?} are not known",
                x
            )));
        }
        match (x.valuation(), x.mantissa()) {
            (Some(v), Some(u)) if v < 0 => {
                let k = (-v) as u32;
                let m = BigUint::from(p).pow(k);
                Ok(ResidueClass { prime: p, numerator: u % m, exponent: k }.normalized())
            }
            _ => Ok(ResidueClass::zero(p)),
        }
    }

    fn normalized(mut self) -> Self {
        let p = BigUint::from(self.prime);
        if self.numerator.is_zero() {
            self.exponent = 0;
        }
        while self.exponent > 0 && (&self.numerator % &p).is_zero() {
            self.numerator /= &p;
            self.exponent -= 1;
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = BigUint::from(self.prime);
        let k = self.exponent.max(other.exponent);
        let a = &self.numerator * p.pow(k - self.exponent);
        let b = &other.numerator * p.pow(k - other.exponent);
        ResidueClass { prime: self.prime, numerator: (a + b) % p.pow(k), exponent: k }.normalized()
    }

    /// `λ · (a / p^k)` for `λ` in `Z_p`.
    pub fn scale(&self, lambda: &PadicScalar) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let m = BigUint::from(self.prime).pow(self.exponent);
        let r = lambda.residue(self.exponent).ok_or(Error::NotIntegral)?;
        Ok(ResidueClass { prime: self.prime, numerator: (r * &self.numerator) % m, exponent: self.exponent }
            .normalized())
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}^{}", self.numerator, self.prime, self.exponent)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(p: u64, n: u32) -> (Window, Zp) {
        (Window::range(0, 4, 0).unwrap(), Zp::new(p, n).unwrap())
    }

    #[test]
    fn window_invariants() {
        assert!(Window::new(vec![], 0).is_err());
        assert!(Window::new(vec![Label::Int(1), Label::Int(1)], 0).is_err());
        assert!(Window::range(0, 4, 2).is_err());
        let w = Window::range(-2, 5, 1).unwrap();
        assert_eq!(w.interior(), 1..4);
        assert!(w.is_consecutive());
        assert_eq!(w.position(&Label::Int(0)), Some(2));
    }

    #[test]
    fn sup_norm_examples() {
        let (w, r) = setup(3, 4);
        let d = PadicVector::basis(&w, &r, &Label::Int(2)).unwrap();
        assert_eq!(d.sup_norm(), NormValue::exact(0));

        let mut v = PadicVector::zero(&w, &r);
        v.set(1, r.from_ratio(1, 3).unwrap());
        assert_eq!(v.sup_norm(), NormValue::exact(-1));

        assert_eq!(PadicVector::zero(&w, &r).sup_norm(), NormValue::upper_bound(4));
    }

    #[test]
    fn pairing_examples() {
        let (w, r) = setup(5, 6);
        let mut xi = PadicVector::zero(&w, &r);
        let mut eta = PadicVector::zero(&w, &r);
        xi.set(0, r.from_integer(7));
        eta.set(0, r.from_integer(-3));
        assert!(xi.pairing(&eta).unwrap().is_zero());

        let mut xi = PadicVector::zero(&w, &r);
        xi.set(2, r.from_ratio(1, 5).unwrap());
        let delta = PadicVector::basis_at(&w, &r, 2);
        let c = xi.pairing(&delta).unwrap();
        assert_eq!((c.numerator.clone(), c.exponent), (BigUint::from(1u32), 1));

        let mut xi = PadicVector::zero(&w, &r);
        xi.set(2, r.from_ratio(1, 25).unwrap());
        let c = xi.pairing(&delta.scale(&r.from_integer(5))).unwrap();
        assert_eq!((c.numerator.clone(), c.exponent), (BigUint::from(1u32), 1));
    }

    #[test]
    fn pairing_rejects_other_windows() {
        let (w, r) = setup(5, 6);
        let other = Window::range(1, 4, 0).unwrap();
        let a = PadicVector::zero(&w, &r);
        let b = PadicVector::zero(&other, &r);
        assert_eq!(a.pairing(&b).unwrap_err(), Error::WindowMismatch);
    }

    #[test]
    fn residue_class_arithmetic() {
        let a = ResidueClass { prime: 3, numerator: BigUint::from(2u32), exponent: 1 };
        let b = ResidueClass { prime: 3, numerator: BigUint::from(1u32), exponent: 1 };
        assert!(a.add(&b).is_zero());
        let r = Zp::new(3, 5).unwrap();
        assert!(a.scale(&r.from_integer(3)).unwrap().is_zero());
        assert_eq!(a.scale(&r.from_integer(2)).unwrap(), b);
    }
}
