//! Bounded operators on finite windows of `Q_p(X)` as matrices over `Z_p`.
//!
//! The operator norm of `T` is the largest entry norm `max |T_{x,y}|`, the
//! adjoint is the transpose, and two operators are considered equal when
//! every entry of their difference is below the working precision.

use std::collections::HashSet;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{Label, PadicVector, Window};
use crate::scalar::{factorial_valuation, max_norm, NormValue, PadicScalar, Zp};

type Row = Vec<(usize, PadicScalar)>;

/// A set of column positions on which a relation is checked.
pub trait Columns {
    fn contains_column(&self, j: usize) -> bool;
}

impl Columns for Range<usize> {
    fn contains_column(&self, j: usize) -> bool {
        self.contains(&j)
    }
}

/// Column mask indexed by position.
impl Columns for [bool] {
    fn contains_column(&self, j: usize) -> bool {
        self.get(j).copied().unwrap_or(false)
    }
}

impl Columns for Vec<bool> {
    fn contains_column(&self, j: usize) -> bool {
        self.as_slice().contains_column(j)
    }
}

/// Square matrix over a window, stored as sorted sparse rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    window: Window,
    ring: Zp,
    rows: Vec<Row>,
}

impl OperatorMatrix {
    pub fn zero(window: &Window, ring: &Zp) -> Self {
        OperatorMatrix { window: window.clone(), ring: ring.clone(), rows: vec![Vec::new(); window.len()] }
    }

    pub fn identity(window: &Window, ring: &Zp) -> Self {
        Self::scalar(window, ring, &ring.one())
    }

    /// `λ · 1`.
    pub fn scalar(window: &Window, ring: &Zp, lambda: &PadicScalar) -> Self {
        let rows = (0..window.len()).map(|i| vec![(i, lambda.clone())]).collect();
        OperatorMatrix { window: window.clone(), ring: ring.clone(), rows }
    }

    /// Builds a matrix from `(row, column, value)` triplets; repeated
    /// positions are summed.
    pub fn from_triplets<I>(window: &Window, ring: &Zp, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, PadicScalar)>,
    {
        let n = window.len();
        let mut rows: Vec<Row> = vec![Vec::new(); n];
        for (i, j, x) in triplets {
            if i >= n || j >= n {
                return Err(Error::ShapeMismatch(format!("entry ({}, {}) outside a window of {}", i, j, n)));
            }
            if x.ring() != ring {
                return Err(Error::RingMismatch(x.prime(), x.precision(), ring.prime(), ring.precision()));
            }
            rows[i].push((j, x));
        }
        for row in rows.iter_mut() {
            row.sort_by_key(|(j, _)| *j);
            let mut merged: Row = Vec::with_capacity(row.len());
            for (j, x) in row.drain(..) {
                match merged.last_mut() {
                    Some((k, acc)) if *k == j => *acc = &*acc + &x,
                    _ => merged.push((j, x)),
                }
            }
            *row = merged;
        }
        Ok(OperatorMatrix { window: window.clone(), ring: ring.clone(), rows })
    }

    /// Integer matrix; zero entries are left structurally empty.
    pub fn from_integer_rows(window: &Window, ring: &Zp, entries: &[Vec<i64>]) -> Result<Self> {
        let n = window.len();
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!("expected a {}x{} matrix", n, n)));
        }
        let triplets = entries.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(move |(j, &x)| (i, j, ring.from_integer(x)))
        });
        Self::from_triplets(window, ring, triplets)
    }

    pub fn from_dense(window: &Window, ring: &Zp, entries: Vec<Vec<Option<PadicScalar>>>) -> Result<Self> {
        let n = window.len();
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!("expected a {}x{} matrix", n, n)));
        }
        let triplets = entries
            .into_iter()
            .enumerate()
            .flat_map(|(i, row)| row.into_iter().enumerate().filter_map(move |(j, x)| x.map(|x| (i, j, x))));
        Self::from_triplets(window, ring, triplets)
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn ring(&self) -> &Zp {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.window.len()
    }

    pub fn row(&self, i: usize) -> &[(usize, PadicScalar)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&PadicScalar> {
        let row = &self.rows[i];
        row.binary_search_by_key(&j, |(k, _)| *k).ok().map(|pos| &row[pos].1)
    }

    /// Entry `T_{i,j}`, with the canonical zero for empty positions.
    pub fn entry(&self, i: usize, j: usize) -> PadicScalar {
        self.get(i, j).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn to_dense(&self) -> Vec<Vec<Option<PadicScalar>>> {
        (0..self.dim()).map(|i| (0..self.dim()).map(|j| self.get(i, j).cloned()).collect()).collect()
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &PadicScalar)> {
        self.rows.iter().enumerate().flat_map(|(i, row)| row.iter().map(move |(j, x)| (i, *j, x)))
    }

    /// Every entry lies in `Z_p`.
    pub fn is_contractive(&self) -> bool {
        self.nonzeros().all(|(_, _, x)| x.is_integral())
    }

    fn require_contractive(&self) -> Result<()> {
        if self.is_contractive() {
            Ok(())
        } else {
            Err(Error::NotContractive)
        }
    }

    /// `‖T‖ = max_{x,y} |T_{x,y}|`.
    pub fn op_norm(&self) -> NormValue {
        max_norm(self.nonzeros().map(|(_, _, x)| x.norm())).unwrap_or_else(|| self.ring.zero().norm())
    }

    /// Largest entry norm within the given columns.
    pub fn norm_on_columns<C: Columns + ?Sized>(&self, cols: &C) -> NormValue {
        max_norm(self.nonzeros().filter(|(_, j, _)| cols.contains_column(*j)).map(|(_, _, x)| x.norm()))
            .unwrap_or_else(|| self.ring.zero().norm())
    }

    /// Transpose.
    pub fn adjoint(&self) -> Self {
        let triplets = self.nonzeros().map(|(i, j, x)| (j, i, x.clone()));
        Self::from_triplets(&self.window, &self.ring, triplets).expect("transpose stays in the window")
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
        let triplets = self.nonzeros().chain(other.nonzeros()).map(|(i, j, x)| (i, j, x.clone()));
        Self::from_triplets(&self.window, &self.ring, triplets)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-&self.ring.one()))
    }

    pub fn scale(&self, lambda: &PadicScalar) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|(j, x)| (*j, lambda * x)).collect())
            .collect();
        OperatorMatrix { window: self.window.clone(), ring: self.ring.clone(), rows }
    }

    /// `T + λ·1`.
    pub fn add_scalar(&self, lambda: &PadicScalar) -> Self {
        self.add(&Self::scalar(&self.window, &self.ring, lambda)).expect("same window")
    }

    /// `(ST)_{x,y} = Σ_z S_{x,z} T_{z,y}`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.dim();
        let mut acc: Vec<Option<PadicScalar>> = vec![None; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut rows = Vec::with_capacity(n);
        for row in &self.rows {
            for (z, s) in row {
                for (y, t) in &other.rows[*z] {
                    let term = s * t;
                    match &mut acc[*y] {
                        Some(a) => *a = &*a + &term,
                        slot @ None => {
                            *slot = Some(term);
                            touched.push(*y);
                        }
                    }
                }
            }
            touched.sort_unstable();
            rows.push(touched.drain(..).map(|y| (y, acc[y].take().expect("touched"))).collect());
        }
        Ok(OperatorMatrix { window: self.window.clone(), ring: self.ring.clone(), rows })
    }

    /// `T(ξ)(x) = Σ_y T_{x,y} ξ(y)`.
    pub fn apply(&self, xi: &PadicVector) -> Result<PadicVector> {
        if &self.window != xi.window() {
            return Err(Error::WindowMismatch);
        }
        if &self.ring != xi.ring() {
            return Err(Error::RingMismatch(self.ring.prime(), self.ring.precision(), xi.ring().prime(), xi.ring().precision()));
        }
        let mut out = PadicVector::zero(&self.window, &self.ring);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc: Option<PadicScalar> = None;
            for (j, t) in row {
                if let Some(x) = &xi.entries()[*j] {
                    let term = t * x;
                    acc = Some(match acc {
                        Some(a) => &a + &term,
                        None => term,
                    });
                }
            }
            if let Some(a) = acc {
                out.set(i, a);
            }
        }
        Ok(out)
    }

    /// Spatial tensor product on the product window.
    pub fn kronecker(&self, other: &Self) -> Result<Self> {
        self.require_contractive()?;
        other.require_contractive()?;
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.prime(), self.ring.precision(), other.ring.prime(), other.ring.precision()));
        }
        let window = Window::product(&self.window, &other.window);
        let m = other.dim();
        let mut triplets = Vec::new();
        for (i, j, s) in self.nonzeros() {
            for (k, l, t) in other.nonzeros() {
                triplets.push((i * m + k, j * m + l, s * t));
            }
        }
        Self::from_triplets(&window, &self.ring, triplets)
    }

    /// Every entry of `self - other` is below precision.
    pub fn congruent(&self, other: &Self) -> Result<bool> {
        self.congruent_on(other, &(0..self.dim()))
    }

    /// Like [`congruent`](Self::congruent), restricted to the given columns
    /// (all rows of those columns are compared).
    pub fn congruent_on<C: Columns + ?Sized>(&self, other: &Self, cols: &C) -> Result<bool> {
        let diff = self.sub(other)?;
        let ok = diff.nonzeros().filter(|(_, j, _)| cols.contains_column(*j)).all(|(_, _, x)| x.is_below_precision());
        Ok(ok)
    }

    /// Every entry is zero to full precision.
    pub fn is_negligible(&self) -> bool {
        self.nonzeros().all(|(_, _, x)| x.is_negligible())
    }

    pub fn classify(&self) -> Result<OperatorClass> {
        self.classify_on(&(0..self.dim()))
    }

    /// Classification by exact identity checks restricted to `cols`.
    pub fn classify_on<C: Columns + ?Sized>(&self, cols: &C) -> Result<OperatorClass> {
        self.require_contractive()?;
        let id = Self::identity(&self.window, &self.ring);
        let adj = self.adjoint();
        let self_adjoint = self.congruent_on(&adj, cols)?;
        let isometry = adj.compose(self)?.congruent_on(&id, cols)?;
        let co_isometry = self.compose(&adj)?.congruent_on(&id, cols)?;
        let idempotent = self.compose(self)?.congruent_on(self, cols)?;
        let partial_isometry = self.compose(&adj)?.compose(self)?.congruent_on(self, cols)?;
        Ok(OperatorClass {
            unitary: isometry && co_isometry,
            projection: idempotent && self_adjoint,
            isometry,
            co_isometry,
            partial_isometry,
            self_adjoint,
        })
    }

    /// Compares `‖T‖²` with `‖T*T‖`.
    pub fn cstar_defect(&self) -> Result<CstarReport> {
        self.require_contractive()?;
        let norm = self.op_norm();
        let norm_t_squared = norm.times(norm);
        let norm_tstar_t = self.adjoint().compose(self)?.op_norm();
        let identity_holds = norm_t_squared.is_exact() && norm_t_squared == norm_tstar_t;
        Ok(CstarReport { norm_t_squared, norm_tstar_t, identity_holds })
    }

    /// Checks `‖A(A-1)⋯(A-(n-1))‖ ≤ |n!|_p` for `1 ≤ n ≤ n_max`.
    pub fn normal_contraction_check(&self, n_max: u32) -> Result<NormalContractionReport> {
        self.require_contractive()?;
        let p = self.ring.prime();
        let mut falling = Self::identity(&self.window, &self.ring);
        for n in 1..=n_max {
            let shifted = self.add_scalar(&self.ring.from_integer(-(n as i64 - 1)));
            falling = falling.compose(&shifted)?;
            let bound = factorial_valuation(n as u64, p) as i64;
            if !falling.op_norm().at_most(&NormValue::exact(bound)) {
                return Ok(NormalContractionReport { holds: false, first_failure: Some(n) });
            }
        }
        Ok(NormalContractionReport { holds: true, first_failure: None })
    }

    /// `binom(A, n) = A(A-1)⋯(A-(n-1)) / n!` for `n = 0..=n_max`.
    fn binomial_powers(&self, n_max: u32) -> Result<Vec<Self>> {
        let mut out = Vec::with_capacity(n_max as usize + 1);
        let mut falling = Self::identity(&self.window, &self.ring);
        out.push(falling.clone());
        for n in 1..=n_max {
            let shifted = self.add_scalar(&self.ring.from_integer(-(n as i64 - 1)));
            falling = falling.compose(&shifted)?;
            let mut triplets = Vec::new();
            for (i, j, x) in falling.nonzeros() {
                let q = x.div_factorial(n as u64).map_err(|e| match e {
                    Error::NotIntegral => Error::NotNormalContraction(n),
                    other => other,
                })?;
                triplets.push((i, j, q));
            }
            out.push(Self::from_triplets(&self.window, &self.ring, triplets)?);
        }
        Ok(out)
    }

    /// Functional calculus `f(A) = Σ_{n ≤ n_max} c_n binom(A, n)` for a
    /// normal contraction `A` and Mahler coefficients `c_n`.
    pub fn mahler_evaluate(&self, coeffs: &[PadicScalar], n_max: u32) -> Result<Self> {
        let top = n_max.min(coeffs.len().saturating_sub(1) as u32);
        let report = self.normal_contraction_check(top)?;
        if let Some(n) = report.first_failure {
            return Err(Error::NotNormalContraction(n));
        }
        let basis = self.binomial_powers(top)?;
        let mut acc = Self::zero(&self.window, &self.ring);
        for (c, b) in coeffs.iter().zip(&basis) {
            if c.ring() != &self.ring {
                return Err(Error::RingMismatch(c.prime(), c.precision(), self.ring.prime(), self.ring.precision()));
            }
            acc = acc.add(&b.scale(c))?;
        }
        Ok(acc)
    }

    /// `Σ_k a_k T^k` by Horner's rule.
    pub fn polynomial(&self, coeffs: &[PadicScalar]) -> Result<Self> {
        let mut acc = Self::zero(&self.window, &self.ring);
        for c in coeffs.iter().rev() {
            acc = acc.compose(self)?.add_scalar(c);
        }
        Ok(acc)
    }
}

/// Flags found by [`OperatorMatrix::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OperatorClass {
    pub unitary: bool,
    pub projection: bool,
    pub isometry: bool,
    pub co_isometry: bool,
    pub partial_isometry: bool,
    pub self_adjoint: bool,
}

impl OperatorClass {
    pub fn flags(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (set, name) in [
            (self.unitary, "UNITARY"),
            (self.projection, "PROJECTION"),
            (self.isometry, "ISOMETRY"),
            (self.co_isometry, "CO_ISOMETRY"),
            (self.partial_isometry, "PARTIAL_ISOMETRY"),
            (self.self_adjoint, "SELF_ADJOINT"),
        ] {
            if set {
                out.push(name);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CstarReport {
    pub norm_t_squared: NormValue,
    pub norm_tstar_t: NormValue,
    pub identity_holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalContractionReport {
    pub holds: bool,
    pub first_failure: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ShiftDirection {
    Left,
    Right,
}

/// Truncated unilateral shift: `RIGHT δ_k = δ_{k+1}`, `LEFT δ_{k+1} = δ_k`.
pub fn shift_operator(window: &Window, ring: &Zp, direction: ShiftDirection) -> Result<OperatorMatrix> {
    if !window.is_consecutive() {
        return Err(Error::InvalidWindow("shift needs consecutive integer labels".into()));
    }
    let n = window.len();
    let one = ring.one();
    let triplets = (0..n.saturating_sub(1)).map(|k| match direction {
        ShiftDirection::Right => (k + 1, k, one.clone()),
        ShiftDirection::Left => (k, k + 1, one.clone()),
    });
    OperatorMatrix::from_triplets(window, ring, triplets)
}

/// Truncated Cuntz isometries `s_i δ_k = δ_{n k + i - 1}` on `{0, ..., M-1}`.
#[derive(Debug, Clone)]
pub struct CuntzFamily {
    pub generators: Vec<OperatorMatrix>,
    /// Columns on which the relations are exact.
    pub interior: Range<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuntzRelations {
    /// `s_i^* s_j = δ_{ij} 1` for all `i, j`.
    pub orthogonality: bool,
    /// `Σ s_i s_i^* = 1`.
    pub cuntz_sum: bool,
}

pub fn cuntz_family(n: usize, window_size: usize, interior: Option<usize>, ring: &Zp) -> Result<CuntzFamily> {
    if n < 2 {
        return Err(Error::InvalidInput("a Cuntz family needs n >= 2".into()));
    }
    let interior = interior.unwrap_or(window_size / n);
    if interior == 0 || n * interior > window_size {
        return Err(Error::WindowTooSmall(format!(
            "{} generators need a window of at least {} for an interior of {}",
            n,
            n * interior.max(1),
            interior.max(1)
        )));
    }
    let window = Window::range(0, window_size, 0)?;
    let generators = (0..n)
        .map(|i| {
            let triplets = (0..window_size)
                .map(|k| (n * k + i, k))
                .filter(|(target, _)| *target < window_size)
                .map(|(target, k)| (target, k, ring.one()));
            OperatorMatrix::from_triplets(&window, ring, triplets)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CuntzFamily { generators, interior: 0..interior })
}

impl CuntzFamily {
    pub fn verify(&self) -> Result<CuntzRelations> {
        let first = &self.generators[0];
        let id = OperatorMatrix::identity(first.window(), first.ring());
        let zero = OperatorMatrix::zero(first.window(), first.ring());
        let mut orthogonality = true;
        for (i, si) in self.generators.iter().enumerate() {
            let si_adj = si.adjoint();
            for (j, sj) in self.generators.iter().enumerate() {
                let expected = if i == j { &id } else { &zero };
                orthogonality &= si_adj.compose(sj)?.congruent_on(expected, &self.interior)?;
            }
        }
        let mut sum = zero.clone();
        for s in &self.generators {
            sum = sum.add(&s.compose(&s.adjoint())?)?;
        }
        let cuntz_sum = sum.congruent_on(&id, &self.interior)?;
        Ok(CuntzRelations { orthogonality, cuntz_sum })
    }
}

/// `T_f δ_x = δ_{f(x)}` for a partial bijection given as `(x, f(x))` pairs.
pub fn partial_bijection_operator(window: &Window, ring: &Zp, pairs: &[(Label, Label)]) -> Result<OperatorMatrix> {
    let mut sources = HashSet::new();
    let mut targets = HashSet::new();
    let mut triplets = Vec::with_capacity(pairs.len());
    for (x, y) in pairs {
        let i = window.position(x).ok_or_else(|| Error::InvalidInput(format!("label {} not in window", x)))?;
        let j = window.position(y).ok_or_else(|| Error::InvalidInput(format!("label {} not in window", y)))?;
        if !sources.insert(i) {
            return Err(Error::NotInjective(format!("{} has two images", x)));
        }
        if !targets.insert(j) {
            return Err(Error::NotInjective(format!("{} has two preimages", y)));
        }
        triplets.push((j, i, ring.one()));
    }
    OperatorMatrix::from_triplets(window, ring, triplets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64) -> Zp {
        Zp::new(p, 16).unwrap()
    }

    fn win(n: usize) -> Window {
        Window::range(0, n, 0).unwrap()
    }

    fn all_ones(r: &Zp) -> OperatorMatrix {
        OperatorMatrix::from_integer_rows(&win(2), r, &[vec![1, 1], vec![1, 1]]).unwrap()
    }

    #[test]
    fn norm_examples() {
        let r = ring(2);
        let w = win(3);
        assert_eq!(OperatorMatrix::identity(&w, &r).op_norm(), NormValue::exact(0));
        assert_eq!(OperatorMatrix::scalar(&w, &r, &r.from_integer(2)).op_norm(), NormValue::exact(1));
        let a = all_ones(&r);
        assert_eq!(a.op_norm(), NormValue::exact(0));
        assert_eq!(a.compose(&a).unwrap().op_norm(), NormValue::exact(1));
    }

    #[test]
    fn adjoint_examples() {
        let r = ring(3);
        let w = win(3);
        let sym = OperatorMatrix::from_integer_rows(&w, &r, &[vec![1, 2, 0], vec![2, 5, 7], vec![0, 7, 1]]).unwrap();
        assert_eq!(sym.adjoint(), sym);
        let e12 = OperatorMatrix::from_integer_rows(&w, &r, &[vec![0, 1, 0], vec![0; 3], vec![0; 3]]).unwrap();
        let e21 = OperatorMatrix::from_integer_rows(&w, &r, &[vec![0; 3], vec![1, 0, 0], vec![0; 3]]).unwrap();
        assert_eq!(e12.adjoint(), e21);
        let right = shift_operator(&w, &r, ShiftDirection::Right).unwrap();
        let left = shift_operator(&w, &r, ShiftDirection::Left).unwrap();
        assert_eq!(right.adjoint(), left);
    }

    #[test]
    fn compose_examples() {
        let r = ring(2);
        let a = all_ones(&r);
        let id = OperatorMatrix::identity(a.window(), &r);
        assert_eq!(id.compose(&a).unwrap(), a);
        assert!(a.compose(&a).unwrap().congruent(&a.scale(&r.from_integer(2))).unwrap());
        let other = OperatorMatrix::identity(&win(3), &r);
        assert_eq!(a.compose(&other).unwrap_err(), Error::WindowMismatch);
    }

    #[test]
    fn apply_examples() {
        let r = ring(5);
        let w = win(2);
        let e12 = OperatorMatrix::from_integer_rows(&w, &r, &[vec![0, 1], vec![0, 0]]).unwrap();
        let d2 = PadicVector::basis(&w, &r, &Label::Int(1)).unwrap();
        let d1 = PadicVector::basis(&w, &r, &Label::Int(0)).unwrap();
        assert_eq!(e12.apply(&d2).unwrap(), d1);
        assert_eq!(OperatorMatrix::identity(&w, &r).apply(&d2).unwrap(), d2);
    }

    #[test]
    fn kronecker_examples() {
        let r = ring(3);
        let i2 = OperatorMatrix::identity(&win(2), &r);
        let i3 = OperatorMatrix::identity(&win(3), &r);
        let k = i2.kronecker(&i3).unwrap();
        assert_eq!(k, OperatorMatrix::identity(k.window(), &r));
        let p_id = OperatorMatrix::scalar(&win(2), &r, &r.from_integer(3));
        let a = all_ones(&r);
        assert_eq!(p_id.kronecker(&a).unwrap().op_norm(), NormValue::exact(1));
        let big = OperatorMatrix::scalar(&win(2), &r, &r.from_ratio(1, 3).unwrap());
        assert_eq!(big.kronecker(&a).unwrap_err(), Error::NotContractive);
    }

    #[test]
    fn classify_examples() {
        let r = ring(5);
        let w = win(3);
        let perm = OperatorMatrix::from_integer_rows(&w, &r, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let c = perm.classify().unwrap();
        assert!(c.unitary && c.isometry && c.co_isometry && c.partial_isometry);
        let proj = OperatorMatrix::from_integer_rows(&win(2), &r, &[vec![1, 0], vec![0, 0]]).unwrap();
        let c = proj.classify().unwrap();
        assert!(c.projection && c.self_adjoint && c.partial_isometry && !c.unitary);

        let w = Window::range(0, 8, 1).unwrap();
        let right = shift_operator(&w, &r, ShiftDirection::Right).unwrap();
        let interior = 0..w.len() - 1;
        let c = right.classify_on(&interior).unwrap();
        assert!(c.isometry && !c.co_isometry && c.partial_isometry);
    }

    #[test]
    fn cstar_examples() {
        let r = ring(2);
        let rep = all_ones(&r).cstar_defect().unwrap();
        assert_eq!(rep.norm_t_squared, NormValue::exact(0));
        assert_eq!(rep.norm_tstar_t, NormValue::exact(1));
        assert!(!rep.identity_holds);
        let rep = OperatorMatrix::identity(&win(2), &r).cstar_defect().unwrap();
        assert!(rep.identity_holds);

        let r = Zp::new(5, 20).unwrap();
        let alpha = r.from_integer(-1).hensel_sqrt().unwrap();
        let beta = r.one();
        let a = OperatorMatrix::from_dense(
            &win(2),
            &r,
            vec![vec![Some(alpha.clone()), Some(beta.clone())], vec![Some(-&beta), Some(alpha)]],
        )
        .unwrap();
        let rep = a.cstar_defect().unwrap();
        assert_eq!(rep.norm_t_squared, NormValue::exact(0));
        assert_eq!(rep.norm_tstar_t, NormValue::upper_bound(20));
        assert!(!rep.identity_holds);
    }

    #[test]
    fn shift_relations() {
        let r = ring(7);
        let w = Window::range(0, 4, 0).unwrap();
        let right = shift_operator(&w, &r, ShiftDirection::Right).unwrap();
        let left = shift_operator(&w, &r, ShiftDirection::Left).unwrap();
        let d0 = PadicVector::basis(&w, &r, &Label::Int(0)).unwrap();
        let d1 = PadicVector::basis(&w, &r, &Label::Int(1)).unwrap();
        assert_eq!(right.apply(&d0).unwrap(), d1);

        let id = OperatorMatrix::identity(&w, &r);
        assert!(left.compose(&right).unwrap().congruent_on(&id, &(0..3)).unwrap());
        assert!(!left.compose(&right).unwrap().congruent(&id).unwrap());
        let e00 = OperatorMatrix::from_triplets(&w, &r, [(0, 0, r.one())]).unwrap();
        let expected = id.sub(&e00).unwrap();
        assert!(right.compose(&left).unwrap().congruent_on(&expected, &(0..3)).unwrap());

        let labels = Window::new(vec![Label::from("a"), Label::from("b")], 0).unwrap();
        assert!(shift_operator(&labels, &r, ShiftDirection::Left).is_err());
    }

    #[test]
    fn cuntz_examples() {
        let r = ring(3);
        let fam = cuntz_family(2, 8, None, &r).unwrap();
        assert_eq!(fam.interior, 0..4);
        let [s1, s2] = [&fam.generators[0], &fam.generators[1]];
        let id = OperatorMatrix::identity(s1.window(), &r);
        let zero = OperatorMatrix::zero(s1.window(), &r);
        assert!(s1.adjoint().compose(s1).unwrap().congruent_on(&id, &(0..4)).unwrap());
        assert!(s1.adjoint().compose(s2).unwrap().congruent_on(&zero, &(0..4)).unwrap());

        let fam = cuntz_family(3, 9, None, &r).unwrap();
        assert_eq!(fam.interior, 0..3);
        let rel = fam.verify().unwrap();
        assert!(rel.orthogonality && rel.cuntz_sum);

        assert!(matches!(cuntz_family(3, 9, Some(4), &r), Err(Error::WindowTooSmall(_))));
        assert!(cuntz_family(1, 9, None, &r).is_err());
    }

    #[test]
    fn partial_bijection_examples() {
        let r = ring(5);
        let w = Window::range(1, 4, 0).unwrap();
        let l = |n: i64| Label::Int(n);
        let full = partial_bijection_operator(&w, &r, &[(l(1), l(2)), (l(2), l(3)), (l(3), l(4)), (l(4), l(1))]).unwrap();
        assert!(full.classify().unwrap().unitary);
        let empty = partial_bijection_operator(&w, &r, &[]).unwrap();
        assert_eq!(empty, OperatorMatrix::zero(&w, &r));

        let f = partial_bijection_operator(&w, &r, &[(l(1), l(3)), (l(2), l(4))]).unwrap();
        let g = partial_bijection_operator(&w, &r, &[(l(3), l(1))]).unwrap();
        let fg = partial_bijection_operator(&w, &r, &[(l(3), l(3))]).unwrap();
        assert_eq!(f.compose(&g).unwrap(), fg);
        assert!(f.classify().unwrap().partial_isometry);
        assert!(f.adjoint() == partial_bijection_operator(&w, &r, &[(l(3), l(1)), (l(4), l(2))]).unwrap());

        assert!(matches!(
            partial_bijection_operator(&w, &r, &[(l(1), l(3)), (l(2), l(3))]),
            Err(Error::NotInjective(_))
        ));
    }

    #[test]
    fn normal_contraction_examples() {
        let r = ring(2);
        let w = win(3);
        let diag = OperatorMatrix::from_integer_rows(&w, &r, &[vec![3, 0, 0], vec![0, 6, 0], vec![0, 0, -5]]).unwrap();
        assert!(diag.normal_contraction_check(8).unwrap().holds);
        let nil = OperatorMatrix::from_integer_rows(&win(2), &r, &[vec![0, 1], vec![0, 0]]).unwrap();
        let rep = nil.normal_contraction_check(2).unwrap();
        assert_eq!(rep, NormalContractionReport { holds: false, first_failure: Some(2) });
        assert!(OperatorMatrix::zero(&w, &r).normal_contraction_check(5).unwrap().holds);
    }

    #[test]
    fn mahler_evaluate_examples() {
        let r = ring(5);
        let w = win(3);
        let a = OperatorMatrix::from_integer_rows(&w, &r, &[vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]).unwrap();
        let id_coeffs = vec![r.zero(), r.one()];
        assert!(a.mahler_evaluate(&id_coeffs, 4).unwrap().congruent(&a).unwrap());
        let sq_coeffs = vec![r.zero(), r.one(), r.from_integer(2)];
        let expected = OperatorMatrix::from_integer_rows(&w, &r, &[vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 4]]).unwrap();
        assert!(a.mahler_evaluate(&sq_coeffs, 4).unwrap().congruent(&expected).unwrap());
        let one = vec![r.one()];
        let id = OperatorMatrix::identity(&w, &r);
        assert!(a.mahler_evaluate(&one, 4).unwrap().congruent(&id).unwrap());

        let r2 = ring(2);
        let nil = OperatorMatrix::from_integer_rows(&win(2), &r2, &[vec![0, 1], vec![0, 0]]).unwrap();
        let coeffs = vec![r2.zero(), r2.zero(), r2.one()];
        assert_eq!(nil.mahler_evaluate(&coeffs, 2).unwrap_err(), Error::NotNormalContraction(2));
    }
}
