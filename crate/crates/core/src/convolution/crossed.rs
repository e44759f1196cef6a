use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hilbert::{Label, Window};
use crate::operator::OperatorMatrix;
use crate::scalar::{max_norm, NormValue, PadicScalar, Zp};

use super::element::{Carrier, ConvolutionElement};
use super::group::FiniteGroup;
use super::groupoid::FiniteGroupoid;

/// Action of a finite group on a finite set by permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    group: Arc<FiniteGroup>,
    points: Vec<Label>,
    index: HashMap<Label, usize>,
    perms: Vec<Vec<usize>>,
    window: Window,
}

impl GroupAction {
    /// `images[g][i]` is `g · points[i]`, one row per group element.
    pub fn new(group: Arc<FiniteGroup>, points: Vec<Label>, images: &[Vec<Label>]) -> Result<Self> {
        let index = Self::index_points(&points)?;
        if images.len() != group.order() {
            return Err(Error::InvalidAction(format!("need {} permutations, got {}", group.order(), images.len())));
        }
        let perms = images.iter().map(|row| Self::permutation_from(&index, row)).collect::<Result<Vec<_>>>()?;
        Self::checked(group, points, index, perms)
    }

    /// Extends permutations given for a generating set to the whole group.
    pub fn from_generators(group: Arc<FiniteGroup>, points: Vec<Label>, generators: &[(Label, Vec<Label>)]) -> Result<Self> {
        let index = Self::index_points(&points)?;
        let gens = generators
            .iter()
            .map(|(g, row)| {
                let g = group.index_of(g).ok_or_else(|| Error::InvalidAction(format!("{} is not a group element", g)))?;
                Ok((g, Self::permutation_from(&index, row)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let n = points.len();
        let mut perms: Vec<Option<Vec<usize>>> = vec![None; group.order()];
        perms[group.identity()] = Some((0..n).collect());
        let mut queue = vec![group.identity()];
        while let Some(h) = queue.pop() {
            let ph = perms[h].clone().expect("queued elements are known");
            for (s, ps) in &gens {
                let sh = group.mul(*s, h);
                let composed: Vec<usize> = ph.iter().map(|&x| ps[x]).collect();
                match &perms[sh] {
                    Some(existing) if *existing != composed => {
                        return Err(Error::InvalidAction(format!("generators violate a relation at {}", group.label(sh))))
                    }
                    Some(_) => {}
                    None => {
                        perms[sh] = Some(composed);
                        queue.push(sh);
                    }
                }
            }
        }
        let perms = perms
            .into_iter()
            .enumerate()
            .map(|(g, p)| p.ok_or_else(|| Error::InvalidAction(format!("generators do not reach {}", group.label(g)))))
            .collect::<Result<Vec<_>>>()?;
        Self::checked(group, points, index, perms)
    }

    pub fn trivial(group: Arc<FiniteGroup>, points: Vec<Label>) -> Result<Self> {
        let index = Self::index_points(&points)?;
        let perms = vec![(0..points.len()).collect(); group.order()];
        Self::checked(group, points, index, perms)
    }

    fn index_points(points: &[Label]) -> Result<HashMap<Label, usize>> {
        let mut index = HashMap::with_capacity(points.len());
        for (i, x) in points.iter().enumerate() {
            if index.insert(x.clone(), i).is_some() {
                return Err(Error::InvalidAction(format!("duplicate point {}", x)));
            }
        }
        if index.is_empty() {
            return Err(Error::InvalidAction("no points".into()));
        }
        Ok(index)
    }

    fn permutation_from(index: &HashMap<Label, usize>, row: &[Label]) -> Result<Vec<usize>> {
        if row.len() != index.len() {
            return Err(Error::InvalidAction(format!("permutation of length {} on {} points", row.len(), index.len())));
        }
        let perm = row
            .iter()
            .map(|y| index.get(y).copied().ok_or_else(|| Error::InvalidAction(format!("{} is not a point", y))))
            .collect::<Result<Vec<_>>>()?;
        let mut seen = vec![false; perm.len()];
        for &y in &perm {
            if std::mem::replace(&mut seen[y], true) {
                return Err(Error::InvalidAction("not a bijection".into()));
            }
        }
        Ok(perm)
    }

    fn checked(group: Arc<FiniteGroup>, points: Vec<Label>, index: HashMap<Label, usize>, perms: Vec<Vec<usize>>) -> Result<Self> {
        let n = points.len();
        if perms[group.identity()].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(Error::InvalidAction("identity acts nontrivially".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                if (0..n).any(|x| perms[g][perms[h][x]] != perms[gh][x]) {
                    return Err(Error::InvalidAction(format!(
                        "g(hx) != (gh)x for g = {}, h = {}",
                        group.label(g),
                        group.label(h)
                    )));
                }
            }
        }
        let window = Window::new(points.clone(), 0)?;
        Ok(GroupAction { group, points, index, perms, window })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn points(&self) -> &[Label] {
        &self.points
    }

    pub fn point_index(&self, x: &Label) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// `g · x` on indices.
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.perms[g][x]
    }

    /// Permutation of every group element as point labels.
    pub fn images(&self) -> Vec<Vec<Label>> {
        self.perms.iter().map(|p| p.iter().map(|&y| self.points[y].clone()).collect()).collect()
    }

    pub fn window(&self) -> Window {
        self.window.clone()
    }

    /// `α_g(a) = P_g a P_g^*` where `P_g δ_x = δ_{g·x}`; on diagonal
    /// operators this is `f ↦ f ∘ g⁻¹`.
    pub fn alpha(&self, g: usize, a: &OperatorMatrix) -> Result<OperatorMatrix> {
        if a.window() != &self.window {
            return Err(Error::WindowMismatch);
        }
        let triplets = a.nonzeros().map(|(x, y, v)| (self.act(g, x), self.act(g, y), v.clone()));
        OperatorMatrix::from_triplets(a.window(), a.ring(), triplets)
    }
}

/// Finitely supported `φ: G → M_X(Z_p)` in the crossed product by an action
/// on `X`, written `Σ φ(g) δ_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedElement {
    action: Arc<GroupAction>,
    ring: Zp,
    coeffs: Vec<OperatorMatrix>,
}

impl CrossedElement {
    pub fn zero(action: &Arc<GroupAction>, ring: &Zp) -> Self {
        let zero = OperatorMatrix::zero(&action.window(), ring);
        CrossedElement { action: action.clone(), ring: ring.clone(), coeffs: vec![zero; action.group().order()] }
    }

    /// `a δ_g`.
    pub fn monomial(action: &Arc<GroupAction>, a: OperatorMatrix, g: &Label) -> Result<Self> {
        let g = action.group().index_of(g).ok_or_else(|| Error::InvalidInput(format!("{} is not a group element", g)))?;
        let mut out = Self::zero(action, a.ring());
        out.check_coefficient(&a)?;
        out.coeffs[g] = a;
        Ok(out)
    }

    /// Coefficients in group order.
    pub fn from_coefficients(action: &Arc<GroupAction>, ring: &Zp, coeffs: Vec<OperatorMatrix>) -> Result<Self> {
        if coeffs.len() != action.group().order() {
            return Err(Error::ShapeMismatch(format!("expected {} coefficients, got {}", action.group().order(), coeffs.len())));
        }
        let out = CrossedElement { action: action.clone(), ring: ring.clone(), coeffs };
        for a in &out.coeffs {
            out.check_coefficient(a)?;
        }
        Ok(out)
    }

    /// Diagonal coefficients `φ(g) = diag(f_g)` given as values on points.
    pub fn from_functions(action: &Arc<GroupAction>, ring: &Zp, functions: Vec<Vec<PadicScalar>>) -> Result<Self> {
        let window = action.window();
        let coeffs = functions
            .into_iter()
            .map(|f| {
                if f.len() != window.len() {
                    return Err(Error::ShapeMismatch(format!("function on {} points, expected {}", f.len(), window.len())));
                }
                OperatorMatrix::from_triplets(&window, ring, f.into_iter().enumerate().map(|(x, v)| (x, x, v)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_coefficients(action, ring, coeffs)
    }

    fn check_coefficient(&self, a: &OperatorMatrix) -> Result<()> {
        if a.window() != &self.action.window {
            return Err(Error::WindowMismatch);
        }
        if a.ring() != &self.ring {
            return Err(Error::RingMismatch(a.ring().prime(), a.ring().precision(), self.ring.prime(), self.ring.precision()));
        }
        if !a.is_contractive() {
            return Err(Error::NotContractive);
        }
        Ok(())
    }

    pub fn action(&self) -> &Arc<GroupAction> {
        &self.action
    }

    pub fn ring(&self) -> &Zp {
        &self.ring
    }

    pub fn coefficients(&self) -> &[OperatorMatrix] {
        &self.coeffs
    }

    /// `max_g ‖φ(g)‖`.
    pub fn sup_norm(&self) -> NormValue {
        max_norm(self.coeffs.iter().map(OperatorMatrix::op_norm)).unwrap_or_else(|| self.ring.zero().norm())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !(Arc::ptr_eq(&self.action, &other.action) || self.action == other.action) {
            return Err(Error::CarrierMismatch);
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.prime(), self.ring.precision(), other.ring.prime(), other.ring.precision()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect::<Result<Vec<_>>>()?;
        Ok(CrossedElement { action: self.action.clone(), ring: self.ring.clone(), coeffs })
    }

    pub fn congruent(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            if !a.congruent(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `(φ∗ψ)(h) = Σ_g φ(g) α_g(ψ(g⁻¹h))`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let group = self.action.group();
        let mut out = Self::zero(&self.action, &self.ring);
        for g in 0..group.order() {
            if self.coeffs[g].is_negligible() {
                continue;
            }
            for k in 0..group.order() {
                if other.coeffs[k].is_negligible() {
                    continue;
                }
                let term = self.coeffs[g].compose(&self.action.alpha(g, &other.coeffs[k])?)?;
                let h = group.mul(g, k);
                out.coeffs[h] = out.coeffs[h].add(&term)?;
            }
        }
        Ok(out)
    }

    /// `φ*(g) = α_g(φ(g⁻¹)*)`.
    pub fn involution(&self) -> Result<Self> {
        let group = self.action.group();
        let coeffs = (0..group.order())
            .map(|g| self.action.alpha(g, &self.coeffs[group.inv(g)].adjoint()))
            .collect::<Result<Vec<_>>>()?;
        Ok(CrossedElement { action: self.action.clone(), ring: self.ring.clone(), coeffs })
    }

    /// Window `X × G` on which the regular representation acts.
    pub fn representation_window(&self) -> Window {
        Window::product(&self.action.window(), &self.action.group().window())
    }

    /// `ρ(φ) = Σ_g π̃(φ(g)) λ̃_g` on `Q_p(X × G)`, whose entry at
    /// `((y, h), (x, k))` is `α_{h⁻¹}(φ(hk⁻¹))_{y,x}`.
    pub fn representation(&self) -> Result<OperatorMatrix> {
        let group = self.action.group();
        let m = group.order();
        let mut triplets = Vec::new();
        for h in 0..m {
            let h_inv = group.inv(h);
            for k in 0..m {
                let a = &self.coeffs[group.mul(h, group.inv(k))];
                if a.is_negligible() {
                    continue;
                }
                for (y, x, v) in self.action.alpha(h_inv, a)?.nonzeros() {
                    triplets.push((y * m + h, x * m + k, v.clone()));
                }
            }
        }
        OperatorMatrix::from_triplets(&self.representation_window(), &self.ring, triplets)
    }

    /// Image in the convolution algebra of the action groupoid:
    /// `(h, x) ↦ φ(h)(h·x)`. Coefficients must be diagonal.
    pub fn to_action_groupoid(&self, carrier: &Carrier) -> Result<ConvolutionElement> {
        self.check_action_groupoid(carrier)?;
        let n = self.action.points().len();
        let mut values = Vec::with_capacity(carrier.len());
        for (h, a) in self.coeffs.iter().enumerate() {
            if a.nonzeros().any(|(i, j, v)| i != j && !v.is_below_precision()) {
                return Err(Error::InvalidInput(format!(
                    "coefficient at {} is not diagonal",
                    self.action.group().label(h)
                )));
            }
            for x in 0..n {
                let hx = self.action.act(h, x);
                values.push(a.entry(hx, hx));
            }
        }
        ConvolutionElement::from_coefficients(carrier, &self.ring, values)
    }

    /// Inverse of [`to_action_groupoid`](Self::to_action_groupoid):
    /// `φ(h)(y) = χ(h, h⁻¹·y)`.
    pub fn from_action_groupoid(action: &Arc<GroupAction>, chi: &ConvolutionElement) -> Result<Self> {
        let ring = chi.ring().clone();
        let zero = Self::zero(action, &ring);
        zero.check_action_groupoid(chi.carrier())?;
        let group = action.group();
        let n = action.points().len();
        let functions = (0..group.order())
            .map(|h| {
                let h_inv = group.inv(h);
                (0..n).map(|y| chi.coefficients()[h * n + action.act(h_inv, y)].clone()).collect()
            })
            .collect();
        Self::from_functions(action, &ring, functions)
    }

    fn check_action_groupoid(&self, carrier: &Carrier) -> Result<()> {
        match carrier {
            Carrier::Groupoid(g) if **g == FiniteGroupoid::action(&self.action) => Ok(()),
            _ => Err(Error::CarrierMismatch),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Zp {
        Zp::new(3, 10).unwrap()
    }

    fn swap() -> Arc<GroupAction> {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let pts = vec![Label::from("x1"), Label::from("x2")];
        let gens = [(Label::Int(1), vec![Label::from("x2"), Label::from("x1")])];
        Arc::new(GroupAction::from_generators(g, pts, &gens).unwrap())
    }

    fn diag(action: &GroupAction, r: &Zp, f: &[i64]) -> OperatorMatrix {
        let rows: Vec<Vec<i64>> = (0..f.len()).map(|i| (0..f.len()).map(|j| if i == j { f[i] } else { 0 }).collect()).collect();
        OperatorMatrix::from_integer_rows(&action.window(), r, &rows).unwrap()
    }

    #[test]
    fn action_from_generators() {
        let d3 = Arc::new(FiniteGroup::dihedral(3).unwrap());
        let pts: Vec<Label> = (0..3).map(Label::Int).collect();
        let l = |v: [i64; 3]| v.iter().map(|&x| Label::Int(x)).collect::<Vec<_>>();
        let gens = [(Label::from("r1"), l([1, 2, 0])), (Label::from("s0"), l([0, 2, 1]))];
        let act = GroupAction::from_generators(d3.clone(), pts.clone(), &gens).unwrap();
        let rebuilt = GroupAction::new(d3.clone(), pts.clone(), &act.images()).unwrap();
        assert_eq!(rebuilt, act);
        let bad = [(Label::from("r1"), l([1, 0, 2]))];
        assert!(matches!(GroupAction::from_generators(d3, pts, &bad), Err(Error::InvalidAction(_))));
    }

    #[test]
    fn monomial_product_rule() {
        let r = ring();
        let act = swap();
        let a = diag(&act, &r, &[2, 5]);
        let b = diag(&act, &r, &[7, 1]);
        let g = Label::Int(1);
        let lhs = CrossedElement::monomial(&act, a.clone(), &g).unwrap().convolve(&CrossedElement::monomial(&act, b.clone(), &g).unwrap()).unwrap();
        let expected = a.compose(&act.alpha(1, &b).unwrap()).unwrap();
        assert_eq!(lhs, CrossedElement::monomial(&act, expected, &Label::Int(0)).unwrap());
        assert_eq!(act.alpha(1, &b).unwrap(), diag(&act, &r, &[1, 7]));
    }

    #[test]
    fn representation_of_swap() {
        let r = ring();
        let act = swap();
        let one = OperatorMatrix::identity(&act.window(), &r);
        let phi = CrossedElement::monomial(&act, one, &Label::Int(1)).unwrap();
        let rho = phi.representation().unwrap();
        // δ_(x, k) ↦ δ_(x, k+1)
        let c = rho.classify().unwrap();
        assert!(c.unitary && c.self_adjoint);
        for x in 0..2 {
            for k in 0..2 {
                assert_eq!(rho.entry(x * 2 + (1 - k), x * 2 + k), r.one());
            }
        }
    }

    #[test]
    fn trivial_action_reduces_to_tensor() {
        let r = ring();
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let act = Arc::new(GroupAction::trivial(g.clone(), vec![Label::Int(0), Label::Int(1)]).unwrap());
        let a = OperatorMatrix::from_integer_rows(&act.window(), &r, &[vec![1, 2], vec![0, 3]]).unwrap();
        let rho = CrossedElement::monomial(&act, a.clone(), &Label::Int(0)).unwrap().representation().unwrap();
        let expected = a.kronecker(&OperatorMatrix::identity(&g.window(), &r)).unwrap();
        assert_eq!(rho.to_dense(), expected.to_dense());
    }

    #[test]
    fn action_groupoid_round_trip() {
        let r = ring();
        let act = swap();
        let carrier = Carrier::from(FiniteGroupoid::action(&act));
        let phi = CrossedElement::from_functions(
            &act,
            &r,
            vec![vec![r.from_integer(1), r.from_integer(4)], vec![r.from_integer(2), r.from_integer(9)]],
        )
        .unwrap();
        let chi = phi.to_action_groupoid(&carrier).unwrap();
        assert_eq!(CrossedElement::from_action_groupoid(&act, &chi).unwrap(), phi);
        let id = CrossedElement::monomial(&act, OperatorMatrix::identity(&act.window(), &r), &Label::Int(0)).unwrap();
        let units = id.to_action_groupoid(&carrier).unwrap();
        let gpd = carrier.as_groupoid().unwrap();
        for (a, v) in units.coefficients().iter().enumerate() {
            assert_eq!(v.is_below_precision(), !gpd.is_unit(a));
        }
    }
}
