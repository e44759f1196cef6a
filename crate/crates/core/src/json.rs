//! JSON descriptors for scalars, vectors, matrices, groups, groupoids,
//! cocycles, actions and convolution elements.
//!
//! A scalar is `{"v": valuation, "u": unit}`, `{"below": floor}` or `null`
//! for zero; plain integers are accepted on input. A value that lost digits
//! to cancellation carries `"digits"`, its relative precision. Maps keyed by labels use
//! the label's display form, e.g. `"(1,2)"` for a pair.

use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Number, Value};

use crate::convolution::{Carrier, Cocycle, ConvolutionElement, FiniteGroup, FiniteGroupoid, GroupAction};
use crate::error::{Error, Result};
use crate::hilbert::{Label, PadicVector, Window};
use crate::operator::OperatorMatrix;
use crate::scalar::{PadicScalar, Zp};

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub fn scalar_to_json(x: &PadicScalar) -> Value {
    if x.is_negligible() {
        return Value::Null;
    }
    match (x.below_floor(), x.valuation(), x.mantissa()) {
        (Some(floor), _, _) => json!({ "below": floor }),
        (None, Some(v), Some(u)) => {
            let u = Number::from_str(&u.to_string()).expect("decimal digits");
            match x.relative_precision() {
                Some(d) if d < x.precision() => json!({ "v": v, "u": u, "digits": d }),
                _ => json!({ "v": v, "u": u }),
            }
        }
        _ => unreachable!("a scalar is either below precision or has digits"),
    }
}

fn json_bigint(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).ok(),
        Value::String(s) => BigInt::from_str(s.trim()).ok(),
        _ => None,
    }
}

fn json_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| invalid(format!("{} must be an integer", what)))
}

pub fn scalar_from_json(v: &Value, ring: &Zp) -> Result<PadicScalar> {
    match v {
        Value::Null => Ok(ring.zero()),
        Value::Object(map) => {
            if let Some(floor) = map.get("below") {
                return Ok(ring.below(json_i64(floor, "below")?));
            }
            let val = json_i64(map.get("v").ok_or_else(|| invalid("scalar needs \"v\" and \"u\""))?, "v")?;
            let unit = map.get("u").and_then(json_bigint).ok_or_else(|| invalid("scalar \"u\" must be an integer"))?;
            let x = ring.from_parts(val, &unit);
            match map.get("digits") {
                None => Ok(x),
                Some(d) => {
                    let d = d.as_u64().filter(|&d| d >= 1).ok_or_else(|| invalid("\"digits\" must be a positive integer"))?;
                    Ok(x.truncated(u32::try_from(d).unwrap_or(u32::MAX)))
                }
            }
        }
        other => json_bigint(other)
            .map(|n| ring.from_bigint(&n))
            .ok_or_else(|| invalid(format!("not a scalar: {}", other))),
    }
}

/// Finds a label in `labels` by its display form.
fn label_lookup(labels: &[Label]) -> HashMap<String, usize> {
    labels.iter().enumerate().map(|(i, l)| (l.to_string(), i)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorJson {
    pub window: Vec<Label>,
    pub entries: BTreeMap<String, Value>,
}

impl VectorJson {
    pub fn from_vector(xi: &PadicVector) -> Self {
        let entries = xi
            .window()
            .labels()
            .iter()
            .zip(xi.entries())
            .filter_map(|(l, x)| x.as_ref().map(|x| (l.to_string(), scalar_to_json(x))))
            .collect();
        VectorJson { window: xi.window().labels().to_vec(), entries }
    }

    pub fn to_vector(&self, ring: &Zp) -> Result<PadicVector> {
        let window = Window::new(self.window.clone(), 0)?;
        let lookup = label_lookup(&self.window);
        let mut xi = PadicVector::zero(&window, ring);
        for (key, v) in &self.entries {
            let i = *lookup.get(key).ok_or_else(|| invalid(format!("entry {} is not in the window", key)))?;
            xi.set(i, scalar_from_json(v, ring)?);
        }
        Ok(xi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub prime: u64,
    pub precision: u32,
    pub window: Vec<Label>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub margin: usize,
    /// Row-major over the window.
    pub entries: Vec<Vec<Value>>,
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

impl MatrixJson {
    pub fn from_matrix(t: &OperatorMatrix) -> Self {
        let entries = t
            .to_dense()
            .iter()
            .map(|row| row.iter().map(|x| x.as_ref().map_or(Value::Null, scalar_to_json)).collect())
            .collect();
        MatrixJson {
            prime: t.ring().prime(),
            precision: t.ring().precision(),
            window: t.window().labels().to_vec(),
            margin: t.window().margin(),
            entries,
        }
    }

    pub fn to_matrix(&self) -> Result<OperatorMatrix> {
        let ring = Zp::new(self.prime, self.precision)?;
        let window = Window::new(self.window.clone(), self.margin)?;
        let n = window.len();
        if self.entries.len() != n || self.entries.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!("expected a {}x{} entry array", n, n)));
        }
        let mut triplets = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_null() {
                    triplets.push((i, j, scalar_from_json(v, &ring)?));
                }
            }
        }
        OperatorMatrix::from_triplets(&window, &ring, triplets)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupJson {
    pub elements: Vec<Label>,
    pub table: Vec<Vec<Label>>,
}

impl GroupJson {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupJson { elements: g.elements().to_vec(), table: g.table_labels() }
    }

    pub fn to_group(&self) -> Result<FiniteGroup> {
        FiniteGroup::from_table(self.elements.clone(), self.table.clone())
    }
}

/// `s` and `r` list the source and range of each arrow in arrow order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupoidJson {
    pub objects: Vec<Label>,
    pub arrows: Vec<Label>,
    pub s: Vec<Label>,
    pub r: Vec<Label>,
    pub compose: Vec<(Label, Label, Label)>,
}

impl GroupoidJson {
    pub fn from_groupoid(g: &FiniteGroupoid) -> Self {
        let label = |i: usize| g.label(i).clone();
        GroupoidJson {
            objects: g.objects().iter().map(|&o| label(o)).collect(),
            arrows: g.arrows().to_vec(),
            s: (0..g.len()).map(|a| label(g.source(a))).collect(),
            r: (0..g.len()).map(|a| label(g.range(a))).collect(),
            compose: g.composition_table().into_iter().map(|(a, b, c)| (label(a), label(b), label(c))).collect(),
        }
    }

    pub fn to_groupoid(&self) -> Result<FiniteGroupoid> {
        if self.s.len() != self.arrows.len() || self.r.len() != self.arrows.len() {
            return Err(Error::InvalidGroupoid("s and r need one entry per arrow".into()));
        }
        let s = self.arrows.iter().cloned().zip(self.s.iter().cloned()).collect();
        let r = self.arrows.iter().cloned().zip(self.r.iter().cloned()).collect();
        FiniteGroupoid::new(self.objects.clone(), self.arrows.clone(), &s, &r, &self.compose)
    }
}

/// Value table `ω(g, h)` in group order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CocycleJson {
    pub values: Vec<Vec<Value>>,
}

impl CocycleJson {
    pub fn from_cocycle(w: &Cocycle) -> Self {
        CocycleJson { values: w.values().iter().map(|row| row.iter().map(scalar_to_json).collect()).collect() }
    }

    pub fn to_cocycle(&self, group: Arc<FiniteGroup>, ring: &Zp) -> Result<Cocycle> {
        let values = self
            .values
            .iter()
            .map(|row| row.iter().map(|v| scalar_from_json(v, ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Cocycle::new(group, ring, values)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub element: Label,
    pub images: Vec<Label>,
}

/// A permutation action, given either on generators or on every element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionJson {
    pub points: Vec<Label>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<GeneratorJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<Label>>>,
}

impl ActionJson {
    pub fn from_action(a: &GroupAction) -> Self {
        ActionJson { points: a.points().to_vec(), generators: vec![], permutations: Some(a.images()) }
    }

    pub fn to_action(&self, group: Arc<FiniteGroup>) -> Result<GroupAction> {
        match &self.permutations {
            Some(images) => GroupAction::new(group, self.points.clone(), images),
            None => {
                let gens: Vec<_> = self.generators.iter().map(|g| (g.element.clone(), g.images.clone())).collect();
                GroupAction::from_generators(group, self.points.clone(), &gens)
            }
        }
    }
}

/// Coefficients of a convolution element keyed by label.
pub fn element_to_json(phi: &ConvolutionElement) -> BTreeMap<String, Value> {
    phi.coefficients()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_negligible())
        .map(|(i, c)| (phi.carrier().label(i).to_string(), scalar_to_json(c)))
        .collect()
}

pub fn element_from_json(map: &BTreeMap<String, Value>, carrier: &Carrier, ring: &Zp) -> Result<ConvolutionElement> {
    let labels: Vec<Label> = (0..carrier.len()).map(|i| carrier.label(i).clone()).collect();
    let lookup = label_lookup(&labels);
    let mut coeffs = vec![ring.zero(); carrier.len()];
    for (key, v) in map {
        let i = *lookup.get(key).ok_or_else(|| invalid(format!("{} is not in the carrier", key)))?;
        coeffs[i] = scalar_from_json(v, ring)?;
    }
    ConvolutionElement::from_coefficients(carrier, ring, coeffs)
}
