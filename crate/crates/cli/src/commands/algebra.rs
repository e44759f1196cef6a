use std::collections::BTreeMap;
use std::fmt::Write;
use std::sync::Arc;

use padic_opalg::convolution::{rotation_generators, Carrier, Cocycle, ConvolutionElement, CrossedElement, FiniteGroup, FiniteGroupoid, GroupAction, RotationReport};
use padic_opalg::json::{element_from_json, element_to_json, scalar_from_json, scalar_to_json, ActionJson, CocycleJson, GroupJson, GroupoidJson, MatrixJson};
use padic_opalg::{NormValue, OperatorMatrix, Zp};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::operator::pass;
use super::Context;
use crate::args::AlgebraCmd;
use crate::error::{usage, Result};
use crate::input::{load_json, parse_scalar, Preset};
use crate::output::Report;

/// `"cyclic:n"`, `"dihedral:n"`, `"quaternion"`, `"klein"`, or a full table.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Named(String),
    Table(GroupJson),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BicharacterSpec {
    /// Order of the second cyclic factor.
    pub n: usize,
    /// Residue whose Teichmüller lift is `ζ`.
    pub teichmuller: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CocycleSpec {
    Values(CocycleJson),
    Bicharacter { bicharacter: BicharacterSpec },
}

/// Input file of the `algebra` commands. `phi` and `psi` map labels to
/// scalars, or for crossed products group labels to dense matrices on the
/// action's points.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraInput {
    #[serde(default)]
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub groupoid: Option<GroupoidJson>,
    #[serde(default)]
    pub action: Option<ActionJson>,
    #[serde(default)]
    pub cocycle: Option<CocycleSpec>,
    #[serde(default)]
    pub phi: Option<Value>,
    #[serde(default)]
    pub psi: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvolveOutput {
    pub product: BTreeMap<String, Value>,
    /// `λ(φ * ψ) = λ(φ) λ(ψ)`.
    pub representation_multiplicative: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepOutput {
    pub matrix: MatrixJson,
    pub norm: NormValue,
    pub sup_norm: NormValue,
    pub isometric: bool,
    /// `λ(φ*) = λ(φ)*`; absent for twisted representations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<bool>,
    /// `λ(φ *_ω ψ) = λ(φ) λ(ψ)`, when `psi` is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicative: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionGroupoidOutput {
    pub image: BTreeMap<String, Value>,
    pub round_trip: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationOutput {
    pub prime: u64,
    pub z: Value,
    pub half_size: usize,
    pub report: RotationReport,
}

fn named_group(name: &str) -> Result<FiniteGroup> {
    let bad = || usage(format!("unknown group {:?}", name));
    let group = match name.split_once(':') {
        Some(("cyclic", n)) => FiniteGroup::cyclic(n.parse().map_err(|_| bad())?)?,
        Some(("dihedral", n)) => FiniteGroup::dihedral(n.parse().map_err(|_| bad())?)?,
        None if name == "quaternion" => FiniteGroup::quaternion(),
        None if name == "klein" => {
            let z2 = FiniteGroup::cyclic(2)?;
            FiniteGroup::direct_product(&z2, &z2)
        }
        _ => return Err(bad()),
    };
    Ok(group)
}

impl AlgebraInput {
    fn group(&self) -> Result<Arc<FiniteGroup>> {
        match &self.group {
            Some(GroupSpec::Named(n)) => Ok(Arc::new(named_group(n)?)),
            Some(GroupSpec::Table(t)) => Ok(Arc::new(t.to_group()?)),
            None => Err(usage("input needs a \"group\"")),
        }
    }

    fn carrier(&self) -> Result<Carrier> {
        match (&self.group, &self.groupoid) {
            (Some(_), None) => Ok(Carrier::from(self.group()?)),
            (None, Some(g)) => Ok(Carrier::from(g.to_groupoid()?)),
            _ => Err(usage("input needs exactly one of \"group\" and \"groupoid\"")),
        }
    }

    fn action(&self) -> Result<Arc<GroupAction>> {
        let a = self.action.as_ref().ok_or_else(|| usage("input needs an \"action\""))?;
        Ok(Arc::new(a.to_action(self.group()?)?))
    }

    fn cocycle(&self, group: Arc<FiniteGroup>, ring: &Zp) -> Result<Cocycle> {
        match &self.cocycle {
            Some(CocycleSpec::Values(c)) => Ok(c.to_cocycle(group, ring)?),
            Some(CocycleSpec::Bicharacter { bicharacter: b }) => {
                let zeta = ring.teichmuller(b.teichmuller)?;
                Ok(Cocycle::bicharacter(group, ring, b.n, &zeta)?)
            }
            None => Err(usage("input needs a \"cocycle\"")),
        }
    }

    fn element(&self, which: &str, carrier: &Carrier, ring: &Zp) -> Result<Option<ConvolutionElement>> {
        let v = if which == "phi" { &self.phi } else { &self.psi };
        match v {
            None => Ok(None),
            Some(v) => {
                let map: BTreeMap<String, Value> =
                    serde_json::from_value(v.clone()).map_err(|e| usage(format!("{} must map labels to scalars: {}", which, e)))?;
                Ok(Some(element_from_json(&map, carrier, ring)?))
            }
        }
    }

    fn crossed(&self, action: &Arc<GroupAction>, ring: &Zp) -> Result<CrossedElement> {
        let v = self.phi.as_ref().ok_or_else(|| usage("input needs \"phi\""))?;
        let map: BTreeMap<String, Vec<Vec<Value>>> =
            serde_json::from_value(v.clone()).map_err(|e| usage(format!("phi must map group labels to matrices: {}", e)))?;
        let group = action.group();
        let window = action.window();
        let mut coeffs = vec![OperatorMatrix::zero(&window, ring); group.order()];
        for (key, rows) in &map {
            let g = (0..group.order())
                .find(|&g| group.label(g).to_string() == *key)
                .ok_or_else(|| usage(format!("{} is not a group element", key)))?;
            let entries = rows
                .iter()
                .map(|row| row.iter().map(|x| scalar_from_json(x, ring).map(|s| (!s.is_negligible()).then_some(s))).collect())
                .collect::<padic_opalg::Result<Vec<Vec<_>>>>()?;
            coeffs[g] = OperatorMatrix::from_dense(&window, ring, entries)?;
        }
        Ok(CrossedElement::from_coefficients(action, ring, coeffs)?)
    }
}

fn required(e: Option<ConvolutionElement>, which: &str) -> Result<ConvolutionElement> {
    e.ok_or_else(|| usage(format!("input needs \"{}\"", which)))
}

fn rep_text(out: &RepOutput, p: u64) -> String {
    let mut text = format!(
        "||rep(phi)|| = {}\n||phi||_sup  = {}\nisometric: {}\n",
        out.norm.display(p),
        out.sup_norm.display(p),
        pass(out.isometric)
    );
    if let Some(s) = out.star {
        let _ = writeln!(text, "*-preserving: {}", pass(s));
    }
    if let Some(m) = out.multiplicative {
        let _ = writeln!(text, "multiplicative: {}", pass(m));
    }
    text
}

fn rep_output(matrix: &OperatorMatrix, sup_norm: NormValue) -> RepOutput {
    let norm = matrix.op_norm();
    RepOutput { matrix: MatrixJson::from_matrix(matrix), norm, sup_norm, isometric: norm == sup_norm, star: None, multiplicative: None }
}

pub fn run(ctx: &Context, cmd: &AlgebraCmd) -> Result<Report> {
    let ring = &ctx.ring;
    let p = ring.prime();
    if let AlgebraCmd::RotationVerify { z, half_size } = cmd {
        let preset = ctx.preset == Some(Preset::RotationZ2P5);
        let z = match (z, preset) {
            (Some(z), _) => parse_scalar(z, ring)?,
            (None, true) => ring.from_integer(2),
            (None, false) => return Err(usage("rotation-verify needs --z or --preset rotation-z2-p5")),
        };
        let half_size = half_size.unwrap_or(6);
        let report = rotation_generators(&z, half_size)?.verify()?;
        let out = RotationOutput { prime: p, z: scalar_to_json(&z), half_size, report };
        let text = format!(
            "z = {} in Z_{}, window {{-{m}..{m}}}^2\nUV = zVU: {}\nV unitary: {}\nU invertible: {}\nU unitary (needs z^2 = 1): {}\n",
            z,
            p,
            pass(report.commutation),
            pass(report.v_unitary),
            pass(report.u_invertible),
            report.u_unitary,
            m = half_size
        );
        return Report::new(&out, text, report.holds());
    }

    let input: AlgebraInput = load_json(ctx.single_file()?)?;
    match cmd {
        AlgebraCmd::Convolve => {
            let carrier = input.carrier()?;
            let phi = required(input.element("phi", &carrier, ring)?, "phi")?;
            let psi = required(input.element("psi", &carrier, ring)?, "psi")?;
            let product = phi.convolve(&psi)?;
            let lhs = product.regular_representation()?;
            let rhs = phi.regular_representation()?.compose(&psi.regular_representation()?)?;
            let out = ConvolveOutput { product: element_to_json(&product), representation_multiplicative: lhs.congruent(&rhs)? };
            let mut text = String::from("phi * psi =\n");
            for (k, v) in &out.product {
                let _ = writeln!(text, "  {}: {}", k, scalar_from_json(v, ring)?);
            }
            let _ = writeln!(text, "rep(phi * psi) = rep(phi) rep(psi): {}", pass(out.representation_multiplicative));
            let passed = out.representation_multiplicative;
            Report::new(&out, text, passed)
        }
        AlgebraCmd::Rep => {
            let carrier = input.carrier()?;
            let phi = required(input.element("phi", &carrier, ring)?, "phi")?;
            let lambda = phi.regular_representation()?;
            let mut out = rep_output(&lambda, phi.sup_norm());
            out.star = Some(phi.involution().regular_representation()?.congruent(&lambda.adjoint())?);
            let passed = out.isometric && out.star == Some(true);
            Report::new(&out, rep_text(&out, p), passed)
        }
        AlgebraCmd::TwistedRep => {
            let group = input.group()?;
            let omega = input.cocycle(group.clone(), ring)?;
            let carrier = Carrier::from(group);
            let phi = required(input.element("phi", &carrier, ring)?, "phi")?;
            let lambda = phi.twisted_regular_representation(&omega)?;
            let mut out = rep_output(&lambda, phi.sup_norm());
            if let Some(psi) = input.element("psi", &carrier, ring)? {
                let lhs = phi.twisted_convolve(&psi, &omega)?.twisted_regular_representation(&omega)?;
                out.multiplicative = Some(lhs.congruent(&lambda.compose(&psi.twisted_regular_representation(&omega)?)?)?);
            }
            let passed = out.isometric && out.multiplicative != Some(false);
            Report::new(&out, rep_text(&out, p), passed)
        }
        AlgebraCmd::Crossed => {
            let action = input.action()?;
            let phi = input.crossed(&action, ring)?;
            let rho = phi.representation()?;
            let mut out = rep_output(&rho, phi.sup_norm());
            out.star = Some(phi.involution()?.representation()?.congruent(&rho.adjoint())?);
            let passed = out.isometric && out.star == Some(true);
            Report::new(&out, rep_text(&out, p), passed)
        }
        AlgebraCmd::ActionGroupoid => {
            let action = input.action()?;
            let phi = input.crossed(&action, ring)?;
            let carrier = Carrier::from(FiniteGroupoid::action(&action));
            let chi = phi.to_action_groupoid(&carrier)?;
            let back = CrossedElement::from_action_groupoid(&action, &chi)?;
            let out = ActionGroupoidOutput { image: element_to_json(&chi), round_trip: back.congruent(&phi)? };
            let mut text = String::from("image in the action groupoid algebra:\n");
            for (k, v) in &out.image {
                let _ = writeln!(text, "  {}: {}", k, scalar_from_json(v, ring)?);
            }
            let _ = writeln!(text, "round trip: {}", pass(out.round_trip));
            let passed = out.round_trip;
            Report::new(&out, text, passed)
        }
        AlgebraCmd::RotationVerify { .. } => unreachable!("handled above"),
    }
}
