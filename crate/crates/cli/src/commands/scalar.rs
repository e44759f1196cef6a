use std::fmt::Write;

use padic_opalg::json::scalar_to_json;
use padic_opalg::{NormValue, PadicScalar};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::Context;
use crate::args::ScalarCmd;
use crate::error::Result;
use crate::input::parse_scalar;
use crate::output::Report;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedScalar {
    pub name: String,
    pub value: Value,
    pub norm: NormValue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarOutput {
    pub prime: u64,
    pub precision: u32,
    pub results: Vec<NamedScalar>,
}

impl ScalarOutput {
    pub(crate) fn push(&mut self, name: &str, x: &PadicScalar) {
        self.results.push(NamedScalar { name: name.into(), value: scalar_to_json(x), norm: x.norm() });
    }

    pub(crate) fn text(&self, shown: &[(String, String)]) -> String {
        let mut out = format!("Q_{} at {} digits\n", self.prime, self.precision);
        let width = self.results.iter().map(|r| r.name.len()).max().unwrap_or(0);
        for (r, (_, display)) in self.results.iter().zip(shown) {
            let _ = writeln!(out, "{:<width$} = {:<24} |.| = {}", r.name, display, r.norm.display(self.prime), width = width);
        }
        out
    }
}

pub fn run(ctx: &Context, cmd: &ScalarCmd) -> Result<Report> {
    let ring = &ctx.ring;
    let mut named: Vec<(String, PadicScalar)> = Vec::new();
    let mut passed = true;
    match cmd {
        ScalarCmd::Arith { a, b } => {
            let (x, y) = (parse_scalar(a, ring)?, parse_scalar(b, ring)?);
            named.push(("a".into(), x.clone()));
            named.push(("b".into(), y.clone()));
            named.push(("a + b".into(), &x + &y));
            named.push(("a - b".into(), &x - &y));
            named.push(("a * b".into(), &x * &y));
            if !y.is_below_precision() {
                named.push(("a / b".into(), &x * &y.recip()?));
            }
        }
        ScalarCmd::Hensel { a } => {
            let x = parse_scalar(a, ring)?;
            let root = x.hensel_sqrt()?;
            passed = (&(&root * &root) - &x).is_below_precision();
            named.push(("a".into(), x));
            named.push(("sqrt(a)".into(), root));
        }
        ScalarCmd::Binom { x, n } => {
            let x = parse_scalar(x, ring)?;
            let value = x.binomial(*n)?;
            named.push(("x".into(), x));
            named.push((format!("binom(x, {})", n), value));
        }
    }
    let mut out = ScalarOutput { prime: ring.prime(), precision: ring.precision(), results: Vec::new() };
    for (name, x) in &named {
        out.push(name, x);
    }
    let shown: Vec<(String, String)> = named.iter().map(|(n, x)| (n.clone(), x.to_string())).collect();
    let text = out.text(&shown);
    Report::new(&out, text, passed)
}
