use padic_opalg::json::scalar_to_json;
use padic_opalg::scalar::mahler_coefficients;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::operator::matrix_text;
use super::scalar::ScalarOutput;
use super::Context;
use crate::args::MahlerCmd;
use crate::error::{usage, Result};
use crate::input::parse_scalars;
use crate::output::Report;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffsOutput {
    pub prime: u64,
    pub precision: u32,
    pub coefficients: Vec<Value>,
}

pub fn run(ctx: &Context, cmd: &MahlerCmd) -> Result<Report> {
    let ring = &ctx.ring;
    match cmd {
        MahlerCmd::Coeffs { values } => {
            let values = parse_scalars(values, ring)?;
            if values.is_empty() {
                return Err(usage("--values is empty"));
            }
            let coeffs = mahler_coefficients(&values)?;
            let norms: Vec<_> = coeffs.iter().map(|c| c.norm()).collect();
            let out = CoeffsOutput {
                prime: ring.prime(),
                precision: ring.precision(),
                coefficients: coeffs.iter().map(scalar_to_json).collect(),
            };
            let mut text = String::new();
            for (n, (c, norm)) in coeffs.iter().zip(&norms).enumerate() {
                text.push_str(&format!("c_{:<3} = {:<24} |c| = {}\n", n, c.to_string(), norm.display(ring.prime())));
            }
            Report::new(&out, text, true)
        }
        MahlerCmd::Eval { coeffs, at } => {
            let coeffs = parse_scalars(coeffs, ring)?;
            if coeffs.is_empty() {
                return Err(usage("--coeffs is empty"));
            }
            match at {
                Some(x) => {
                    let x = crate::input::parse_scalar(x, ring)?;
                    let mut acc = ring.zero();
                    for (n, c) in coeffs.iter().enumerate() {
                        acc = &acc + &(c * &x.binomial(n as u64)?);
                    }
                    let mut out = ScalarOutput { prime: ring.prime(), precision: ring.precision(), results: Vec::new() };
                    out.push("x", &x);
                    out.push("f(x)", &acc);
                    let shown = vec![("x".into(), x.to_string()), ("f(x)".into(), acc.to_string())];
                    let text = out.text(&shown);
                    Report::new(&out, text, true)
                }
                None => {
                    let mut ops = ctx.operators()?;
                    if ops.len() != 1 {
                        return Err(usage("mahler eval takes a single operator"));
                    }
                    let t = ops.remove(0);
                    let f_t = t.mahler_evaluate(&coeffs, coeffs.len() as u32)?;
                    Report::new(&padic_opalg::json::MatrixJson::from_matrix(&f_t), matrix_text(&f_t), true)
                }
            }
        }
    }
}
