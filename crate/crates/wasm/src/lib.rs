//! Browser bindings for the demo page in `www/`.
//!
//! Each export takes plain values and returns a JSON string. The
//! `*_json` functions hold the logic and run natively in tests.

use padic_opalg::ktheory::{cuntz_kh, laurent_kh, quillen_k, rotation_kh};
use padic_opalg::tate::{tate_check, valuation_grid, TateReport};
use padic_opalg::{OperatorClass, OperatorMatrix, PadicScalar, Window, Zp};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Debug, Serialize)]
pub struct Heatmap {
    /// Valuation of each entry of `f(τ)`; `null` where the entry vanishes.
    pub grid: Vec<Vec<Option<i64>>>,
    pub report: TateReport,
}

#[derive(Debug, Serialize)]
pub struct KRow {
    pub degree: i64,
    pub group: String,
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct MatrixReport {
    pub norm: String,
    pub norm_squared: String,
    pub norm_tstar_t: String,
    pub cstar_identity: bool,
    pub flags: Vec<&'static str>,
    /// Entries of `T*T` for display.
    pub tstar_t: Vec<Vec<String>>,
}

fn parse_scalar(token: &str, ring: &Zp) -> Result<PadicScalar, String> {
    let bad = || format!("cannot read {:?} as an integer or fraction", token);
    match token.split_once('/') {
        Some((n, d)) => {
            let (n, d) = (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?);
            ring.from_ratio(n, d).map_err(|e| e.to_string())
        }
        None => Ok(ring.from_integer(token.trim().parse().map_err(|_| bad())?)),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

/// Valuations of `f(τ)` on `len` points for `f = a_0 + a_1 x + ...`.
pub fn tate_heatmap_json(prime: u32, precision: u32, coeffs: &str, len: u32) -> Result<String, String> {
    let ring = Zp::new(prime as u64, precision).map_err(|e| e.to_string())?;
    let coeffs = coeffs
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_scalar(t, &ring))
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.is_empty() {
        return Err("enter at least one coefficient".into());
    }
    let len = len as usize;
    let grid = valuation_grid(&coeffs, len, &ring).map_err(|e| e.to_string())?;
    let report = tate_check(&coeffs, len, &ring).map_err(|e| e.to_string())?;
    to_json(&Heatmap { grid, report })
}

/// K-groups of `kind` (`quillen`, `laurent`, `cuntz`, `rotation`) for
/// degrees `from..=to`; `param` is `n` for Cuntz and `λ` for rotation.
pub fn ktheory_table_json(kind: &str, prime: u32, param: u32, from: i32, to: i32) -> Result<String, String> {
    if to < from || to - from > 64 {
        return Err("choose at most 65 degrees with from <= to".into());
    }
    let p = prime as u64;
    let rows = (from..=to)
        .map(|m| {
            let m = m as i64;
            let row = |g: padic_opalg::ktheory::FinGenAbGroup| KRow { degree: m, group: g.to_string(), notes: vec![] };
            match kind {
                "quillen" => quillen_k(m, p).map(row),
                "laurent" => laurent_kh(p, m).map(row),
                "cuntz" => cuntz_kh(param as u64, p, m).map(row),
                "rotation" => rotation_kh(param as u64, p, m).map(|r| KRow {
                    degree: m,
                    group: r.a_lambda.describe(),
                    notes: r.c_lambda.notes.iter().chain(&r.a_lambda.notes).cloned().collect(),
                }),
                other => Err(padic_opalg::Error::InvalidInput(format!("unknown table {:?}", other))),
            }
            .map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, _>>()?;
    to_json(&rows)
}

/// Norm, C*-defect and classification of a square matrix given as rows
/// separated by `;` or newlines, entries by spaces or commas.
pub fn matrix_report_json(prime: u32, precision: u32, rows: &str) -> Result<String, String> {
    let ring = Zp::new(prime as u64, precision).map_err(|e| e.to_string())?;
    let entries = rows
        .split([';', '\n'])
        .filter(|r| !r.trim().is_empty())
        .map(|r| {
            r.split([' ', ',', '\t'])
                .filter(|t| !t.is_empty())
                .map(|t| parse_scalar(t, &ring).map(|x| (!x.is_negligible()).then_some(x)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = entries.len();
    if n == 0 || entries.iter().any(|r| r.len() != n) {
        return Err("enter a square matrix".into());
    }
    let window = Window::range(0, n, 0).map_err(|e| e.to_string())?;
    let t = OperatorMatrix::from_dense(&window, &ring, entries).map_err(|e| e.to_string())?;
    let p = prime as u64;
    let defect = t.cstar_defect().map_err(|e| e.to_string())?;
    let class: OperatorClass = t.classify().map_err(|e| e.to_string())?;
    let tt = t.adjoint().compose(&t).map_err(|e| e.to_string())?;
    let tstar_t = tt
        .to_dense()
        .iter()
        .map(|r| r.iter().map(|x| x.as_ref().map_or_else(|| "0".to_string(), PadicScalar::to_string)).collect())
        .collect();
    to_json(&MatrixReport {
        norm: t.op_norm().display(p),
        norm_squared: defect.norm_t_squared.display(p),
        norm_tstar_t: defect.norm_tstar_t.display(p),
        cstar_identity: defect.identity_holds,
        flags: class.flags(),
        tstar_t,
    })
}

#[wasm_bindgen]
pub fn tate_heatmap(prime: u32, precision: u32, coeffs: &str, len: u32) -> Result<String, JsValue> {
    tate_heatmap_json(prime, precision, coeffs, len).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn ktheory_table(kind: &str, prime: u32, param: u32, from: i32, to: i32) -> Result<String, JsValue> {
    ktheory_table_json(kind, prime, param, from, to).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn matrix_report(prime: u32, precision: u32, rows: &str) -> Result<String, JsValue> {
    matrix_report_json(prime, precision, rows).map_err(|e| JsValue::from_str(&e))
}
