use std::fmt::Write;

use padic_opalg::ktheory::{cuntz_kh, graph_kh, laurent_kh, quillen_k, rotation_kh, FinGenAbGroup, Graph, KhReport, RotationKh};

use serde::{Deserialize, Serialize};

use super::Context;
use crate::args::{Degrees, KtheoryCmd};
use crate::error::{usage, Result};
use crate::input::{load_json, parse_range};
use crate::output::Report;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KhTable {
    pub prime: u64,
    pub algebra: String,
    pub rows: Vec<KhReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationTable {
    pub prime: u64,
    pub lambda: u64,
    pub rows: Vec<RotationKh>,
}

fn degrees(d: &Degrees) -> Result<Vec<i64>> {
    match (d.degree, &d.range) {
        (Some(m), None) => Ok(vec![m]),
        (None, Some(r)) => parse_range(r),
        (None, None) => Ok((0..=6).collect()),
        (Some(_), Some(_)) => Err(usage("--degree and --range are exclusive")),
    }
}

fn determined(degree: i64, group: FinGenAbGroup) -> KhReport {
    KhReport { degree, group: Some(group), extension: None, notes: vec![] }
}

fn table(prime: u64, algebra: String, ms: &[i64], f: impl Fn(i64) -> padic_opalg::Result<KhReport>) -> Result<Report> {
    let rows = ms.iter().map(|&m| f(m)).collect::<padic_opalg::Result<Vec<_>>>()?;
    let out = KhTable { prime, algebra, rows };
    let mut text = format!("{} over F_{}\n", out.algebra, prime);
    for r in &out.rows {
        let _ = writeln!(text, "{:>4}  {}", r.degree, r.describe());
        for note in &r.notes {
            let _ = writeln!(text, "      note: {}", note);
        }
    }
    Report::new(&out, text, true)
}

pub fn run(ctx: &Context, cmd: &KtheoryCmd) -> Result<Report> {
    let p = ctx.ring.prime();
    match cmd {
        KtheoryCmd::Quillen(d) => table(p, "K_m(F_p)".into(), &degrees(d)?, |m| Ok(determined(m, quillen_k(m, p)?))),
        KtheoryCmd::Laurent(d) => table(p, "KH_m(F_p[t, 1/t])".into(), &degrees(d)?, |m| Ok(determined(m, laurent_kh(p, m)?))),
        KtheoryCmd::Cuntz { n, degrees: d } => {
            table(p, format!("KH_m(L_{})", n), &degrees(d)?, |m| Ok(determined(m, cuntz_kh(*n, p, m)?)))
        }
        KtheoryCmd::Graph(d) => {
            let (graph, name) = match (ctx.files.as_slice(), ctx.preset) {
                ([path], None) => (load_json::<Graph>(path)?, format!("KH_m(L(E)) for {}", path.display())),
                ([], Some(preset)) => (preset.graph()?, format!("KH_m(L(E)) for {} loops at one vertex", preset.graph()?.edges().len())),
                _ => return Err(usage("ktheory graph needs one --file or a preset e<n>")),
            };
            table(p, name, &degrees(d)?, |m| graph_kh(&graph, p, m))
        }
        KtheoryCmd::Rotation { lambda, degrees: d } => {
            let rows = degrees(d)?.into_iter().map(|m| rotation_kh(*lambda, p, m)).collect::<padic_opalg::Result<Vec<_>>>()?;
            let out = RotationTable { prime: p, lambda: *lambda, rows };
            let order = out.rows.first().map_or(0, |r| r.order);
            let mut text = format!("lambda = {} of order {} in F_{}^x\n", lambda, order, p);
            text.push_str("   m  KH_m(C_lambda)  |  KH_m(A_lambda)  |  rank\n");
            for r in &out.rows {
                let _ = writeln!(text, "{:>4}  {}  |  {}  |  {}", r.degree, r.c_lambda.describe(), r.a_lambda.describe(), r.rational_dimension);
                for note in r.c_lambda.notes.iter().chain(&r.a_lambda.notes) {
                    let _ = writeln!(text, "      note: {}", note);
                }
            }
            Report::new(&out, text, true)
        }
    }
}
