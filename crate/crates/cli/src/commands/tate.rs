use std::fmt::Write;

use padic_opalg::json::scalar_to_json;
use padic_opalg::tate::{tate_check, TateReport};
use padic_opalg::PadicScalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::operator::pass;
use super::Context;
use crate::args::TateArgs;
use crate::error::{usage, Result};
use crate::input::parse_scalars;
use crate::output::Report;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TateCase {
    pub coefficients: Vec<Value>,
    pub report: TateReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TateOutput {
    pub prime: u64,
    pub precision: u32,
    pub window: usize,
    pub seed: u64,
    pub cases: Vec<TateCase>,
    pub isometric: usize,
}

/// Integral coefficients `p^v u` with a nonzero leading term.
fn random_polynomial(rng: &mut ChaCha8Rng, degree: usize, ctx: &Context) -> Vec<PadicScalar> {
    let r = &ctx.ring;
    let d = rng.gen_range(0..=degree);
    (0..=d)
        .map(|k| {
            let mut u = rng.gen_range(-1_000_000i64..=1_000_000);
            if k == d && u == 0 {
                u = 1;
            }
            r.from_integer(u).shift(rng.gen_range(0..3))
        })
        .collect()
}

pub fn run(ctx: &Context, args: &TateArgs) -> Result<Report> {
    let polys = match (&args.coeffs, args.random) {
        (Some(c), None) => vec![parse_scalars(c, &ctx.ring)?],
        (None, Some(k)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);
            (0..k).map(|_| random_polynomial(&mut rng, args.degree, ctx)).collect()
        }
        _ => return Err(usage("tate-check needs exactly one of --coeffs and --random")),
    };
    let m = ctx.cfg.window_size;
    let cases = polys
        .iter()
        .map(|f| Ok(TateCase { coefficients: f.iter().map(scalar_to_json).collect(), report: tate_check(f, m, &ctx.ring)? }))
        .collect::<Result<Vec<_>>>()?;
    let isometric = cases.iter().filter(|c| c.report.isometric).count();
    let out = TateOutput {
        prime: ctx.ring.prime(),
        precision: ctx.ring.precision(),
        window: m,
        seed: ctx.cfg.seed,
        isometric,
        cases,
    };
    let p = out.prime;
    let mut text = String::from("deg  |f|_Gauss      ||f(tau)||     isometric\n");
    for c in &out.cases {
        let r = &c.report;
        let _ = writeln!(text, "{:>3}  {:<14} {:<14} {}", r.degree, r.gauss_norm.display(p), r.operator_norm.display(p), pass(r.isometric));
    }
    let _ = writeln!(text, "{} of {} isometric", isometric, out.cases.len());
    let passed = isometric == out.cases.len();
    Report::new(&out, text, passed)
}
