use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use padic_opalg::json::scalar_from_json;
use padic_opalg::ktheory::Graph;
use padic_opalg::{OperatorMatrix, PadicScalar, Window, Zp};
use serde::de::DeserializeOwned;

use crate::error::{usage, CliError, Result};

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_path_buf(), source })
}

/// Integer, `n/d`, or a scalar JSON object such as `{"v":1,"u":3}`.
pub fn parse_scalar(s: &str, ring: &Zp) -> Result<PadicScalar> {
    let s = s.trim();
    if s.starts_with('{') || s == "null" {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| usage(format!("bad scalar {:?}: {}", s, e)))?;
        return Ok(scalar_from_json(&v, ring)?);
    }
    if let Some((n, d)) = s.split_once('/') {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| usage(format!("bad fraction {:?}", s)));
        return Ok(ring.from_ratio(parse(n)?, parse(d)?)?);
    }
    let n = BigInt::from_str(s).map_err(|_| usage(format!("bad scalar {:?}", s)))?;
    Ok(ring.from_bigint(&n))
}

/// Comma-separated scalars; an empty string gives an empty list.
pub fn parse_scalars(s: &str, ring: &Zp) -> Result<Vec<PadicScalar>> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| parse_scalar(t, ring)).collect()
}

/// Inclusive range `a..b`, or a single integer.
pub fn parse_range(s: &str) -> Result<Vec<i64>> {
    let bad = || usage(format!("bad range {:?}; expected a..b", s));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![s.trim().parse().map_err(|_| bad())?]),
    }
}

/// Built-in inputs for the worked examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// `[[1, 1], [1, 1]]` over `Z_2`.
    AllOnes2x2,
    /// `[[α, 1], [-1, α]]` with `α² = -1` in `Z_5`.
    ZeroDivisorP5,
    /// `τ = s + s*` on `{0, ..., M-1}`.
    TateTau,
    CuntzN2,
    RotationZ2P5,
    /// Rose graph with `n` loops at one vertex.
    Rose(usize),
}

impl Preset {
    pub fn parse(name: &str) -> Result<Self> {
        let preset = match name {
            "allones2x2" => Preset::AllOnes2x2,
            "zerodivisor-p5" => Preset::ZeroDivisorP5,
            "tate-tau" => Preset::TateTau,
            "cuntz-n2" => Preset::CuntzN2,
            "rotation-z2-p5" => Preset::RotationZ2P5,
            _ => {
                let n = name.strip_prefix("e_").or_else(|| name.strip_prefix('e'));
                match n.and_then(|n| n.parse().ok()) {
                    Some(n) => Preset::Rose(n),
                    None => return Err(usage(format!("unknown preset {:?}", name))),
                }
            }
        };
        Ok(preset)
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            Preset::AllOnes2x2 => Some(2),
            Preset::ZeroDivisorP5 | Preset::RotationZ2P5 => Some(5),
            _ => None,
        }
    }

    pub fn window(&self) -> Option<usize> {
        match self {
            Preset::CuntzN2 => Some(81),
            _ => None,
        }
    }

    pub fn operator(&self, ring: &Zp, window_size: usize, margin: Option<usize>) -> Result<OperatorMatrix> {
        match self {
            Preset::AllOnes2x2 => {
                let w = Window::range(0, 2, margin.unwrap_or(0))?;
                Ok(OperatorMatrix::from_integer_rows(&w, ring, &[vec![1, 1], vec![1, 1]])?)
            }
            Preset::ZeroDivisorP5 => {
                let w = Window::range(0, 2, margin.unwrap_or(0))?;
                let alpha = ring.from_integer(-1).hensel_sqrt()?;
                let (one, minus_one) = (ring.one(), ring.from_integer(-1));
                let entries = vec![vec![Some(alpha.clone()), Some(one)], vec![Some(minus_one), Some(alpha)]];
                Ok(OperatorMatrix::from_dense(&w, ring, entries)?)
            }
            Preset::TateTau => {
                let tau = padic_opalg::tate::tau(window_size, ring)?;
                with_margin(&tau, margin.unwrap_or(1))
            }
            other => Err(usage(format!("preset {:?} is not an operator", other))),
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        match self {
            Preset::Rose(n) => Ok(Graph::rose(*n)),
            other => Err(usage(format!("preset {:?} is not a graph", other))),
        }
    }
}

/// The same matrix on its window with a different interior margin.
pub fn with_margin(t: &OperatorMatrix, margin: usize) -> Result<OperatorMatrix> {
    if t.window().margin() == margin {
        return Ok(t.clone());
    }
    let w = t.window().with_margin(margin)?;
    let triplets: Vec<_> = t.nonzeros().map(|(i, j, x)| (i, j, x.clone())).collect();
    Ok(OperatorMatrix::from_triplets(&w, t.ring(), triplets)?)
}
