use clap::ValueEnum;
use padic_opalg::Zp;
use serde::{Deserialize, Serialize};

use crate::args::GlobalArgs;
use crate::error::{usage, Result};

pub const DEFAULT_PRIME: u64 = 2;
pub const DEFAULT_PRECISION: u32 = 32;
pub const DEFAULT_WINDOW: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// Resolved global settings of one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub prime: u64,
    pub precision: u32,
    pub window_size: usize,
    /// Explicit margin; commands fall back to the bandwidth of their operators.
    pub interior_margin: Option<usize>,
    pub output_format: Format,
    pub seed: u64,
}

impl RunConfig {
    /// `prime` and `window` fill in flags the user left unset.
    pub fn resolve(args: &GlobalArgs, prime: Option<u64>, window: Option<usize>) -> Result<Self> {
        let cfg = RunConfig {
            prime: args.p.or(prime).unwrap_or(DEFAULT_PRIME),
            precision: args.precision.unwrap_or(DEFAULT_PRECISION),
            window_size: args.window.or(window).unwrap_or(DEFAULT_WINDOW),
            interior_margin: args.margin,
            output_format: args.format,
            seed: args.seed,
        };
        if cfg.precision == 0 {
            return Err(usage("--precision must be at least 1"));
        }
        if let Some(m) = cfg.interior_margin {
            cfg.check_margin(m)?;
        }
        Ok(cfg)
    }

    pub fn ring(&self) -> Result<Zp> {
        Ok(Zp::new(self.prime, self.precision)?)
    }

    /// The explicit margin, or `bandwidth`.
    pub fn margin(&self, bandwidth: usize) -> Result<usize> {
        let m = self.interior_margin.unwrap_or(bandwidth);
        self.check_margin(m)?;
        Ok(m)
    }

    fn check_margin(&self, m: usize) -> Result<()> {
        if self.window_size < 2 * m + 1 {
            return Err(usage(format!("window {} is smaller than 2 * margin + 1 = {}", self.window_size, 2 * m + 1)));
        }
        Ok(())
    }
}
