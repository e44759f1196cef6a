//! One module per subcommand group.

pub mod algebra;
pub mod ktheory;
pub mod mahler;
pub mod operator;
pub mod scalar;
pub mod tate;

use std::path::PathBuf;

use padic_opalg::{OperatorMatrix, Zp};

use crate::args::{Cli, Command};
use crate::config::RunConfig;
use crate::error::{usage, Result};
use crate::input::{load_json, with_margin, Preset};
use crate::output::Report;

/// Settings and inputs shared by all commands.
pub struct Context {
    pub cfg: RunConfig,
    pub ring: Zp,
    pub preset: Option<Preset>,
    pub files: Vec<PathBuf>,
}

impl Context {
    fn new(cli: &Cli) -> Result<Self> {
        let preset = cli.global.preset.as_deref().map(Preset::parse).transpose()?;
        let cfg = RunConfig::resolve(&cli.global, preset.and_then(|p| p.prime()), preset.and_then(|p| p.window()))?;
        let ring = cfg.ring()?;
        Ok(Context { cfg, ring, preset, files: cli.global.file.clone() })
    }

    /// Operands from `--file` (in order), then `--preset`.
    pub fn operators(&self) -> Result<Vec<OperatorMatrix>> {
        let mut out = Vec::new();
        for path in &self.files {
            let json: padic_opalg::json::MatrixJson = load_json(path)?;
            let t = json.to_matrix()?;
            out.push(match self.cfg.interior_margin {
                Some(m) => with_margin(&t, m)?,
                None => t,
            });
        }
        if let Some(p) = self.preset {
            out.push(p.operator(&self.ring, self.cfg.window_size, self.cfg.interior_margin)?);
        }
        if out.is_empty() {
            return Err(usage("this command needs an operator: pass --file or --preset"));
        }
        Ok(out)
    }

    pub fn single_file(&self) -> Result<&PathBuf> {
        match self.files.as_slice() {
            [one] => Ok(one),
            [] => Err(usage("this command needs --file")),
            _ => Err(usage("this command takes a single --file")),
        }
    }
}

pub fn dispatch(cli: &Cli) -> Result<Report> {
    let ctx = Context::new(cli)?;
    match &cli.command {
        Command::Scalar(cmd) => scalar::run(&ctx, cmd),
        Command::Operator(cmd) => operator::run(&ctx, cmd),
        Command::Mahler(cmd) => mahler::run(&ctx, cmd),
        Command::Algebra(cmd) => algebra::run(&ctx, cmd),
        Command::TateCheck(args) => tate::run(&ctx, args),
        Command::Ktheory(cmd) => ktheory::run(&ctx, cmd),
    }
}
