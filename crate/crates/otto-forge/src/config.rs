//! Sweep configuration: JSON file values overlaid by command-line flags.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::Args;
use otto_core::cycle::{Convention, Cycle};
use otto_core::{Coupling, Family, SpinModel};
use serde::Deserialize;

use crate::Error;

/// Every setting shared by the file format and the flags. Keys are the flag
/// names without the leading dashes.
#[derive(Debug, Clone, Default, PartialEq, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Params {
    /// ising, ising-ksea or heisenberg
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub j: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub jz: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gz: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub h_hot: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub h_cold: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_hot: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_cold: Option<f64>,
    /// Swept parameter: j, jz, gz, h-hot, h-cold, t-hot or t-cold
    #[arg(long)]
    pub sweep: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub from: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub to: Option<f64>,
    /// Number of grid points, endpoints included
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Local accounting convention, case1..case4
    #[arg(long)]
    pub convention: Option<String>,
    #[arg(long)]
    #[serde(default)]
    pub allow_negative_temp: bool,
    #[arg(long)]
    #[serde(default)]
    pub parallel: bool,
    /// Extra per-row checks: idle, ledger, entropy, linear (comma separated)
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub outputs: Vec<String>,
}

impl Params {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("config file: {e}")))
    }

    /// Values set in `self` win; unset ones fall back to `file`.
    pub fn overlay(self, file: Params) -> Params {
        Params {
            model: self.model.or(file.model),
            n: self.n.or(file.n),
            j: self.j.or(file.j),
            jz: self.jz.or(file.jz),
            gz: self.gz.or(file.gz),
            h_hot: self.h_hot.or(file.h_hot),
            h_cold: self.h_cold.or(file.h_cold),
            t_hot: self.t_hot.or(file.t_hot),
            t_cold: self.t_cold.or(file.t_cold),
            sweep: self.sweep.or(file.sweep),
            from: self.from.or(file.from),
            to: self.to.or(file.to),
            steps: self.steps.or(file.steps),
            out: self.out.or(file.out),
            convention: self.convention.or(file.convention),
            allow_negative_temp: self.allow_negative_temp || file.allow_negative_temp,
            parallel: self.parallel || file.parallel,
            outputs: if self.outputs.is_empty() {
                file.outputs
            } else {
                self.outputs
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    J,
    Jz,
    Gz,
    HHot,
    HCold,
    THot,
    TCold,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::J => "j",
            Param::Jz => "jz",
            Param::Gz => "gz",
            Param::HHot => "h-hot",
            Param::HCold => "h-cold",
            Param::THot => "t-hot",
            Param::TCold => "t-cold",
        }
    }

    pub fn applies_to(self, family: Family) -> bool {
        match self {
            Param::J => family != Family::IsingKsea,
            Param::Jz | Param::Gz => family == Family::IsingKsea,
            _ => true,
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "j" => Ok(Param::J),
            "jz" => Ok(Param::Jz),
            "gz" => Ok(Param::Gz),
            "h-hot" => Ok(Param::HHot),
            "h-cold" => Ok(Param::HCold),
            "t-hot" => Ok(Param::THot),
            "t-cold" => Ok(Param::TCold),
            other => Err(Error::Config(format!("unknown sweep parameter `{other}`"))),
        }
    }
}

pub fn parse_family(name: &str) -> Result<Family, Error> {
    [Family::IsingChain, Family::IsingKsea, Family::HeisenbergXxx]
        .into_iter()
        .find(|f| f.cli_name() == name)
        .ok_or_else(|| {
            Error::Config(format!(
                "unknown model `{name}` (expected ising, ising-ksea or heisenberg)"
            ))
        })
}

/// One fully specified cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointSpec {
    pub family: Family,
    pub n: usize,
    pub j: f64,
    pub jz: f64,
    pub gz: f64,
    pub cycle: Cycle,
}

impl PointSpec {
    pub fn model(&self) -> Result<SpinModel, Error> {
        let coupling = match self.family {
            Family::IsingKsea => Coupling::Ksea {
                jz: self.jz,
                gz: self.gz,
            },
            _ => Coupling::Exchange(self.j),
        };
        Ok(SpinModel::new(self.family, self.n, coupling)?)
    }

    pub fn with(mut self, param: Param, value: f64) -> Self {
        match param {
            Param::J => self.j = value,
            Param::Jz => self.jz = value,
            Param::Gz => self.gz = value,
            Param::HHot => self.cycle.h_hot = value,
            Param::HCold => self.cycle.h_cold = value,
            Param::THot => self.cycle.t_hot = value,
            Param::TCold => self.cycle.t_cold = value,
        }
        self
    }

    /// Resolves model and bath settings. Defaults: `n = 2`, zero couplings,
    /// engine baths.
    pub fn from_params(p: &Params) -> Result<Self, Error> {
        let family = parse_family(
            p.model
                .as_deref()
                .ok_or_else(|| Error::Config("--model is required".into()))?,
        )?;
        let default = Cycle::ENGINE;
        let mut cycle = Cycle::new(
            p.h_hot.unwrap_or(default.h_hot),
            p.h_cold.unwrap_or(default.h_cold),
            p.t_hot.unwrap_or(default.t_hot),
            p.t_cold.unwrap_or(default.t_cold),
        );
        cycle.allow_negative_temperature = p.allow_negative_temp;
        let spec = PointSpec {
            family,
            n: p.n.unwrap_or(2),
            j: p.j.unwrap_or(0.0),
            jz: p.jz.unwrap_or(0.0),
            gz: p.gz.unwrap_or(0.0),
            cycle,
        };
        spec.model()?;
        Ok(spec)
    }
}

/// Per-row checks beyond the always-computed cycle report and ledger.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Outputs {
    pub idle: bool,
    pub ledger: bool,
    pub entropy: bool,
    pub linear: bool,
}

impl Outputs {
    pub fn parse(items: &[String]) -> Result<Self, Error> {
        let mut out = Outputs::default();
        for item in items {
            match item.trim().to_ascii_lowercase().as_str() {
                "cycle" | "" => {}
                "idle" => out.idle = true,
                "ledger" => out.ledger = true,
                "entropy" | "entropy-form" => out.entropy = true,
                "linear" | "linear-identities" => out.linear = true,
                other => return Err(Error::Config(format!("unknown output `{other}`"))),
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub base: PointSpec,
    pub param: Param,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub convention: Convention,
    pub outputs: Outputs,
    pub parallel: bool,
}

impl SweepConfig {
    pub fn new(base: PointSpec, param: Param, from: f64, to: f64, steps: usize) -> Self {
        Self {
            base,
            param,
            from,
            to,
            steps,
            convention: Convention::Case4,
            outputs: Outputs::default(),
            parallel: false,
        }
    }

    pub fn from_params(p: &Params) -> Result<Self, Error> {
        let base = PointSpec::from_params(p)?;
        let param: Param = p
            .sweep
            .as_deref()
            .ok_or_else(|| Error::Config("--sweep is required".into()))?
            .parse()?;
        let need = |v: Option<f64>, flag: &str| {
            v.ok_or_else(|| Error::Config(format!("--{flag} is required")))
        };
        let convention = match p.convention.as_deref() {
            Some(c) => c.parse().map_err(Error::Config)?,
            None => Convention::Case4,
        };
        let config = SweepConfig {
            base,
            param,
            from: need(p.from, "from")?,
            to: need(p.to, "to")?,
            steps: p
                .steps
                .ok_or_else(|| Error::Config("--steps is required".into()))?,
            convention,
            outputs: Outputs::parse(&p.outputs)?,
            parallel: p.parallel,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.steps < 2 {
            return Err(Error::Config(format!(
                "steps must be at least 2, got {}",
                self.steps
            )));
        }
        if !(self.from.is_finite() && self.to.is_finite() && self.from < self.to) {
            return Err(Error::Config(format!(
                "sweep range needs from < to, got [{}, {}]",
                self.from, self.to
            )));
        }
        if !self.param.applies_to(self.base.family) {
            return Err(Error::Config(format!(
                "model {} has no parameter `{}`",
                self.base.family.cli_name(),
                self.param
            )));
        }
        if self.outputs.linear
            && self.base.family == Family::IsingKsea
            && (self.base.gz != 0.0 || self.param == Param::Gz)
        {
            return Err(Error::Config(
                "linear identities need a spectrum linear in h (Γ_z = 0 for ising-ksea)".into(),
            ));
        }
        Ok(())
    }

    /// Grid values, ascending, with both endpoints exact.
    pub fn grid(&self) -> Vec<f64> {
        let span = self.to - self.from;
        let last = self.steps - 1;
        (0..self.steps)
            .map(|k| {
                if k == last {
                    self.to
                } else {
                    self.from + span * k as f64 / last as f64
                }
            })
            .collect()
    }
}
