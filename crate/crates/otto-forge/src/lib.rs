//! Parameter sweeps, single runs and figure presets over `otto-core`.

pub mod config;
pub mod figures;
pub mod selftest;
pub mod sweep;
pub mod table;

pub use config::{Outputs, Param, Params, PointSpec, SweepConfig};
pub use sweep::{evaluate_point, run_sweep, SweepRow};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] otto_core::Error),
    #[error("first law violated at {} = {value}: residual {residual:e}", describe(*param))]
    FirstLaw {
        param: Option<Param>,
        value: f64,
        residual: f64,
    },
    #[error("{check} check failed at {} = {value}: {detail}", describe(*param))]
    Check {
        check: &'static str,
        param: Option<Param>,
        value: f64,
        detail: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn describe(param: Option<Param>) -> &'static str {
    param.map_or("single run", Param::name)
}
