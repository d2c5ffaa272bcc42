//! Grid evaluation. Points are independent; results come back in grid order.

use otto_core::cycle::{
    idle_decomposition, linear_identities, local_ledger, run_cycle, work_entropy_form, Convention,
    CycleReport, EnergyFrame, Mode,
};

use crate::config::{Outputs, Param, PointSpec, SweepConfig};
use crate::Error;

/// Largest tolerated `|Q_h + Q_c − W|` in an emitted row.
pub const FIRST_LAW_TOL: f64 = 1e-12;
const ENTROPY_FORM_TOL: f64 = 1e-10;
const LINEAR_TOL: f64 = 1e-12;

/// False for NaN.
fn within(x: f64, tol: f64) -> bool {
    x <= tol
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub spec: PointSpec,
    /// `None` for a single run.
    pub swept: Option<(Param, f64)>,
    pub report: CycleReport,
    pub q_idle: f64,
    pub q_work_hot: f64,
    pub w_local_total: f64,
    pub gap: f64,
}

impl SweepRow {
    /// Swept value; NaN for a single run.
    pub fn value(&self) -> f64 {
        self.swept.map_or(f64::NAN, |(_, v)| v)
    }

    pub fn mode(&self) -> Option<Mode> {
        self.report.mode
    }
}

pub fn evaluate_point(
    spec: &PointSpec,
    swept: Option<(Param, f64)>,
    convention: Convention,
    outputs: Outputs,
) -> Result<SweepRow, Error> {
    let (param, value) = swept.map_or((None, f64::NAN), |(p, v)| (Some(p), v));
    let model = spec.model()?;
    let cycle = &spec.cycle;
    let report = run_cycle(&model, cycle)?;
    let residual = report.first_law_residual();
    if !within(residual, FIRST_LAW_TOL) {
        return Err(Error::FirstLaw {
            param,
            value,
            residual,
        });
    }
    let ledger = local_ledger(&model, cycle, convention)?;
    let fail = |check, detail: String| Error::Check {
        check,
        param,
        value,
        detail,
    };

    if outputs.idle {
        let d = idle_decomposition(&model, cycle, EnergyFrame::Natural)?;
        let r = (d.q_idle + d.q_work_hot - report.q_hot).abs();
        if !within(r, FIRST_LAW_TOL * report.q_hot.abs().max(1.0)) {
            return Err(fail("idle", format!("Q_h split residual {r:e}")));
        }
    }
    if outputs.ledger {
        let r = (ledger
            .entries
            .iter()
            .map(|e| e.q_hot + e.q_cold)
            .sum::<f64>()
            - ledger.total_work)
            .abs();
        if !within(r, FIRST_LAW_TOL * ledger.total_work.abs().max(1.0)) {
            return Err(fail("ledger", format!("local first law residual {r:e}")));
        }
    }
    if outputs.entropy && cycle.positive_temperatures() {
        let w = work_entropy_form(&model, cycle)?;
        let r = (w - report.work).abs();
        if !within(r, ENTROPY_FORM_TOL) {
            return Err(fail("entropy", format!("|W − W_S| = {r:e}")));
        }
    }
    if outputs.linear {
        let l = linear_identities(&model, cycle)?;
        let worst = [l.residual_q_hot, l.residual_q_cold, l.residual_work]
            .into_iter()
            .chain(l.residual_eta)
            .chain(l.residual_cop)
            .fold(0.0, f64::max);
        if !within(worst, LINEAR_TOL) {
            return Err(fail("linear", format!("residual {worst:e}")));
        }
    }

    Ok(SweepRow {
        spec: *spec,
        swept,
        q_idle: report.q_idle_hot,
        q_work_hot: report.q_work_hot,
        w_local_total: ledger.total_work,
        gap: ledger.gap,
        report,
    })
}

fn thread_cap() -> Option<usize> {
    std::env::var("OTTO_FORGE_THREADS")
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
}

pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>, Error> {
    config.validate()?;
    let grid = config.grid();
    let eval = |&value: &f64| {
        let spec = config.base.with(config.param, value);
        evaluate_point(
            &spec,
            Some((config.param, value)),
            config.convention,
            config.outputs,
        )
    };
    if !config.parallel {
        return grid.iter().map(eval).collect();
    }
    use rayon::prelude::*;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap() {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| grid.par_iter().map(eval).collect())
}
