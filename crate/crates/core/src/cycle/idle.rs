//! Idle/working split of the heats and the KSEA idle-heat threshold.

use super::{run_cycle, Cycle, Populations};
use crate::error::{Error, Result};
use crate::model::{Family, SpinModel};
use crate::roots::{bisect, first_bracket};

/// Energy origin used for the split. Heats and work do not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyFrame {
    /// Energies as produced by the Hamiltonian.
    Natural,
    /// Uniform shift that zeroes the multiplicity-weighted mean working-level
    /// energy at the hot field. For the KSEA dimer the working levels become
    /// `∓2√(h²+Γ_z²)` and `q_I = −4J_z(p₂ − p'₂)`.
    WorkingCentered,
}

/// `Q_h = q_I + q_Wh`, `Q_c = −q_I − q_Wc`, `W = q_Wh − q_Wc`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdleDecomposition {
    pub q_idle: f64,
    pub q_work_hot: f64,
    pub q_work_cold: f64,
}

pub fn idle_decomposition(
    model: &SpinModel,
    cycle: &Cycle,
    frame: EnergyFrame,
) -> Result<IdleDecomposition> {
    let pops = Populations::new(model, cycle)?;
    let shift = match frame {
        EnergyFrame::Natural => 0.0,
        EnergyFrame::WorkingCentered => {
            let (mut sum, mut count) = (0.0, 0.0);
            for l in pops.hot.levels.iter().filter(|l| !l.idle) {
                sum += l.multiplicity as f64 * l.energy;
                count += l.multiplicity as f64;
            }
            if count > 0.0 {
                sum / count
            } else {
                0.0
            }
        }
    };
    let mut out = IdleDecomposition {
        q_idle: 0.0,
        q_work_hot: 0.0,
        q_work_cold: 0.0,
    };
    for (level, (m, e, e_cold, d)) in pops.hot.levels.iter().zip(pops.delta_rows()) {
        if level.idle {
            out.q_idle += m * (e - shift) * d;
        } else {
            out.q_work_hot += m * (e - shift) * d;
            out.q_work_cold += m * (e_cold - shift) * d;
        }
    }
    Ok(out)
}

/// Bounds on `q_I` (working-centred frame) for a KSEA engine:
/// `−q_Wh(η_C − η_Γ)/η_C < q_I < −q_Wh(η_o − η_Γ)/η_o`.
///
/// The upper bound is where `η` reaches `η_o`, the lower where it reaches
/// Carnot. Reported as a diagnostic only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdleWindow {
    pub q_idle: f64,
    pub lower: f64,
    pub upper: f64,
}

impl IdleWindow {
    pub fn contains(&self) -> bool {
        self.lower < self.q_idle && self.q_idle < self.upper
    }
}

pub fn idle_window(model: &SpinModel, cycle: &Cycle) -> Result<IdleWindow> {
    if model.family() != Family::IsingKsea {
        return Err(Error::NotKsea);
    }
    let report = run_cycle(model, cycle)?;
    let eta_c = cycle
        .eta_carnot()
        .ok_or(Error::RequiresPositiveTemperature)?;
    let eta_o = cycle.eta_otto();
    let eta_g = report.eta_gamma.unwrap_or(eta_o);
    let d = idle_decomposition(model, cycle, EnergyFrame::WorkingCentered)?;
    Ok(IdleWindow {
        q_idle: d.q_idle,
        lower: -d.q_work_hot * (eta_c - eta_g) / eta_c,
        upper: -d.q_work_hot * (eta_o - eta_g) / eta_o,
    })
}

fn idle_population_gap(gz: f64, cycle: &Cycle, jz: f64) -> f64 {
    let model = SpinModel::ising_ksea(jz, gz).expect("finite couplings");
    let pops = Populations::new(&model, cycle).expect("validated cycle");
    pops.p[0] - pops.q[0]
}

/// `J_z` where the KSEA idle heat changes sign, searched on `[0, 50]`.
///
/// `q_I = −2J_z(p₂ − p'₂)` also vanishes trivially at `J_z = 0`, so the scan
/// and bisection run on the population gap `p₂ − p'₂` instead. Grid step is
/// `1e−2`, bisection width `1e−9`.
pub fn jz_star(gz: f64, cycle: &Cycle) -> Result<f64> {
    cycle.validate()?;
    let (lo, hi) = (0.0, 50.0);
    let f = |jz| idle_population_gap(gz, cycle, jz);
    let (a, b) = first_bracket(f, lo, hi, 1e-2).ok_or(Error::NoThreshold { lo, hi })?;
    Ok(bisect(f, a, b, 1e-9))
}

fn ln_cosh(x: f64) -> f64 {
    let x = x.abs();
    x + (-2.0 * x).exp().ln_1p() - std::f64::consts::LN_2
}

/// Closed-form threshold `ln[cosh(2β_c s_c)/cosh(2β_h s_h)] / (2(β_c − β_h))`,
/// with `s = √(h² + Γ_z²)` at each field.
pub fn jz_star_closed_form(gz: f64, cycle: &Cycle) -> Result<f64> {
    cycle.validate()?;
    let (bh, bc) = (cycle.beta_hot(), cycle.beta_cold());
    if bh == bc {
        return Err(Error::NoThreshold {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        });
    }
    let (sh, sc) = (cycle.h_hot.hypot(gz), cycle.h_cold.hypot(gz));
    Ok((ln_cosh(2.0 * bc * sc) - ln_cosh(2.0 * bh * sh)) / (2.0 * (bc - bh)))
}
