//! The four-stroke quantum Otto cycle.
//!
//! Stage 1 thermalises the substance at field `h` with the hot bath, stage 2
//! lowers the field to `h'` adiabatically, stage 3 thermalises with the cold
//! bath and stage 4 restores `h`. Populations are paired by level label, so
//! with `p` the hot and `p'` the cold populations
//!
//! ```text
//! Q_h = Σ m_i E_i (p_i − p'_i)      Q_c = Σ m_i E'_i (p'_i − p_i)      W = Q_h + Q_c
//! ```

mod cop;
mod entropy_form;
mod idle;
mod linear;
mod local;

use std::fmt;

pub use cop::{cop_report, ksea_closed_form, ksea_cop_closed_form, CopReport, KseaClosedForm};
pub use entropy_form::{local_work_entropy_form, work_entropy_form};
pub use idle::{
    idle_decomposition, idle_window, jz_star, jz_star_closed_form, EnergyFrame, IdleDecomposition,
    IdleWindow,
};
pub use linear::{linear_identities, LinearIdentities};
pub use local::{
    effective_temperatures, local_ledger, stage_works, Convention, EffectiveTemperature,
    LocalLedger, SiteEntry, SiteTemperatures, StageWorks,
};

use crate::error::{ensure_finite, Error, Result};
use crate::model::{Family, SpinModel};
use crate::spectrum::{analytic_spectrum, Spectrum};
use crate::thermo::{thermal_density_matrix, ThermalState};

/// Quantities with magnitude at or below this are treated as zero by [`classify_mode`].
pub const ZERO_TOL: f64 = 1e-12;

/// Field and bath settings of one cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cycle {
    pub h_hot: f64,
    pub h_cold: f64,
    pub t_hot: f64,
    pub t_cold: f64,
    pub allow_negative_temperature: bool,
}

impl Cycle {
    /// Engine baths: `h = 4`, `h' = 3`, `T_h = 4`, `T_c = 1`.
    pub const ENGINE: Cycle = Cycle::new(4.0, 3.0, 4.0, 1.0);
    /// Refrigerator baths: `h = 5`, `h' = 2`, `T_h = 2`, `T_c = 1`.
    pub const FRIDGE: Cycle = Cycle::new(5.0, 2.0, 2.0, 1.0);

    pub const fn new(h_hot: f64, h_cold: f64, t_hot: f64, t_cold: f64) -> Self {
        Self {
            h_hot,
            h_cold,
            t_hot,
            t_cold,
            allow_negative_temperature: false,
        }
    }

    pub const fn allowing_negative_temperature(mut self) -> Self {
        self.allow_negative_temperature = true;
        self
    }

    pub fn beta_hot(&self) -> f64 {
        1.0 / self.t_hot
    }

    pub fn beta_cold(&self) -> f64 {
        1.0 / self.t_cold
    }

    pub fn positive_temperatures(&self) -> bool {
        self.t_hot > 0.0 && self.t_cold > 0.0
    }

    /// Checks finiteness and temperatures but not the field ordering.
    pub fn validate_temperatures(&self) -> Result<()> {
        ensure_finite("h_hot", self.h_hot)?;
        ensure_finite("h_cold", self.h_cold)?;
        for (name, t) in [("t_hot", self.t_hot), ("t_cold", self.t_cold)] {
            ensure_finite(name, t)?;
            if t == 0.0 {
                return Err(Error::ZeroTemperature);
            }
            if t < 0.0 && !self.allow_negative_temperature {
                return Err(Error::NegativeTemperature(t));
            }
        }
        Ok(())
    }

    /// Full precondition: temperatures as above and `h_hot > h_cold > 0`.
    pub fn validate(&self) -> Result<()> {
        self.validate_temperatures()?;
        if !(self.h_hot > self.h_cold && self.h_cold > 0.0) {
            return Err(Error::FieldOrdering {
                h_hot: self.h_hot,
                h_cold: self.h_cold,
            });
        }
        Ok(())
    }

    pub fn eta_otto(&self) -> f64 {
        1.0 - self.h_cold / self.h_hot
    }

    pub fn cop_otto(&self) -> f64 {
        self.h_cold / (self.h_hot - self.h_cold)
    }

    /// `1 − T_c/T_h`, defined for positive temperatures with `T_h > T_c`.
    pub fn eta_carnot(&self) -> Option<f64> {
        (self.positive_temperatures() && self.t_hot > self.t_cold)
            .then(|| 1.0 - self.t_cold / self.t_hot)
    }

    /// `T_c/(T_h − T_c)`, defined for positive temperatures with `T_h > T_c`.
    pub fn cop_carnot(&self) -> Option<f64> {
        (self.positive_temperatures() && self.t_hot > self.t_cold)
            .then(|| self.t_cold / (self.t_hot - self.t_cold))
    }
}

/// Operating regime from the signs of the heats and work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Engine,
    Refrigerator,
    /// Both baths receive heat; work is consumed.
    Heater,
    /// Heat flows hot to cold with work consumed, or any other pattern.
    Accelerator,
    /// At least one of `Q_h`, `Q_c`, `W` is zero within [`ZERO_TOL`].
    Idle,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Engine => "Engine",
            Mode::Refrigerator => "Refrigerator",
            Mode::Heater => "Heater",
            Mode::Accelerator => "Accelerator",
            Mode::Idle => "Idle cycle",
        })
    }
}

pub fn classify_mode(q_hot: f64, q_cold: f64, work: f64) -> Mode {
    if [q_hot, q_cold, work].iter().any(|x| x.abs() <= ZERO_TOL) {
        return Mode::Idle;
    }
    match (q_hot > 0.0, q_cold > 0.0, work > 0.0) {
        (true, false, true) => Mode::Engine,
        (false, true, false) => Mode::Refrigerator,
        (false, false, _) => Mode::Heater,
        _ => Mode::Accelerator,
    }
}

/// One bath contact: field, temperature and the resulting Gibbs state.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclePoint {
    pub h: f64,
    pub t: f64,
    pub state: ThermalState,
}

/// Thermal states at the end of stage 1 (hot) and stage 3 (cold).
pub fn cycle_points(model: &SpinModel, cycle: &Cycle) -> Result<(CyclePoint, CyclePoint)> {
    cycle.validate_temperatures()?;
    let hot = thermal_density_matrix(model, cycle.h_hot, cycle.beta_hot())?;
    let cold = thermal_density_matrix(model, cycle.h_cold, cycle.beta_cold())?;
    Ok((
        CyclePoint {
            h: cycle.h_hot,
            t: cycle.t_hot,
            state: hot,
        },
        CyclePoint {
            h: cycle.h_cold,
            t: cycle.t_cold,
            state: cold,
        },
    ))
}

/// Spectra and populations at both bath contacts, paired by label.
#[derive(Debug, Clone)]
pub(crate) struct Populations {
    pub hot: Spectrum,
    pub cold: Spectrum,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
}

impl Populations {
    pub fn new(model: &SpinModel, cycle: &Cycle) -> Result<Self> {
        cycle.validate_temperatures()?;
        let hot = analytic_spectrum(model, cycle.h_hot)?;
        let cold = analytic_spectrum(model, cycle.h_cold)?;
        let p = crate::thermo::gibbs_populations(&hot, cycle.beta_hot())?;
        let q = crate::thermo::gibbs_populations(&cold, cycle.beta_cold())?;
        Ok(Self { hot, cold, p, q })
    }

    /// `(m_i, E_i, E'_i, p_i, p'_i)` per label.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64, f64, f64)> + '_ {
        self.hot
            .levels
            .iter()
            .zip(&self.cold.levels)
            .map(move |(a, b)| {
                (
                    a.multiplicity as f64,
                    a.energy,
                    b.energy,
                    self.p[a.label],
                    self.q[a.label],
                )
            })
    }

    /// Label with the largest `p + p'`.
    fn dominant(&self) -> usize {
        (0..self.p.len())
            .max_by(|&a, &b| (self.p[a] + self.q[a]).total_cmp(&(self.p[b] + self.q[b])))
            .unwrap_or(0)
    }

    /// `p_i − p'_i` per label. The dominant label's entry comes from
    /// normalisation, `Σ m_i (p_i − p'_i) = 0`, since subtracting two
    /// populations close to one would cancel catastrophically.
    pub fn differences(&self) -> Vec<f64> {
        let g = self.dominant();
        let mut d: Vec<f64> = self.p.iter().zip(&self.q).map(|(p, q)| p - q).collect();
        let rest: f64 = self
            .hot
            .levels
            .iter()
            .filter(|l| l.label != g)
            .map(|l| l.multiplicity as f64 * d[l.label])
            .sum();
        d[g] = -rest / self.hot.levels[g].multiplicity as f64;
        d
    }

    /// `(m_i, E_i, E'_i, p_i − p'_i)` per label.
    pub fn delta_rows(&self) -> impl Iterator<Item = (f64, f64, f64, f64)> + '_ {
        let d = self.differences();
        self.hot
            .levels
            .iter()
            .zip(&self.cold.levels)
            .map(move |(a, b)| (a.multiplicity as f64, a.energy, b.energy, d[a.label]))
    }

    /// Heats measured from the dominant label, which keeps the sums well
    /// conditioned when energies are large.
    pub fn heats(&self) -> (f64, f64) {
        let g = self.dominant();
        let (eg, eg_cold) = (self.hot.levels[g].energy, self.cold.levels[g].energy);
        let mut q_hot = 0.0;
        let mut q_cold = 0.0;
        for (k, (m, e, e_cold, d)) in self.delta_rows().enumerate() {
            if k == g {
                continue;
            }
            q_hot += m * (e - eg) * d;
            q_cold -= m * (e_cold - eg_cold) * d;
        }
        (q_hot, q_cold)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleReport {
    pub q_hot: f64,
    pub q_cold: f64,
    /// Always exactly `q_hot + q_cold`.
    pub work: f64,
    /// Present only in engine mode.
    pub eta: Option<f64>,
    /// Present only in refrigerator mode.
    pub cop: Option<f64>,
    /// `None` when either bath temperature is negative.
    pub mode: Option<Mode>,
    /// Idle-level share of `Q_h`, unshifted energies.
    pub q_idle_hot: f64,
    pub q_work_hot: f64,
    pub q_work_cold: f64,
    /// Stage-2 work; `−W₁ = Σ m p (E − E')`.
    pub w1: f64,
    /// Stage-4 work; `−W₂ = −Σ m p' (E − E')`.
    pub w2: f64,
    /// `1 − √(h'²+Γ_z²)/√(h²+Γ_z²)` for the KSEA dimer.
    pub eta_gamma: Option<f64>,
    pub eta_otto: f64,
    pub cop_otto: f64,
    pub eta_carnot: Option<f64>,
    pub cop_carnot: Option<f64>,
}

impl CycleReport {
    pub fn first_law_residual(&self) -> f64 {
        (self.q_hot + self.q_cold - self.work).abs()
    }
}

pub fn run_cycle(model: &SpinModel, cycle: &Cycle) -> Result<CycleReport> {
    cycle.validate()?;
    let pops = Populations::new(model, cycle)?;
    let (q_hot, q_cold) = pops.heats();
    let work = q_hot + q_cold;

    let mode = cycle
        .positive_temperatures()
        .then(|| classify_mode(q_hot, q_cold, work));
    let eta = (mode == Some(Mode::Engine)).then(|| work / q_hot);
    let cop = (mode == Some(Mode::Refrigerator)).then(|| q_cold / work.abs());

    let mut q_idle_hot = 0.0;
    let mut q_work_hot = 0.0;
    let mut q_work_cold = 0.0;
    let mut minus_w1 = 0.0;
    let mut minus_w2 = 0.0;
    for (level, (m, e, e_cold, d)) in pops.hot.levels.iter().zip(pops.delta_rows()) {
        if level.idle {
            q_idle_hot += m * e * d;
        } else {
            q_work_hot += m * e * d;
            q_work_cold += m * e_cold * d;
        }
    }
    for (m, e, e_cold, p, q) in pops.rows() {
        minus_w1 += m * p * (e - e_cold);
        minus_w2 -= m * q * (e - e_cold);
    }

    let eta_gamma = match model.family() {
        Family::IsingKsea => {
            let gz = model.gz().unwrap_or(0.0);
            Some(1.0 - cycle.h_cold.hypot(gz) / cycle.h_hot.hypot(gz))
        }
        _ => None,
    };

    Ok(CycleReport {
        q_hot,
        q_cold,
        work,
        eta,
        cop,
        mode,
        q_idle_hot,
        q_work_hot,
        q_work_cold,
        w1: -minus_w1,
        w2: -minus_w2,
        eta_gamma,
        eta_otto: cycle.eta_otto(),
        cop_otto: cycle.cop_otto(),
        eta_carnot: cycle.eta_carnot(),
        cop_carnot: cycle.cop_carnot(),
    })
}
