//! Site-resolved accounting of the cycle.
//!
//! The local Hamiltonian of a site is `h σz` in the basis `{|1⟩, |0⟩}`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::{cycle_points, run_cycle, Cycle};
use crate::error::Result;
use crate::model::{site_share, SpinModel};
use crate::pauli::{pauli_string, Pauli};
use crate::thermo::{reduced_state, ReducedState, ThermalState};
use crate::CMatrix;

/// Which state and which Hamiltonian enter the local quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Global state, global Hamiltonian: the global quantities as one entry.
    Case1,
    /// Product of reduced states with each site's share of the global Hamiltonian.
    Case2,
    /// Global state with the embedded local Hamiltonian.
    Case3,
    /// Reduced state with the local Hamiltonian.
    Case4,
}

impl Convention {
    pub const ALL: [Convention; 4] = [
        Convention::Case1,
        Convention::Case2,
        Convention::Case3,
        Convention::Case4,
    ];
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Case1 => "case1",
            Convention::Case2 => "case2",
            Convention::Case3 => "case3",
            Convention::Case4 => "case4",
        })
    }
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "case1" => Ok(Convention::Case1),
            "case2" => Ok(Convention::Case2),
            "case3" => Ok(Convention::Case3),
            "case4" => Ok(Convention::Case4),
            other => Err(format!(
                "unknown convention `{other}` (expected case1..case4)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EffectiveTemperature {
    Finite(f64),
    /// Equal local populations.
    Infinite,
}

impl EffectiveTemperature {
    pub fn finite(self) -> Option<f64> {
        match self {
            EffectiveTemperature::Finite(t) => Some(t),
            EffectiveTemperature::Infinite => None,
        }
    }

    /// `2h / ln(p_down/p_up)`: the temperature at which `h σz` has these populations.
    pub fn of(reduced: &ReducedState, h: f64) -> Self {
        let ratio = (reduced.p_down() / reduced.p_up()).ln();
        if ratio == 0.0 || !ratio.is_finite() {
            EffectiveTemperature::Infinite
        } else {
            EffectiveTemperature::Finite(2.0 * h / ratio)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiteTemperatures {
    pub hot: EffectiveTemperature,
    pub cold: EffectiveTemperature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiteEntry {
    /// `None` for the whole-system entry of [`Convention::Case1`].
    pub site: Option<usize>,
    pub work: f64,
    pub q_hot: f64,
    pub q_cold: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalLedger {
    pub convention: Convention,
    pub entries: Vec<SiteEntry>,
    pub total_work: f64,
    /// Global work minus `total_work`.
    pub gap: f64,
    pub temperatures: Vec<SiteTemperatures>,
}

fn trace_product(a: &CMatrix, b: &CMatrix) -> f64 {
    (a * b).trace().re
}

fn reduced_all(state: &ThermalState) -> Result<Vec<ReducedState>> {
    (0..state.n_sites)
        .map(|s| reduced_state(state, s))
        .collect()
}

fn local_hamiltonian(h: f64) -> CMatrix {
    Pauli::Z.matrix() * Complex64::new(h, 0.0)
}

fn product_state(reduced: &[ReducedState]) -> CMatrix {
    reduced
        .iter()
        .fold(CMatrix::identity(1, 1), |acc, r| acc.kronecker(&r.rho))
}

fn entry(site: Option<usize>, q_hot: f64, q_cold: f64) -> SiteEntry {
    SiteEntry {
        site,
        work: q_hot + q_cold,
        q_hot,
        q_cold,
    }
}

pub fn local_ledger(
    model: &SpinModel,
    cycle: &Cycle,
    convention: Convention,
) -> Result<LocalLedger> {
    let report = run_cycle(model, cycle)?;
    let (hot, cold) = cycle_points(model, cycle)?;
    let (h, hc) = (cycle.h_hot, cycle.h_cold);
    let n = model.n_sites();
    let red_hot = reduced_all(&hot.state)?;
    let red_cold = reduced_all(&cold.state)?;

    let entries: Vec<SiteEntry> = match convention {
        Convention::Case1 => vec![entry(None, report.q_hot, report.q_cold)],
        Convention::Case2 => {
            let diff = product_state(&red_hot) - product_state(&red_cold);
            (0..n)
                .map(|s| {
                    let q_hot = trace_product(&diff, &site_share(model, h, s)?);
                    let q_cold = -trace_product(&diff, &site_share(model, hc, s)?);
                    Ok(entry(Some(s), q_hot, q_cold))
                })
                .collect::<Result<_>>()?
        }
        Convention::Case3 => {
            let diff = &hot.state.rho - &cold.state.rho;
            (0..n)
                .map(|s| {
                    let z = trace_product(&diff, &pauli_string(n, &[(s, Pauli::Z)]));
                    entry(Some(s), h * z, -hc * z)
                })
                .collect()
        }
        Convention::Case4 => red_hot
            .iter()
            .zip(&red_cold)
            .map(|(a, b)| {
                let diff = &a.rho - &b.rho;
                let q_hot = trace_product(&diff, &local_hamiltonian(h));
                let q_cold = -trace_product(&diff, &local_hamiltonian(hc));
                entry(Some(a.site), q_hot, q_cold)
            })
            .collect(),
    };

    let total_work: f64 = entries.iter().map(|e| e.work).sum();
    let temperatures = red_hot
        .iter()
        .zip(&red_cold)
        .map(|(a, b)| SiteTemperatures {
            hot: EffectiveTemperature::of(a, h),
            cold: EffectiveTemperature::of(b, hc),
        })
        .collect();
    Ok(LocalLedger {
        convention,
        entries,
        total_work,
        gap: report.work - total_work,
        temperatures,
    })
}

/// Adiabatic-stroke works, globally and per site.
///
/// `−W₁ = Σ m p (E − E')`, `−W₂ = −Σ m p' (E − E')`; per site
/// `−w₁ = (h − h')⟨σz⟩` in the hot state and `−w₂ = −(h − h')⟨σz⟩'`.
#[derive(Debug, Clone, PartialEq)]
pub struct StageWorks {
    pub w1: f64,
    pub w2: f64,
    pub site_w1: Vec<f64>,
    pub site_w2: Vec<f64>,
}

pub fn stage_works(model: &SpinModel, cycle: &Cycle) -> Result<StageWorks> {
    let report = run_cycle(model, cycle)?;
    let (hot, cold) = cycle_points(model, cycle)?;
    let dh = cycle.h_hot - cycle.h_cold;
    let site_w1 = reduced_all(&hot.state)?
        .iter()
        .map(|r| -dh * r.z_expectation())
        .collect();
    let site_w2 = reduced_all(&cold.state)?
        .iter()
        .map(|r| dh * r.z_expectation())
        .collect();
    Ok(StageWorks {
        w1: report.w1,
        w2: report.w2,
        site_w1,
        site_w2,
    })
}

pub fn effective_temperatures(model: &SpinModel, cycle: &Cycle) -> Result<Vec<SiteTemperatures>> {
    cycle.validate_temperatures()?;
    let (hot, cold) = cycle_points(model, cycle)?;
    let red_hot = reduced_all(&hot.state)?;
    let red_cold = reduced_all(&cold.state)?;
    Ok(red_hot
        .iter()
        .zip(&red_cold)
        .map(|(a, b)| SiteTemperatures {
            hot: EffectiveTemperature::of(a, cycle.h_hot),
            cold: EffectiveTemperature::of(b, cycle.h_cold),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_ising_dimer_is_extensive() {
        let model = SpinModel::ising_ksea(0.7, 0.0).unwrap();
        let l = local_ledger(&model, &Cycle::ENGINE, Convention::Case4).unwrap();
        assert!(l.gap.abs() < 1e-12);
        let s = stage_works(&model, &Cycle::ENGINE).unwrap();
        assert!((s.w1 - 2.0 * s.site_w1[0]).abs() < 1e-12);
        assert!((s.w2 - 2.0 * s.site_w2[0]).abs() < 1e-12);
    }

    #[test]
    fn ksea_breaks_extensivity() {
        let model = SpinModel::ising_ksea(0.5, 2.0).unwrap();
        let l = local_ledger(&model, &Cycle::ENGINE, Convention::Case4).unwrap();
        assert!(l.gap > 0.0);
        assert_eq!(l.entries[0].work, l.entries[1].work);
        let s = stage_works(&SpinModel::ising_ksea(0.5, 3.0).unwrap(), &Cycle::ENGINE).unwrap();
        assert!(-(s.w1 - 2.0 * s.site_w1[0]) > 0.0);
    }

    #[test]
    fn case3_equals_case4() {
        for model in [
            SpinModel::ising_ksea(0.5, 2.0).unwrap(),
            SpinModel::heisenberg(3, 0.6).unwrap(),
            SpinModel::ising_chain(4, -0.3).unwrap(),
        ] {
            let c3 = local_ledger(&model, &Cycle::ENGINE, Convention::Case3).unwrap();
            let c4 = local_ledger(&model, &Cycle::ENGINE, Convention::Case4).unwrap();
            for (a, b) in c3.entries.iter().zip(&c4.entries) {
                assert!((a.work - b.work).abs() < 1e-12);
                assert!((a.q_hot - b.q_hot).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn case1_is_global() {
        let model = SpinModel::heisenberg(2, 0.3).unwrap();
        let l = local_ledger(&model, &Cycle::ENGINE, Convention::Case1).unwrap();
        assert_eq!(l.entries.len(), 1);
        assert_eq!(l.gap, 0.0);
    }

    #[test]
    fn heisenberg_three_is_extensive() {
        for j in [-2.0, 0.1, 1.0, 7.0] {
            let l = local_ledger(
                &SpinModel::heisenberg(3, j).unwrap(),
                &Cycle::ENGINE,
                Convention::Case4,
            )
            .unwrap();
            assert!(l.gap.abs() < 1e-10);
        }
    }

    #[test]
    fn effective_temperature_examples() {
        let free = effective_temperatures(&SpinModel::ising_chain(2, 0.0).unwrap(), &Cycle::ENGINE)
            .unwrap();
        for t in &free {
            assert!((t.hot.finite().unwrap() - 4.0).abs() < 1e-12);
            assert!((t.cold.finite().unwrap() - 1.0).abs() < 1e-12);
        }
        let coupled = effective_temperatures(
            &SpinModel::ising_chain(2, 1.0).unwrap(),
            &Cycle::new(5.0, 2.0, 2.0, 1.0),
        )
        .unwrap();
        let t0 = coupled[0].hot.finite().unwrap();
        assert!((t0 - 2.0).abs() > 1e-3);
        assert!((t0 - coupled[1].hot.finite().unwrap()).abs() < 1e-12);
    }

    #[test]
    fn parses_conventions() {
        assert_eq!("case2".parse::<Convention>().unwrap(), Convention::Case2);
        assert!("case5".parse::<Convention>().is_err());
    }
}
