//! Refrigerator figures of merit and KSEA closed forms.

use super::{run_cycle, Cycle, Mode};
use crate::error::{Error, Result};
use crate::model::{Coupling, SpinModel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CopReport {
    pub cop: f64,
    pub cop_otto: f64,
    pub cop_carnot: f64,
    /// `COP > COP_o`.
    pub enhancement: bool,
}

pub fn cop_report(model: &SpinModel, cycle: &Cycle) -> Result<CopReport> {
    let report = run_cycle(model, cycle)?;
    match (report.mode, report.cop, report.cop_carnot) {
        (Some(Mode::Refrigerator), Some(cop), Some(cop_carnot)) => Ok(CopReport {
            cop,
            cop_otto: report.cop_otto,
            cop_carnot,
            enhancement: cop > report.cop_otto,
        }),
        _ => Err(Error::NotRefrigerator),
    }
}

fn ksea_params(model: &SpinModel) -> Result<(f64, f64)> {
    match model.coupling() {
        Coupling::Ksea { jz, gz } => Ok((jz, gz)),
        Coupling::Exchange(_) => Err(Error::NotKsea),
    }
}

/// Heats and work of the KSEA dimer in closed sinh/cosh form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KseaClosedForm {
    pub q_hot: f64,
    pub q_cold: f64,
    pub work: f64,
}

pub fn ksea_closed_form(model: &SpinModel, cycle: &Cycle) -> Result<KseaClosedForm> {
    let (jz, gz) = ksea_params(model)?;
    cycle.validate()?;
    let (bh, bc) = (cycle.beta_hot(), cycle.beta_cold());
    let (sh, sc) = (cycle.h_hot.hypot(gz), cycle.h_cold.hypot(gz));
    let den = |b: f64, s: f64| (2.0 * b * jz).exp() + (2.0 * b * s).cosh();
    let (dc, dh) = (den(bc, sc), den(bh, sh));
    let idle_c = 2.0 * jz * (2.0 * bc * jz).exp();
    let idle_h = 2.0 * jz * (2.0 * bh * jz).exp();
    let (sinh_c, sinh_h) = ((2.0 * bc * sc).sinh(), (2.0 * bh * sh).sinh());
    let q_hot = (2.0 * sh * sinh_c + idle_c) / dc - (2.0 * sh * sinh_h + idle_h) / dh;
    let q_cold = (-2.0 * sc * sinh_c - idle_c) / dc + (2.0 * sc * sinh_h + idle_h) / dh;
    let work = 2.0 * (sh - sc) * (sinh_c / dc - sinh_h / dh);
    Ok(KseaClosedForm {
        q_hot,
        q_cold,
        work,
    })
}

/// KSEA refrigerator COP as the Γ-dependent Otto-like term plus the idle correction:
/// `s_c/(s_h − s_c) + 4J_z(p₂ − p'₂)/(2(s_h − s_c)(p₃ − p'₃ − p₄ + p'₄))`.
pub fn ksea_cop_closed_form(model: &SpinModel, cycle: &Cycle) -> Result<f64> {
    let (jz, gz) = ksea_params(model)?;
    cycle.validate()?;
    let populations = |b: f64, s: f64| {
        let z = 2.0 * ((b * jz).exp() + (-b * jz).exp() * (2.0 * b * s).cosh());
        (
            (b * jz).exp() / z,
            (-b * (jz - 2.0 * s)).exp() / z,
            (-b * (jz + 2.0 * s)).exp() / z,
        )
    };
    let (sh, sc) = (cycle.h_hot.hypot(gz), cycle.h_cold.hypot(gz));
    let (p2, p3, p4) = populations(cycle.beta_hot(), sh);
    let (q2, q3, q4) = populations(cycle.beta_cold(), sc);
    Ok(sc / (sh - sc) + 4.0 * jz * (p2 - q2) / (2.0 * (sh - sc) * (p3 - q3 - p4 + q4)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let model = SpinModel::ising_ksea(0.0, 0.0).unwrap();
        let c = cop_report(&model, &Cycle::FRIDGE).unwrap();
        assert!((c.cop_otto - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(c.cop_carnot, 1.0);
        assert!((c.cop - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn ksea_without_idle_levels_beats_otto() {
        for gz in [0.3f64, 0.5, 1.0] {
            let model = SpinModel::ising_ksea(0.0, gz).unwrap();
            let c = cop_report(&model, &Cycle::FRIDGE).unwrap();
            let expected =
                (4.0 + gz * gz).sqrt() / ((25.0 + gz * gz).sqrt() - (4.0 + gz * gz).sqrt());
            assert!((c.cop - expected).abs() < 1e-10);
            assert!(c.enhancement);
        }
    }

    #[test]
    fn closed_forms_match_population_sums() {
        let model = SpinModel::ising_ksea(0.9, 1.7).unwrap();
        for cycle in [Cycle::ENGINE, Cycle::FRIDGE] {
            let r = run_cycle(&model, &cycle).unwrap();
            let k = ksea_closed_form(&model, &cycle).unwrap();
            assert!((r.q_hot - k.q_hot).abs() < 1e-10);
            assert!((r.q_cold - k.q_cold).abs() < 1e-10);
            assert!((r.work - k.work).abs() < 1e-10);
        }
        let fridge = SpinModel::ising_ksea(2.6, 4.0).unwrap();
        let c = cop_report(&fridge, &Cycle::FRIDGE).unwrap();
        assert!((c.cop - ksea_cop_closed_form(&fridge, &Cycle::FRIDGE).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn engine_is_not_refrigerator() {
        let model = SpinModel::ising_ksea(0.0, 0.0).unwrap();
        assert!(matches!(
            cop_report(&model, &Cycle::ENGINE),
            Err(Error::NotRefrigerator)
        ));
    }
}
