//! Identities for spectra linear in the field, `E_i = a_i h + b_i J`.
//!
//! With `a = Σ m a_i (p_i − p'_i)` and `b = Σ m b_i (p_i − p'_i)`:
//! `Q_h = ah + bJ`, `Q_c = −ah' − bJ`, `W = a(h − h')`,
//! `η = η_o/(1 + bJ/(ah))` and `COP = COP_o + bJ/(a(h − h'))`.

use super::{run_cycle, Cycle, Mode, Populations};
use crate::error::Result;
use crate::model::SpinModel;
use crate::spectrum::linear_coefficients;

const SIGN_DEADBAND: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearIdentities {
    pub coefficients: Vec<(f64, f64)>,
    pub a: f64,
    pub b: f64,
    /// `J`, or `J_z` for the KSEA dimer at `Γ_z = 0`.
    pub j: f64,
    pub residual_q_hot: f64,
    pub residual_q_cold: f64,
    pub residual_work: f64,
    /// Engine mode only.
    pub residual_eta: Option<f64>,
    /// Refrigerator mode only.
    pub residual_cop: Option<f64>,
    /// Engine mode: whether `η > η_o ⇔ bJ < 0`. `None` inside the dead band.
    pub eta_sign_consistent: Option<bool>,
    /// Refrigerator mode: whether `COP > COP_o ⇔ bJ < 0`. `None` inside the dead band.
    pub cop_sign_consistent: Option<bool>,
}

pub fn linear_identities(model: &SpinModel, cycle: &Cycle) -> Result<LinearIdentities> {
    let coefficients = linear_coefficients(model)?;
    let report = run_cycle(model, cycle)?;
    let pops = Populations::new(model, cycle)?;
    let (mut a, mut b) = (0.0, 0.0);
    for ((m, _, _, d), &(ai, bi)) in pops.delta_rows().zip(&coefficients) {
        a += m * ai * d;
        b += m * bi * d;
    }
    let j = model.exchange();
    let (h, hc) = (cycle.h_hot, cycle.h_cold);
    let bj = b * j;
    let scale = (a * h).abs().max(1.0);
    let decided = |margin: f64| bj.abs() > SIGN_DEADBAND * scale && margin.abs() > SIGN_DEADBAND;

    let (residual_eta, eta_sign_consistent) = match (report.mode, report.eta) {
        (Some(Mode::Engine), Some(eta)) => {
            let margin = eta - report.eta_otto;
            let sign = decided(margin).then_some((margin > 0.0) == (bj < 0.0));
            (
                Some((eta - report.eta_otto / (1.0 + bj / (a * h))).abs()),
                sign,
            )
        }
        _ => (None, None),
    };
    let (residual_cop, cop_sign_consistent) = match (report.mode, report.cop) {
        (Some(Mode::Refrigerator), Some(cop)) => {
            let margin = cop - report.cop_otto;
            let sign = decided(margin).then_some((margin > 0.0) == (bj < 0.0));
            (
                Some((cop - (report.cop_otto + bj / (a * (h - hc)))).abs()),
                sign,
            )
        }
        _ => (None, None),
    };

    Ok(LinearIdentities {
        coefficients,
        a,
        b,
        j,
        residual_q_hot: (report.q_hot - (a * h + bj)).abs(),
        residual_q_cold: (report.q_cold - (-a * hc - bj)).abs(),
        residual_work: (report.work - a * (h - hc)).abs(),
        residual_eta,
        residual_cop,
        eta_sign_consistent,
        cop_sign_consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn five_site_chain() {
        let li =
            linear_identities(&SpinModel::ising_chain(5, 0.4).unwrap(), &Cycle::ENGINE).unwrap();
        assert!(
            li.residual_q_hot < 1e-12 && li.residual_q_cold < 1e-12 && li.residual_work < 1e-12
        );
        assert!(li.residual_eta.unwrap() < 1e-12);
        assert_eq!(li.eta_sign_consistent, Some(true));
        assert!(li.a > 0.0);
    }

    #[test]
    fn no_coupling_gives_otto() {
        let model = SpinModel::heisenberg(3, 0.0).unwrap();
        let li = linear_identities(&model, &Cycle::ENGINE).unwrap();
        assert_eq!(li.j * li.b, 0.0);
        let eta = run_cycle(&model, &Cycle::ENGINE).unwrap().eta.unwrap();
        assert!((eta - 0.25).abs() < 1e-14);
        assert_eq!(li.eta_sign_consistent, None);
    }

    #[test]
    fn refrigerator_identity() {
        let li =
            linear_identities(&SpinModel::ising_chain(3, -0.3).unwrap(), &Cycle::FRIDGE).unwrap();
        assert!(li.residual_cop.unwrap() < 1e-12);
        assert_eq!(li.cop_sign_consistent, Some(true));
    }

    #[test]
    fn ksea_with_gamma_rejected() {
        let err = linear_identities(&SpinModel::ising_ksea(1.0, 0.5).unwrap(), &Cycle::ENGINE)
            .unwrap_err();
        assert!(matches!(err, Error::NonlinearSpectrum(_)));
        let li =
            linear_identities(&SpinModel::ising_ksea(1.0, 0.0).unwrap(), &Cycle::ENGINE).unwrap();
        assert!(li.residual_q_hot < 1e-12);
    }
}
