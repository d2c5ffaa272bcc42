//! Work written through entropies and relative entropies of the two Gibbs states:
//! `W = (T_h − T_c)(S − S') − T_h H[p'|p] − T_c H[p|p']`.

use super::local::EffectiveTemperature;
use super::{cycle_points, Cycle};
use crate::error::{Error, Result};
use crate::model::SpinModel;
use crate::spectrum::{analytic_spectrum, Spectrum};
use crate::thermo::{gibbs_log_populations, reduced_state};

/// Works on log-populations so a population that underflows to zero still
/// carries its finite logarithm into the divergences.
fn entropy_work(t_hot: f64, t_cold: f64, ln_p: &[f64], ln_q: &[f64]) -> f64 {
    // Σ a_i (ln a_i − ln b_i), and −Σ a_i ln a_i, skipping a_i = 0 terms.
    let divergence = |la: &[f64], lb: &[f64]| -> f64 {
        la.iter()
            .zip(lb)
            .map(|(&x, &y)| {
                if x.exp() > 0.0 {
                    x.exp() * (x - y)
                } else {
                    0.0
                }
            })
            .sum()
    };
    let entropy = |la: &[f64]| -> f64 {
        -la.iter()
            .map(|&x| if x.exp() > 0.0 { x.exp() * x } else { 0.0 })
            .sum::<f64>()
    };
    (t_hot - t_cold) * (entropy(ln_p) - entropy(ln_q))
        - t_hot * divergence(ln_q, ln_p)
        - t_cold * divergence(ln_p, ln_q)
}

fn expand(spectrum: &Spectrum, per_level: &[f64]) -> Vec<f64> {
    spectrum
        .levels
        .iter()
        .zip(per_level)
        .flat_map(|(l, &x)| std::iter::repeat_n(x, l.multiplicity))
        .collect()
}

/// Global work from entropies. Fields may coincide; temperatures must be positive.
pub fn work_entropy_form(model: &SpinModel, cycle: &Cycle) -> Result<f64> {
    cycle.validate_temperatures()?;
    if !cycle.positive_temperatures() {
        return Err(Error::RequiresPositiveTemperature);
    }
    let hot = analytic_spectrum(model, cycle.h_hot)?;
    let cold = analytic_spectrum(model, cycle.h_cold)?;
    let ln_p = expand(&hot, &gibbs_log_populations(&hot, cycle.beta_hot())?);
    let ln_q = expand(&cold, &gibbs_log_populations(&cold, cycle.beta_cold())?);
    Ok(entropy_work(cycle.t_hot, cycle.t_cold, &ln_p, &ln_q))
}

/// Per-site work from the reduced populations, with each side at its
/// effective temperature.
pub fn local_work_entropy_form(model: &SpinModel, cycle: &Cycle) -> Result<Vec<f64>> {
    cycle.validate_temperatures()?;
    if !cycle.positive_temperatures() {
        return Err(Error::RequiresPositiveTemperature);
    }
    let (hot, cold) = cycle_points(model, cycle)?;
    (0..model.n_sites())
        .map(|site| {
            let a = reduced_state(&hot.state, site)?;
            let b = reduced_state(&cold.state, site)?;
            let t_hot = EffectiveTemperature::of(&a, cycle.h_hot).finite();
            let t_cold = EffectiveTemperature::of(&b, cycle.h_cold).finite();
            match (t_hot, t_cold) {
                (Some(th), Some(tc)) => Ok(entropy_work(
                    th,
                    tc,
                    &[a.p_up().ln(), a.p_down().ln()],
                    &[b.p_up().ln(), b.p_down().ln()],
                )),
                _ => Err(Error::InfiniteEffectiveTemperature),
            }
        })
        .collect()
}
