use num_complex::Complex64;

use crate::eigen::eigenbasis;
use crate::error::{ensure_finite, Error, Result};
use crate::model::{Coupling, Family, SpinModel};
use crate::spectrum::{analytic_spectrum, Spectrum};
use crate::CMatrix;

/// Gibbs state of a model at one field and temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalState {
    /// `None` for the infinite-temperature state.
    pub beta: Option<f64>,
    pub n_sites: usize,
    pub spectrum: Spectrum,
    /// Probability of each single state of level `label`; `Σ m_i p_i = 1`.
    pub populations: Vec<f64>,
    pub rho: CMatrix,
}

/// Per-state Boltzmann weights as a max-shifted softmax.
pub fn gibbs_populations(spectrum: &Spectrum, beta: f64) -> Result<Vec<f64>> {
    ensure_finite("beta", beta)?;
    if beta == 0.0 {
        return Err(Error::ZeroBeta);
    }
    let exponents: Vec<f64> = spectrum.levels.iter().map(|l| -beta * l.energy).collect();
    for &x in &exponents {
        ensure_finite("energy", x)?;
    }
    let max = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = exponents.iter().map(|x| (x - max).exp()).collect();
    let norm: f64 = weights
        .iter()
        .zip(&spectrum.levels)
        .map(|(w, l)| w * l.multiplicity as f64)
        .sum();
    Ok(weights.into_iter().map(|w| w / norm).collect())
}

/// `ln p_i = −βE_i − ln Z` via log-sum-exp; finite where `p_i` would underflow.
pub fn gibbs_log_populations(spectrum: &Spectrum, beta: f64) -> Result<Vec<f64>> {
    ensure_finite("beta", beta)?;
    if beta == 0.0 {
        return Err(Error::ZeroBeta);
    }
    let exponents: Vec<f64> = spectrum.levels.iter().map(|l| -beta * l.energy).collect();
    for &x in &exponents {
        ensure_finite("energy", x)?;
    }
    let max = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = exponents
        .iter()
        .zip(&spectrum.levels)
        .map(|(x, l)| l.multiplicity as f64 * (x - max).exp())
        .sum();
    let log_z = max + sum.ln();
    Ok(exponents.into_iter().map(|x| x - log_z).collect())
}

pub fn uniform_populations(spectrum: &Spectrum) -> Vec<f64> {
    let p = 1.0 / spectrum.dim() as f64;
    vec![p; spectrum.levels.len()]
}

/// `Σ m_i e^{−βE_i}` without shifting; overflows for large `|βE|`.
pub fn partition_function(spectrum: &Spectrum, beta: f64) -> f64 {
    spectrum
        .levels
        .iter()
        .map(|l| l.multiplicity as f64 * (-beta * l.energy).exp())
        .sum()
}

/// Closed-form partition functions (KSEA dimer and Ising rings).
pub fn partition_function_closed(model: &SpinModel, h: f64, beta: f64) -> Result<f64> {
    ensure_finite("h", h)?;
    ensure_finite("beta", beta)?;
    let b = beta;
    match (model.family(), model.coupling()) {
        (Family::IsingKsea, Coupling::Ksea { jz, gz }) => {
            let s = h.hypot(gz);
            Ok(2.0 * ((b * jz).exp() + (-b * jz).exp() * (2.0 * b * s).cosh()))
        }
        (Family::IsingChain, Coupling::Exchange(j)) => {
            let e = |x: f64| (b * x).exp();
            let ch = |k: f64| (k * b * h).cosh();
            Ok(match model.n_sites() {
                2 => 2.0 * ch(2.0) + 2.0 * e(2.0 * j),
                3 => 2.0 * e(-3.0 * j) * ch(3.0) + 6.0 * e(j) * ch(1.0),
                4 => 2.0 * (e(4.0 * j) + e(-4.0 * j) * ch(4.0)) + 4.0 * (1.0 + 2.0 * ch(2.0)),
                5 => {
                    2.0 * e(-5.0 * j) * ch(5.0)
                        + 10.0 * e(-j) * (ch(1.0) + ch(3.0))
                        + 10.0 * e(3.0 * j) * ch(1.0)
                }
                _ => {
                    2.0 * (e(-6.0 * j) * ch(6.0) + e(6.0 * j))
                        + 12.0 * e(-2.0 * j) * (ch(4.0) + ch(2.0))
                        + e(2.0 * j) * (18.0 * ch(2.0) + 6.0)
                        + 12.0 * (2.0 * b * j).cosh()
                }
            })
        }
        (family, _) => Err(Error::NoClosedForm(family)),
    }
}

fn assemble(
    model: &SpinModel,
    h: f64,
    spectrum: Spectrum,
    populations: Vec<f64>,
    beta: Option<f64>,
) -> Result<ThermalState> {
    let basis = eigenbasis(model, h)?;
    let dim = model.dim();
    let mut rho = CMatrix::zeros(dim, dim);
    for level in &spectrum.levels {
        let p = Complex64::new(populations[level.label], 0.0);
        for v in &basis.vectors[level.label] {
            // Eigenvectors are sparse in the computational basis.
            let support: Vec<(usize, Complex64)> = v
                .iter()
                .copied()
                .enumerate()
                .filter(|(_, z)| *z != Complex64::new(0.0, 0.0))
                .collect();
            for &(r, a) in &support {
                for &(c, b) in &support {
                    rho[(r, c)] += p * a * b.conj();
                }
            }
        }
    }
    Ok(ThermalState {
        beta,
        n_sites: model.n_sites(),
        spectrum,
        populations,
        rho,
    })
}

/// `ρ = Σ p_i |ψ_i⟩⟨ψ_i|` from the closed-form spectrum and eigenbasis.
pub fn thermal_density_matrix(model: &SpinModel, h: f64, beta: f64) -> Result<ThermalState> {
    let spectrum = analytic_spectrum(model, h)?;
    let populations = gibbs_populations(&spectrum, beta)?;
    assemble(model, h, spectrum, populations, Some(beta))
}

/// Maximally mixed state, labelled with the spectrum at `h`.
pub fn infinite_temperature_state(model: &SpinModel, h: f64) -> Result<ThermalState> {
    let spectrum = analytic_spectrum(model, h)?;
    let populations = uniform_populations(&spectrum);
    assemble(model, h, spectrum, populations, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_hamiltonian;
    use crate::oracle::thermal_state_expm;
    use crate::spectrum::Level;

    fn two_level(e: f64) -> Spectrum {
        Spectrum {
            levels: vec![
                Level {
                    label: 0,
                    energy: -e,
                    multiplicity: 1,
                    idle: false,
                },
                Level {
                    label: 1,
                    energy: e,
                    multiplicity: 1,
                    idle: false,
                },
            ],
            field: None,
        }
    }

    #[test]
    fn low_temperature_ground_state() {
        let p = gibbs_populations(&two_level(1.0), 800.0).unwrap();
        assert_eq!(p[0], 1.0);
        assert!(gibbs_populations(&two_level(1.0), 0.0).is_err());
    }

    #[test]
    fn negative_beta_inverts() {
        let p = gibbs_populations(&two_level(1.0), -1.0).unwrap();
        assert!(p[1] > p[0]);
    }

    #[test]
    fn ksea_populations_match_closed_partition_function() {
        let model = SpinModel::ising_ksea(0.0, 0.0).unwrap();
        let beta = 0.25;
        let spec = analytic_spectrum(&model, 4.0).unwrap();
        let p = gibbs_populations(&spec, beta).unwrap();
        let z = partition_function_closed(&model, 4.0, beta).unwrap();
        for l in &spec.levels {
            assert!((p[l.label] - (-beta * l.energy).exp() / z).abs() < 1e-15);
        }
    }

    #[test]
    fn ising_three_partition_function() {
        let model = SpinModel::ising_chain(3, 1.0).unwrap();
        let z = partition_function_closed(&model, 1.0, 1.0).unwrap();
        let expected = 2.0 * (-3f64).exp() * 3f64.cosh() + 6.0 * 1f64.exp() * 1f64.cosh();
        assert!((z - expected).abs() < 1e-12);
        assert!((z - 26.17).abs() < 0.01);
    }

    #[test]
    fn closed_forms_equal_direct_sums() {
        for n in 2..=6 {
            let model = SpinModel::ising_chain(n, 0.3).unwrap();
            let direct = partition_function(&analytic_spectrum(&model, 2.0).unwrap(), 0.5);
            let closed = partition_function_closed(&model, 2.0, 0.5).unwrap();
            assert!(((closed - direct) / direct).abs() < 1e-12, "N={n}");
        }
        let zero = SpinModel::ising_ksea(0.0, 0.0).unwrap();
        assert_eq!(partition_function_closed(&zero, 0.0, 3.0).unwrap(), 4.0);
        let heis = SpinModel::heisenberg(3, 1.0).unwrap();
        assert!(matches!(
            partition_function_closed(&heis, 1.0, 1.0),
            Err(Error::NoClosedForm(_))
        ));
    }

    #[test]
    fn ksea_corner_entry() {
        let (jz, gz, h, beta) = (0.5, 2.0, 4.0, 0.25);
        let model = SpinModel::ising_ksea(jz, gz).unwrap();
        let state = thermal_density_matrix(&model, h, beta).unwrap();
        let s = h.hypot(gz);
        let a1 = Complex64::new(0.0, (s - h) / gz);
        let a2 = Complex64::new(0.0, -(h + s) / gz);
        let p3 = state.populations[1];
        let p4 = state.populations[2];
        let expected =
            a1.conj() / (a1.norm_sqr() + 1.0) * p3 + a2.conj() / (a2.norm_sqr() + 1.0) * p4;
        assert!((state.rho[(3, 0)] - expected).norm() < 1e-14);
        assert!(state.rho[(3, 0)].norm() > 0.0);
    }

    #[test]
    fn matches_matrix_exponential() {
        let model = SpinModel::ising_ksea(0.5, 2.0).unwrap();
        let state = thermal_density_matrix(&model, 4.0, 0.25).unwrap();
        let oracle = thermal_state_expm(&build_hamiltonian(&model, 4.0).unwrap(), 0.25).unwrap();
        assert!(crate::oracle::max_abs_diff(&state.rho, &oracle) < 1e-10);
    }

    #[test]
    fn ising_states_are_diagonal() {
        let model = SpinModel::ising_chain(4, -0.8).unwrap();
        let state = thermal_density_matrix(&model, 1.5, 0.7).unwrap();
        for r in 0..16 {
            for c in 0..16 {
                if r != c {
                    assert_eq!(state.rho[(r, c)], Complex64::new(0.0, 0.0));
                }
            }
        }
    }
}
