use crate::error::{Error, Result};
use crate::thermo::ThermalState;
use crate::CMatrix;

/// Single-site state in the basis `{|1⟩, |0⟩}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedState {
    pub site: usize,
    pub rho: CMatrix,
}

impl ReducedState {
    /// Population of `|1⟩` (spin up).
    pub fn p_up(&self) -> f64 {
        self.rho[(0, 0)].re
    }

    pub fn p_down(&self) -> f64 {
        self.rho[(1, 1)].re
    }

    /// `⟨σz⟩ = p_up − p_down`.
    pub fn z_expectation(&self) -> f64 {
        self.p_up() - self.p_down()
    }
}

/// Trace out every site not in `keep`. Kept sites stay in ascending order.
pub fn partial_trace_keep(rho: &CMatrix, n_sites: usize, keep: &[usize]) -> Result<CMatrix> {
    let dim = 1usize << n_sites;
    if rho.nrows() != dim || rho.ncols() != dim {
        return Err(Error::BadDimension {
            expected: dim,
            rows: rho.nrows(),
            cols: rho.ncols(),
        });
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if let Some(&site) = kept.iter().find(|&&s| s >= n_sites) {
        return Err(Error::SiteOutOfRange { site, n_sites });
    }
    let bit = |index: usize, site: usize| (index >> (n_sites - 1 - site)) & 1;
    let kept_mask: usize = kept.iter().map(|&s| 1usize << (n_sites - 1 - s)).sum();
    let compress = |index: usize| {
        kept.iter()
            .fold(0usize, |acc, &s| (acc << 1) | bit(index, s))
    };
    let out_dim = 1usize << kept.len();
    let mut out = CMatrix::zeros(out_dim, out_dim);
    for r in 0..dim {
        for c in 0..dim {
            if (r & !kept_mask) == (c & !kept_mask) {
                out[(compress(r), compress(c))] += rho[(r, c)];
            }
        }
    }
    Ok(out)
}

pub fn reduced_state(state: &ThermalState, site: usize) -> Result<ReducedState> {
    let rho = partial_trace_keep(&state.rho, state.n_sites, &[site])?;
    Ok(ReducedState { site, rho })
}

/// Two-site reduced state of sites `a < b`.
pub fn reduced_pair(state: &ThermalState, a: usize, b: usize) -> Result<CMatrix> {
    partial_trace_keep(&state.rho, state.n_sites, &[a, b])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SpinModel;
    use crate::pauli::z_value;
    use crate::thermo::{infinite_temperature_state, thermal_density_matrix};

    #[test]
    fn ksea_sites_are_symmetric_and_match_closed_form() {
        let (gz, h) = (2.0, 4.0);
        let model = SpinModel::ising_ksea(0.5, gz).unwrap();
        let state = thermal_density_matrix(&model, h, 0.25).unwrap();
        let r0 = reduced_state(&state, 0).unwrap();
        let r1 = reduced_state(&state, 1).unwrap();
        assert!(crate::oracle::max_abs_diff(&r0.rho, &r1.rho) < 1e-15);
        let s = h.hypot(gz);
        let (p3, p4) = (state.populations[1], state.populations[2]);
        assert!((r0.p_up() - 0.5 * (1.0 - h * (p3 - p4) / s)).abs() < 1e-14);
        assert!((r0.p_down() - 0.5 * (1.0 + h * (p3 - p4) / s)).abs() < 1e-14);
    }

    #[test]
    fn maximally_mixed_reduces_to_half_identity() {
        let model = SpinModel::ising_chain(5, 1.0).unwrap();
        let state = infinite_temperature_state(&model, 1.0).unwrap();
        for site in 0..5 {
            let r = reduced_state(&state, site).unwrap();
            assert!((r.p_up() - 0.5).abs() < 1e-15 && r.rho[(0, 1)].norm() == 0.0);
        }
        assert!(reduced_state(&state, 5).is_err());
    }

    #[test]
    fn heisenberg_diagonal_by_index_contraction() {
        let model = SpinModel::heisenberg(3, 2.0).unwrap();
        let state = thermal_density_matrix(&model, 4.0, 0.25).unwrap();
        for site in 0..3 {
            let up: f64 = (0..8)
                .filter(|&k| z_value(3, k, site) > 0.0)
                .map(|k| state.rho[(k, k)].re)
                .sum();
            let r = reduced_state(&state, site).unwrap();
            assert!((r.p_up() - up).abs() < 1e-14);
            assert!((r.p_up() + r.p_down() - 1.0).abs() < 1e-14);
        }
    }
}
