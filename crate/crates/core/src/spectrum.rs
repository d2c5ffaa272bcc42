//! Closed-form spectra with labels that follow each level adiabatically in `h`.
//!
//! Labels never come from sorting energies: the Otto bookkeeping pairs the
//! population of level `k` at one field with the energy of level `k` at the
//! other, and sorting would permute them at crossings.
//!
//! Label schemes:
//! * Ising+KSEA: `0` is the doubly degenerate idle level `−J_z` (states `|10⟩`,
//!   `|01⟩`), `1` is `J_z − 2√(h²+Γ_z²)`, `2` is `J_z + 2√(h²+Γ_z²)`.
//! * Ising chain: levels `a·h + b·J` grouped by `(a, b)` in order of first
//!   appearance over the computational basis.
//! * Heisenberg: fixed tables of `(a, b)` with `E = a·h + b·J`.

use std::collections::HashMap;

use crate::error::{ensure_finite, Error, Result};
use crate::model::{Coupling, Family, SpinModel};
use crate::pauli::z_value;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub label: usize,
    pub energy: f64,
    pub multiplicity: usize,
    /// `∂E/∂h` vanishes identically.
    pub idle: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub levels: Vec<Level>,
    /// Field the energies were evaluated at; `None` for spectra of bare matrices.
    pub field: Option<f64>,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.levels.iter().map(|l| l.multiplicity).sum()
    }

    pub fn level(&self, label: usize) -> Result<&Level> {
        self.levels
            .iter()
            .find(|l| l.label == label)
            .ok_or(Error::UnknownLabel(label))
    }

    /// Every eigenvalue repeated by multiplicity, in ascending order.
    pub fn expanded(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .levels
            .iter()
            .flat_map(|l| std::iter::repeat_n(l.energy, l.multiplicity))
            .collect();
        out.sort_by(f64::total_cmp);
        out
    }

    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.multiplicity).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum LevelForm {
    Linear { a: f64, b: f64 },
    KseaIdle,
    KseaLower,
    KseaUpper,
}

impl LevelForm {
    fn energy(self, model: &SpinModel, h: f64) -> f64 {
        match (self, model.coupling()) {
            (LevelForm::Linear { a, b }, c) => {
                let j = match c {
                    Coupling::Exchange(j) => j,
                    Coupling::Ksea { jz, .. } => jz,
                };
                a * h + b * j
            }
            (form, Coupling::Ksea { jz, gz }) => {
                let s = h.hypot(gz);
                match form {
                    LevelForm::KseaIdle => -jz,
                    LevelForm::KseaLower => jz - 2.0 * s,
                    _ => jz + 2.0 * s,
                }
            }
            _ => unreachable!("KSEA forms only occur with KSEA couplings"),
        }
    }

    fn derivative(self, model: &SpinModel, h: f64) -> f64 {
        match self {
            LevelForm::Linear { a, .. } => a,
            LevelForm::KseaIdle => 0.0,
            LevelForm::KseaLower | LevelForm::KseaUpper => {
                let gz = model.gz().unwrap_or(0.0);
                let s = h.hypot(gz);
                let d = if s == 0.0 { 0.0 } else { 2.0 * h / s };
                if self == LevelForm::KseaLower {
                    -d
                } else {
                    d
                }
            }
        }
    }

    fn idle(self) -> bool {
        match self {
            LevelForm::Linear { a, .. } => a == 0.0,
            LevelForm::KseaIdle => true,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct LevelDef {
    pub form: LevelForm,
    pub multiplicity: usize,
}

/// Ising ring basis states grouped by `(Σσz, Σ bonds)`.
///
/// The N = 2 bond coefficient includes the constant offset, so `b ∈ {0, −2}`.
pub(crate) fn ising_groups(n_sites: usize) -> Vec<((i32, i32), Vec<usize>)> {
    let mut groups: Vec<((i32, i32), Vec<usize>)> = Vec::new();
    let mut index: HashMap<(i32, i32), usize> = HashMap::new();
    for state in 0..(1usize << n_sites) {
        let z = |s: usize| z_value(n_sites, state, s) as i32;
        let a: i32 = (0..n_sites).map(z).sum();
        let b: i32 = if n_sites == 2 {
            z(0) * z(1) - 1
        } else {
            (0..n_sites).map(|s| z(s) * z((s + 1) % n_sites)).sum()
        };
        match index.get(&(a, b)) {
            Some(&k) => groups[k].1.push(state),
            None => {
                index.insert((a, b), groups.len());
                groups.push(((a, b), vec![state]));
            }
        }
    }
    groups
}

const HEISENBERG_2: [(f64, f64, usize); 4] =
    [(2.0, 2.0, 1), (0.0, 2.0, 1), (-2.0, 2.0, 1), (0.0, -6.0, 1)];

const HEISENBERG_3: [(f64, f64, usize); 6] = [
    (3.0, 3.0, 1),
    (1.0, 3.0, 1),
    (-1.0, 3.0, 1),
    (-3.0, 3.0, 1),
    (1.0, -3.0, 2),
    (-1.0, -3.0, 2),
];

pub(crate) fn level_defs(model: &SpinModel) -> Vec<LevelDef> {
    let linear = |(a, b, multiplicity): (f64, f64, usize)| LevelDef {
        form: LevelForm::Linear { a, b },
        multiplicity,
    };
    match model.family() {
        Family::IsingKsea => vec![
            LevelDef {
                form: LevelForm::KseaIdle,
                multiplicity: 2,
            },
            LevelDef {
                form: LevelForm::KseaLower,
                multiplicity: 1,
            },
            LevelDef {
                form: LevelForm::KseaUpper,
                multiplicity: 1,
            },
        ],
        Family::HeisenbergXxx if model.n_sites() == 2 => {
            HEISENBERG_2.iter().copied().map(linear).collect()
        }
        Family::HeisenbergXxx => HEISENBERG_3.iter().copied().map(linear).collect(),
        Family::IsingChain => ising_groups(model.n_sites())
            .into_iter()
            .map(|((a, b), states)| linear((a as f64, b as f64, states.len())))
            .collect(),
    }
}

pub fn analytic_spectrum(model: &SpinModel, h: f64) -> Result<Spectrum> {
    ensure_finite("h", h)?;
    let levels = level_defs(model)
        .into_iter()
        .enumerate()
        .map(|(label, def)| Level {
            label,
            energy: def.form.energy(model, h),
            multiplicity: def.multiplicity,
            idle: def.form.idle(),
        })
        .collect();
    Ok(Spectrum {
        levels,
        field: Some(h),
    })
}

/// Analytic `∂E_label/∂h`.
pub fn level_field_derivative(model: &SpinModel, h: f64, label: usize) -> Result<f64> {
    ensure_finite("h", h)?;
    let defs = level_defs(model);
    let def = defs.get(label).ok_or(Error::UnknownLabel(label))?;
    Ok(def.form.derivative(model, h))
}

/// Per-label `(a, b)` with `E = a·h + b·J`.
///
/// KSEA qualifies only at `Γ_z = 0`, where `J` is `J_z` and `h > 0` is assumed.
pub fn linear_coefficients(model: &SpinModel) -> Result<Vec<(f64, f64)>> {
    match model.coupling() {
        Coupling::Ksea { gz, .. } if gz != 0.0 => Err(Error::NonlinearSpectrum(model.family())),
        Coupling::Ksea { .. } => Ok(vec![(0.0, -1.0), (-2.0, 1.0), (2.0, 1.0)]),
        Coupling::Exchange(_) => Ok(level_defs(model)
            .into_iter()
            .map(|d| match d.form {
                LevelForm::Linear { a, b } => (a, b),
                _ => unreachable!("exchange models have linear levels"),
            })
            .collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn ksea_levels() {
        let m = SpinModel::ising_ksea(0.5, 0.0).unwrap();
        let s = analytic_spectrum(&m, 4.0).unwrap();
        assert_eq!(s.expanded(), sorted(vec![-0.5, -0.5, 0.5 - 8.0, 0.5 + 8.0]));
        assert_eq!(
            s.levels
                .iter()
                .filter(|l| l.idle)
                .map(|l| l.multiplicity)
                .sum::<usize>(),
            2
        );
        assert_eq!(s.level(0).unwrap().energy, -0.5);
    }

    #[test]
    fn ising_three_site_list() {
        let m = SpinModel::ising_chain(3, 1.0).unwrap();
        let s = analytic_spectrum(&m, 1.0).unwrap();
        assert_eq!(
            s.expanded(),
            sorted(vec![6.0, 0.0, 0.0, 0.0, -2.0, -2.0, -2.0, 0.0])
        );
    }

    #[test]
    fn heisenberg_three_site_list() {
        let (j, h) = (0.5, 4.0);
        let m = SpinModel::heisenberg(3, j).unwrap();
        let s = analytic_spectrum(&m, h).unwrap();
        let expected = vec![
            -(h + 3.0 * j),
            -(h + 3.0 * j),
            h - 3.0 * j,
            h - 3.0 * j,
            -3.0 * (h - j),
            3.0 * (h + j),
            -h + 3.0 * j,
            h + 3.0 * j,
        ];
        assert_eq!(s.expanded(), sorted(expected));
    }

    #[test]
    fn zero_couplings_zero_field() {
        for m in [
            SpinModel::ising_ksea(0.0, 0.0).unwrap(),
            SpinModel::heisenberg(2, 0.0).unwrap(),
            SpinModel::ising_chain(6, 0.0).unwrap(),
        ] {
            let s = analytic_spectrum(&m, 0.0).unwrap();
            assert!(s.expanded().iter().all(|&e| e == 0.0));
            assert_eq!(s.dim(), m.dim());
        }
    }

    #[test]
    fn level_degeneracies() {
        let counts = |n: usize| -> Vec<((i32, i32), usize)> {
            let mut v: Vec<_> = ising_groups(n)
                .into_iter()
                .map(|(k, s)| (k, s.len()))
                .collect();
            v.sort();
            v
        };
        let sorted_pairs = |mut v: Vec<((i32, i32), usize)>| {
            v.sort();
            v
        };
        assert_eq!(
            counts(2),
            sorted_pairs(vec![((2, 0), 1), ((0, -2), 2), ((-2, 0), 1)])
        );
        assert_eq!(
            counts(4),
            sorted_pairs(vec![
                ((4, 4), 1),
                ((2, 0), 4),
                ((0, 0), 4),
                ((0, -4), 2),
                ((-2, 0), 4),
                ((-4, 4), 1)
            ])
        );
        assert_eq!(
            counts(5),
            sorted_pairs(vec![
                ((5, 5), 1),
                ((3, 1), 5),
                ((1, 1), 5),
                ((1, -3), 5),
                ((-1, 1), 5),
                ((-1, -3), 5),
                ((-3, 1), 5),
                ((-5, 5), 1)
            ])
        );
        assert_eq!(
            counts(6),
            sorted_pairs(vec![
                ((6, 6), 1),
                ((4, 2), 6),
                ((2, 2), 6),
                ((2, -2), 9),
                ((0, 2), 6),
                ((0, -2), 12),
                ((0, -6), 2),
                ((-2, 2), 6),
                ((-2, -2), 9),
                ((-4, 2), 6),
                ((-6, 6), 1)
            ])
        );
    }

    #[test]
    fn field_derivatives() {
        let m = SpinModel::ising_ksea(0.7, 3.0).unwrap();
        assert_eq!(level_field_derivative(&m, 4.0, 0).unwrap(), 0.0);
        assert!((level_field_derivative(&m, 4.0, 2).unwrap() - 1.6).abs() < 1e-15);
        assert!(level_field_derivative(&m, 4.0, 3).is_err());
        let chain = SpinModel::ising_chain(2, 1.0).unwrap();
        assert_eq!(level_field_derivative(&chain, 3.0, 0).unwrap(), 2.0);
    }

    #[test]
    fn linear_coefficients_rebuild_levels() {
        let m = SpinModel::ising_chain(2, 1.3).unwrap();
        let coeffs = linear_coefficients(&m).unwrap();
        assert_eq!(coeffs, vec![(2.0, 0.0), (0.0, -2.0), (-2.0, 0.0)]);
        assert!(linear_coefficients(&SpinModel::ising_ksea(1.0, 0.5).unwrap()).is_err());
    }
}
