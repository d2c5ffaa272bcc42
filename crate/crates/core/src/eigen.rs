//! Closed-form eigenvectors, one orthonormal set per level label.

use num_complex::Complex64;

use crate::error::{ensure_finite, Result};
use crate::model::{Coupling, Family, SpinModel};
use crate::spectrum::ising_groups;
use crate::CVector;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenBasis {
    /// `vectors[label]` spans the eigenspace of that label.
    pub vectors: Vec<Vec<CVector>>,
}

impl EigenBasis {
    pub fn dim(&self) -> usize {
        self.vectors
            .first()
            .and_then(|v| v.first())
            .map_or(0, |v| v.len())
    }
}

fn basis_vector(dim: usize, entries: &[(usize, f64)]) -> CVector {
    let mut v = CVector::zeros(dim);
    for &(k, x) in entries {
        v[k] = Complex64::new(x, 0.0);
    }
    let norm = v.norm();
    v / Complex64::new(norm, 0.0)
}

fn pair_vector(upper: Complex64, lower: Complex64) -> CVector {
    let mut v = CVector::zeros(4);
    v[0] = upper;
    v[3] = lower;
    let norm = v.norm();
    v / Complex64::new(norm, 0.0)
}

/// Eigenvectors of the Ising+KSEA dimer, labels as in [`crate::spectrum`].
///
/// The working pair lives in `span{|11⟩, |00⟩}`. Each vector has two
/// algebraically equivalent forms; the one with the larger norm is used, which
/// also reproduces the `Γ_z → 0` limit (`|00⟩`, `|11⟩` for `h > 0`).
pub fn ksea_eigenbasis(jz: f64, gz: f64, h: f64) -> Result<EigenBasis> {
    ensure_finite("jz", jz)?;
    ensure_finite("gz", gz)?;
    ensure_finite("h", h)?;
    let s = h.hypot(gz);
    let i = Complex64::i();
    let pick = |a: (Complex64, Complex64), b: (Complex64, Complex64)| {
        let na = a.0.norm_sqr() + a.1.norm_sqr();
        let nb = b.0.norm_sqr() + b.1.norm_sqr();
        if na == 0.0 && nb == 0.0 {
            None
        } else if na >= nb {
            Some(pair_vector(a.0, a.1))
        } else {
            Some(pair_vector(b.0, b.1))
        }
    };
    let g = Complex64::new(gz, 0.0);
    let lower = pick((i * gz, Complex64::new(s + h, 0.0)), (i * (s - h), g))
        .unwrap_or_else(|| pair_vector(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)));
    let upper = pick((-i * (h + s), g), (-i * gz, Complex64::new(s - h, 0.0)))
        .unwrap_or_else(|| pair_vector(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
    Ok(EigenBasis {
        vectors: vec![
            vec![basis_vector(4, &[(1, 1.0)]), basis_vector(4, &[(2, 1.0)])],
            vec![lower],
            vec![upper],
        ],
    })
}

fn heisenberg_basis(n_sites: usize) -> EigenBasis {
    let v = basis_vector;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let vectors = if n_sites == 2 {
        vec![
            vec![v(4, &[(0, 1.0)])],
            vec![v(4, &[(1, r), (2, r)])],
            vec![v(4, &[(3, 1.0)])],
            vec![v(4, &[(1, r), (2, -r)])],
        ]
    } else {
        vec![
            vec![v(8, &[(0, 1.0)])],
            vec![v(8, &[(1, 1.0), (2, 1.0), (4, 1.0)])],
            vec![v(8, &[(3, 1.0), (5, 1.0), (6, 1.0)])],
            vec![v(8, &[(7, 1.0)])],
            vec![
                v(8, &[(4, 1.0), (2, -1.0)]),
                v(8, &[(4, 1.0), (2, 1.0), (1, -2.0)]),
            ],
            vec![
                v(8, &[(3, 1.0), (5, -1.0)]),
                v(8, &[(3, 1.0), (5, 1.0), (6, -2.0)]),
            ],
        ]
    };
    EigenBasis { vectors }
}

/// Closed-form eigenbasis for any supported model at field `h`.
pub fn eigenbasis(model: &SpinModel, h: f64) -> Result<EigenBasis> {
    ensure_finite("h", h)?;
    match (model.family(), model.coupling()) {
        (Family::IsingKsea, Coupling::Ksea { jz, gz }) => ksea_eigenbasis(jz, gz, h),
        (Family::HeisenbergXxx, _) => Ok(heisenberg_basis(model.n_sites())),
        _ => {
            let dim = model.dim();
            let vectors = ising_groups(model.n_sites())
                .into_iter()
                .map(|(_, states)| {
                    states
                        .iter()
                        .map(|&k| basis_vector(dim, &[(k, 1.0)]))
                        .collect()
                })
                .collect();
            Ok(EigenBasis { vectors })
        }
    }
}
