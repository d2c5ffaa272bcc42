//! Independent numerical oracles used to cross-check the closed forms.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectrum::{Level, Spectrum};
use crate::CMatrix;

pub const HERMITIAN_TOL: f64 = 1e-12;

/// Largest entry of `|M − M†|`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    (m - m.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Largest entrywise modulus of `a − b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn check_square(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::BadDimension {
            expected: m.nrows().max(1),
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(())
}

/// Eigenvalues of a Hermitian matrix by dense diagonalisation, sorted ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    check_square(m)?;
    let deviation = hermitian_deviation(m);
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let mut values: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Sorted, unlabeled spectrum. Eigenvalues within `1e−9·max(1, range)` of
/// their predecessor share a level.
pub fn brute_force_spectrum(m: &CMatrix) -> Result<Spectrum> {
    let values = hermitian_eigenvalues(m)?;
    let range = values.last().unwrap() - values[0];
    let tol = 1e-9 * range.max(1.0);
    let mut groups: Vec<Vec<f64>> = Vec::new();
    for v in values {
        match groups.last_mut() {
            Some(g) if v - g.last().unwrap() <= tol => g.push(v),
            _ => groups.push(vec![v]),
        }
    }
    let levels = groups
        .into_iter()
        .enumerate()
        .map(|(label, g)| Level {
            label,
            energy: g.iter().sum::<f64>() / g.len() as f64,
            multiplicity: g.len(),
            idle: false,
        })
        .collect();
    Ok(Spectrum {
        levels,
        field: None,
    })
}

fn one_norm(m: &CMatrix) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
pub fn expm(m: &CMatrix) -> Result<CMatrix> {
    check_square(m)?;
    let n = m.nrows();
    let norm = one_norm(m);
    if !norm.is_finite() {
        return Err(Error::NonFinite {
            name: "matrix norm",
            value: norm,
        });
    }
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = m / Complex64::new(2f64.powi(squarings), 0.0);
    let mut result = CMatrix::identity(n, n);
    let mut term = CMatrix::identity(n, n);
    for k in 1..=30 {
        term = &term * &scaled / Complex64::new(k as f64, 0.0);
        result += &term;
        if one_norm(&term) < 1e-18 * one_norm(&result) {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    Ok(result)
}

/// Gibbs state `e^{−βH}/Tr e^{−βH}` via [`expm`], shifted by the extreme
/// eigenvalue so the exponent stays non-positive.
pub fn thermal_state_expm(hamiltonian: &CMatrix, beta: f64) -> Result<CMatrix> {
    let values = hermitian_eigenvalues(hamiltonian)?;
    let reference = if beta > 0.0 {
        values[0]
    } else {
        *values.last().unwrap()
    };
    let n = hamiltonian.nrows();
    let shifted = hamiltonian - CMatrix::identity(n, n) * Complex64::new(reference, 0.0);
    let unnormalised = expm(&(shifted * Complex64::new(-beta, 0.0)))?;
    let trace = unnormalised.trace();
    Ok(unnormalised / trace)
}
