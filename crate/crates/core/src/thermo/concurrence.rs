use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::oracle::{hermitian_deviation, HERMITIAN_TOL};
use crate::pauli::{pauli_string, Pauli};
use crate::CMatrix;

const PSD_TOL: f64 = 1e-12;

fn is_x_shaped(rho: &CMatrix) -> bool {
    (0..4).all(|r| (0..4).all(|c| r == c || r + c == 3 || rho[(r, c)] == Complex64::new(0.0, 0.0)))
}

/// Wootters concurrence of a two-qubit density matrix.
///
/// X-shaped states (including every diagonal state) use the closed form
/// `2·max(0, |ρ₀₃| − √(ρ₁₁ρ₂₂), |ρ₁₂| − √(ρ₀₀ρ₃₃))`, which is exactly zero for
/// diagonal input.
pub fn concurrence(rho: &CMatrix) -> Result<f64> {
    if rho.nrows() != 4 || rho.ncols() != 4 {
        return Err(Error::BadDimension {
            expected: 4,
            rows: rho.nrows(),
            cols: rho.ncols(),
        });
    }
    let deviation = hermitian_deviation(rho);
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let eig = rho.clone().symmetric_eigen();
    let min = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if min < -PSD_TOL {
        return Err(Error::NotPositive(min));
    }
    let d = |k: usize| rho[(k, k)].re.max(0.0);
    if is_x_shaped(rho) {
        let a = rho[(0, 3)].norm() - (d(1) * d(2)).sqrt();
        let b = rho[(1, 2)].norm() - (d(0) * d(3)).sqrt();
        return Ok((2.0 * a.max(b)).clamp(0.0, 1.0));
    }
    let sqrt_vals = CMatrix::from_diagonal(
        &eig.eigenvalues
            .map(|v| Complex64::new(v.max(0.0).sqrt(), 0.0)),
    );
    let sqrt_rho = &eig.eigenvectors * sqrt_vals * eig.eigenvectors.adjoint();
    let yy = pauli_string(2, &[(0, Pauli::Y), (1, Pauli::Y)]);
    let tilde = &yy * rho.map(|z| z.conj()) * &yy;
    let r = &sqrt_rho * tilde * &sqrt_rho;
    let r = (&r + r.adjoint()) * Complex64::new(0.5, 0.0);
    let mut lambdas: Vec<f64> = r
        .symmetric_eigenvalues()
        .iter()
        .map(|v| v.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).clamp(0.0, 1.0))
}
