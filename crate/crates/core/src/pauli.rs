//! Pauli matrices and their embedding into multi-site operators.
//!
//! Basis convention: index bit 0 is spin up (`σz = +1`), site 0 is the most
//! significant bit, so the basis of two sites reads `|11⟩, |10⟩, |01⟩, |00⟩`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::CMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> CMatrix {
        let o = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let entries = match self {
            Pauli::I => [one, o, o, one],
            Pauli::X => [o, one, one, o],
            Pauli::Y => [o, -i, i, o],
            Pauli::Z => [one, o, o, -one],
        };
        DMatrix::from_row_slice(2, 2, &entries)
    }
}

/// Kronecker product of single-site Paulis; sites not listed carry the identity.
///
/// Panics if a site index is `>= n_sites`.
pub fn pauli_string(n_sites: usize, ops: &[(usize, Pauli)]) -> CMatrix {
    let mut factors = vec![Pauli::I; n_sites];
    for &(site, p) in ops {
        assert!(
            site < n_sites,
            "site {site} out of range for {n_sites} sites"
        );
        factors[site] = p;
    }
    factors
        .iter()
        .fold(DMatrix::identity(1, 1), |acc: CMatrix, p| {
            acc.kronecker(&p.matrix())
        })
}

/// `⟨σz⟩` eigenvalue of site `site` in computational basis state `index`.
pub fn z_value(n_sites: usize, index: usize, site: usize) -> f64 {
    if (index >> (n_sites - 1 - site)) & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}
