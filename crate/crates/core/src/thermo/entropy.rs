use crate::error::{Error, Result};
use crate::oracle::hermitian_eigenvalues;
use crate::CMatrix;

/// Natural-log entropies of a state and, optionally, its divergence from a reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entropies {
    pub von_neumann: f64,
    pub shannon: f64,
    pub relative: Option<f64>,
}

impl Entropies {
    pub fn evaluate(rho: &CMatrix, p: &[f64], q: Option<&[f64]>) -> Result<Self> {
        Ok(Self {
            von_neumann: von_neumann_entropy(rho)?,
            shannon: shannon_entropy(p),
            relative: q.map(|q| relative_entropy(p, q)).transpose()?,
        })
    }
}

fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        p * p.ln()
    } else {
        0.0
    }
}

/// `−Σ p ln p`; zero entries contribute nothing.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    -p.iter().copied().map(plogp).sum::<f64>()
}

/// `−Tr ρ ln ρ` from the eigenvalues; tiny negative eigenvalues are clipped.
pub fn von_neumann_entropy(rho: &CMatrix) -> Result<f64> {
    let values = hermitian_eigenvalues(rho)?;
    if let Some(&min) = values.first() {
        if min < -1e-12 {
            return Err(Error::NotPositive(min));
        }
    }
    Ok(-values.into_iter().map(|v| plogp(v.max(0.0))).sum::<f64>())
}

/// `H[p|q] = Σ p ln(p/q)`.
pub fn relative_entropy(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    let mut total = 0.0;
    for (index, (&pi, &qi)) in p.iter().zip(q).enumerate() {
        if pi == 0.0 {
            continue;
        }
        if qi <= 0.0 {
            return Err(Error::SupportMismatch { index });
        }
        total += pi * (pi / qi).ln();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn self_divergence_vanishes() {
        let p = [0.1, 0.2, 0.7];
        assert_eq!(relative_entropy(&p, &p).unwrap(), 0.0);
    }

    #[test]
    fn binary_divergence_value() {
        let d = relative_entropy(&[0.7, 0.3], &[0.5, 0.5]).unwrap();
        let expected = 0.7 * (1.4f64).ln() + 0.3 * (0.6f64).ln();
        assert!((d - expected).abs() < 1e-15);
        assert!((d - 0.08228).abs() < 1e-5);
    }

    #[test]
    fn support_mismatch_rejected() {
        assert!(matches!(
            relative_entropy(&[0.5, 0.5], &[1.0, 0.0]),
            Err(Error::SupportMismatch { index: 1 })
        ));
        assert_eq!(
            relative_entropy(&[1.0, 0.0], &[0.5, 0.5]).unwrap(),
            2f64.ln()
        );
    }

    #[test]
    fn maximally_mixed_entropy() {
        let rho = CMatrix::identity(4, 4) * Complex64::new(0.25, 0.0);
        assert!((von_neumann_entropy(&rho).unwrap() - 4f64.ln()).abs() < 1e-14);
        assert!((shannon_entropy(&[0.25; 4]) - 4f64.ln()).abs() < 1e-15);
        let all = Entropies::evaluate(&rho, &[0.25; 4], Some(&[0.25; 4])).unwrap();
        assert_eq!(all.relative, Some(0.0));
    }
}
