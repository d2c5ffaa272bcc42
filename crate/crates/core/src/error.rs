use thiserror::Error;

use crate::model::Family;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{family} does not support {n_sites} sites")]
    UnsupportedModel { family: Family, n_sites: usize },
    #[error("{family} requires a {expected} coupling")]
    CouplingMismatch {
        family: Family,
        expected: &'static str,
    },
    #[error("parameter `{name}` must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    BadDimension {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("inverse temperature must be nonzero; use the infinite-temperature state instead")]
    ZeroBeta,
    #[error("temperature must be nonzero")]
    ZeroTemperature,
    #[error("negative temperature {0} needs the explicit negative-temperature opt-in")]
    NegativeTemperature(f64),
    #[error("operation requires positive bath temperatures")]
    RequiresPositiveTemperature,
    #[error("fields must satisfy h_hot > h_cold > 0, got h_hot = {h_hot}, h_cold = {h_cold}")]
    FieldOrdering { h_hot: f64, h_cold: f64 },
    #[error("unknown level label {0}")]
    UnknownLabel(usize),
    #[error("site {site} out of range for {n_sites} sites")]
    SiteOutOfRange { site: usize, n_sites: usize },
    #[error("probability vectors differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("relative entropy undefined: p[{index}] > 0 where q[{index}] = 0")]
    SupportMismatch { index: usize },
    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPositive(f64),
    #[error("no closed-form partition function for {0}")]
    NoClosedForm(Family),
    #[error("spectrum of {0} is not linear in the field for these couplings")]
    NonlinearSpectrum(Family),
    #[error("operation is only defined for the Ising+KSEA model")]
    NotKsea,
    #[error("cycle is not running as a refrigerator")]
    NotRefrigerator,
    #[error("no sign change of the idle heat in [{lo}, {hi}]")]
    NoThreshold { lo: f64, hi: f64 },
    #[error("local populations are equal, effective temperature is infinite")]
    InfiniteEffectiveTemperature,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}
