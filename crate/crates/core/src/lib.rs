//! Exact simulation of quantum Otto heat engines and refrigerators whose
//! working substance is a short chain of coupled spin-1/2 particles.
//!
//! The crate is organised bottom-up:
//!
//! * [`model`] builds Hamiltonians for the Ising+KSEA dimer, the Heisenberg
//!   XXX ring and the periodic Ising chain.
//! * [`spectrum`] and [`eigen`] give closed-form, adiabatically labelled
//!   energy levels and eigenvectors; [`oracle`] holds the brute-force
//!   cross-checks (dense diagonalisation, matrix exponential).
//! * [`thermo`] covers Gibbs states, partial traces, entropies and
//!   concurrence.
//! * [`cycle`] evaluates the four-stroke cycle: heats, work, efficiency,
//!   COP, idle-level bookkeeping, local ledgers and linear identities.
//!
//! Units follow `k_B = ħ = 1`.

pub mod cycle;
pub mod eigen;
mod error;
pub mod model;
pub mod oracle;
pub mod pauli;
pub mod roots;
pub mod spectrum;
pub mod thermo;

pub use error::{Error, Result};
pub use model::{Coupling, Family, SpinModel};
pub use spectrum::{Level, Spectrum};

/// Dense complex matrix used for Hamiltonians and density matrices.
pub type CMatrix = nalgebra::DMatrix<num_complex::Complex64>;
/// Dense complex column vector.
pub type CVector = nalgebra::DVector<num_complex::Complex64>;
