//! Working-substance descriptions and Hamiltonian construction.

use std::fmt;

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};
use crate::pauli::{pauli_string, Pauli};
use crate::CMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Two spins with Ising `σzσz` coupling plus the symmetric KSEA term.
    IsingKsea,
    /// Isotropic Heisenberg ring, N = 2 or 3.
    HeisenbergXxx,
    /// Periodic Ising ring, N = 2..=6.
    IsingChain,
}

impl Family {
    pub fn supports(self, n_sites: usize) -> bool {
        match self {
            Family::IsingKsea => n_sites == 2,
            Family::HeisenbergXxx => (2..=3).contains(&n_sites),
            Family::IsingChain => (2..=6).contains(&n_sites),
        }
    }

    /// Short name used by the command line and CSV output.
    pub fn cli_name(self) -> &'static str {
        match self {
            Family::IsingKsea => "ising-ksea",
            Family::HeisenbergXxx => "heisenberg",
            Family::IsingChain => "ising",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::IsingKsea => "Ising+KSEA",
            Family::HeisenbergXxx => "Heisenberg XXX",
            Family::IsingChain => "Ising chain",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    /// Exchange constant `J`; `J > 0` is antiferromagnetic.
    Exchange(f64),
    /// Ising constant `J_z` and KSEA strength `Γ_z`.
    Ksea { jz: f64, gz: f64 },
}

/// A validated working substance. The field `h` is supplied per cycle point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinModel {
    family: Family,
    n_sites: usize,
    coupling: Coupling,
}

/// One Hamiltonian term `coeff · ⊗ σ`, with the sites it acts on.
///
/// An empty `ops` list is a constant offset.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub ops: Vec<(usize, Pauli)>,
}

impl SpinModel {
    pub fn new(family: Family, n_sites: usize, coupling: Coupling) -> Result<Self> {
        if !family.supports(n_sites) {
            return Err(Error::UnsupportedModel { family, n_sites });
        }
        match (family, coupling) {
            (Family::IsingKsea, Coupling::Ksea { jz, gz }) => {
                ensure_finite("jz", jz)?;
                ensure_finite("gz", gz)?;
            }
            (Family::IsingKsea, _) => {
                return Err(Error::CouplingMismatch {
                    family,
                    expected: "(J_z, Γ_z)",
                })
            }
            (_, Coupling::Exchange(j)) => {
                ensure_finite("j", j)?;
            }
            (_, _) => {
                return Err(Error::CouplingMismatch {
                    family,
                    expected: "exchange J",
                })
            }
        }
        Ok(Self {
            family,
            n_sites,
            coupling,
        })
    }

    pub fn ising_ksea(jz: f64, gz: f64) -> Result<Self> {
        Self::new(Family::IsingKsea, 2, Coupling::Ksea { jz, gz })
    }

    pub fn heisenberg(n_sites: usize, j: f64) -> Result<Self> {
        Self::new(Family::HeisenbergXxx, n_sites, Coupling::Exchange(j))
    }

    pub fn ising_chain(n_sites: usize, j: f64) -> Result<Self> {
        Self::new(Family::IsingChain, n_sites, Coupling::Exchange(j))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn coupling(&self) -> Coupling {
        self.coupling
    }

    pub fn dim(&self) -> usize {
        1 << self.n_sites
    }

    /// `J` for exchange models, `J_z` for KSEA.
    pub fn exchange(&self) -> f64 {
        match self.coupling {
            Coupling::Exchange(j) => j,
            Coupling::Ksea { jz, .. } => jz,
        }
    }

    /// `Γ_z` for KSEA, `None` otherwise.
    pub fn gz(&self) -> Option<f64> {
        match self.coupling {
            Coupling::Ksea { gz, .. } => Some(gz),
            Coupling::Exchange(_) => None,
        }
    }

    /// Nearest-neighbour pairs of the periodic ring, each bond listed once.
    fn bonds(&self) -> Vec<(usize, usize)> {
        let n = self.n_sites;
        if n == 2 {
            vec![(0, 1)]
        } else {
            (0..n).map(|i| (i, (i + 1) % n)).collect()
        }
    }

    /// Hamiltonian at field `h` as a list of Pauli-string terms.
    ///
    /// N = 2 conventions: the Ising chain is `J(σzσz − 1) + h(σz + σz)`, whose
    /// spectrum is `{2h, −2J, −2J, −2h}`; the Heisenberg dimer counts its
    /// periodic bond twice, `2J σ·σ + h(σz + σz)`.
    pub fn terms(&self, h: f64) -> Vec<Term> {
        let mut terms = Vec::new();
        match (self.family, self.coupling) {
            (Family::IsingKsea, Coupling::Ksea { jz, gz }) => {
                terms.push(Term {
                    coeff: jz,
                    ops: vec![(0, Pauli::Z), (1, Pauli::Z)],
                });
                terms.push(Term {
                    coeff: gz,
                    ops: vec![(0, Pauli::X), (1, Pauli::Y)],
                });
                terms.push(Term {
                    coeff: gz,
                    ops: vec![(0, Pauli::Y), (1, Pauli::X)],
                });
            }
            (Family::HeisenbergXxx, Coupling::Exchange(j)) => {
                let weight = if self.n_sites == 2 { 2.0 * j } else { j };
                for (a, b) in self.bonds() {
                    for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                        terms.push(Term {
                            coeff: weight,
                            ops: vec![(a, p), (b, p)],
                        });
                    }
                }
            }
            (Family::IsingChain, Coupling::Exchange(j)) => {
                for (a, b) in self.bonds() {
                    terms.push(Term {
                        coeff: j,
                        ops: vec![(a, Pauli::Z), (b, Pauli::Z)],
                    });
                }
                if self.n_sites == 2 {
                    terms.push(Term {
                        coeff: -j,
                        ops: Vec::new(),
                    });
                }
            }
            _ => unreachable!("coupling checked at construction"),
        }
        for site in 0..self.n_sites {
            terms.push(Term {
                coeff: h,
                ops: vec![(site, Pauli::Z)],
            });
        }
        terms
    }
}

fn term_matrix(n_sites: usize, term: &Term) -> CMatrix {
    pauli_string(n_sites, &term.ops) * Complex64::new(term.coeff, 0.0)
}

pub fn build_hamiltonian(model: &SpinModel, h: f64) -> Result<CMatrix> {
    ensure_finite("h", h)?;
    let n = model.n_sites();
    let mut hamiltonian = CMatrix::zeros(model.dim(), model.dim());
    for term in model.terms(h) {
        hamiltonian += term_matrix(n, &term);
    }
    Ok(hamiltonian)
}

/// Share of the Hamiltonian attributed to `site`.
///
/// Each term is split equally among the sites it acts on; constants are split
/// among all sites. The shares sum to the full Hamiltonian.
pub fn site_share(model: &SpinModel, h: f64, site: usize) -> Result<CMatrix> {
    ensure_finite("h", h)?;
    let n = model.n_sites();
    if site >= n {
        return Err(Error::SiteOutOfRange { site, n_sites: n });
    }
    let mut share = CMatrix::zeros(model.dim(), model.dim());
    for term in model.terms(h) {
        let support = term.ops.len();
        if support == 0 {
            share += term_matrix(n, &term) / Complex64::new(n as f64, 0.0);
        } else if term.ops.iter().any(|&(s, _)| s == site) {
            share += term_matrix(n, &term) / Complex64::new(support as f64, 0.0);
        }
    }
    Ok(share)
}
