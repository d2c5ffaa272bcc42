//! Thermal states, partial traces, entropies and two-qubit concurrence.

mod concurrence;
mod entropy;
mod gibbs;
mod reduced;

pub use concurrence::concurrence;
pub use entropy::{relative_entropy, shannon_entropy, von_neumann_entropy, Entropies};
pub use gibbs::{
    gibbs_log_populations, gibbs_populations, infinite_temperature_state, partition_function,
    partition_function_closed, thermal_density_matrix, uniform_populations, ThermalState,
};
pub use reduced::{partial_trace_keep, reduced_pair, reduced_state, ReducedState};
