//! Deterministic fillers mapping an arrival-time field to the configuration
//! of occupied sites.

mod field;
mod fill;
mod occupancy;

pub use field::{ArrivalField, Boundary};
pub use fill::{chronological_fill, compute_runs, jammed, occupancy_at, run_parity_fill, RunLengths};
pub use occupancy::Occupancy;
