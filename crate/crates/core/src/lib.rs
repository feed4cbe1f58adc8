//! Random sequential adsorption on the one-dimensional lattice with
//! nearest-neighbour exclusion.
//!
//! Every site `s` attempts once, at an independent uniform time `t_s` in
//! `[0, 1]`, and deposits a particle if both neighbours are vacant at that
//! moment. This crate provides:
//!
//! * [`analytic`]: the exact density `(1 - e^{-2t})/2`, the pair correlation
//!   series and every event probability used to derive them;
//! * [`simulate`]: the chronological filler and a linear-time run-parity filler;
//! * [`oracle`]: brute-force exact probabilities on windows of up to 10 sites;
//! * [`montecarlo`]: reproducible replica-parallel estimates with error bars.
//!
//! Time is measured on the uniform clock. With exponential(1) attempt clocks
//! the same results hold after substituting `t = 1 - e^{-tau}`.

pub mod analytic;
pub mod error;
pub mod montecarlo;
pub mod oracle;
pub mod series;
pub mod simulate;
mod time;

pub use error::{Error, Result};
pub use montecarlo::{Estimate, SimConfig};
pub use series::SeriesValue;
pub use simulate::{ArrivalField, Boundary, Occupancy};
pub use time::{uniform_grid, TimePoint};
