use thiserror::Error;

/// Errors raised by the analytic, simulation, oracle and Monte Carlo layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("time {0} outside [0, 1]")]
    TimeOutOfRange(f64),

    #[error("separation s = {0} must be a positive even integer")]
    OddSeparation(u32),

    #[error("gamma component index {0} not in 1..=4")]
    InvalidComponent(u8),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("arrival time at site {site} is not a number in [0, 1]: {value}")]
    InvalidArrivalTime { site: usize, value: f64 },

    #[error("ring lattice needs at least 3 sites, got {0}")]
    RingTooSmall(usize),

    #[error("empty lattice")]
    EmptyLattice,

    #[error("oracle window of {0} sites exceeds the enumeration limit of {max}", max = crate::oracle::MAX_WINDOW)]
    WindowTooLarge(usize),

    #[error("inconsistent pattern: {0}")]
    InconsistentPattern(String),

    #[error("resource guard: {requested} site-replicas exceeds budget of {budget}")]
    ResourceGuard { requested: u128, budget: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
