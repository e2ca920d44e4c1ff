//! Single-period tontine funds.
//!
//! A group of participants and an administrator pool their investments for
//! one period. Survivors split the accumulated fund in proportion to their
//! tontine shares; if nobody survives, the administrator keeps everything.
//! This crate models the whole arrangement:
//!
//! - [`model`]: pools, survival models, bitmask-encoded scenarios, validation.
//! - [`allocation`]: share allocation schemes (`dm`, `t`, `dr`, `reciprocal`,
//!   linear weights, pure-endowment benefits).
//! - [`payout`]: per-scenario payout vectors, share values, and the
//!   fund-return / risk-adjustment / mortality-credit decomposition.
//! - [`expectation`]: exact expectations by enumerating all 2^n scenarios.
//! - [`montecarlo`]: seeded, reproducible Monte Carlo for larger pools.
//! - [`fairness`]: actuarial fairness checks and fair-investment solvers,
//!   including the fixed-point iteration for investment-dependent schemes.
//! - [`drs`]: compensation- and contribution-based decentralized risk
//!   sharing, their duality, and the tontine embedding.
//! - [`irr`]: internal rate of return of a save-then-draw annuity pattern.
//! - [`poolfile`]: versioned JSON formats for pools and claims tables.
//!
//! All types are immutable after construction and operations are pure
//! functions, so everything is safe to share across threads. Enumeration and
//! simulation partition their work into fixed chunks and combine partial
//! results in chunk order, which keeps outputs bit-identical regardless of
//! worker count.

pub mod allocation;
pub mod drs;
pub mod error;
pub mod expectation;
pub mod fairness;
pub mod irr;
pub mod model;
pub mod montecarlo;
pub mod numeric;
pub mod payout;
pub mod poolfile;

pub use allocation::{AllocationScheme, EndowmentBenefits, ShareAllocation};
pub use error::{Error, Result};
pub use expectation::{ExpectationReport, DEFAULT_MAX_EXACT_N};
pub use fairness::{FairnessReport, FixedPointSolve, DEFAULT_FAIRNESS_TOLERANCE};
pub use model::{
    validate_pool, Participant, Pool, Scenario, SurvivalModel, ValidationReport, Violation,
};
pub use montecarlo::McEstimate;
pub use payout::{PayoutVector, ReturnDecomposition};
pub use poolfile::{ClaimsFile, PoolFile};
