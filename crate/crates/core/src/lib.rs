//! Two-sector overlapping-generations growth model with collateral-constrained
//! credit and land speculation.
//!
//! The crate solves balanced growth paths for a small open economy and for a
//! closed economy with fiat money, simulates their dynamics, runs
//! finite-difference comparative statics over land productivity, and covers the
//! extensions (log-utility saving, labor in real estate, unbalanced growth,
//! fundamental values and bubbles).

// `!(x > 0.0)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assumptions;
pub mod error;
pub mod extensions;
pub mod fd;
pub mod monetary;
pub mod open;
pub mod params;
pub mod roots;
pub mod scenario;
pub mod statics;
pub mod table;

pub use assumptions::{check_assumptions, AssumptionId, AssumptionRecord, AssumptionReport};
pub use error::{ModelError, Result};
pub use params::{
    derive_constants, DerivedConstants, Economy, LeveragedReturns, Param, SavingMode,
    ScenarioParams,
};

/// Upper end of every search over land productivity.
pub const EPSILON_CEILING: f64 = 10.0;
