//! Truncated power series over a coefficient ring.
//!
//! Every series carries its truncation order explicitly. Binary operations
//! truncate to the smaller order; operations that consume or produce a
//! degree (derivative, integral, division by `x` or `x - y`) change the
//! order accordingly.

mod bi;
mod coeff;
mod uni;

pub use bi::{BiSeries, Variable};
pub use coeff::Coefficient;
pub use uni::UniSeries;
