//! Exact truncated series arithmetic over Q(√5).

mod laurent;
mod quad;

pub use laurent::{LaurentSeries, DEFAULT_ORDER, MAX_PRINCIPAL_DEPTH};
pub use quad::{rational_sqrt, QuadExt};
