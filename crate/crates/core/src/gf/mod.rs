//! Generating-function expressions: parsing, rendering, evaluation, and the
//! case registry.

mod eval;
mod expr;
mod parse;
mod registry;

pub use eval::{eval, eval_at};
pub use expr::GfExpr;
pub use parse::{parse, parse_with_bindings};
pub use registry::{CaseId, Registry, RegistryEntry, REGISTRY_ENV};
