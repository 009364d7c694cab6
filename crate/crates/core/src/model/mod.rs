//! Domain types and the pure functions of the system model: completion
//! time, user satisfaction and per-assignment feasibility.

mod instance;
mod satisfaction;
mod types;

pub use instance::{Normalization, ProblemInstance};
pub use satisfaction::{completion_time, is_candidate, meets_thresholds, user_satisfaction};
pub use types::{DelayTable, Mode, ModelCatalog, Request, Server, ServerKind, ServiceModel};
