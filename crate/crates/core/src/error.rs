use thiserror::Error;

use crate::model::ServiceModel;
use crate::sched::Schedule;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// A delay or bandwidth entry needed to evaluate an assignment is missing.
    #[error("model inconsistency: {0}")]
    ModelInconsistency(String),

    #[error("service {} / model {} is not hosted on server {server}", .pair.service, .pair.model)]
    NotHosted { server: usize, pair: ServiceModel },

    #[error("instance too large for {solver}: {size} exceeds the limit of {limit}")]
    InstanceTooLarge {
        solver: &'static str,
        size: f64,
        limit: f64,
    },

    /// The branch-and-bound node budget ran out before optimality was proven.
    /// The best schedule found so far is attached.
    #[error("node budget of {nodes} exhausted before optimality was proven (incumbent objective {:.6})", .incumbent.objective)]
    BudgetExceeded {
        nodes: u64,
        incumbent: Box<Schedule>,
    },

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("unknown sweep parameter `{0}`")]
    UnknownParameter(String),

    #[error("bandwidth observation must be positive, got {0}")]
    NonPositiveObservation(f64),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
