//! Schedulers for the satisfaction-maximizing assignment problem: the
//! greedy scheduler, its baselines, an exact branch-and-bound solver and an
//! exhaustive oracle, plus the shared feasibility validator.

mod brute;
mod capacity;
mod exact;
mod greedy;
mod random;
mod validate;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    completion_time, meets_thresholds, user_satisfaction, ProblemInstance, ServiceModel,
};

pub use brute::{brute_force, BRUTE_FORCE_LIMIT};
pub use capacity::{CapacityState, Relaxation};
pub use exact::{exact_solve, ExactLimits, ExactSolution};
pub use greedy::{gus, happy_communication, happy_computation, local_all, offload_all};
pub use random::{random_assignment, RandomPolicy};
pub use validate::{check_choices, validate, Constraint, Violation};

pub(crate) use brute::brute_force_with;
pub(crate) use exact::exact_solve_with;
pub(crate) use greedy::{greedy_with, Scope};
pub(crate) use random::random_with;

/// One request's decision: the serving server and model, or `None` to drop.
pub type Choice = Option<(usize, ServiceModel)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Local,
    OffloadEdge,
    OffloadCloud,
    Drop,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assignment {
    pub request: usize,
    pub decision: Decision,
    pub server: Option<usize>,
    pub model: Option<ServiceModel>,
    pub accuracy: f64,
    pub completion_ms: f64,
    pub us: f64,
}

impl Assignment {
    pub fn is_drop(&self) -> bool {
        self.decision == Decision::Drop
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Schedule {
    pub assignments: Vec<Assignment>,
    pub objective: f64,
    pub satisfied_count: usize,
}

/// Accuracy, completion time and satisfaction of one (request, server, pair)
/// triple. `None` when the pair is not hosted or a link is missing.
pub(crate) fn evaluate(
    instance: &ProblemInstance,
    request: usize,
    server: usize,
    pair: ServiceModel,
) -> Option<(f64, f64, f64)> {
    let c = completion_time(instance, request, server, pair).ok()?;
    let a = instance.catalog.accuracy(pair);
    let us = user_satisfaction(&instance.requests[request], a, c, &instance.norm());
    Some((a, c, us))
}

/// The objective for per-request satisfaction values (`None` = dropped),
/// summed in request order and divided by the number of requests.
pub(crate) fn objective(instance: &ProblemInstance, us: impl IntoIterator<Item = Option<f64>>) -> f64 {
    let n = instance.n_requests();
    if n == 0 {
        return 0.0;
    }
    let total: f64 = us
        .into_iter()
        .map(|u| u.unwrap_or(-instance.drop_penalty))
        .sum();
    total / n as f64
}

impl Schedule {
    pub fn empty() -> Self {
        Self {
            assignments: Vec::new(),
            objective: 0.0,
            satisfied_count: 0,
        }
    }

    /// Builds a schedule from one choice per request.
    pub fn from_choices(instance: &ProblemInstance, choices: &[Choice]) -> Result<Self> {
        if choices.len() != instance.n_requests() {
            return Err(Error::InvalidInstance(format!(
                "{} choices for {} requests",
                choices.len(),
                instance.n_requests()
            )));
        }
        let mut assignments = Vec::with_capacity(choices.len());
        let mut satisfied_count = 0;
        for (i, choice) in choices.iter().enumerate() {
            let Some((j, pair)) = *choice else {
                assignments.push(Assignment {
                    request: i,
                    decision: Decision::Drop,
                    server: None,
                    model: None,
                    accuracy: 0.0,
                    completion_ms: 0.0,
                    us: 0.0,
                });
                continue;
            };
            let c = completion_time(instance, i, j, pair)?;
            let a = instance.catalog.accuracy(pair);
            let req = &instance.requests[i];
            let us = user_satisfaction(req, a, c, &instance.norm());
            if meets_thresholds(req, a, c) {
                satisfied_count += 1;
            }
            assignments.push(Assignment {
                request: i,
                decision: decision_for(instance, i, j),
                server: Some(j),
                model: Some(pair),
                accuracy: a,
                completion_ms: c,
                us,
            });
        }
        let objective = objective(
            instance,
            assignments.iter().map(|a| (!a.is_drop()).then_some(a.us)),
        );
        Ok(Self {
            assignments,
            objective,
            satisfied_count,
        })
    }

    pub(crate) fn build(instance: &ProblemInstance, choices: &[Choice]) -> Self {
        Self::from_choices(instance, choices).expect("scheduler produced an unevaluable choice")
    }

    pub fn choices(&self) -> Vec<Choice> {
        self.assignments
            .iter()
            .map(|a| a.server.zip(a.model))
            .collect()
    }

    pub fn count(&self, decision: Decision) -> usize {
        self.assignments.iter().filter(|a| a.decision == decision).count()
    }
}

pub(crate) fn decision_for(instance: &ProblemInstance, request: usize, server: usize) -> Decision {
    if server == instance.requests[request].covering_server {
        Decision::Local
    } else if instance.servers[server].is_cloud() {
        Decision::OffloadCloud
    } else {
        Decision::OffloadEdge
    }
}

/// Every scheduler exposed by the library, by its command-line name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "gus")]
    Gus,
    #[serde(rename = "random")]
    Random,
    #[serde(rename = "offload-all")]
    OffloadAll,
    #[serde(rename = "local-all")]
    LocalAll,
    #[serde(rename = "happy-comp")]
    HappyComputation,
    #[serde(rename = "happy-comm")]
    HappyCommunication,
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "brute-force")]
    BruteForce,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::Gus,
        Algorithm::Random,
        Algorithm::OffloadAll,
        Algorithm::LocalAll,
        Algorithm::HappyComputation,
        Algorithm::HappyCommunication,
        Algorithm::Exact,
        Algorithm::BruteForce,
    ];

    /// The schedulers that run on any instance size.
    pub const HEURISTICS: [Algorithm; 6] = [
        Algorithm::Gus,
        Algorithm::Random,
        Algorithm::OffloadAll,
        Algorithm::LocalAll,
        Algorithm::HappyComputation,
        Algorithm::HappyCommunication,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Gus => "gus",
            Algorithm::Random => "random",
            Algorithm::OffloadAll => "offload-all",
            Algorithm::LocalAll => "local-all",
            Algorithm::HappyComputation => "happy-comp",
            Algorithm::HappyCommunication => "happy-comm",
            Algorithm::Exact => "exact",
            Algorithm::BruteForce => "brute-force",
        }
    }

    /// Constraints this scheduler is allowed to ignore.
    pub fn relaxation(self) -> Relaxation {
        match self {
            Algorithm::HappyComputation => Relaxation::COMPUTE,
            Algorithm::HappyCommunication => Relaxation::COMM,
            _ => Relaxation::NONE,
        }
    }

    /// Runs the scheduler on a fresh capacity state. `seed` only matters for
    /// [`Algorithm::Random`].
    pub fn run(self, instance: &ProblemInstance, seed: u64) -> Result<Schedule> {
        let mut state = CapacityState::new(instance).relaxed(self.relaxation());
        self.run_with(instance, seed, &mut state)
    }

    /// Runs the scheduler against an existing capacity state and charges the
    /// chosen assignments to it. The state's relaxation is overridden by the
    /// algorithm's own.
    pub fn run_with(
        self,
        instance: &ProblemInstance,
        seed: u64,
        state: &mut CapacityState,
    ) -> Result<Schedule> {
        let saved = state.relaxation();
        state.set_relaxation(self.relaxation());
        let result = match self {
            Algorithm::Gus | Algorithm::HappyComputation | Algorithm::HappyCommunication => {
                Ok(Schedule::build(instance, &greedy_with(instance, state, Scope::All)))
            }
            Algorithm::OffloadAll => Ok(Schedule::build(instance, &greedy_with(instance, state, Scope::CloudOnly))),
            Algorithm::LocalAll => Ok(Schedule::build(instance, &greedy_with(instance, state, Scope::LocalOnly))),
            Algorithm::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Ok(Schedule::build(instance, &random_with(instance, &mut rng, RandomPolicy::default(), state)))
            }
            Algorithm::Exact | Algorithm::BruteForce => {
                let solved = if self == Algorithm::Exact {
                    exact_solve_with(instance, &ExactLimits::default(), state).map(|s| s.schedule)
                } else {
                    brute_force_with(instance, state)
                };
                if let Ok(schedule) = &solved {
                    for (i, choice) in schedule.choices().into_iter().enumerate() {
                        if let Some((j, pair)) = choice {
                            state.charge(instance, i, j, pair);
                        }
                    }
                }
                solved
            }
        };
        state.set_relaxation(saved);
        result
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

/// Parses a comma separated list of algorithm names.
pub fn parse_algorithms(list: &str) -> Result<Vec<Algorithm>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}
