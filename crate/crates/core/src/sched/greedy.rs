use std::cmp::Ordering;

use super::{evaluate, CapacityState, Choice, Relaxation, Schedule};
use crate::model::{is_candidate, ProblemInstance, ServiceModel};

/// Which servers a greedy pass may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Scope {
    All,
    LocalOnly,
    CloudOnly,
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    us: f64,
    local: bool,
    server: usize,
    pair: ServiceModel,
}

/// Highest satisfaction first; ties go to the covering server, then the
/// lower server index, then the lower model index.
fn by_preference(a: &Candidate, b: &Candidate) -> Ordering {
    b.us.total_cmp(&a.us)
        .then_with(|| b.local.cmp(&a.local))
        .then_with(|| a.server.cmp(&b.server))
        .then_with(|| a.pair.model.cmp(&b.pair.model))
}

/// The greedy pass shared by GUS and its restricted or relaxed variants.
/// Requests are handled in input order and candidates are ranked once per
/// request.
pub(crate) fn greedy_with(instance: &ProblemInstance, state: &mut CapacityState, scope: Scope) -> Vec<Choice> {
    let mut choices = Vec::with_capacity(instance.n_requests());
    let mut candidates = Vec::new();
    for (i, req) in instance.requests.iter().enumerate() {
        candidates.clear();
        for server in &instance.servers {
            let local = server.id == req.covering_server;
            let in_scope = match scope {
                Scope::All => true,
                Scope::LocalOnly => local,
                Scope::CloudOnly => server.is_cloud(),
            };
            if !in_scope {
                continue;
            }
            for pair in server.models_of(req.service) {
                if let Some((_, _, us)) = evaluate(instance, i, server.id, pair) {
                    candidates.push(Candidate { us, local, server: server.id, pair });
                }
            }
        }
        candidates.sort_unstable_by(by_preference);

        let pick = candidates
            .iter()
            .find(|c| is_candidate(instance, i, c.server, c.pair, state));
        match pick {
            Some(c) => {
                state.charge(instance, i, c.server, c.pair);
                choices.push(Some((c.server, c.pair)));
            }
            None => choices.push(None),
        }
    }
    choices
}

fn run(instance: &ProblemInstance, relax: Relaxation, scope: Scope) -> Schedule {
    let mut state = CapacityState::new(instance).relaxed(relax);
    let choices = greedy_with(instance, &mut state, scope);
    Schedule::build(instance, &choices)
}

/// Greedy user-satisfaction scheduling: each request, in arrival order,
/// takes the highest-satisfaction (server, model) pair that still passes
/// the thresholds and has capacity left; otherwise it is dropped.
pub fn gus(instance: &ProblemInstance) -> Schedule {
    run(instance, Relaxation::NONE, Scope::All)
}

/// Only the cloud servers are considered.
pub fn offload_all(instance: &ProblemInstance) -> Schedule {
    run(instance, Relaxation::NONE, Scope::CloudOnly)
}

/// Only the covering edge server is considered.
pub fn local_all(instance: &ProblemInstance) -> Schedule {
    run(instance, Relaxation::NONE, Scope::LocalOnly)
}

/// GUS with unlimited computation capacity.
pub fn happy_computation(instance: &ProblemInstance) -> Schedule {
    run(instance, Relaxation::COMPUTE, Scope::All)
}

/// GUS with unlimited communication capacity.
pub fn happy_communication(instance: &ProblemInstance) -> Schedule {
    run(instance, Relaxation::COMM, Scope::All)
}
