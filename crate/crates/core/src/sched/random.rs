use rand::seq::SliceRandom;
use rand::Rng;

use super::{evaluate, CapacityState, Choice, Schedule};
use crate::model::{is_candidate, ProblemInstance, ServiceModel};

/// How the random baseline reacts when the drawn server cannot serve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RandomPolicy {
    /// One uniformly drawn server per request; drop if it cannot serve.
    #[default]
    SinglePick,
    /// Servers are tried in a uniformly random order until one can serve.
    Retry,
}

/// Best model of the requested service on `server` that passes
/// [`is_candidate`], by satisfaction (lower model index on ties).
fn best_on(instance: &ProblemInstance, request: usize, server: usize, state: &CapacityState) -> Option<ServiceModel> {
    let service = instance.requests[request].service;
    let mut best: Option<(f64, ServiceModel)> = None;
    for pair in instance.servers[server].models_of(service) {
        if !is_candidate(instance, request, server, pair, state) {
            continue;
        }
        let Some((_, _, us)) = evaluate(instance, request, server, pair) else {
            continue;
        };
        if best.is_none_or(|(b, _)| us > b) {
            best = Some((us, pair));
        }
    }
    best.map(|(_, p)| p)
}

pub(crate) fn random_with<R: Rng + ?Sized>(
    instance: &ProblemInstance,
    rng: &mut R,
    policy: RandomPolicy,
    state: &mut CapacityState,
) -> Vec<Choice> {
    let m = instance.servers.len();
    let mut order: Vec<usize> = (0..m).collect();
    let mut choices = Vec::with_capacity(instance.n_requests());
    for i in 0..instance.n_requests() {
        if m == 0 {
            choices.push(None);
            continue;
        }
        let tried: &[usize] = match policy {
            RandomPolicy::SinglePick => {
                order[0] = rng.random_range(0..m);
                &order[..1]
            }
            RandomPolicy::Retry => {
                order.iter_mut().enumerate().for_each(|(k, s)| *s = k);
                order.shuffle(rng);
                &order
            }
        };
        let pick = tried
            .iter()
            .find_map(|&j| best_on(instance, i, j, state).map(|p| (j, p)));
        if let Some((j, pair)) = pick {
            state.charge(instance, i, j, pair);
        }
        choices.push(pick);
    }
    choices
}

/// The random baseline: servers are drawn uniformly at random and the best
/// feasible model on the drawn server is used.
pub fn random_assignment<R: Rng + ?Sized>(instance: &ProblemInstance, rng: &mut R, policy: RandomPolicy) -> Schedule {
    let mut state = CapacityState::new(instance);
    let choices = random_with(instance, rng, policy, &mut state);
    Schedule::build(instance, &choices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::testkit::*;
    use crate::sched::gus;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn retry_matches_gus_when_only_one_pair_is_feasible() {
        let mut inst = two_tier(0.0, 180_000);
        // Local model too slow for the deadline; only the cloud works.
        inst.requests[0].max_completion_ms = 1000.0;
        let g = gus(&inst);
        for seed in 0..50 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            assert_eq!(random_assignment(&inst, &mut rng, RandomPolicy::Retry), g);
        }
    }

    #[test]
    fn nothing_feasible_means_all_drop() {
        let mut inst = two_tier(0.0, 180_000);
        inst.requests[0].min_accuracy = 1.0;
        for policy in [RandomPolicy::SinglePick, RandomPolicy::Retry] {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            let s = random_assignment(&inst, &mut rng, policy);
            assert!(s.assignments.iter().all(|a| a.is_drop()));
            assert_eq!(s.objective, 0.0);
        }
    }

    #[test]
    fn single_pick_drops_on_a_bad_draw() {
        let mut inst = two_tier(0.0, 180_000);
        inst.requests[0].max_completion_ms = 1000.0;
        let drops = (0..200)
            .filter(|&seed| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                random_assignment(&inst, &mut rng, RandomPolicy::SinglePick).assignments[0].is_drop()
            })
            .count();
        // Two servers, one of which fails: about half the draws drop.
        assert!((60..140).contains(&drops), "{drops}");
    }
}
