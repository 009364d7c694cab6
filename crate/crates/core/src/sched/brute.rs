use super::{check_choices, evaluate, objective, CapacityState, Choice, Schedule};
use crate::error::{Error, Result};
use crate::model::ProblemInstance;

/// Largest search space `(|M|·|L| + 1)^|N|` the exhaustive solver accepts.
pub const BRUTE_FORCE_LIMIT: f64 = 1e7;

/// Exhaustive search over every decision vector. Each vector is checked
/// with [`check_choices`] and the best feasible one is returned.
///
/// This is the reference the exact solver is tested against, so it
/// deliberately shares nothing with it beyond the objective function.
pub fn brute_force(instance: &ProblemInstance) -> Result<Schedule> {
    brute_force_with(instance, &CapacityState::new(instance))
}

pub(crate) fn brute_force_with(instance: &ProblemInstance, limits: &CapacityState) -> Result<Schedule> {
    let n = instance.n_requests();
    let per_request = (instance.servers.len() * instance.catalog.n_models + 1) as f64;
    let size = per_request.powi(n as i32);
    if size > BRUTE_FORCE_LIMIT {
        return Err(Error::InstanceTooLarge { solver: "brute-force", size, limit: BRUTE_FORCE_LIMIT });
    }

    // Every hosted pair of the requested service, plus "drop" at index 0.
    let domains: Vec<Vec<(Choice, Option<f64>)>> = (0..n)
        .map(|i| {
            let service = instance.requests[i].service;
            let mut d = vec![(None, None)];
            for server in &instance.servers {
                for pair in server.models_of(service) {
                    let us = evaluate(instance, i, server.id, pair).map(|(_, _, us)| us);
                    d.push((Some((server.id, pair)), us));
                }
            }
            d
        })
        .collect();

    let mut digits = vec![0usize; n];
    let mut choices: Vec<Choice> = vec![None; n];
    let mut best: Option<(f64, Vec<Choice>)> = None;
    loop {
        for i in 0..n {
            choices[i] = domains[i][digits[i]].0;
        }
        if check_choices(instance, &choices, limits).is_ok() {
            let value = objective(instance, (0..n).map(|i| domains[i][digits[i]].1));
            if best.as_ref().is_none_or(|(b, _)| value > *b) {
                best = Some((value, choices.clone()));
            }
        }
        // Odometer increment.
        let mut pos = 0;
        while pos < n {
            digits[pos] += 1;
            if digits[pos] < domains[pos].len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if pos == n {
            break;
        }
    }
    let (_, choices) = best.expect("the all-drop vector is always feasible");
    Ok(Schedule::build(instance, &choices))
}
