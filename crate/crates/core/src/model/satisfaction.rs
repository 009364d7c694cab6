use super::instance::{Normalization, ProblemInstance};
use super::types::{Mode, Request, ServiceModel};
use crate::error::{Error, Result};
use crate::sched::CapacityState;

/// Completion time of serving `request` on `server` with `pair`:
/// queue delay plus processing delay, plus the transfer delay from the
/// covering server when the request is offloaded.
pub fn completion_time(
    instance: &ProblemInstance,
    request: usize,
    server: usize,
    pair: ServiceModel,
) -> Result<f64> {
    let req = &instance.requests[request];
    let srv = instance
        .servers
        .get(server)
        .ok_or_else(|| Error::ModelInconsistency(format!("unknown server {server}")))?;
    if !srv.hosts(pair) {
        return Err(Error::NotHosted { server, pair });
    }
    let comm = instance
        .delays
        .comm_delay_ms(req.covering_server, server, req.payload_bytes)
        .ok_or_else(|| {
            Error::ModelInconsistency(format!(
                "no bandwidth entry for link {} -> {server}",
                req.covering_server
            ))
        })?;
    let proc = instance.catalog.proc_delay_ms(srv.perf_class, pair);
    Ok(comm + req.queue_delay_ms + proc)
}

/// The satisfaction score of serving `request` with accuracy `accuracy`
/// in `completion_ms` milliseconds:
///
/// ```text
/// w_a * (accuracy - A) / max_accuracy + w_c * (C - completion) / max_completion
/// ```
///
/// The score is not clamped; it is negative whenever a threshold is missed
/// by more than the other term's slack.
pub fn user_satisfaction(
    request: &Request,
    accuracy: f64,
    completion_ms: f64,
    norm: &Normalization,
) -> f64 {
    request.weight_accuracy * (accuracy - request.min_accuracy) / norm.max_accuracy
        + request.weight_time * (request.max_completion_ms - completion_ms)
            / norm.max_completion_ms
}

/// Whether `pair` on `server` may serve `request` given the remaining
/// capacities in `state`.
pub fn is_candidate(
    instance: &ProblemInstance,
    request: usize,
    server: usize,
    pair: ServiceModel,
    state: &CapacityState,
) -> bool {
    let Some(srv) = instance.servers.get(server) else {
        return false;
    };
    if !srv.hosts(pair) {
        return false;
    }
    let req = &instance.requests[request];
    if instance.mode == Mode::Strict {
        let Ok(c) = completion_time(instance, request, server, pair) else {
            return false;
        };
        if instance.catalog.accuracy(pair) < req.min_accuracy || c > req.max_completion_ms {
            return false;
        }
    }
    if !state.has_compute(server, instance.catalog.compute_cost(pair)) {
        return false;
    }
    server == req.covering_server || state.has_comm(req.covering_server, instance.catalog.comm_cost(pair))
}

/// Whether the thresholds of `request` are met by `accuracy` and `completion_ms`.
pub fn meets_thresholds(request: &Request, accuracy: f64, completion_ms: f64) -> bool {
    accuracy >= request.min_accuracy && completion_ms <= request.max_completion_ms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::testkit::*;

    #[test]
    fn local_completion_is_queue_plus_processing() {
        let inst = two_tier(20.0, 180_000);
        assert_eq!(completion_time(&inst, 0, 0, ServiceModel::new(0, 0)).unwrap(), 1320.0);
    }

    #[test]
    fn cloud_completion_adds_transfer() {
        // 180000 bytes over 600 bytes/ms is 300 ms on the wire.
        let inst = two_tier(20.0, 180_000);
        assert_eq!(completion_time(&inst, 0, 1, ServiceModel::new(0, 1)).unwrap(), 620.0);
    }

    #[test]
    fn zero_queue_delay_gives_processing_time() {
        let inst = two_tier(0.0, 180_000);
        assert_eq!(completion_time(&inst, 0, 0, ServiceModel::new(0, 0)).unwrap(), 1300.0);
    }

    #[test]
    fn completion_errors() {
        let mut inst = two_tier(0.0, 1000);
        assert!(matches!(
            completion_time(&inst, 0, 0, ServiceModel::new(0, 1)),
            Err(Error::NotHosted { server: 0, .. })
        ));
        inst.delays = crate::model::DelayTable::new(2);
        assert!(matches!(
            completion_time(&inst, 0, 1, ServiceModel::new(0, 1)),
            Err(Error::ModelInconsistency(_))
        ));
    }

    #[test]
    fn satisfaction_worked_example() {
        let mut req = request(0, 0);
        req.min_accuracy = 0.45;
        req.max_completion_ms = 2000.0;
        let norm = Normalization { max_accuracy: 1.0, max_completion_ms: 12_000.0 };
        let us = user_satisfaction(&req, 0.60, 1400.0, &norm);
        assert!((us - 0.20).abs() < 1e-12, "{us}");
    }

    #[test]
    fn satisfaction_zero_at_thresholds() {
        let norm = Normalization { max_accuracy: 0.9, max_completion_ms: 5000.0 };
        for (wa, wc) in [(1.0, 1.0), (0.3, 0.7), (0.0, 1.0), (1.0, 0.0)] {
            let mut req = request(0, 0);
            req.weight_accuracy = wa;
            req.weight_time = wc;
            assert_eq!(user_satisfaction(&req, req.min_accuracy, req.max_completion_ms, &norm), 0.0);
        }
    }

    #[test]
    fn satisfaction_time_only_maximum() {
        let mut req = request(0, 0);
        req.weight_accuracy = 0.0;
        req.max_completion_ms = 12_000.0;
        let norm = Normalization { max_accuracy: 1.0, max_completion_ms: 12_000.0 };
        assert_eq!(user_satisfaction(&req, 0.2, 0.0, &norm), 1.0);
    }

    #[test]
    fn unreachable_accuracy_is_never_a_candidate() {
        let mut inst = two_tier(0.0, 1000);
        inst.requests[0].min_accuracy = 1.0;
        let state = CapacityState::new(&inst);
        for j in 0..2 {
            for l in 0..2 {
                assert!(!is_candidate(&inst, 0, j, ServiceModel::new(0, l), &state));
            }
        }
    }

    #[test]
    fn local_zero_cost_candidate() {
        let mut inst = two_tier(0.0, 1000);
        inst.catalog.set_costs(ServiceModel::new(0, 0), 0, 0);
        inst.servers[0].compute_capacity = 0;
        let state = CapacityState::new(&inst);
        assert!(is_candidate(&inst, 0, 0, ServiceModel::new(0, 0), &state));
    }

    #[test]
    fn exhausted_comm_blocks_offload() {
        let mut inst = two_tier(0.0, 1000);
        inst.servers[0].comm_capacity = 0;
        let state = CapacityState::new(&inst);
        assert!(!is_candidate(&inst, 0, 1, ServiceModel::new(0, 1), &state));
        // Local service does not touch the link.
        assert!(is_candidate(&inst, 0, 0, ServiceModel::new(0, 0), &state));
    }

    #[test]
    fn soft_mode_skips_thresholds() {
        let mut inst = two_tier(0.0, 1000);
        inst.requests[0].min_accuracy = 1.0;
        inst.requests[0].max_completion_ms = 1.0;
        let state = CapacityState::new(&inst);
        assert!(!is_candidate(&inst, 0, 0, ServiceModel::new(0, 0), &state));
        inst.mode = Mode::Soft;
        assert!(is_candidate(&inst, 0, 0, ServiceModel::new(0, 0), &state));
    }
}
