use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, LogNormal};
use serde::{Deserialize, Serialize};

use super::metrics::Tally;
use super::monte_carlo::{canonical, derive_seed};
use super::{BandwidthEstimator, RunResult};
use crate::error::{Error, Result};
use crate::model::{ProblemInstance, Request};
use crate::scenario::{build_fabric, draw_request, finish, Fabric, ScenarioConfig};
use crate::sched::{Algorithm, CapacityState};

/// Parameters of the time-driven simulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FramedParams {
    pub frames: usize,
    pub frame_len_ms: f64,
    /// A batch is dispatched as soon as an edge queue holds this many requests.
    pub queue_cap: usize,
    pub users_per_edge: usize,
    /// Poisson arrival rate of one user, in requests per second.
    pub rate_per_user_per_s: f64,
    /// Log-normal sigma of the measured edge-cloud throughput around its true value.
    pub noise_sigma: f64,
}

impl Default for FramedParams {
    fn default() -> Self {
        Self {
            frames: 100,
            frame_len_ms: 3000.0,
            queue_cap: 4,
            users_per_edge: 1,
            rate_per_user_per_s: 1.0,
            noise_sigma: 0.2,
        }
    }
}

impl FramedParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if self.frames == 0 {
            return bad("frames must be at least 1");
        }
        if !(self.frame_len_ms > 0.0 && self.frame_len_ms.is_finite()) {
            return bad("frame_len_ms must be positive");
        }
        if self.queue_cap == 0 {
            return bad("queue_cap must be at least 1");
        }
        if self.users_per_edge == 0 || !(self.rate_per_user_per_s > 0.0 && self.rate_per_user_per_s.is_finite()) {
            return bad("arrival rate must be positive");
        }
        if !(self.noise_sigma >= 0.0 && self.noise_sigma.is_finite()) {
            return bad("noise_sigma must be non-negative");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FramedReport {
    /// One row per (frame with arrivals, algorithm); `run` is the frame index.
    pub frames: Vec<RunResult>,
    /// Totals over the whole horizon; `run` is the number of frames.
    pub aggregate: Vec<RunResult>,
    /// Edge-cloud bandwidth estimate in force during each frame.
    pub bandwidth_estimates: Vec<f64>,
}

struct Arrival {
    at_ms: f64,
    edge: usize,
    request: Request,
}

/// Requests queued at one edge server, dispatched together.
struct Batch {
    at_ms: f64,
    members: Vec<Arrival>,
}

fn arrivals(config: &ScenarioConfig, params: &FramedParams, rng: &mut ChaCha8Rng) -> Vec<Arrival> {
    let horizon = params.frames as f64 * params.frame_len_ms;
    let rate_per_ms = params.users_per_edge as f64 * params.rate_per_user_per_s / 1000.0;
    let gap = Exp::new(rate_per_ms).expect("rate validated as positive");
    let mut out = Vec::new();
    for edge in 0..config.n_edge_servers {
        let mut t = gap.sample(rng);
        while t < horizon {
            let mut request = draw_request(config, 0, rng);
            request.covering_server = edge;
            out.push(Arrival { at_ms: t, edge, request });
            t += gap.sample(rng);
        }
    }
    out.sort_by(|a, b| a.at_ms.total_cmp(&b.at_ms).then(a.edge.cmp(&b.edge)));
    out
}

/// Splits one frame's arrivals into batches: a queue is flushed when it
/// reaches `queue_cap`, and whatever is left is flushed at the frame's end.
fn batches(frame_arrivals: Vec<Arrival>, n_edges: usize, cap: usize, frame_end: f64) -> Vec<Batch> {
    let mut queues: Vec<Vec<Arrival>> = (0..n_edges).map(|_| Vec::new()).collect();
    let mut out = Vec::new();
    for a in frame_arrivals {
        let (edge, at_ms) = (a.edge, a.at_ms);
        queues[edge].push(a);
        if queues[edge].len() == cap {
            out.push(Batch { at_ms, members: std::mem::take(&mut queues[edge]) });
        }
    }
    for q in queues.into_iter().filter(|q| !q.is_empty()) {
        out.push(Batch { at_ms: frame_end, members: q });
    }
    out
}

fn batch_instance(config: &ScenarioConfig, fabric: &Fabric, batch: &Batch) -> ProblemInstance {
    let requests = batch
        .members
        .iter()
        .enumerate()
        .map(|(id, a)| Request { id, queue_delay_ms: batch.at_ms - a.at_ms, ..a.request.clone() })
        .collect();
    finish(config, fabric.clone(), requests)
}

/// Time-driven simulation over `params.frames` frames.
///
/// Requests arrive at each edge server as a Poisson stream and wait in a
/// per-edge queue; their queueing delay is the time until their batch is
/// dispatched. Capacities reset at every frame boundary and are shared by all
/// batches within a frame. Edge-cloud transfer delays use the current
/// bandwidth estimate, which is updated once per frame from a noisy
/// measurement.
pub fn framed_simulation(
    config: &ScenarioConfig,
    params: &FramedParams,
    algorithms: &[Algorithm],
    seed: u64,
) -> Result<FramedReport> {
    config.validate()?;
    params.validate()?;
    let algs = canonical(algorithms);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base_fabric = build_fabric(config, &mut rng);
    let mut pending = arrivals(config, params, &mut rng).into_iter().peekable();
    let noise = LogNormal::new(0.0, params.noise_sigma).expect("sigma validated");
    let true_bandwidth = config.bandwidth.edge_cloud;

    let mut estimator = BandwidthEstimator::new(true_bandwidth);
    let mut totals = vec![Tally::default(); algs.len()];
    let mut frame_rows = Vec::new();
    let mut estimates = Vec::with_capacity(params.frames);
    let mut batch_counter = 0u64;

    for frame in 0..params.frames {
        let frame_end = (frame + 1) as f64 * params.frame_len_ms;
        estimates.push(estimator.expected());
        let mut fabric = base_fabric.clone();
        fabric.delays = base_fabric.delays.scaled(estimator.expected() / true_bandwidth);

        let mut in_frame = Vec::new();
        while let Some(a) = pending.next_if(|a| a.at_ms < frame_end) {
            in_frame.push(a);
        }
        let frame_batches = batches(in_frame, config.n_edge_servers, params.queue_cap, frame_end);

        let template = finish(config, fabric.clone(), Vec::new());
        let mut states: Vec<CapacityState> = algs.iter().map(|_| CapacityState::new(&template)).collect();
        let mut frame_tallies = vec![Tally::default(); algs.len()];
        for batch in &frame_batches {
            let instance = batch_instance(config, &fabric, batch);
            let batch_seed = derive_seed(seed, batch_counter);
            batch_counter += 1;
            for (k, &alg) in algs.iter().enumerate() {
                let schedule = alg.run_with(&instance, batch_seed, &mut states[k])?;
                frame_tallies[k].add(&instance, &schedule);
                totals[k].add(&instance, &schedule);
            }
        }
        for (k, &alg) in algs.iter().enumerate() {
            if !frame_tallies[k].is_empty() {
                frame_rows.push(frame_tallies[k].result(frame as u64, alg));
            }
        }

        let observed = true_bandwidth * noise.sample(&mut rng);
        estimator = estimator.update(observed)?;
    }

    let aggregate = algs
        .iter()
        .zip(&totals)
        .map(|(&alg, t)| t.result(params.frames as u64, alg))
        .collect();
    Ok(FramedReport { frames: frame_rows, aggregate, bandwidth_estimates: estimates })
}

/// Mean number of arrivals per frame across all edges.
pub fn expected_arrivals_per_frame(config: &ScenarioConfig, params: &FramedParams) -> f64 {
    config.n_edge_servers as f64 * params.users_per_edge as f64 * params.rate_per_user_per_s * params.frame_len_ms
        / 1000.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(frames: usize, queue_cap: usize) -> FramedParams {
        FramedParams { frames, queue_cap, ..FramedParams::default() }
    }

    #[test]
    fn deterministic() {
        let config = ScenarioConfig::testbed_profile();
        let a = framed_simulation(&config, &params(20, 3), &Algorithm::HEURISTICS, 3).unwrap();
        let b = framed_simulation(&config, &params(20, 3), &Algorithm::HEURISTICS, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn every_algorithm_sees_every_arrival() {
        let config = ScenarioConfig::testbed_profile();
        let report = framed_simulation(&config, &params(30, 2), &Algorithm::HEURISTICS, 8).unwrap();
        let n = report.aggregate[0].n_requests;
        assert!(n > 0);
        assert!(report.aggregate.iter().all(|r| r.n_requests == n));
        let per_frame: usize = report
            .frames
            .iter()
            .filter(|r| r.algorithm == Algorithm::Gus)
            .map(|r| r.n_requests)
            .sum();
        assert_eq!(per_frame, n);
    }

    #[test]
    fn arrival_count_matches_the_rate() {
        let config = ScenarioConfig::testbed_profile();
        let p = params(400, 4);
        let report = framed_simulation(&config, &p, &[Algorithm::Gus], 1).unwrap();
        let expected = expected_arrivals_per_frame(&config, &p) * p.frames as f64;
        let n = report.aggregate[0].n_requests as f64;
        // Poisson count: 4 standard deviations.
        assert!((n - expected).abs() < 4.0 * expected.sqrt(), "{n} vs {expected}");
    }

    #[test]
    fn queue_cap_one_means_no_waiting() {
        let mut config = ScenarioConfig::testbed_profile();
        config.n_requests = 1;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let p = params(5, 1);
        let list = arrivals(&config, &p, &mut rng);
        let n = list.len();
        let out = batches(list, config.n_edge_servers, 1, 1e12);
        assert_eq!(out.len(), n);
        assert!(out.iter().all(|b| b.members.len() == 1 && b.members[0].at_ms == b.at_ms));
    }

    #[test]
    fn noiseless_estimate_stays_put() {
        let config = ScenarioConfig::testbed_profile();
        let p = FramedParams { noise_sigma: 0.0, ..params(10, 3) };
        let report = framed_simulation(&config, &p, &[Algorithm::Gus], 2).unwrap();
        assert!(report.bandwidth_estimates.iter().all(|&b| b == config.bandwidth.edge_cloud));
    }

    #[test]
    fn rejects_bad_params() {
        let config = ScenarioConfig::testbed_profile();
        assert!(framed_simulation(&config, &params(0, 3), &[Algorithm::Gus], 0).is_err());
        assert!(framed_simulation(&config, &params(3, 0), &[Algorithm::Gus], 0).is_err());
    }
}
