use serde::{Deserialize, Serialize};

use crate::model::ProblemInstance;
use crate::sched::{Algorithm, Decision, Schedule};

/// Aggregate outcome of one algorithm on one run (or one frame).
/// Percentages are fractions in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub run: u64,
    pub algorithm: Algorithm,
    pub n_requests: usize,
    pub satisfied_pct: f64,
    pub mean_us: f64,
    pub dropped_pct: f64,
    pub local_pct: f64,
    pub offload_cloud_pct: f64,
    pub offload_edge_pct: f64,
}

/// Running counts over one or more schedules.
#[derive(Debug, Clone, Default, PartialEq)]
pub(crate) struct Tally {
    n: usize,
    satisfied: usize,
    dropped: usize,
    local: usize,
    cloud: usize,
    edge: usize,
    us_sum: f64,
}

impl Tally {
    pub fn add(&mut self, instance: &ProblemInstance, schedule: &Schedule) {
        self.n += schedule.assignments.len();
        self.satisfied += schedule.satisfied_count;
        for a in &schedule.assignments {
            match a.decision {
                Decision::Drop => {
                    self.dropped += 1;
                    self.us_sum -= instance.drop_penalty;
                }
                Decision::Local => self.local += 1,
                Decision::OffloadCloud => self.cloud += 1,
                Decision::OffloadEdge => self.edge += 1,
            }
            if !a.is_drop() {
                self.us_sum += a.us;
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn result(&self, run: u64, algorithm: Algorithm) -> RunResult {
        let n = self.n.max(1) as f64;
        RunResult {
            run,
            algorithm,
            n_requests: self.n,
            satisfied_pct: self.satisfied as f64 / n,
            mean_us: self.us_sum / n,
            dropped_pct: self.dropped as f64 / n,
            local_pct: self.local as f64 / n,
            offload_cloud_pct: self.cloud as f64 / n,
            offload_edge_pct: self.edge as f64 / n,
        }
    }
}

impl RunResult {
    pub fn from_schedule(run: u64, algorithm: Algorithm, instance: &ProblemInstance, schedule: &Schedule) -> Self {
        let mut tally = Tally::default();
        tally.add(instance, schedule);
        let mut r = tally.result(run, algorithm);
        // Identical to the schedule's own objective, including summation order.
        r.mean_us = schedule.objective;
        r
    }
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Mean metrics of one algorithm over many runs, with standard errors of the
/// two headline numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub algorithm: Algorithm,
    pub runs: usize,
    pub satisfied_pct: f64,
    pub satisfied_se: f64,
    pub mean_us: f64,
    pub mean_us_se: f64,
    pub dropped_pct: f64,
    pub local_pct: f64,
    pub offload_cloud_pct: f64,
    pub offload_edge_pct: f64,
}

/// Groups results by algorithm (in [`Algorithm`] order) and averages them.
pub fn aggregate(results: &[RunResult]) -> Vec<Aggregate> {
    let mut algorithms: Vec<Algorithm> = results.iter().map(|r| r.algorithm).collect();
    algorithms.sort();
    algorithms.dedup();
    algorithms
        .into_iter()
        .map(|algorithm| {
            let rows: Vec<&RunResult> = results.iter().filter(|r| r.algorithm == algorithm).collect();
            let col = |f: fn(&RunResult) -> f64| rows.iter().map(|r| f(r)).collect::<Vec<f64>>();
            let (satisfied_pct, satisfied_se) = mean_and_se(&col(|r| r.satisfied_pct));
            let (mean_us, mean_us_se) = mean_and_se(&col(|r| r.mean_us));
            Aggregate {
                algorithm,
                runs: rows.len(),
                satisfied_pct,
                satisfied_se,
                mean_us,
                mean_us_se,
                dropped_pct: mean_and_se(&col(|r| r.dropped_pct)).0,
                local_pct: mean_and_se(&col(|r| r.local_pct)).0,
                offload_cloud_pct: mean_and_se(&col(|r| r.offload_cloud_pct)).0,
                offload_edge_pct: mean_and_se(&col(|r| r.offload_edge_pct)).0,
            }
        })
        .collect()
}
