use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A (service, DL model) pair. Requests ask for a service; servers host
/// concrete model variants of services.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ServiceModel {
    pub service: usize,
    pub model: usize,
}

impl ServiceModel {
    pub const fn new(service: usize, model: usize) -> Self {
        Self { service, model }
    }
}

impl fmt::Display for ServiceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k{}/l{}", self.service, self.model)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ServerKind {
    Edge,
    Cloud,
}

/// Whether accuracy and delay thresholds are hard feasibility constraints
/// (`Strict`) or only enter the objective through the satisfaction score
/// (`Soft`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Strict,
    Soft,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Mode::Strict),
            "soft" => Ok(Mode::Soft),
            other => Err(format!("unknown mode `{other}` (expected strict or soft)")),
        }
    }
}

/// One user service demand, received by its covering edge server.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub id: usize,
    pub service: usize,
    /// Minimum acceptable accuracy, as a fraction in `[0, 1]`.
    pub min_accuracy: f64,
    /// Maximum tolerable completion time in milliseconds.
    pub max_completion_ms: f64,
    pub weight_accuracy: f64,
    pub weight_time: f64,
    pub covering_server: usize,
    pub payload_bytes: u64,
    /// Admission-queue delay at the covering server in milliseconds.
    pub queue_delay_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Server {
    pub id: usize,
    pub kind: ServerKind,
    /// Computation capacity per scheduling frame, in cost units.
    pub compute_capacity: u32,
    /// Communication capacity per scheduling frame, in cost units. Charged
    /// only when this server forwards one of its own requests elsewhere.
    pub comm_capacity: u32,
    /// Index into [`ModelCatalog::perf_classes`].
    pub perf_class: usize,
    pub hosted: BTreeSet<ServiceModel>,
}

impl Server {
    pub fn hosts(&self, pair: ServiceModel) -> bool {
        self.hosted.contains(&pair)
    }

    pub fn is_cloud(&self) -> bool {
        self.kind == ServerKind::Cloud
    }

    /// Hosted models of `service`, in ascending model order.
    pub fn models_of(&self, service: usize) -> impl Iterator<Item = ServiceModel> + '_ {
        self.hosted
            .range(ServiceModel::new(service, 0)..=ServiceModel::new(service, usize::MAX))
            .copied()
    }
}

/// Per-(service, model) accuracy and costs, and per-(class, service, model)
/// processing delays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelCatalog {
    pub n_services: usize,
    pub n_models: usize,
    pub perf_classes: Vec<String>,
    accuracy: Vec<f64>,
    proc_delay_ms: Vec<f64>,
    compute_cost: Vec<u32>,
    comm_cost: Vec<u32>,
}

impl ModelCatalog {
    /// A catalog with zero accuracies, zero delays and unit costs.
    pub fn new(n_services: usize, n_models: usize, perf_classes: Vec<String>) -> Self {
        let pairs = n_services * n_models;
        Self {
            n_services,
            n_models,
            accuracy: vec![0.0; pairs],
            proc_delay_ms: vec![0.0; pairs * perf_classes.len()],
            compute_cost: vec![1; pairs],
            comm_cost: vec![1; pairs],
            perf_classes,
        }
    }

    fn slot(&self, pair: ServiceModel) -> usize {
        debug_assert!(self.contains(pair), "{pair} outside catalog");
        pair.service * self.n_models + pair.model
    }

    pub fn contains(&self, pair: ServiceModel) -> bool {
        pair.service < self.n_services && pair.model < self.n_models
    }

    pub fn pairs(&self) -> impl Iterator<Item = ServiceModel> + '_ {
        (0..self.n_services)
            .flat_map(move |k| (0..self.n_models).map(move |l| ServiceModel::new(k, l)))
    }

    pub fn accuracy(&self, pair: ServiceModel) -> f64 {
        self.accuracy[self.slot(pair)]
    }

    pub fn proc_delay_ms(&self, class: usize, pair: ServiceModel) -> f64 {
        self.proc_delay_ms[class * self.n_services * self.n_models + self.slot(pair)]
    }

    pub fn compute_cost(&self, pair: ServiceModel) -> u32 {
        self.compute_cost[self.slot(pair)]
    }

    pub fn comm_cost(&self, pair: ServiceModel) -> u32 {
        self.comm_cost[self.slot(pair)]
    }

    pub fn set_accuracy(&mut self, pair: ServiceModel, accuracy: f64) -> &mut Self {
        let s = self.slot(pair);
        self.accuracy[s] = accuracy;
        self
    }

    pub fn set_proc_delay_ms(&mut self, class: usize, pair: ServiceModel, ms: f64) -> &mut Self {
        let s = class * self.n_services * self.n_models + self.slot(pair);
        self.proc_delay_ms[s] = ms;
        self
    }

    pub fn set_costs(&mut self, pair: ServiceModel, compute: u32, comm: u32) -> &mut Self {
        let s = self.slot(pair);
        self.compute_cost[s] = compute;
        self.comm_cost[s] = comm;
        self
    }

    pub fn max_accuracy(&self) -> f64 {
        self.accuracy.iter().copied().fold(0.0, f64::max)
    }

    pub(crate) fn check(&self) -> Result<(), String> {
        let pairs = self.n_services * self.n_models;
        if self.accuracy.len() != pairs
            || self.compute_cost.len() != pairs
            || self.comm_cost.len() != pairs
            || self.proc_delay_ms.len() != pairs * self.perf_classes.len()
        {
            return Err("catalog tables do not match its dimensions".into());
        }
        if let Some(a) = self.accuracy.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return Err(format!("model accuracy {a} outside [0, 1]"));
        }
        if let Some(d) = self.proc_delay_ms.iter().find(|d| !(d.is_finite() && **d >= 0.0)) {
            return Err(format!("processing delay {d} must be finite and non-negative"));
        }
        Ok(())
    }
}

/// Link bandwidths between servers, in bytes per millisecond.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DelayTable {
    n_servers: usize,
    bandwidth: Vec<Option<f64>>,
}

impl DelayTable {
    pub fn new(n_servers: usize) -> Self {
        Self {
            n_servers,
            bandwidth: vec![None; n_servers * n_servers],
        }
    }

    pub fn n_servers(&self) -> usize {
        self.n_servers
    }

    /// Sets a symmetric link.
    pub fn connect(&mut self, a: usize, b: usize, bytes_per_ms: f64) -> &mut Self {
        self.bandwidth[a * self.n_servers + b] = Some(bytes_per_ms);
        self.bandwidth[b * self.n_servers + a] = Some(bytes_per_ms);
        self
    }

    pub fn bandwidth(&self, from: usize, to: usize) -> Option<f64> {
        if from >= self.n_servers || to >= self.n_servers {
            return None;
        }
        self.bandwidth[from * self.n_servers + to]
    }

    /// Milliseconds to ship one byte from `from` to `to`; zero on the diagonal.
    pub fn comm_delay_per_byte(&self, from: usize, to: usize) -> Option<f64> {
        if from == to {
            return Some(0.0);
        }
        self.bandwidth(from, to).map(|bw| 1.0 / bw)
    }

    /// Milliseconds to ship `payload_bytes` from `from` to `to`.
    pub fn comm_delay_ms(&self, from: usize, to: usize, payload_bytes: u64) -> Option<f64> {
        if from == to {
            return Some(0.0);
        }
        self.bandwidth(from, to).map(|bw| payload_bytes as f64 / bw)
    }

    /// Multiplies every link bandwidth by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            n_servers: self.n_servers,
            bandwidth: self.bandwidth.iter().map(|b| b.map(|b| b * factor)).collect(),
        }
    }
}
