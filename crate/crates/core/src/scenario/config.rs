use serde::{Deserialize, Serialize};

use super::DistributionSpec;
use crate::error::{Error, Result};
use crate::model::Mode;

/// A family of servers sharing capacities, processing speed and the number
/// of (service, model) pairs they can store.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ServerClassProfile {
    pub name: String,
    /// Processing delay of one model. Drawn once per (service, model) and
    /// sorted so that higher model indices are slower.
    pub proc_delay_ms: DistributionSpec,
    pub compute_capacity: u32,
    pub comm_capacity: u32,
    pub placement_slots: usize,
}

/// How per-model accuracies are produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelAccuracySpec {
    /// For each service, draw one value per model and sort ascending, so
    /// higher model indices are more accurate.
    SortedDraw { distribution: DistributionSpec },
    /// Fixed accuracy per model index, shared by all services.
    PerModel { values: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandwidthSpec {
    pub edge_edge: f64,
    pub edge_cloud: f64,
}

/// Everything needed to draw a random problem instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub n_requests: usize,
    pub n_services: usize,
    pub n_models: usize,
    pub n_edge_servers: usize,
    /// Edge server `j` uses class `edge_classes[j % edge_classes.len()]`.
    pub edge_classes: Vec<ServerClassProfile>,
    pub n_cloud_servers: usize,
    pub cloud_class: ServerClassProfile,
    pub requested_accuracy: DistributionSpec,
    pub requested_delay_ms: DistributionSpec,
    pub queue_delay_ms: DistributionSpec,
    pub payload_bytes: DistributionSpec,
    pub model_accuracy: ModelAccuracySpec,
    /// Model indices that are never placed on edge servers.
    #[serde(default)]
    pub cloud_only_models: Vec<usize>,
    pub weight_accuracy: f64,
    pub weight_time: f64,
    pub max_accuracy: f64,
    pub max_completion_ms: f64,
    pub bandwidth: BandwidthSpec,
    #[serde(default = "one")]
    pub compute_cost: u32,
    #[serde(default = "one")]
    pub comm_cost: u32,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub drop_penalty: f64,
}

fn one() -> u32 {
    1
}

impl ScenarioConfig {
    /// The numerical-evaluation setup: 100 requests, 9 edge servers in three
    /// classes plus one cloud, 100 services with 10 models each.
    pub fn paper_default() -> Self {
        let class = |name: &str, lo: f64, hi: f64, compute, comm, slots| ServerClassProfile {
            name: name.into(),
            proc_delay_ms: DistributionSpec::uniform(lo, hi),
            compute_capacity: compute,
            comm_capacity: comm,
            placement_slots: slots,
        };
        Self {
            n_requests: 100,
            n_services: 100,
            n_models: 10,
            n_edge_servers: 9,
            edge_classes: vec![
                class("small", 1150.0, 1300.0, 3, 5, 10),
                class("medium", 1050.0, 1200.0, 5, 8, 20),
                class("large", 950.0, 1100.0, 8, 10, 40),
            ],
            n_cloud_servers: 1,
            cloud_class: ServerClassProfile {
                name: "cloud".into(),
                proc_delay_ms: DistributionSpec::constant(300.0),
                compute_capacity: 40,
                comm_capacity: 0,
                placement_slots: 1000,
            },
            requested_accuracy: DistributionSpec::normal(0.45, 0.10, 0.0, 1.0),
            requested_delay_ms: DistributionSpec::normal(2000.0, 400.0, 0.0, 12_000.0),
            queue_delay_ms: DistributionSpec::uniform(0.0, 50.0),
            payload_bytes: DistributionSpec::constant(180_000.0),
            model_accuracy: ModelAccuracySpec::SortedDraw {
                distribution: DistributionSpec::uniform(0.30, 0.95),
            },
            cloud_only_models: Vec::new(),
            weight_accuracy: 1.0,
            weight_time: 1.0,
            max_accuracy: 1.0,
            max_completion_ms: 12_000.0,
            bandwidth: BandwidthSpec { edge_edge: 600.0, edge_cloud: 600.0 },
            compute_cost: 1,
            comm_cost: 1,
            mode: Mode::Strict,
            drop_penalty: 0.0,
        }
    }

    /// The hardware testbed: two edge servers running a fast, less accurate
    /// model and one cloud server that alone runs the accurate model.
    /// Thresholds are fixed (53 s, 50 %), each edge can run 3 inferences and
    /// forward 10 images per frame, links carry 600 bytes/ms.
    pub fn testbed_profile() -> Self {
        Self {
            n_requests: 8,
            n_services: 1,
            n_models: 2,
            n_edge_servers: 2,
            edge_classes: vec![ServerClassProfile {
                name: "edge".into(),
                proc_delay_ms: DistributionSpec::constant(1300.0),
                compute_capacity: 3,
                comm_capacity: 10,
                placement_slots: 1,
            }],
            n_cloud_servers: 1,
            cloud_class: ServerClassProfile {
                name: "cloud".into(),
                proc_delay_ms: DistributionSpec::constant(300.0),
                compute_capacity: 1000,
                comm_capacity: 0,
                placement_slots: 2,
            },
            requested_accuracy: DistributionSpec::constant(0.5),
            requested_delay_ms: DistributionSpec::constant(53_000.0),
            // A request waits at most one 3 s frame before being scheduled.
            queue_delay_ms: DistributionSpec::uniform(0.0, 3000.0),
            payload_bytes: DistributionSpec::constant(180_000.0),
            model_accuracy: ModelAccuracySpec::PerModel { values: vec![0.575, 0.698] },
            cloud_only_models: vec![1],
            weight_accuracy: 1.0,
            weight_time: 1.0,
            max_accuracy: 1.0,
            max_completion_ms: 12_000.0,
            bandwidth: BandwidthSpec { edge_edge: 600.0, edge_cloud: 600.0 },
            compute_cost: 1,
            comm_cost: 1,
            mode: Mode::Strict,
            drop_penalty: 0.0,
        }
    }

    /// A small, capacity-tight setup that the exact solvers handle quickly:
    /// 6 requests, 2 edge servers, 1 cloud, 2 services with 2 models each.
    pub fn small() -> Self {
        Self {
            n_requests: 6,
            n_services: 2,
            n_models: 2,
            n_edge_servers: 2,
            edge_classes: vec![ServerClassProfile {
                name: "edge".into(),
                proc_delay_ms: DistributionSpec::uniform(950.0, 1300.0),
                compute_capacity: 2,
                comm_capacity: 1,
                placement_slots: 2,
            }],
            n_cloud_servers: 1,
            cloud_class: ServerClassProfile {
                name: "cloud".into(),
                proc_delay_ms: DistributionSpec::constant(300.0),
                compute_capacity: 2,
                comm_capacity: 0,
                placement_slots: 4,
            },
            requested_accuracy: DistributionSpec::normal(0.45, 0.10, 0.0, 1.0),
            requested_delay_ms: DistributionSpec::normal(2000.0, 400.0, 0.0, 12_000.0),
            queue_delay_ms: DistributionSpec::uniform(0.0, 50.0),
            payload_bytes: DistributionSpec::constant(180_000.0),
            model_accuracy: ModelAccuracySpec::SortedDraw {
                distribution: DistributionSpec::uniform(0.30, 0.95),
            },
            cloud_only_models: Vec::new(),
            weight_accuracy: 1.0,
            weight_time: 1.0,
            max_accuracy: 1.0,
            max_completion_ms: 12_000.0,
            bandwidth: BandwidthSpec { edge_edge: 600.0, edge_cloud: 600.0 },
            compute_cost: 1,
            comm_cost: 1,
            mode: Mode::Strict,
            drop_penalty: 0.0,
        }
    }

    /// Looks up a built-in config by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "paper_default" | "paper-default" | "default" => Some(Self::paper_default()),
            "testbed" => Some(Self::testbed_profile()),
            "small" => Some(Self::small()),
            _ => None,
        }
    }

    pub const BUILTIN_NAMES: [&'static str; 3] = ["paper_default", "testbed", "small"];

    /// Model indices that may be placed on edge servers.
    pub(crate) fn edge_pair_count(&self) -> usize {
        let edge_models = (0..self.n_models)
            .filter(|l| !self.cloud_only_models.contains(l))
            .count();
        self.n_services * edge_models
    }

    pub fn validate(&self) -> Result<()> {
        self.check().map_err(Error::InvalidConfig)
    }

    fn check(&self) -> std::result::Result<(), String> {
        for (name, v) in [
            ("n_requests", self.n_requests),
            ("n_services", self.n_services),
            ("n_models", self.n_models),
            ("n_edge_servers", self.n_edge_servers),
        ] {
            if v == 0 {
                return Err(format!("{name} must be at least 1"));
            }
        }
        if self.edge_classes.is_empty() {
            return Err("edge_classes must name at least one class".into());
        }
        let edge_pairs = self.edge_pair_count();
        for class in &self.edge_classes {
            class.proc_delay_ms.validate_within(&format!("{}.proc_delay_ms", class.name), 0.0, f64::MAX)?;
            if class.placement_slots > edge_pairs {
                return Err(format!(
                    "class {} wants {} placed pairs but only {edge_pairs} (service, model) pairs may go on edge servers",
                    class.name, class.placement_slots
                ));
            }
        }
        let all_pairs = self.n_services * self.n_models;
        self.cloud_class
            .proc_delay_ms
            .validate_within("cloud_class.proc_delay_ms", 0.0, f64::MAX)?;
        if self.cloud_class.placement_slots != all_pairs {
            return Err(format!(
                "cloud_class.placement_slots must equal n_services * n_models = {all_pairs}, got {}",
                self.cloud_class.placement_slots
            ));
        }
        if let Some(l) = self.cloud_only_models.iter().find(|l| **l >= self.n_models) {
            return Err(format!("cloud_only_models names model {l} but n_models is {}", self.n_models));
        }
        self.requested_accuracy.validate_within("requested_accuracy", 0.0, 1.0)?;
        self.requested_delay_ms.validate_within("requested_delay_ms", 0.0, f64::MAX)?;
        self.queue_delay_ms.validate_within("queue_delay_ms", 0.0, f64::MAX)?;
        self.payload_bytes.validate_within("payload_bytes", 0.0, u64::MAX as f64)?;
        match &self.model_accuracy {
            ModelAccuracySpec::SortedDraw { distribution } => {
                distribution.validate_within("model_accuracy.distribution", 0.0, 1.0)?
            }
            ModelAccuracySpec::PerModel { values } => {
                if values.len() != self.n_models {
                    return Err(format!(
                        "model_accuracy.values has {} entries for {} models",
                        values.len(),
                        self.n_models
                    ));
                }
                if values.iter().any(|a| !(0.0..=1.0).contains(a)) {
                    return Err("model_accuracy.values must lie in [0, 1]".into());
                }
            }
        }
        for (name, w) in [("weight_accuracy", self.weight_accuracy), ("weight_time", self.weight_time)] {
            if !(0.0..=1.0).contains(&w) {
                return Err(format!("{name} must lie in [0, 1], got {w}"));
            }
        }
        if !(self.max_accuracy > 0.0 && self.max_accuracy.is_finite()) {
            return Err("max_accuracy must be positive".into());
        }
        if !(self.max_completion_ms > 0.0 && self.max_completion_ms.is_finite()) {
            return Err("max_completion_ms must be positive".into());
        }
        for (name, bw) in [("bandwidth.edge_edge", self.bandwidth.edge_edge), ("bandwidth.edge_cloud", self.bandwidth.edge_cloud)] {
            if !(bw > 0.0 && bw.is_finite()) {
                return Err(format!("{name} must be positive, got {bw}"));
            }
        }
        if !(self.drop_penalty >= 0.0 && self.drop_penalty.is_finite()) {
            return Err("drop_penalty must be finite and >= 0".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_valid() {
        for name in ScenarioConfig::BUILTIN_NAMES {
            ScenarioConfig::builtin(name).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn paper_default_parameters() {
        let c = ScenarioConfig::paper_default();
        assert_eq!((c.n_requests, c.n_edge_servers + c.n_cloud_servers, c.n_services, c.n_models), (100, 10, 100, 10));
        assert_eq!(c.requested_accuracy, DistributionSpec::normal(0.45, 0.10, 0.0, 1.0));
        assert_eq!(c.queue_delay_ms, DistributionSpec::uniform(0.0, 50.0));
        assert_eq!((c.max_accuracy, c.max_completion_ms), (1.0, 12_000.0));
        assert_eq!(c.cloud_class.proc_delay_ms, DistributionSpec::constant(300.0));
        for class in &c.edge_classes {
            let (lo, hi) = class.proc_delay_ms.support();
            assert!(lo >= 950.0 && hi <= 1300.0);
        }
    }

    #[test]
    fn testbed_parameters() {
        let c = ScenarioConfig::testbed_profile();
        assert_eq!(c.requested_delay_ms, DistributionSpec::constant(53_000.0));
        assert_eq!(c.requested_accuracy, DistributionSpec::constant(0.5));
        assert_eq!((c.n_edge_servers, c.n_cloud_servers), (2, 1));
        let edge = &c.edge_classes[0];
        assert_eq!((edge.compute_capacity, edge.comm_capacity), (3, 10));
        assert_eq!(c.bandwidth.edge_cloud, 600.0);
    }

    #[test]
    fn oversubscribed_placement_is_rejected() {
        let mut c = ScenarioConfig::small();
        c.edge_classes[0].placement_slots = 5;
        assert!(matches!(c.validate(), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let mut v = serde_json::to_value(ScenarioConfig::small()).unwrap();
        v["n_request"] = 3.into();
        assert!(serde_json::from_value::<ScenarioConfig>(v).is_err());
    }

    #[test]
    fn json_round_trip() {
        for name in ScenarioConfig::BUILTIN_NAMES {
            let c = ScenarioConfig::builtin(name).unwrap();
            let text = serde_json::to_string_pretty(&c).unwrap();
            assert_eq!(serde_json::from_str::<ScenarioConfig>(&text).unwrap(), c);
        }
    }
}
