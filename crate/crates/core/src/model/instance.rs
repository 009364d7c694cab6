use serde::{Deserialize, Serialize};

use super::types::{DelayTable, Mode, ModelCatalog, Request, Server, ServerKind};
use crate::error::{Error, Result};

/// The two constants that normalize the satisfaction score: the best
/// accuracy and the worst completion time in the system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    pub max_accuracy: f64,
    pub max_completion_ms: f64,
}

/// A complete input to the satisfaction-maximizing assignment problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemInstance {
    pub requests: Vec<Request>,
    pub servers: Vec<Server>,
    pub catalog: ModelCatalog,
    pub delays: DelayTable,
    pub max_accuracy: f64,
    pub max_completion_ms: f64,
    #[serde(default)]
    pub mode: Mode,
    /// Objective penalty per dropped request. Zero reproduces the plain
    /// mean-satisfaction objective.
    #[serde(default)]
    pub drop_penalty: f64,
}

impl ProblemInstance {
    pub fn norm(&self) -> Normalization {
        Normalization {
            max_accuracy: self.max_accuracy,
            max_completion_ms: self.max_completion_ms,
        }
    }

    pub fn n_requests(&self) -> usize {
        self.requests.len()
    }

    /// Largest completion time of any hosted pair that a request could be
    /// sent to. Pairs with missing links are skipped.
    pub fn worst_completion_ms(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for req in &self.requests {
            for server in &self.servers {
                let Some(comm) =
                    self.delays
                        .comm_delay_ms(req.covering_server, server.id, req.payload_bytes)
                else {
                    continue;
                };
                for pair in server.models_of(req.service) {
                    let proc = self.catalog.proc_delay_ms(server.perf_class, pair);
                    worst = worst.max(comm + req.queue_delay_ms + proc);
                }
            }
        }
        worst
    }

    /// Checks every structural invariant of the instance.
    pub fn validate(&self) -> Result<()> {
        self.check().map_err(Error::InvalidInstance)
    }

    fn check(&self) -> std::result::Result<(), String> {
        self.catalog.check()?;
        if !(self.max_accuracy > 0.0 && self.max_accuracy.is_finite()) {
            return Err(format!("max_accuracy must be positive, got {}", self.max_accuracy));
        }
        if !(self.max_completion_ms > 0.0 && self.max_completion_ms.is_finite()) {
            return Err(format!(
                "max_completion_ms must be positive, got {}",
                self.max_completion_ms
            ));
        }
        let best = self.catalog.max_accuracy();
        if self.max_accuracy < best {
            return Err(format!(
                "max_accuracy {} is below the best catalog accuracy {best}",
                self.max_accuracy
            ));
        }
        if !self.drop_penalty.is_finite() || self.drop_penalty < 0.0 {
            return Err(format!("drop_penalty must be finite and >= 0, got {}", self.drop_penalty));
        }
        if self.delays.n_servers() != self.servers.len() {
            return Err("delay table size does not match the server list".into());
        }

        for (j, server) in self.servers.iter().enumerate() {
            if server.id != j {
                return Err(format!("server at position {j} has id {}", server.id));
            }
            if server.perf_class >= self.catalog.perf_classes.len() {
                return Err(format!("server {j} has unknown perf class {}", server.perf_class));
            }
            if let Some(p) = server.hosted.iter().find(|p| !self.catalog.contains(**p)) {
                return Err(format!("server {j} hosts {p} which is not in the catalog"));
            }
            if server.is_cloud() && server.hosted.len() != self.catalog.pairs().count() {
                return Err(format!("cloud server {j} must host every catalog pair"));
            }
        }

        for (a, sa) in self.servers.iter().enumerate() {
            if sa.kind != ServerKind::Edge {
                continue;
            }
            for (b, sb) in self.servers.iter().enumerate() {
                if a == b {
                    continue;
                }
                match self.delays.bandwidth(a, b) {
                    Some(bw) if bw > 0.0 && bw.is_finite() => {}
                    Some(bw) => return Err(format!("bandwidth {a}->{b} must be positive, got {bw}")),
                    None => {
                        return Err(format!(
                            "missing link between edge server {a} and {} server {b}",
                            if sb.is_cloud() { "cloud" } else { "edge" }
                        ))
                    }
                }
            }
        }

        for (i, req) in self.requests.iter().enumerate() {
            if req.id != i {
                return Err(format!("request at position {i} has id {}", req.id));
            }
            if req.service >= self.catalog.n_services {
                return Err(format!("request {i} asks for unknown service {}", req.service));
            }
            if !(0.0..=1.0).contains(&req.min_accuracy) {
                return Err(format!("request {i}: min_accuracy {} outside [0, 1]", req.min_accuracy));
            }
            if !(req.max_completion_ms >= 0.0 && req.max_completion_ms.is_finite()) {
                return Err(format!("request {i}: max_completion_ms must be >= 0"));
            }
            if !(0.0..=1.0).contains(&req.weight_accuracy) || !(0.0..=1.0).contains(&req.weight_time)
            {
                return Err(format!("request {i}: weights must lie in [0, 1]"));
            }
            if !(req.queue_delay_ms >= 0.0 && req.queue_delay_ms.is_finite()) {
                return Err(format!("request {i}: queue_delay_ms must be >= 0"));
            }
            match self.servers.get(req.covering_server) {
                Some(s) if s.kind == ServerKind::Edge => {}
                Some(_) => return Err(format!("request {i} is covered by a cloud server")),
                None => {
                    return Err(format!(
                        "request {i} is covered by unknown server {}",
                        req.covering_server
                    ))
                }
            }
        }

        let worst = self.worst_completion_ms();
        if self.max_completion_ms < worst {
            return Err(format!(
                "max_completion_ms {} is below the worst achievable completion time {worst}",
                self.max_completion_ms
            ));
        }
        Ok(())
    }
}
