use crate::model::{ProblemInstance, ServiceModel};

/// Which capacity constraints a scheduler ignores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Relaxation {
    pub compute: bool,
    pub comm: bool,
}

impl Relaxation {
    pub const NONE: Relaxation = Relaxation { compute: false, comm: false };
    pub const COMPUTE: Relaxation = Relaxation { compute: true, comm: false };
    pub const COMM: Relaxation = Relaxation { compute: false, comm: true };
}

/// Remaining computation and communication capacity of every server.
///
/// Relaxed dimensions always report enough capacity and are never charged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityState {
    remaining_compute: Vec<u32>,
    remaining_comm: Vec<u32>,
    relax: Relaxation,
}

impl CapacityState {
    pub fn new(instance: &ProblemInstance) -> Self {
        Self {
            remaining_compute: instance.servers.iter().map(|s| s.compute_capacity).collect(),
            remaining_comm: instance.servers.iter().map(|s| s.comm_capacity).collect(),
            relax: Relaxation::NONE,
        }
    }

    pub fn relaxed(mut self, relax: Relaxation) -> Self {
        self.relax = relax;
        self
    }

    pub fn relaxation(&self) -> Relaxation {
        self.relax
    }

    pub fn set_relaxation(&mut self, relax: Relaxation) {
        self.relax = relax;
    }

    pub fn remaining_compute(&self, server: usize) -> u32 {
        self.remaining_compute[server]
    }

    pub fn remaining_comm(&self, server: usize) -> u32 {
        self.remaining_comm[server]
    }

    pub fn has_compute(&self, server: usize, cost: u32) -> bool {
        self.relax.compute || self.remaining_compute[server] >= cost
    }

    pub fn has_comm(&self, server: usize, cost: u32) -> bool {
        self.relax.comm || self.remaining_comm[server] >= cost
    }

    /// Charges serving `request` with `pair` on `server`: computation at the
    /// server, communication at the covering server when offloaded.
    pub fn charge(&mut self, instance: &ProblemInstance, request: usize, server: usize, pair: ServiceModel) {
        let covering = instance.requests[request].covering_server;
        if !self.relax.compute {
            let v = instance.catalog.compute_cost(pair);
            self.remaining_compute[server] = self.remaining_compute[server]
                .checked_sub(v)
                .expect("compute capacity overdrawn");
        }
        if server != covering && !self.relax.comm {
            let u = instance.catalog.comm_cost(pair);
            self.remaining_comm[covering] = self.remaining_comm[covering]
                .checked_sub(u)
                .expect("communication capacity overdrawn");
        }
    }
}
