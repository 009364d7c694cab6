use std::collections::BTreeSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ModelAccuracySpec, ScenarioConfig};
use crate::error::Result;
use crate::model::{
    DelayTable, ModelCatalog, ProblemInstance, Request, Server, ServerKind, ServiceModel,
};

fn sorted_draws<R: Rng>(rng: &mut R, n: usize, mut draw: impl FnMut(&mut R) -> f64) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| draw(rng)).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Server fabric and model catalog of a scenario: everything except the
/// requests.
#[derive(Clone)]
pub(crate) struct Fabric {
    pub servers: Vec<Server>,
    pub catalog: ModelCatalog,
    pub delays: DelayTable,
}

pub(crate) fn build_fabric<R: Rng>(config: &ScenarioConfig, rng: &mut R) -> Fabric {
    let (k_count, l_count) = (config.n_services, config.n_models);
    let mut classes: Vec<String> = config.edge_classes.iter().map(|c| c.name.clone()).collect();
    classes.push(config.cloud_class.name.clone());
    let cloud_class = classes.len() - 1;
    let mut catalog = ModelCatalog::new(k_count, l_count, classes);

    for k in 0..k_count {
        let accuracies = match &config.model_accuracy {
            ModelAccuracySpec::SortedDraw { distribution } => {
                sorted_draws(rng, l_count, |r| distribution.sample(r))
            }
            ModelAccuracySpec::PerModel { values } => values.clone(),
        };
        for (l, a) in accuracies.into_iter().enumerate() {
            let pair = ServiceModel::new(k, l);
            catalog.set_accuracy(pair, a);
            catalog.set_costs(pair, config.compute_cost, config.comm_cost);
        }
    }
    let profiles = config.edge_classes.iter().chain(std::iter::once(&config.cloud_class));
    for (class, profile) in profiles.enumerate() {
        for k in 0..k_count {
            let delays = sorted_draws(rng, l_count, |r| profile.proc_delay_ms.sample(r));
            for (l, d) in delays.into_iter().enumerate() {
                catalog.set_proc_delay_ms(class, ServiceModel::new(k, l), d);
            }
        }
    }

    let edge_pairs: Vec<ServiceModel> = catalog
        .pairs()
        .filter(|p| !config.cloud_only_models.contains(&p.model))
        .collect();
    let mut servers = Vec::with_capacity(config.n_edge_servers + config.n_cloud_servers);
    for j in 0..config.n_edge_servers {
        let class = j % config.edge_classes.len();
        let profile = &config.edge_classes[class];
        let hosted: BTreeSet<ServiceModel> = index::sample(rng, edge_pairs.len(), profile.placement_slots)
            .into_iter()
            .map(|x| edge_pairs[x])
            .collect();
        servers.push(Server {
            id: j,
            kind: ServerKind::Edge,
            compute_capacity: profile.compute_capacity,
            comm_capacity: profile.comm_capacity,
            perf_class: class,
            hosted,
        });
    }
    for c in 0..config.n_cloud_servers {
        servers.push(Server {
            id: config.n_edge_servers + c,
            kind: ServerKind::Cloud,
            compute_capacity: config.cloud_class.compute_capacity,
            comm_capacity: config.cloud_class.comm_capacity,
            perf_class: cloud_class,
            hosted: catalog.pairs().collect(),
        });
    }

    let mut delays = DelayTable::new(servers.len());
    for a in 0..servers.len() {
        for b in a + 1..servers.len() {
            let bw = match (servers[a].kind, servers[b].kind) {
                (ServerKind::Edge, ServerKind::Edge) => config.bandwidth.edge_edge,
                _ => config.bandwidth.edge_cloud,
            };
            delays.connect(a, b, bw);
        }
    }
    Fabric { servers, catalog, delays }
}

/// Draws one request from the scenario's distributions.
pub(crate) fn draw_request<R: Rng>(config: &ScenarioConfig, id: usize, rng: &mut R) -> Request {
    let service = rng.random_range(0..config.n_services);
    let covering_server = rng.random_range(0..config.n_edge_servers);
    Request {
        id,
        service,
        min_accuracy: config.requested_accuracy.sample(rng),
        max_completion_ms: config.requested_delay_ms.sample(rng),
        weight_accuracy: config.weight_accuracy,
        weight_time: config.weight_time,
        covering_server,
        payload_bytes: config.payload_bytes.sample(rng).round() as u64,
        queue_delay_ms: config.queue_delay_ms.sample(rng),
    }
}

/// Raises the configured normalization constants where the drawn instance
/// would otherwise exceed them.
pub(crate) fn finish(config: &ScenarioConfig, fabric: Fabric, requests: Vec<Request>) -> ProblemInstance {
    let mut instance = ProblemInstance {
        requests,
        max_accuracy: config.max_accuracy.max(fabric.catalog.max_accuracy()),
        servers: fabric.servers,
        catalog: fabric.catalog,
        delays: fabric.delays,
        max_completion_ms: config.max_completion_ms,
        mode: config.mode,
        drop_penalty: config.drop_penalty,
    };
    instance.max_completion_ms = instance.max_completion_ms.max(instance.worst_completion_ms());
    instance
}

/// Draws a problem instance. All randomness comes from `seed`, so the same
/// `(config, seed)` always yields the same instance.
pub fn generate_instance(config: &ScenarioConfig, seed: u64) -> Result<ProblemInstance> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fabric = build_fabric(config, &mut rng);
    let requests = (0..config.n_requests)
        .map(|i| draw_request(config, i, &mut rng))
        .collect();
    Ok(finish(config, fabric, requests))
}
