//! Randomized problem instances: server classes, model placement, request
//! distributions and the built-in configurations.

mod config;
mod dist;
mod generate;

pub use config::{BandwidthSpec, ModelAccuracySpec, ScenarioConfig, ServerClassProfile};
pub use dist::DistributionSpec;
pub use generate::generate_instance;

pub(crate) use generate::{build_fabric, draw_request, finish, Fabric};

/// Same as [`ScenarioConfig::testbed_profile`].
pub fn testbed_profile() -> ScenarioConfig {
    ScenarioConfig::testbed_profile()
}
