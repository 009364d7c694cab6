#![allow(dead_code)]

use edgesched::model::{Mode, ProblemInstance};
use edgesched::scenario::{generate_instance, ScenarioConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A preset with randomized load, capacities and mode. Every third seed uses
/// each of the three presets.
pub fn fuzz_config(seed: u64) -> ScenarioConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = match seed % 3 {
        0 => ScenarioConfig::small(),
        1 => ScenarioConfig::testbed_profile(),
        _ => ScenarioConfig::paper_default(),
    };
    c.n_requests = rng.random_range(1..=2 * c.n_requests);
    for class in &mut c.edge_classes {
        class.compute_capacity = rng.random_range(0..=2 * class.compute_capacity);
        class.comm_capacity = rng.random_range(0..=2 * class.comm_capacity);
    }
    c.cloud_class.compute_capacity = rng.random_range(0..=2 * c.cloud_class.compute_capacity.min(100));
    if rng.random_bool(0.2) {
        c.mode = Mode::Soft;
    }
    if rng.random_bool(0.2) {
        c.drop_penalty = rng.random_range(0.0..0.5);
    }
    c
}

pub fn fuzz_instance(seed: u64) -> ProblemInstance {
    generate_instance(&fuzz_config(seed), seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)).unwrap()
}

/// An instance drawn from the `small` preset with `n` requests.
pub fn small_instance(n: usize, seed: u64) -> ProblemInstance {
    let mut c = ScenarioConfig::small();
    c.n_requests = n;
    generate_instance(&c, seed).unwrap()
}
