use rayon::prelude::*;

use super::RunResult;
use crate::error::{Error, Result};
use crate::scenario::{generate_instance, ScenarioConfig};
use crate::sched::Algorithm;

/// Derives an independent 64-bit seed for item `index` of a stream rooted at
/// `base` (SplitMix64 finalizer).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) fn canonical(algorithms: &[Algorithm]) -> Vec<Algorithm> {
    let mut algs = algorithms.to_vec();
    algs.sort();
    algs.dedup();
    algs
}

/// Runs every algorithm on the same freshly drawn instance, `runs` times.
///
/// Run `r` draws its instance from `derive_seed(base_seed, r)`, so results do
/// not depend on how runs are spread over threads. The output is ordered by
/// run, then by algorithm.
pub fn monte_carlo(
    config: &ScenarioConfig,
    algorithms: &[Algorithm],
    runs: u64,
    base_seed: u64,
) -> Result<Vec<RunResult>> {
    if runs == 0 {
        return Err(Error::InvalidConfig("runs must be at least 1".into()));
    }
    config.validate()?;
    let algs = canonical(algorithms);
    let per_run: Vec<Vec<RunResult>> = (0..runs)
        .into_par_iter()
        .map(|run| {
            let seed = derive_seed(base_seed, run);
            let instance = generate_instance(config, seed)?;
            let scheduler_seed = derive_seed(seed, 0);
            algs.iter()
                .map(|&alg| {
                    let schedule = alg.run(&instance, scheduler_seed)?;
                    Ok(RunResult::from_schedule(run, alg, &instance, &schedule))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(per_run.into_iter().flatten().collect())
}
