use serde::{Deserialize, Serialize};

use super::{monte_carlo, RunResult};
use crate::error::Result;
use crate::scenario::ScenarioConfig;
use crate::sched::Algorithm;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub algorithm: Algorithm,
    pub mean_us: f64,
    pub satisfied_pct: f64,
    /// Mean, min and max of `objective / exact objective` over runs whose
    /// optimum is positive.
    pub ratio_mean: f64,
    pub ratio_min: f64,
    pub ratio_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub runs: u64,
    /// Runs left out of the ratios because their optimum is zero or negative.
    pub skipped: u64,
    pub rows: Vec<ComparisonRow>,
}

/// Runs `algorithms` and the exact solver on the same instances and reports
/// each algorithm's objective relative to the optimum.
pub fn compare_to_exact(
    config: &ScenarioConfig,
    algorithms: &[Algorithm],
    runs: u64,
    base_seed: u64,
) -> Result<Comparison> {
    let mut algs = algorithms.to_vec();
    algs.push(Algorithm::Exact);
    let results = monte_carlo(config, &algs, runs, base_seed)?;
    let exact: Vec<&RunResult> = results.iter().filter(|r| r.algorithm == Algorithm::Exact).collect();
    let skipped = exact.iter().filter(|r| r.mean_us <= 0.0).count() as u64;

    let mut kinds: Vec<Algorithm> = results.iter().map(|r| r.algorithm).collect();
    kinds.sort();
    kinds.dedup();
    let rows = kinds
        .into_iter()
        .map(|algorithm| {
            let mine: Vec<&RunResult> = results.iter().filter(|r| r.algorithm == algorithm).collect();
            let n = mine.len() as f64;
            let ratios: Vec<f64> = mine
                .iter()
                .zip(&exact)
                .filter(|(_, e)| e.mean_us > 0.0)
                .map(|(r, e)| r.mean_us / e.mean_us)
                .collect();
            let (ratio_mean, ratio_min, ratio_max) = if ratios.is_empty() {
                (f64::NAN, f64::NAN, f64::NAN)
            } else {
                (
                    ratios.iter().sum::<f64>() / ratios.len() as f64,
                    ratios.iter().copied().fold(f64::INFINITY, f64::min),
                    ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                )
            };
            ComparisonRow {
                algorithm,
                mean_us: mine.iter().map(|r| r.mean_us).sum::<f64>() / n,
                satisfied_pct: mine.iter().map(|r| r.satisfied_pct).sum::<f64>() / n,
                ratio_mean,
                ratio_min,
                ratio_max,
            }
        })
        .collect();
    Ok(Comparison { runs, skipped, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_ratio_is_one_and_gus_is_bounded() {
        let c = compare_to_exact(&ScenarioConfig::small(), &[Algorithm::Gus], 40, 3).unwrap();
        let exact = c.rows.iter().find(|r| r.algorithm == Algorithm::Exact).unwrap();
        assert_eq!(exact.ratio_min, 1.0);
        assert_eq!(exact.ratio_max, 1.0);
        let gus = c.rows.iter().find(|r| r.algorithm == Algorithm::Gus).unwrap();
        assert!(gus.ratio_max <= 1.0 + 1e-9);
        assert!(gus.ratio_mean > 0.5);
    }
}
