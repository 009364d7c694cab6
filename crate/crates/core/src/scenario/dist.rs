use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

/// A scalar distribution for scenario parameters. Units are implied by the
/// config field the spec is attached to (`_ms`, `_bytes`, fractions).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DistributionSpec {
    /// Normal draw clamped to `[lo, hi]`.
    NormalTruncated { mean: f64, std_dev: f64, lo: f64, hi: f64 },
    Uniform { lo: f64, hi: f64 },
    Constant { value: f64 },
}

impl DistributionSpec {
    pub fn constant(value: f64) -> Self {
        DistributionSpec::Constant { value }
    }

    pub fn uniform(lo: f64, hi: f64) -> Self {
        DistributionSpec::Uniform { lo, hi }
    }

    pub fn normal(mean: f64, std_dev: f64, lo: f64, hi: f64) -> Self {
        DistributionSpec::NormalTruncated { mean, std_dev, lo, hi }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            DistributionSpec::NormalTruncated { mean, std_dev, lo, hi } => {
                let normal = Normal::new(mean, std_dev).expect("validated normal parameters");
                normal.sample(rng).clamp(lo, hi)
            }
            DistributionSpec::Uniform { lo, hi } if lo == hi => lo,
            DistributionSpec::Uniform { lo, hi } => rng.random_range(lo..=hi),
            DistributionSpec::Constant { value } => value,
        }
    }

    /// Smallest and largest value a draw can take.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            DistributionSpec::NormalTruncated { lo, hi, .. } | DistributionSpec::Uniform { lo, hi } => (lo, hi),
            DistributionSpec::Constant { value } => (value, value),
        }
    }

    pub fn validate(&self, field: &str) -> Result<(), String> {
        let finite = |x: f64| x.is_finite();
        let ok = match *self {
            DistributionSpec::NormalTruncated { mean, std_dev, lo, hi } => {
                [mean, std_dev, lo, hi].into_iter().all(finite) && std_dev >= 0.0 && lo <= hi
            }
            DistributionSpec::Uniform { lo, hi } => finite(lo) && finite(hi) && lo <= hi,
            DistributionSpec::Constant { value } => finite(value),
        };
        if ok {
            Ok(())
        } else {
            Err(format!("{field}: invalid distribution {self:?}"))
        }
    }

    /// Validates and additionally requires the support to lie in `[lo, hi]`.
    pub fn validate_within(&self, field: &str, lo: f64, hi: f64) -> Result<(), String> {
        self.validate(field)?;
        let (a, b) = self.support();
        if a < lo || b > hi {
            return Err(format!("{field}: values must lie in [{lo}, {hi}], spec allows [{a}, {b}]"));
        }
        Ok(())
    }
}
