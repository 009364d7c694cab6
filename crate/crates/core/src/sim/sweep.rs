use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{aggregate, monte_carlo, Aggregate};
use crate::error::{Error, Result};
use crate::scenario::{DistributionSpec, ScenarioConfig};
use crate::sched::Algorithm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    RequestedDelayMean,
    RequestedAccuracyMean,
    NRequests,
    QueueDelayMax,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::RequestedDelayMean => "requested_delay_mean",
            SweepParameter::RequestedAccuracyMean => "requested_accuracy_mean",
            SweepParameter::NRequests => "n_requests",
            SweepParameter::QueueDelayMax => "queue_delay_max",
        }
    }

    /// A copy of `config` with this parameter set to `value`.
    pub fn apply(self, config: &ScenarioConfig, value: f64) -> Result<ScenarioConfig> {
        let mut c = config.clone();
        match self {
            SweepParameter::RequestedDelayMean => recenter(&mut c.requested_delay_ms, value),
            SweepParameter::RequestedAccuracyMean => recenter(&mut c.requested_accuracy, value),
            SweepParameter::NRequests => {
                if value < 1.0 || value.fract() != 0.0 {
                    return Err(Error::InvalidConfig(format!("n_requests must be a positive integer, got {value}")));
                }
                c.n_requests = value as usize;
            }
            SweepParameter::QueueDelayMax => match &mut c.queue_delay_ms {
                DistributionSpec::Uniform { lo, hi } | DistributionSpec::NormalTruncated { lo, hi, .. } => {
                    *hi = value;
                    *lo = lo.min(value);
                }
                DistributionSpec::Constant { value: v } => *v = value,
            },
        }
        c.validate()?;
        Ok(c)
    }
}

fn recenter(spec: &mut DistributionSpec, value: f64) {
    match spec {
        DistributionSpec::NormalTruncated { mean, .. } => *mean = value,
        DistributionSpec::Constant { value: v } => *v = value,
        DistributionSpec::Uniform { lo, hi } => {
            let half = (*hi - *lo) / 2.0;
            *lo = value - half;
            *hi = value + half;
        }
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            SweepParameter::RequestedDelayMean,
            SweepParameter::RequestedAccuracyMean,
            SweepParameter::NRequests,
            SweepParameter::QueueDelayMax,
        ]
        .into_iter()
        .find(|p| p.name() == s)
        .ok_or_else(|| Error::UnknownParameter(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
    pub runs_per_point: u64,
    pub algorithms: Vec<Algorithm>,
}

impl SweepSpec {
    /// Parses `PARAM=v1,v2,...`.
    pub fn parse_assignment(text: &str, runs_per_point: u64, algorithms: Vec<Algorithm>) -> Result<Self> {
        let (name, values) = text
            .split_once('=')
            .ok_or_else(|| Error::InvalidConfig(format!("expected PARAM=v1,v2,... but got `{text}`")))?;
        let parameter = name.trim().parse()?;
        let values = values
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::InvalidConfig(format!("sweep value `{v}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let spec = Self { parameter, values, runs_per_point, algorithms };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::InvalidConfig("a sweep needs at least one value".into()));
        }
        let up = self.values.windows(2).all(|w| w[0] < w[1]);
        let down = self.values.windows(2).all(|w| w[0] > w[1]);
        if !(up || down) {
            return Err(Error::InvalidConfig("sweep values must be strictly monotone".into()));
        }
        if self.runs_per_point == 0 {
            return Err(Error::InvalidConfig("runs_per_point must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::InvalidConfig("a sweep needs at least one algorithm".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub parameter: SweepParameter,
    pub value: f64,
    pub stats: Aggregate,
}

/// Runs [`monte_carlo`] at every sweep value. Every point reuses `base_seed`,
/// so neighbouring points are compared on matched random streams.
pub fn sweep(spec: &SweepSpec, base_config: &ScenarioConfig, base_seed: u64) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let mut rows = Vec::new();
    for &value in &spec.values {
        let config = spec.parameter.apply(base_config, value)?;
        let results = monte_carlo(&config, &spec.algorithms, spec.runs_per_point, base_seed)?;
        rows.extend(aggregate(&results).into_iter().map(|stats| SweepRow {
            parameter: spec.parameter,
            value,
            stats,
        }));
    }
    Ok(rows)
}
