use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Mode;
use crate::scenario::ScenarioConfig;
use crate::sched::Algorithm;
use crate::sim::{FramedParams, SweepSpec};

pub const CONFIG_VERSION: u32 = 1;

fn default_algorithms() -> Vec<Algorithm> {
    Algorithm::HEURISTICS.to_vec()
}

fn default_runs() -> u64 {
    100
}

/// Contents of a `--config` JSON file. Command-line flags override the
/// corresponding fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CliConfig {
    pub version: u32,
    pub scenario: ScenarioConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<Algorithm>,
    #[serde(default = "default_runs")]
    pub runs: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Overrides `scenario.mode` when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub framed: Option<FramedParams>,
}

impl CliConfig {
    pub fn new(scenario: ScenarioConfig) -> Self {
        Self {
            version: CONFIG_VERSION,
            scenario,
            sweep: None,
            algorithms: default_algorithms(),
            runs: default_runs(),
            seed: 0,
            output: None,
            mode: None,
            framed: None,
        }
    }

    /// Parses and validates a config document. Errors name the offending
    /// line and column or field.
    pub fn parse(text: &str) -> Result<Self> {
        let config: CliConfig =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != CONFIG_VERSION {
            return Err(Error::InvalidConfig(format!(
                "unsupported config version {} (expected {CONFIG_VERSION})",
                self.version
            )));
        }
        if self.algorithms.is_empty() {
            return Err(Error::InvalidConfig("algorithms must not be empty".into()));
        }
        if self.runs == 0 {
            return Err(Error::InvalidConfig("runs must be at least 1".into()));
        }
        self.scenario.validate()?;
        if let Some(s) = &self.sweep {
            s.validate()?;
        }
        if let Some(f) = &self.framed {
            f.validate()?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config is always serializable")
    }

    /// The scenario with the mode override applied.
    pub fn effective_scenario(&self) -> ScenarioConfig {
        let mut s = self.scenario.clone();
        if let Some(mode) = self.mode {
            s.mode = mode;
        }
        s
    }
}

/// Resolves `--config`: a built-in scenario name, or a path to a JSON file.
pub fn load_config(arg: &str) -> Result<CliConfig> {
    if let Some(scenario) = ScenarioConfig::builtin(arg) {
        return Ok(CliConfig::new(scenario));
    }
    let text = std::fs::read_to_string(arg).map_err(|e| {
        Error::InvalidConfig(format!(
            "`{arg}` is neither a built-in scenario ({}) nor a readable file: {e}",
            ScenarioConfig::BUILTIN_NAMES.join(", ")
        ))
    })?;
    CliConfig::parse(&text).map_err(|e| match e {
        Error::InvalidConfig(m) => Error::InvalidConfig(format!("{arg}: {m}")),
        other => other,
    })
}
