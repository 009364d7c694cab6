use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ProblemInstance;
use crate::sched::{Algorithm, Schedule};

pub const SCHEDULE_FILE_VERSION: u32 = 1;

/// A schedule saved together with the instance it was computed for, as
/// written by `solve` and read by `validate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleFile {
    pub version: u32,
    /// The producing algorithm. Its capacity relaxation is honoured when the
    /// file is validated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<Algorithm>,
    pub instance: ProblemInstance,
    pub schedule: Schedule,
}

impl ScheduleFile {
    pub fn new(algorithm: Algorithm, instance: ProblemInstance, schedule: Schedule) -> Self {
        Self { version: SCHEDULE_FILE_VERSION, algorithm: Some(algorithm), instance, schedule }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("schedule file is always serializable");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: ScheduleFile = serde_json::from_str(text)?;
        if file.version != SCHEDULE_FILE_VERSION {
            return Err(Error::InvalidConfig(format!("unsupported schedule file version {}", file.version)));
        }
        file.instance.validate()?;
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{generate_instance, ScenarioConfig};
    use crate::sched::gus;

    #[test]
    fn round_trip_is_exact() {
        let instance = generate_instance(&ScenarioConfig::small(), 3).unwrap();
        let schedule = gus(&instance);
        let file = ScheduleFile::new(Algorithm::Gus, instance, schedule);
        assert_eq!(ScheduleFile::parse(&file.to_json()).unwrap(), file);
    }
}
