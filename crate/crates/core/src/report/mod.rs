//! File formats: the JSON run configuration, result and sweep CSVs, and
//! saved schedules.

mod config;
mod csv;
mod schedule_file;

pub use config::{load_config, CliConfig, CONFIG_VERSION};
pub use csv::{format_results, parse_results, sweep_csv, write_results, RESULTS_HEADER, SWEEP_HEADER};
pub use schedule_file::{ScheduleFile, SCHEDULE_FILE_VERSION};
