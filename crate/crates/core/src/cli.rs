//! The `edgesched` command line.
//!
//! Machine-readable output (CSV or JSON) goes to `--out` or standard output;
//! human summaries go to standard error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::model::{Mode, ProblemInstance};
use crate::report::{format_results, load_config, sweep_csv, CliConfig, ScheduleFile};
use crate::scenario::generate_instance;
use crate::sched::{parse_algorithms, validate};
use crate::sim::{aggregate, compare_to_exact, framed_simulation, monte_carlo, sweep, Aggregate, SweepSpec};

/// Exit code for a malformed config, flag value or input file.
pub const EXIT_BAD_INPUT: i32 = 2;
/// Exit code when an exact solver refuses an instance or runs out of budget.
pub const EXIT_TOO_LARGE: i32 = 3;
/// Exit code when `validate` finds a violated constraint.
pub const EXIT_INVALID_SCHEDULE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "edgesched", version, about = "User-satisfaction offloading schedulers and experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Built-in scenario name (paper_default, testbed, small) or a JSON config file.
    #[arg(long, default_value = "paper_default")]
    config: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    runs: Option<u64>,
    /// Comma separated algorithm names.
    #[arg(long)]
    algs: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    mode: Option<Mode>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Monte Carlo runs; one CSV row per (run, algorithm).
    Simulate(Common),
    /// Monte Carlo runs at each value of one scenario parameter.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// PARAM=v1,v2,... (overrides the config's sweep).
        #[arg(long)]
        sweep: Option<String>,
    },
    /// Frame-based simulation with Poisson arrivals and edge queues.
    Framed {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        frames: Option<usize>,
        #[arg(long)]
        queue_cap: Option<usize>,
    },
    /// Schedules one instance and writes the schedule file as JSON.
    Solve {
        #[command(flatten)]
        common: Common,
        /// Solve this instance (JSON) instead of drawing one from the config.
        #[arg(long)]
        instance: Option<PathBuf>,
    },
    /// Re-checks a schedule file against every constraint.
    Validate { file: PathBuf },
    /// Compares algorithms with the exact optimum on the same instances.
    Compare(Common),
    /// Prints the resolved configuration as JSON.
    ShowConfig(Common),
}

fn resolve(common: &Common) -> Result<CliConfig> {
    let mut cfg = load_config(&common.config)?;
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(runs) = common.runs {
        cfg.runs = runs;
    }
    if let Some(algs) = &common.algs {
        cfg.algorithms = parse_algorithms(algs)?;
    }
    if let Some(out) = &common.out {
        cfg.output = Some(out.clone());
    }
    if let Some(mode) = common.mode {
        cfg.mode = Some(mode);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut (dyn Write + Send)) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn summary(rows: &[Aggregate], stderr: &mut (dyn Write + Send)) -> Result<()> {
    for a in rows {
        writeln!(
            stderr,
            "{:<12} satisfied {:6.2}%  mean US {:.4}  local {:5.1}%  cloud {:5.1}%  edge {:5.1}%  dropped {:5.1}%",
            a.algorithm.name(),
            100.0 * a.satisfied_pct,
            a.mean_us,
            100.0 * a.local_pct,
            100.0 * a.offload_cloud_pct,
            100.0 * a.offload_edge_pct,
            100.0 * a.dropped_pct
        )?;
    }
    Ok(())
}

fn threads() -> Result<usize> {
    match std::env::var("EDGESCHED_THREADS") {
        Err(_) => Ok(0),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidConfig(format!("EDGESCHED_THREADS must be a non-negative integer, got `{v}`"))),
    }
}

fn execute(command: Command, stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)) -> Result<i32> {
    match command {
        Command::Simulate(common) => {
            let cfg = resolve(&common)?;
            let results = monte_carlo(&cfg.effective_scenario(), &cfg.algorithms, cfg.runs, cfg.seed)?;
            emit(cfg.output.as_deref(), &format_results(&results), stdout)?;
            summary(&aggregate(&results), stderr)?;
        }
        Command::Sweep { common, sweep: flag } => {
            let cfg = resolve(&common)?;
            let spec = match (flag, &cfg.sweep) {
                (Some(text), _) => SweepSpec::parse_assignment(&text, cfg.runs, cfg.algorithms.clone())?,
                (None, Some(spec)) => spec.clone(),
                (None, None) => return Err(Error::InvalidConfig("sweep needs --sweep PARAM=v1,v2,...".into())),
            };
            let rows = sweep(&spec, &cfg.effective_scenario(), cfg.seed)?;
            emit(cfg.output.as_deref(), &sweep_csv(&rows), stdout)?;
        }
        Command::Framed { common, frames, queue_cap } => {
            let cfg = resolve(&common)?;
            let mut params = cfg.framed.clone().unwrap_or_default();
            if let Some(f) = frames {
                params.frames = f;
            }
            if let Some(q) = queue_cap {
                params.queue_cap = q;
            }
            let report = framed_simulation(&cfg.effective_scenario(), &params, &cfg.algorithms, cfg.seed)?;
            emit(cfg.output.as_deref(), &format_results(&report.frames), stdout)?;
            let totals: Vec<Aggregate> = report.aggregate.iter().flat_map(|r| aggregate(std::slice::from_ref(r))).collect();
            summary(&totals, stderr)?;
        }
        Command::Solve { common, instance } => {
            let cfg = resolve(&common)?;
            let algorithm = cfg.algorithms[0];
            let mut inst = match instance {
                Some(path) => {
                    let inst: ProblemInstance = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                    inst.validate()?;
                    inst
                }
                None => generate_instance(&cfg.scenario, cfg.seed)?,
            };
            if let Some(mode) = cfg.mode {
                inst.mode = mode;
            }
            let schedule = algorithm.run(&inst, cfg.seed)?;
            writeln!(
                stderr,
                "{algorithm}: objective {:.6}, {}/{} requests satisfied ({:.2}%)",
                schedule.objective,
                schedule.satisfied_count,
                inst.n_requests(),
                100.0 * schedule.satisfied_count as f64 / inst.n_requests().max(1) as f64
            )?;
            emit(cfg.output.as_deref(), &ScheduleFile::new(algorithm, inst, schedule).to_json(), stdout)?;
        }
        Command::Validate { file } => {
            let saved = ScheduleFile::read(&file)?;
            let relax = saved.algorithm.map(|a| a.relaxation()).unwrap_or_default();
            return Ok(match validate(&saved.instance, &saved.schedule, relax) {
                Ok(()) => {
                    writeln!(stdout, "valid: {} assignments, objective {:.6}", saved.schedule.assignments.len(), saved.schedule.objective)?;
                    0
                }
                Err(v) => {
                    writeln!(stderr, "invalid: {v}")?;
                    EXIT_INVALID_SCHEDULE
                }
            });
        }
        Command::Compare(common) => {
            let cfg = resolve(&common)?;
            let c = compare_to_exact(&cfg.effective_scenario(), &cfg.algorithms, cfg.runs, cfg.seed)?;
            let mut text = String::new();
            text.push_str("algorithm,mean_us,satisfied_pct,ratio_mean,ratio_min,ratio_max\n");
            for r in &c.rows {
                text.push_str(&format!(
                    "{},{:.6},{:.6},{:.6},{:.6},{:.6}\n",
                    r.algorithm, r.mean_us, r.satisfied_pct, r.ratio_mean, r.ratio_min, r.ratio_max
                ));
            }
            emit(cfg.output.as_deref(), &text, stdout)?;
            if let Some(gus) = c.rows.iter().find(|r| r.algorithm == crate::sched::Algorithm::Gus) {
                writeln!(stderr, "mean(US_gus / US_exact) = {:.6} over {} runs ({} skipped)", gus.ratio_mean, c.runs - c.skipped, c.skipped)?;
            }
        }
        Command::ShowConfig(common) => {
            let cfg = resolve(&common)?;
            emit(cfg.output.as_deref(), &(cfg.to_json() + "\n"), stdout)?;
        }
    }
    Ok(0)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidConfig(_)
        | Error::InvalidInstance(_)
        | Error::Json(_)
        | Error::UnknownAlgorithm(_)
        | Error::UnknownParameter(_) => EXIT_BAD_INPUT,
        Error::InstanceTooLarge { .. } | Error::BudgetExceeded { .. } => EXIT_TOO_LARGE,
        _ => 1,
    }
}

/// Runs the command line with explicit output streams and returns the exit code.
pub fn run_cli_with<I, T>(argv: I, stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_BAD_INPUT } else { 0 };
        }
    };
    let outcome = threads().and_then(|n| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
        pool.install(|| execute(cli.command, stdout, stderr))
    });
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs the command line against the process's standard streams.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_cli_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}
