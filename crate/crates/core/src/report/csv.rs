use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::sim::{RunResult, SweepRow};

pub const RESULTS_HEADER: &str =
    "run,algorithm,n_requests,satisfied_pct,mean_us,dropped_pct,local_pct,offload_cloud_pct,offload_edge_pct";

pub const SWEEP_HEADER: &str = "parameter,value,algorithm,runs,satisfied_pct,satisfied_se,mean_us,mean_us_se,dropped_pct,local_pct,offload_cloud_pct,offload_edge_pct";

/// Renders results as CSV, sorted by (run, algorithm), floats with six
/// decimals, newline-terminated.
pub fn format_results(results: &[RunResult]) -> String {
    let mut rows: Vec<&RunResult> = results.iter().collect();
    rows.sort_by_key(|r| (r.run, r.algorithm));
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(RESULTS_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
            r.run,
            r.algorithm,
            r.n_requests,
            r.satisfied_pct,
            r.mean_us,
            r.dropped_pct,
            r.local_pct,
            r.offload_cloud_pct,
            r.offload_edge_pct
        )
        .expect("writing to a String cannot fail");
    }
    out
}

pub fn write_results(results: &[RunResult], path: &Path) -> Result<()> {
    std::fs::write(path, format_results(results))?;
    Ok(())
}

pub fn parse_results(text: &str) -> Result<Vec<RunResult>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == RESULTS_HEADER => {}
        other => {
            return Err(Error::InvalidConfig(format!(
                "results CSV must start with `{RESULTS_HEADER}`, found `{}`",
                other.unwrap_or("")
            )))
        }
    }
    lines
        .enumerate()
        .map(|(k, line)| {
            let bad = |what: &str| Error::InvalidConfig(format!("results CSV line {}: {what}", k + 2));
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 9 {
                return Err(bad(&format!("expected 9 fields, found {}", f.len())));
            }
            let num = |i: usize| f[i].parse::<f64>().map_err(|e| bad(&format!("field {}: {e}", i + 1)));
            Ok(RunResult {
                run: f[0].parse().map_err(|e| bad(&format!("run: {e}")))?,
                algorithm: f[1].parse()?,
                n_requests: f[2].parse().map_err(|e| bad(&format!("n_requests: {e}")))?,
                satisfied_pct: num(3)?,
                mean_us: num(4)?,
                dropped_pct: num(5)?,
                local_pct: num(6)?,
                offload_cloud_pct: num(7)?,
                offload_edge_pct: num(8)?,
            })
        })
        .collect()
}

/// One row per (sweep value, algorithm), in sweep order.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let s = &r.stats;
        writeln!(
            out,
            "{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
            r.parameter,
            r.value,
            s.algorithm,
            s.runs,
            s.satisfied_pct,
            s.satisfied_se,
            s.mean_us,
            s.mean_us_se,
            s.dropped_pct,
            s.local_pct,
            s.offload_cloud_pct,
            s.offload_edge_pct
        )
        .expect("writing to a String cannot fail");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sched::Algorithm;

    fn row(run: u64, algorithm: Algorithm) -> RunResult {
        RunResult {
            run,
            algorithm,
            n_requests: 10,
            satisfied_pct: 0.7,
            mean_us: 0.123_456_7,
            dropped_pct: 0.3,
            local_pct: 0.2,
            offload_cloud_pct: 0.4,
            offload_edge_pct: 0.1,
        }
    }

    #[test]
    fn empty_is_header_only() {
        assert_eq!(format_results(&[]), format!("{RESULTS_HEADER}\n"));
    }

    #[test]
    fn sorted_and_rounded() {
        let text = format_results(&[row(1, Algorithm::Gus), row(0, Algorithm::Random), row(0, Algorithm::Gus)]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "0,gus,10,0.700000,0.123457,0.300000,0.200000,0.400000,0.100000");
        assert!(lines[2].starts_with("0,random,"));
        assert!(lines[3].starts_with("1,gus,"));
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn write_to_file_and_parse_back() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        write_results(&[row(0, Algorithm::OffloadAll)], &path).unwrap();
        let back = parse_results(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(back[0].algorithm, Algorithm::OffloadAll);
        assert_eq!(back[0].mean_us, 0.123457);
    }

    #[test]
    fn unwritable_path() {
        let dir = tempfile::tempdir().unwrap();
        assert!(write_results(&[], &dir.path().join("missing/r.csv")).is_err());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_results("a,b\n").is_err());
        assert!(parse_results(&format!("{RESULTS_HEADER}\n0,gus,1\n")).is_err());
        assert!(parse_results(&format!("{RESULTS_HEADER}\n0,nope,1,0,0,0,0,0,0\n")).is_err());
    }
}
