//! Experiment drivers: Monte Carlo runs, parameter sweeps and the
//! frame-based online simulation.

mod bandwidth;
mod compare;
mod framed;
mod metrics;
mod monte_carlo;
mod sweep;

pub use bandwidth::{update_bandwidth, BandwidthEstimator};
pub use compare::{compare_to_exact, Comparison, ComparisonRow};
pub use framed::{expected_arrivals_per_frame, framed_simulation, FramedParams, FramedReport};
pub use metrics::{aggregate, Aggregate, RunResult};
pub use monte_carlo::{derive_seed, monte_carlo};
pub use sweep::{sweep, SweepParameter, SweepRow, SweepSpec};
