//! # edgesched
//!
//! Scheduling deep-learning inference requests across a user → edge → cloud
//! hierarchy so that the mean *user satisfaction* is as high as possible.
//!
//! A request asks for a service with a minimum accuracy and a maximum
//! completion time. Each server hosts some DL model variants of some
//! services, and has a per-frame computation capacity plus a communication
//! capacity for forwarding its own requests elsewhere. Serving a request
//! with a model of accuracy `a` in `c` milliseconds scores
//!
//! ```text
//! US = w_a (a - A) / max_accuracy + w_c (C - c) / max_completion
//! ```
//!
//! and the scheduler chooses, for every request, a (server, model) pair or a
//! drop so that the mean score over all requests is maximized.
//!
//! The crate provides
//!  * the system model ([`model`]),
//!  * the greedy GUS scheduler, five baselines, an exact branch-and-bound
//!    solver and an exhaustive oracle ([`sched`]),
//!  * randomized scenario generation ([`scenario`]),
//!  * Monte-Carlo runs, parameter sweeps and a framed queueing simulation
//!    ([`sim`]),
//!  * JSON configs, CSV reports and the `edgesched` command line ([`report`], [`cli`]).
//!
//! ## Example
//! ```rust
//! use edgesched::scenario::{generate_instance, ScenarioConfig};
//! use edgesched::sched::{exact_solve, gus, ExactLimits};
//!
//! let config = ScenarioConfig::small();
//! let instance = generate_instance(&config, 7).unwrap();
//! let greedy = gus(&instance);
//! let optimum = exact_solve(&instance, &ExactLimits::default()).unwrap().schedule;
//! assert!(greedy.objective <= optimum.objective + 1e-12);
//! ```
//!
//! The guide in `book/` walks through each part with runnable snippets.

pub mod cli;
pub mod error;
pub mod model;
pub mod report;
pub mod scenario;
pub mod sched;
pub mod sim;

pub use error::{Error, Result};

// Compile the guide's code blocks as doc-tests so the book cannot drift from
// the library.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/model.md")]
    pub mod model {}
    #[doc = include_str!("../../../book/src/schedulers.md")]
    pub mod schedulers {}
    #[doc = include_str!("../../../book/src/exact.md")]
    pub mod exact {}
    #[doc = include_str!("../../../book/src/scenarios.md")]
    pub mod scenarios {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    pub mod simulation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
    #[doc = include_str!("../../../README.md")]
    pub mod readme {}
}
